#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "mcwave/channel.hpp"
#include "mcwave/constellation.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/rng.hpp"
#include "mcwave/waveform.hpp"

using namespace mcwave;

namespace {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

WaveformConfig small(Scheme s, int K, int M, int guards, PulseSpec pulse = {}) {
    WaveformConfig c;
    c.scheme = s;
    c.K = K;
    c.M = M;
    c.guards = guards;
    c.cp_len = 0;
    c.window_len = 0;
    c.pulse = pulse;
    return c;
}

ResourceGrid draw(const WaveformConfig& cfg, std::uint64_t seed, int Q = 4) {
    Rng rng(seed);
    return random_grid(cfg, Constellation(Q), rng);
}

double max_err(const ResourceGrid& a, const ResourceGrid& b) {
    double e = 0.0;
    for (int r = 0; r < a.K(); ++r) {
        if (!a.active(r)) continue;
        for (int m = 0; m < a.M(); ++m) e = std::max(e, std::abs(a.at(r, m) - b.at(r, m)));
    }
    return e;
}

int symbol_errors(const ResourceGrid& tx, const ResourceGrid& rx, int Q) {
    const Constellation c(Q);
    int errs = 0;
    for (int r = 0; r < tx.K(); ++r) {
        if (!tx.active(r)) continue;
        for (int m = 0; m < tx.M(); ++m) errs += c.decide(tx.at(r, m)) != c.decide(rx.at(r, m));
    }
    return errs;
}

// GFDM modulation matrix: column (k, m) is g[(n - mK) mod N] exp(j2pi k n / K),
// k being the physical subcarrier of the column's row.
Mat gfdm_matrix(const PrototypeFilter& g, int K, int M) {
    const int N = K * M;
    Mat A(N, N);
    for (int row = 0; row < K; ++row) {
        const int k = row - K / 2;
        for (int m = 0; m < M; ++m) {
            for (int n = 0; n < N; ++n) {
                A(n, row * M + m) = g.circular(n - m * K) * std::polar(1.0, kTwoPi * k * n / K);
            }
        }
    }
    return A;
}

Mat pinv(const Mat& A) {
    Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double tol = s(0) * 1e-10;
    Eigen::VectorXd inv(s.size());
    for (Eigen::Index i = 0; i < s.size(); ++i) inv(i) = s(i) > tol ? 1.0 / s(i) : 0.0;
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Vec to_vec(const CVec& v) {
    Vec out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
    return out;
}

Complex j_pow(int e) {
    static const Complex t[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return t[((e % 4) + 4) % 4];
}

} // namespace

TEST_CASE("contiguous allocation is centered") {
    WaveformConfig c;
    const auto mask = allocate(c);
    for (int i = 0; i < 128; ++i) CHECK(mask[static_cast<std::size_t>(i)] == (i >= 26 && i <= 101));
    CHECK(row_frequency(64, 128) == 0);
    CHECK(row_bin(64, 128) == 0);
    CHECK(row_bin(63, 128) == 127);
    CHECK(row_bin(0, 128) == 64);
}

TEST_CASE("non-contiguous allocation is two blocks with a block-wide gap") {
    WaveformConfig c;
    c.allocation = Allocation::NonContiguous;
    const auto mask = allocate(c);
    for (int i = 0; i < 128; ++i) {
        CHECK(mask[static_cast<std::size_t>(i)] == ((i >= 7 && i <= 44) || (i >= 83 && i <= 120)));
    }
    c.K = 8;
    c.guards = 7;
    CHECK_THROWS_AS(allocate(c), AllocationError);
}

TEST_CASE("configuration validation") {
    WaveformConfig c;
    c.guards = 128;
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    c = {};
    c.cp_len = 129;
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    c.scheme = Scheme::GFDM;
    CHECK_NOTHROW(validate(c));
    c = {};
    c.scheme = Scheme::WCP_COQAM;
    c.K = 127;
    c.guards = 51;
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    c = {};
    c.Q = 8;
    CHECK_THROWS_AS(validate(c), InvalidParameter);
    CHECK(parse_scheme("WCP-COQAM") == Scheme::WCP_COQAM);
    CHECK(parse_allocation("non_contiguous") == Allocation::NonContiguous);
    CHECK_THROWS_AS(parse_scheme("fbmc"), InvalidParameter);
}

TEST_CASE("resource grid shape checks") {
    CHECK_THROWS_AS(ResourceGrid(4, 2, std::vector<bool>(3, true)), ShapeError);
    ResourceGrid g(4, 2, {false, true, true, false});
    CHECK(g.active_count() == 2);
    CHECK_THROWS_AS(g.at(4, 0), ShapeError);
    const WaveformConfig cfg = small(Scheme::OFDM, 8, 2, 2);
    CHECK_THROWS_AS(OfdmModem(cfg).modulate(g), ShapeError);
}

TEST_CASE("hanning ramp is complementary") {
    for (int w : {1, 4, 18, 36}) {
        const auto r = hanning_ramp(w);
        REQUIRE(r.size() == static_cast<std::size_t>(w));
        for (int i = 0; i < w; ++i) {
            CHECK(r[static_cast<std::size_t>(i)] + r[static_cast<std::size_t>(w - 1 - i)] == doctest::Approx(1.0));
            if (i > 0) CHECK(r[static_cast<std::size_t>(i)] > r[static_cast<std::size_t>(i - 1)]);
        }
    }
    CHECK(hanning_ramp(0).empty());
}

TEST_CASE("edge window extends cyclically and leaves the core alone") {
    Rng rng(1);
    const int K = 16, cp = 4, w = 3;
    CVec x(K);
    for (auto& v : x) v = rng.complex_normal();
    CVec block(x.end() - cp, x.end());
    block.insert(block.end(), x.begin(), x.end());
    const CVec y = apply_edge_window(block, w, K);
    REQUIRE(y.size() == block.size() + 2 * w);
    const auto r = hanning_ramp(w);
    for (int i = 0; i < w; ++i) {
        CHECK(std::abs(y[static_cast<std::size_t>(i)] - r[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>((K - cp - w + i + K) % K)]) < 1e-15);
        CHECK(std::abs(y[block.size() + w + i] - r[static_cast<std::size_t>(w - 1 - i)] * x[static_cast<std::size_t>(i % K)]) < 1e-15);
    }
    for (std::size_t i = 0; i < block.size(); ++i) CHECK(y[i + w] == block[i]);
}

TEST_CASE("ofdm frame matches direct synthesis") {
    WaveformConfig cfg = small(Scheme::OFDM, 16, 3, 4);
    cfg.cp_len = 4;
    const ResourceGrid grid = draw(cfg, 3);
    const Frame f = OfdmModem(cfg).modulate(grid);
    REQUIRE(f.signal.size() == 3u * 20u);
    CHECK(f.overhead.total() == f.signal.size());
    for (int m = 0; m < 3; ++m) {
        for (int n = -4; n < 16; ++n) {
            Complex ref{};
            for (int row = 0; row < 16; ++row) {
                if (grid.active(row)) ref += grid.at(row, m) * std::polar(1.0, kTwoPi * (row - 8) * n / 16.0);
            }
            ref /= 4.0;
            CHECK(std::abs(f.signal[static_cast<std::size_t>(m * 20 + n + 4)] - ref) < 1e-13);
        }
    }
}

TEST_CASE("ofdm payload energy equals symbol energy") {
    const WaveformConfig cfg = small(Scheme::OFDM, 64, 4, 10);
    const ResourceGrid grid = draw(cfg, 4, 16);
    const Frame f = OfdmModem(cfg).modulate(grid);
    double sym = 0.0;
    for (const auto& v : grid.data()) sym += std::norm(v);
    CHECK(f.signal.energy() == doctest::Approx(sym).epsilon(1e-12));
}

TEST_CASE("gfdm block matches the modulation matrix") {
    const int K = 8, M = 5;
    const WaveformConfig cfg = small(Scheme::GFDM, K, M, 0, {PulseFamily::RC, 0.1, 4});
    const GfdmModem modem(cfg, make_rc(K, M, 0.1));
    const ResourceGrid grid = draw(cfg, 5);
    const Mat A = gfdm_matrix(modem.pulse(), K, M);
    const Vec d = to_vec(grid.data());
    const CVec x = modem.modulate_block(grid);
    const Vec ref = A * d;
    CHECK((to_vec(x) - ref).norm() / ref.norm() < 1e-12);
}

TEST_CASE("gfdm zero-forcing receiver equals the pseudo-inverse") {
    const int K = 8;
    for (int M : {5, 4}) {
        for (double a : {0.1, 0.4}) {
            const WaveformConfig cfg = small(Scheme::GFDM, K, M, 0, {PulseFamily::RC, a, 4});
            const GfdmModem modem(cfg, make_rc(K, M, a));
            const Mat P = pinv(gfdm_matrix(modem.pulse(), K, M));
            Rng rng(6);
            CVec y(static_cast<std::size_t>(K * M));
            for (auto& v : y) v = rng.complex_normal();
            const CVec z = modem.zf_block(y);
            const Vec ref = P * to_vec(y);
            // zf_block indexes by DFT bin; the oracle by grid row.
            double num = 0.0;
            for (int row = 0; row < K; ++row) {
                for (int m = 0; m < M; ++m) {
                    num += std::norm(z[static_cast<std::size_t>(row_bin(row, K) * M + m)] - ref(row * M + m));
                }
            }
            CHECK(std::sqrt(num) / ref.norm() < 1e-8);
        }
    }
}

TEST_CASE("dirichlet gfdm matrix is orthogonal") {
    const int K = 8, M = 3;
    const Mat A = gfdm_matrix(make_dirichlet(K, M), K, M);
    const Mat G = A.adjoint() * A;
    const Complex c = G(0, 0);
    CHECK((G - c * Mat::Identity(K * M, K * M)).norm() < 1e-12 * std::abs(c) * K * M);
}

TEST_CASE("gfdm round trip is exact for an invertible pulse") {
    WaveformConfig cfg = small(Scheme::GFDM, 16, 5, 4, {PulseFamily::RC, 0.1, 4});
    cfg.cp_len = 8;
    cfg.window_len = 4;
    const auto modem = make_modem(cfg);
    const ResourceGrid grid = draw(cfg, 7);
    const Frame f = modem->modulate(grid);
    CHECK(f.signal.size() == 80u + 8u + 8u);
    CHECK(max_err(modem->demodulate(f.signal).grid, grid) < 1e-10);
}

TEST_CASE("coqam block matches direct atom synthesis") {
    const int K = 8, M = 4;
    const WaveformConfig cfg = small(Scheme::WCP_COQAM, K, M, 2, {PulseFamily::PHYDYAS, 0.0, 4});
    const CoqamModem modem(cfg, make_phydyas(K, M, 4));
    const ResourceGrid grid = draw(cfg, 8);
    const CVec x = modem.modulate_block(grid);
    const int N = K * M;
    for (int n = 0; n < N; ++n) {
        Complex ref{};
        for (int row = 0; row < K; ++row) {
            if (!grid.active(row)) continue;
            const int k = row - K / 2;
            for (int s = 0; s < 2 * M; ++s) {
                const Complex d = grid.at(row, s / 2);
                const double a = s % 2 == 0 ? d.real() : d.imag();
                const int t = n - s * K / 2;
                ref += a * j_pow(k + s) * modem.pulse().circular(t) * std::polar(1.0, kTwoPi * k * t / K);
            }
        }
        CHECK(std::abs(x[static_cast<std::size_t>(n)] - ref) < 1e-12);
    }
}

TEST_CASE("noiseless round trip is error free for every scheme and pulse") {
    const std::vector<PulseSpec> pulses{{PulseFamily::RC, 0.1, 4}, {PulseFamily::RC, 0.4, 4},
                                        {PulseFamily::RRC, 0.1, 4}, {PulseFamily::PHYDYAS, 0.0, 4},
                                        {PulseFamily::IOTA, 0.0, 4}, {PulseFamily::Dirichlet, 0.0, 4}};
    for (Scheme s : {Scheme::OFDM, Scheme::GFDM, Scheme::WCP_COQAM}) {
        for (const PulseSpec& p : pulses) {
            // RC is not OQAM orthogonal; PHYDYAS needs odd M under GFDM.
            if (s == Scheme::WCP_COQAM && p.family == PulseFamily::RC) continue;
            WaveformConfig cfg;
            cfg.scheme = s;
            cfg.K = 32;
            cfg.guards = 12;
            cfg.M = 9;
            cfg.cp_len = 8;
            cfg.window_len = 4;
            cfg.pulse = p;
            const auto modem = make_modem(cfg);
            const ResourceGrid grid = draw(cfg, 9);
            const DemodResult rx = modem->demodulate(modem->modulate(grid).signal);
            CAPTURE(to_string(s));
            CAPTURE(to_string(p.family));
            CHECK(symbol_errors(grid, rx.grid, 4) == 0);
            if (s != Scheme::WCP_COQAM) CHECK(max_err(rx.grid, grid) < 1e-9);
        }
    }
}

TEST_CASE("flat gain of two is removed by the equalizer") {
    for (Scheme s : {Scheme::OFDM, Scheme::GFDM, Scheme::WCP_COQAM}) {
        WaveformConfig cfg;
        cfg.scheme = s;
        cfg.K = 32;
        cfg.guards = 12;
        cfg.M = 5;
        cfg.pulse = {PulseFamily::RRC, 0.1, 4};
        const auto modem = make_modem(cfg);
        const ResourceGrid grid = draw(cfg, 10);
        CVec y = modem->modulate(grid).signal.samples();
        for (auto& v : y) v *= 2.0;
        const CVec H(response_length(cfg), Complex{2.0, 0.0});
        const DemodResult plain = modem->demodulate(modem->modulate(grid).signal);
        const DemodResult rx = modem->demodulate(std::span<const Complex>(y), std::span<const Complex>(H), nullptr);
        CHECK(max_err(rx.grid, plain.grid) < 1e-12);
    }
}

TEST_CASE("cyclic prefix longer than the channel makes one-tap ZF exact") {
    const ChannelRealization h = cost207_ht(77);
    for (Scheme s : {Scheme::OFDM, Scheme::GFDM}) {
        WaveformConfig cfg;
        cfg.scheme = s;
        cfg.cp_len = 32;
        const auto modem = make_modem(cfg);
        const ResourceGrid grid = draw(cfg, 11);
        const ComplexSignal y = apply_channel(modem->modulate(grid).signal, h);
        const CVec H = freq_response(h, response_length(cfg));
        const DemodResult rx = modem->demodulate(y, std::span<const Complex>(H));
        CHECK(max_err(rx.grid, grid) < 1e-8);
    }
}

TEST_CASE("singular channel bins are flagged as erased") {
    WaveformConfig cfg = small(Scheme::OFDM, 16, 2, 4);
    const auto ofdm = make_modem(cfg);
    CVec H(16, Complex{1.0, 0.0});
    H[static_cast<std::size_t>(row_bin(5, 16))] = 0.0;
    const ResourceGrid grid = draw(cfg, 12);
    const DemodResult rx = ofdm->demodulate(ofdm->modulate(grid).signal, std::span<const Complex>(H));
    for (int row = 0; row < 16; ++row) {
        for (int m = 0; m < 2; ++m) CHECK(rx.erased[static_cast<std::size_t>(row * 2 + m)] == (row == 5));
    }

    cfg = small(Scheme::GFDM, 16, 5, 4, {PulseFamily::RC, 0.1, 4});
    const auto gfdm = make_modem(cfg);
    CVec HB(80, Complex{1.0, 0.0});
    HB[3] = 0.0; // signed frequency 3/5 of a subcarrier rounds to subcarrier 1
    const DemodResult rb = gfdm->demodulate(gfdm->modulate(draw(cfg, 13)).signal, std::span<const Complex>(HB));
    for (int row = 0; row < 16; ++row) {
        const bool expect = row == 9 && allocate(cfg)[9];
        CHECK(rb.erased[static_cast<std::size_t>(row * 5)] == expect);
    }
    CHECK_THROWS_AS(gfdm->demodulate(gfdm->modulate(draw(cfg, 13)).signal, std::span<const Complex>(H)), ShapeError);
}

TEST_CASE("demodulators reject frames of the wrong length") {
    for (Scheme s : {Scheme::OFDM, Scheme::GFDM, Scheme::WCP_COQAM}) {
        WaveformConfig cfg = small(s, 16, 3, 4, {PulseFamily::RRC, 0.1, 4});
        const auto modem = make_modem(cfg);
        CVec y = modem->modulate(draw(cfg, 1)).signal.samples();
        y.pop_back();
        CHECK_THROWS_AS(modem->demodulate(std::span<const Complex>(y)), ShapeError);
    }
}

TEST_CASE("spectral efficiency of the base configuration") {
    WaveformConfig c;
    CHECK(spectral_efficiency(c) == doctest::Approx(1368.0 / 1764.0));
    c.scheme = Scheme::GFDM;
    CHECK(spectral_efficiency(c) == doctest::Approx(1368.0 / 1220.0));
    c.scheme = Scheme::WCP_COQAM;
    CHECK(spectral_efficiency(c) == doctest::Approx(1368.0 / 1220.0));
    c.Q = 16;
    CHECK(spectral_efficiency(c) == doctest::Approx(2736.0 / 1220.0));
    CHECK(frame_overhead(c).total() == 1220u);
}

TEST_CASE("cp knob picks the closest integer cp") {
    WaveformConfig ofdm;
    WaveformConfig gfdm;
    gfdm.scheme = Scheme::GFDM;
    const Equalized e = equalize_spectral_efficiency(ofdm, gfdm, SeKnob::CyclicPrefix);
    const double ref = 1368.0 / 1764.0;
    int best = -1;
    double best_err = 1e9;
    for (int cp = 0; cp <= 1152; ++cp) {
        const double err = std::abs(1368.0 / (1152.0 + 36.0 + cp) - ref);
        if (err < best_err) {
            best_err = err;
            best = cp;
        }
    }
    CHECK(e.cfg.cp_len == best);
    CHECK(std::abs(e.eta - ref) / ref <= kSeTolerance);
    CHECK(e.cfg.K == 128);
    CHECK(e.cfg.guards == 52);
}

TEST_CASE("unreachable efficiency raises CannotEqualize with the closest point") {
    WaveformConfig ofdm;
    WaveformConfig gfdm;
    gfdm.scheme = Scheme::GFDM;
    try {
        (void)equalize_spectral_efficiency(gfdm, ofdm, SeKnob::CyclicPrefix);
        FAIL("expected CannotEqualize");
    } catch (const CannotEqualize& e) {
        CHECK(e.closest().cp_len == 0);
        CHECK(e.closest_eta() == doctest::Approx(1368.0 / (9.0 * 164.0)));
    }
    CHECK_THROWS_AS(equalize_spectral_efficiency(ofdm, gfdm, SeKnob::Subcarriers), CannotEqualize);
}

TEST_CASE("active knob adjusts guards only") {
    WaveformConfig ofdm;
    WaveformConfig gfdm;
    gfdm.scheme = Scheme::GFDM;
    const Equalized e = equalize_spectral_efficiency(gfdm, ofdm, SeKnob::ActiveSubcarriers);
    // 2 * 9 * a / 1764 against 1368 / 1220.
    CHECK(e.cfg.active() == static_cast<int>(std::lround(1368.0 / 1220.0 * 1764.0 / 18.0)));
    CHECK(std::abs(e.eta / e.ref_eta - 1.0) <= kSeTolerance);
    CHECK(e.cfg.cp_len == ofdm.cp_len);
}

TEST_CASE("subcarrier knob stretches ofdm to one block-length symbol") {
    WaveformConfig ofdm;
    WaveformConfig gfdm;
    gfdm.scheme = Scheme::GFDM;
    const Equalized e = equalize_spectral_efficiency(gfdm, ofdm, SeKnob::Subcarriers);
    CHECK(e.cfg.K == 1152);
    CHECK(e.cfg.guards == 468);
    CHECK(e.cfg.M == 1);
    CHECK(e.eta == doctest::Approx(1368.0 / 1220.0));
    CHECK(parse_se_knob("cp") == SeKnob::CyclicPrefix);
    CHECK_THROWS_AS(parse_se_knob("power"), InvalidParameter);
}

TEST_CASE("phase tracking de-rotates by the offset phase") {
    const PhaseTracking t{0.1, 64};
    CHECK(std::abs(t.derotation(32.0) - std::polar(1.0, -kTwoPi * 0.1 * 0.5)) < 1e-15);
    CHECK(t.derotation(0.0) == Complex(1.0, 0.0));
}
