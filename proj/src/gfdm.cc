#include <algorithm>
#include <cmath>
#include <limits>

#include "equalizer.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/signal.hpp"
#include "mcwave/waveform.hpp"

// The K*M modulation matrix factors through the polyphase (Zak) domain:
// writing n = r + pK, every branch r is an M-point circular convolution of
// the per-subsymbol IDFT outputs with the polyphase pulse g[r + pK]. The
// transmitter and the ZF receiver both work branch by branch, so nothing
// of size (KM)^2 is ever formed.

namespace mcwave {

namespace detail {

CVec frame_block(std::span<const Complex> block, int cp_len, int window_len) {
    const auto cp = static_cast<std::size_t>(cp_len);
    CVec with_cp(block.end() - static_cast<long>(cp), block.end());
    with_cp.insert(with_cp.end(), block.begin(), block.end());
    return apply_edge_window(with_cp, window_len, block.size());
}

std::vector<bool> receive_block(std::span<const Complex> rx, CVec& block, int K, int M, int cp_len,
                                int window_len, std::optional<std::span<const Complex>> response) {
    const std::size_t n = static_cast<std::size_t>(K) * static_cast<std::size_t>(M);
    const auto skip = static_cast<std::size_t>(cp_len + window_len);
    if (rx.size() != n + skip + static_cast<std::size_t>(window_len)) {
        throw ShapeError("received length does not match the frame");
    }
    block.assign(rx.begin() + static_cast<long>(skip), rx.begin() + static_cast<long>(skip + n));
    if (!response) {
        return std::vector<bool>(static_cast<std::size_t>(K), false);
    }
    return equalize_block(block, *response, K, M);
}

} // namespace detail

GfdmModem::GfdmModem(WaveformConfig cfg, PrototypeFilter pulse) : Modem(std::move(cfg)), pulse_(std::move(pulse)) {
    if (cfg_.scheme != Scheme::GFDM) {
        throw InvalidParameter("GfdmModem: configuration is not GFDM");
    }
    validate(cfg_);
    if (pulse_.K() != cfg_.K || pulse_.M() != cfg_.M) {
        throw ShapeError("GfdmModem: pulse length must equal K*M");
    }
    const int K = cfg_.K;
    const int M = cfg_.M;
    zak_.resize(static_cast<std::size_t>(K) * static_cast<std::size_t>(M));
    CVec branch(static_cast<std::size_t>(M));
    double peak = 0.0;
    for (int r = 0; r < K; ++r) {
        for (int p = 0; p < M; ++p) {
            branch[static_cast<std::size_t>(p)] = pulse_.circular(r + static_cast<long>(p) * K);
        }
        const CVec spec = dft(branch);
        for (int l = 0; l < M; ++l) {
            const Complex v = spec[static_cast<std::size_t>(l)];
            zak_[static_cast<std::size_t>(r * M + l)] = v;
            peak = std::max(peak, std::abs(v));
        }
    }
    // Same cut-off a matrix pseudo-inverse would apply to its singular values.
    zak_tol_ = peak * static_cast<double>(K) * M * std::numeric_limits<double>::epsilon() * 16.0;
}

CVec GfdmModem::modulate_block(const ResourceGrid& grid) const {
    check_grid(grid);
    const int K = cfg_.K;
    const int M = cfg_.M;
    const auto Ku = static_cast<std::size_t>(K);
    const auto Mu = static_cast<std::size_t>(M);
    // D[r][m]: subsymbol m after the K-point synthesis, scaled so that
    // D = sum_k d[k,m] exp(j2pi k r / K).
    CVec D(Ku * Mu);
    CVec bins(Ku);
    for (int m = 0; m < M; ++m) {
        std::fill(bins.begin(), bins.end(), Complex{});
        for (int row = 0; row < K; ++row) {
            if (grid.active(row)) {
                bins[static_cast<std::size_t>(row_bin(row, K))] = grid.at(row, m);
            }
        }
        const CVec s = dft(bins, Direction::Inverse);
        for (std::size_t r = 0; r < Ku; ++r) {
            D[r * Mu + static_cast<std::size_t>(m)] = s[r] * static_cast<double>(K);
        }
    }
    CVec x(Ku * Mu);
    CVec branch(Mu);
    for (std::size_t r = 0; r < Ku; ++r) {
        std::copy_n(D.begin() + static_cast<long>(r * Mu), Mu, branch.begin());
        CVec spec = dft(branch);
        for (std::size_t l = 0; l < Mu; ++l) {
            spec[l] *= zak_[r * Mu + l];
        }
        const CVec y = dft(spec, Direction::Inverse);
        for (std::size_t p = 0; p < Mu; ++p) {
            x[r + p * Ku] = y[p];
        }
    }
    return x;
}

CVec GfdmModem::zf_block(std::span<const Complex> block) const {
    const auto Ku = static_cast<std::size_t>(cfg_.K);
    const auto Mu = static_cast<std::size_t>(cfg_.M);
    if (block.size() != Ku * Mu) {
        throw ShapeError("GfdmModem::zf_block: block length must be K*M");
    }
    CVec D(Ku * Mu);
    CVec branch(Mu);
    for (std::size_t r = 0; r < Ku; ++r) {
        for (std::size_t p = 0; p < Mu; ++p) {
            branch[p] = block[r + p * Ku];
        }
        CVec spec = dft(branch);
        for (std::size_t l = 0; l < Mu; ++l) {
            const Complex z = zak_[r * Mu + l];
            spec[l] = std::abs(z) > zak_tol_ ? spec[l] / z : Complex{};
        }
        const CVec y = dft(spec, Direction::Inverse);
        std::copy(y.begin(), y.end(), D.begin() + static_cast<long>(r * Mu));
    }
    // Back to symbols: d[k,m] = (1/K) sum_r D[r][m] exp(-j2pi k r / K).
    CVec out(Ku * Mu);
    CVec col(Ku);
    for (std::size_t m = 0; m < Mu; ++m) {
        for (std::size_t r = 0; r < Ku; ++r) {
            col[r] = D[r * Mu + m];
        }
        const CVec d = dft(col);
        for (std::size_t b = 0; b < Ku; ++b) {
            out[b * Mu + m] = d[b] / static_cast<double>(Ku);
        }
    }
    return out; // indexed by [bin * M + m]
}

Frame GfdmModem::modulate(const ResourceGrid& grid) const {
    const CVec x = modulate_block(grid);
    CVec framed = detail::frame_block(x, cfg_.cp_len, cfg_.window_len);
    return Frame{ComplexSignal(std::move(framed)), frame_overhead(cfg_)};
}

DemodResult GfdmModem::demodulate(std::span<const Complex> rx,
                                  std::optional<std::span<const Complex>> response,
                                   const PhaseTracking* track) const {
    const int K = cfg_.K;
    const int M = cfg_.M;
    CVec block;
    const std::vector<bool> bad_row =
        detail::receive_block(rx, block, K, M, cfg_.cp_len, cfg_.window_len, response);
    CVec d = zf_block(block);
    if (track) {
        for (int m = 0; m < M; ++m) {
            // Subsymbol m's pulse is centred on block sample m*K.
            const Complex rot = track->derotation(static_cast<double>(cfg_.window_len + cfg_.cp_len + m * K));
            for (int b = 0; b < K; ++b) {
                d[static_cast<std::size_t>(b * M + m)] *= rot;
            }
        }
    }
    DemodResult res{ResourceGrid(K, M, allocate(cfg_)),
                    std::vector<bool>(static_cast<std::size_t>(K) * static_cast<std::size_t>(M), false)};
    for (int row = 0; row < K; ++row) {
        if (!res.grid.active(row)) continue;
        const auto b = static_cast<std::size_t>(row_bin(row, K));
        for (int m = 0; m < M; ++m) {
            const auto cell = static_cast<std::size_t>(row * M + m);
            if (bad_row[static_cast<std::size_t>(row)]) {
                res.erased[cell] = true;
            }
            res.grid.at(row, m) = d[b * static_cast<std::size_t>(M) + static_cast<std::size_t>(m)];
        }
    }
    return res;
}

} // namespace mcwave
