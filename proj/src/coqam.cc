#include <algorithm>
#include <cmath>

#include "equalizer.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/signal.hpp"
#include "mcwave/waveform.hpp"

// Half-slot m' (0 <= m' < 2M) carries Re d[k, m'/2] for even m' and
// Im d[k, m'/2] for odd m'. Each real value rides on the atom
//   j^(k+m') g[(n - m'K/2) mod KM] exp(j2pi k (n - m'K/2) / K),
// i.e. the modulation is anchored to the pulse centre so the atom is a
// pure time-frequency shift of g. Atoms are orthogonal in the real inner
// product for pulses whose ambiguity function vanishes on the OQAM lattice.

namespace mcwave {

namespace {

Complex j_power(long e) {
    switch (((e % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
    }
}

} // namespace

CoqamModem::CoqamModem(WaveformConfig cfg, PrototypeFilter pulse)
    : Modem(std::move(cfg)), pulse_(std::move(pulse)) {
    if (cfg_.scheme != Scheme::WCP_COQAM) {
        throw InvalidParameter("CoqamModem: configuration is not WCP-COQAM");
    }
    validate(cfg_);
    if (pulse_.K() != cfg_.K || pulse_.M() != cfg_.M) {
        throw ShapeError("CoqamModem: pulse length must equal K*M");
    }
    g_ = pulse_.circular_taps();
}

CVec CoqamModem::modulate_block(const ResourceGrid& grid) const {
    check_grid(grid);
    const int K = cfg_.K;
    const auto Ku = static_cast<std::size_t>(K);
    const std::size_t n = g_.size();
    CVec x(n, Complex{});
    CVec bins(Ku);
    for (int slot = 0; slot < 2 * cfg_.M; ++slot) {
        std::fill(bins.begin(), bins.end(), Complex{});
        for (int row = 0; row < K; ++row) {
            if (!grid.active(row)) continue;
            const Complex d = grid.at(row, slot / 2);
            const double a = slot % 2 == 0 ? d.real() : d.imag();
            bins[static_cast<std::size_t>(row_bin(row, K))] = a * j_power(row_frequency(row, K) + slot);
        }
        const CVec s = dft(bins, Direction::Inverse);
        const std::size_t shift = static_cast<std::size_t>(slot) * Ku / 2;
        for (std::size_t i = 0; i < n; ++i) {
            // Walk the shifted index so the atom is read at (i - shift) mod n.
            const std::size_t idx = (i + n - shift % n) % n;
            x[i] += s[idx % Ku] * static_cast<double>(K) * g_[idx];
        }
    }
    return x;
}

Frame CoqamModem::modulate(const ResourceGrid& grid) const {
    const CVec x = modulate_block(grid);
    CVec framed = detail::frame_block(x, cfg_.cp_len, cfg_.window_len);
    return Frame{ComplexSignal(std::move(framed)), frame_overhead(cfg_)};
}

DemodResult CoqamModem::demodulate(std::span<const Complex> rx,
                                   std::optional<std::span<const Complex>> response,
                                   const PhaseTracking* track) const {
    const int K = cfg_.K;
    const int M = cfg_.M;
    const auto Ku = static_cast<std::size_t>(K);
    CVec block;
    const std::vector<bool> bad_row =
        detail::receive_block(rx, block, K, M, cfg_.cp_len, cfg_.window_len, response);
    const std::size_t n = block.size();

    DemodResult res{ResourceGrid(K, M, allocate(cfg_)),
                    std::vector<bool>(Ku * static_cast<std::size_t>(M), false)};
    CVec fold(Ku);
    for (int slot = 0; slot < 2 * M; ++slot) {
        std::fill(fold.begin(), fold.end(), Complex{});
        const std::size_t shift = static_cast<std::size_t>(slot) * Ku / 2;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t idx = (i + n - shift % n) % n;
            fold[idx % Ku] += block[i] * std::conj(g_[idx]);
        }
        const CVec U = dft(fold);
        const Complex rot = track ? track->derotation(static_cast<double>(cfg_.window_len + cfg_.cp_len) +
                                                      static_cast<double>(shift))
                                  : Complex{1.0, 0.0};
        for (int row = 0; row < K; ++row) {
            if (!res.grid.active(row)) continue;
            const Complex v = U[static_cast<std::size_t>(row_bin(row, K))] * rot *
                              std::conj(j_power(row_frequency(row, K) + slot));
            Complex& cell = res.grid.at(row, slot / 2);
            if (slot % 2 == 0) {
                cell.real(v.real());
            } else {
                cell.imag(v.real());
            }
        }
    }
    for (int row = 0; row < K; ++row) {
        if (!bad_row[static_cast<std::size_t>(row)] || !res.grid.active(row)) continue;
        for (int m = 0; m < M; ++m) {
            res.erased[static_cast<std::size_t>(row * M + m)] = true;
        }
    }
    return res;
}

} // namespace mcwave
