#include <algorithm>
#include <cmath>

#include "equalizer.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/signal.hpp"
#include "mcwave/waveform.hpp"

namespace mcwave {

namespace detail {

std::vector<bool> equalize_block(std::span<Complex> block, std::span<const Complex> response, int K, int M) {
    const std::size_t n = block.size();
    if (response.size() != n) {
        throw ShapeError("channel response length must equal the block length");
    }
    double peak = 0.0;
    for (const Complex& h : response) {
        peak = std::max(peak, std::abs(h));
    }
    CVec spec = dft(block);
    std::vector<bool> bad_row(static_cast<std::size_t>(K), false);
    for (std::size_t l = 0; l < n; ++l) {
        if (std::abs(response[l]) <= kSingularBin * peak) {
            spec[l] = 0.0;
            const long signed_l = l < (n + 1) / 2 ? static_cast<long>(l) : static_cast<long>(l) - static_cast<long>(n);
            const long k = std::lround(static_cast<double>(signed_l) / M);
            const long row = ((k + K / 2) % K + K) % K;
            bad_row[static_cast<std::size_t>(row)] = true;
        } else {
            spec[l] /= response[l];
        }
    }
    const CVec y = dft(spec, Direction::Inverse);
    std::copy(y.begin(), y.end(), block.begin());
    return bad_row;
}

} // namespace detail

OfdmModem::OfdmModem(WaveformConfig cfg) : Modem(std::move(cfg)) {
    if (cfg_.scheme != Scheme::OFDM) {
        throw InvalidParameter("OfdmModem: configuration is not OFDM");
    }
    validate(cfg_);
}

Frame OfdmModem::modulate(const ResourceGrid& grid) const {
    check_grid(grid);
    const int K = cfg_.K;
    const auto cp = static_cast<std::size_t>(cfg_.cp_len);
    const double scale = std::sqrt(static_cast<double>(K));
    const Overhead oh = frame_overhead(cfg_);
    CVec out;
    out.reserve(oh.total());
    CVec bins(static_cast<std::size_t>(K));
    for (int m = 0; m < cfg_.M; ++m) {
        std::fill(bins.begin(), bins.end(), Complex{});
        for (int row = 0; row < K; ++row) {
            if (grid.active(row)) {
                bins[static_cast<std::size_t>(row_bin(row, K))] = grid.at(row, m);
            }
        }
        CVec x = dft(bins, Direction::Inverse);
        for (Complex& v : x) {
            v *= scale;
        }
        CVec block(x.end() - static_cast<long>(cp), x.end());
        block.insert(block.end(), x.begin(), x.end());
        const CVec windowed = apply_edge_window(block, cfg_.window_len, static_cast<std::size_t>(K));
        out.insert(out.end(), windowed.begin(), windowed.end());
    }
    return Frame{ComplexSignal(std::move(out)), oh};
}

DemodResult OfdmModem::demodulate(std::span<const Complex> rx,
                                  std::optional<std::span<const Complex>> response,
                                   const PhaseTracking* track) const {
    const int K = cfg_.K;
    const auto Ku = static_cast<std::size_t>(K);
    const Overhead oh = frame_overhead(cfg_);
    if (rx.size() != oh.total()) {
        throw ShapeError("OfdmModem::demodulate: received length does not match the frame");
    }
    if (response && response->size() != Ku) {
        throw ShapeError("OfdmModem::demodulate: channel response must have K bins");
    }
    const std::size_t sym_len = oh.total() / static_cast<std::size_t>(cfg_.M);
    const std::size_t skip = static_cast<std::size_t>(cfg_.window_len + cfg_.cp_len);
    const double scale = 1.0 / std::sqrt(static_cast<double>(K));

    std::vector<bool> singular(Ku, false);
    if (response) {
        double peak = 0.0;
        for (const Complex& h : *response) peak = std::max(peak, std::abs(h));
        for (std::size_t b = 0; b < Ku; ++b) {
            singular[b] = std::abs((*response)[b]) <= detail::kSingularBin * peak;
        }
    }

    DemodResult res{ResourceGrid(K, cfg_.M, allocate(cfg_)), std::vector<bool>(Ku * static_cast<std::size_t>(cfg_.M), false)};
    for (int m = 0; m < cfg_.M; ++m) {
        const auto first = rx.begin() + static_cast<long>(static_cast<std::size_t>(m) * sym_len + skip);
        const CVec Y = dft(std::span<const Complex>(first, Ku));
        const double centre = static_cast<double>(static_cast<std::size_t>(m) * sym_len + skip) + (K - 1) / 2.0;
        const Complex rot = track ? track->derotation(centre) : Complex{1.0, 0.0};
        for (int row = 0; row < K; ++row) {
            if (!res.grid.active(row)) continue;
            const auto b = static_cast<std::size_t>(row_bin(row, K));
            Complex v = Y[b] * scale * rot;
            if (response) {
                if (singular[b]) {
                    res.erased[static_cast<std::size_t>(row * cfg_.M + m)] = true;
                    v = 0.0;
                } else {
                    v /= (*response)[b];
                }
            }
            res.grid.at(row, m) = v;
        }
    }
    return res;
}

} // namespace mcwave
