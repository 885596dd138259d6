#include "mcwave/waveform.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mcwave/constellation.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/rng.hpp"

namespace mcwave {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
    return out;
}

} // namespace

std::string_view to_string(Scheme s) noexcept {
    switch (s) {
    case Scheme::OFDM: return "ofdm";
    case Scheme::GFDM: return "gfdm";
    case Scheme::WCP_COQAM: return "wcp_coqam";
    }
    return "?";
}

std::string_view to_string(Allocation a) noexcept {
    return a == Allocation::Contiguous ? "contiguous" : "non_contiguous";
}

Scheme parse_scheme(std::string_view name) {
    const std::string s = lower(name);
    if (s == "ofdm") return Scheme::OFDM;
    if (s == "gfdm") return Scheme::GFDM;
    if (s == "wcp_coqam" || s == "coqam" || s == "wcp-coqam") return Scheme::WCP_COQAM;
    throw InvalidParameter("unknown scheme '" + std::string(name) + "'");
}

Allocation parse_allocation(std::string_view name) {
    const std::string s = lower(name);
    if (s == "contiguous") return Allocation::Contiguous;
    if (s == "non_contiguous" || s == "noncontiguous" || s == "non-contiguous") return Allocation::NonContiguous;
    throw InvalidParameter("unknown allocation '" + std::string(name) + "'");
}

void validate(const WaveformConfig& cfg) {
    if (cfg.K < 1 || cfg.M < 1) {
        throw InvalidParameter("K and M must be >= 1");
    }
    if (cfg.guards < 0 || cfg.guards >= cfg.K) {
        throw InvalidParameter("guards must satisfy 0 <= guards < K");
    }
    if (cfg.cp_len < 0 || cfg.window_len < 0) {
        throw InvalidParameter("cp_len and window_len must be non-negative");
    }
    const int period = cfg.scheme == Scheme::OFDM ? cfg.K : cfg.K * cfg.M;
    if (cfg.cp_len > period) {
        throw InvalidParameter("cp_len must not exceed the payload length it copies from");
    }
    if (cfg.scheme == Scheme::WCP_COQAM && cfg.K % 2 != 0) {
        throw InvalidParameter("WCP-COQAM needs an even K (half-slot of K/2 samples)");
    }
    Constellation check(cfg.Q);
    (void)check;
    (void)allocate(cfg);
}

int row_frequency(int row, int K) noexcept { return row - K / 2; }

int row_bin(int row, int K) noexcept { return ((row - K / 2) % K + K) % K; }

std::vector<bool> allocate(const WaveformConfig& cfg) { return allocate(cfg, cfg.allocation); }

std::vector<bool> allocate(const WaveformConfig& cfg, Allocation mode) {
    const int K = cfg.K;
    const int ka = cfg.active();
    if (K < 1 || ka < 1 || ka > K) {
        throw AllocationError("allocate: need 1 <= K - guards <= K");
    }
    std::vector<bool> mask(static_cast<std::size_t>(K), false);
    if (mode == Allocation::Contiguous) {
        const int start = (K - ka) / 2;
        std::fill_n(mask.begin() + start, ka, true);
        return mask;
    }
    const int block = ka / 2;
    if (block < 1 || 3 * block > K) {
        throw AllocationError("allocate: two blocks plus a one-block gap do not fit in K");
    }
    const int start = (K - 3 * block) / 2;
    std::fill_n(mask.begin() + start, block, true);
    std::fill_n(mask.begin() + start + 2 * block, block, true);
    return mask;
}

ResourceGrid::ResourceGrid(int K, int M, std::vector<bool> active_mask)
    : K_(K), M_(M), mask_(std::move(active_mask)),
      data_(static_cast<std::size_t>(K) * static_cast<std::size_t>(M), Complex{}) {
    if (K < 1 || M < 1 || mask_.size() != static_cast<std::size_t>(K)) {
        throw ShapeError("ResourceGrid: mask length must equal K and K, M >= 1");
    }
}

int ResourceGrid::active_count() const noexcept {
    return static_cast<int>(std::count(mask_.begin(), mask_.end(), true));
}

std::size_t ResourceGrid::index(int row, int m) const {
    if (row < 0 || row >= K_ || m < 0 || m >= M_) {
        throw ShapeError("ResourceGrid: index out of range");
    }
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(M_) + static_cast<std::size_t>(m);
}

ResourceGrid random_grid(const WaveformConfig& cfg, const Constellation& c, Rng& rng) {
    ResourceGrid grid(cfg.K, cfg.M, allocate(cfg));
    for (int row = 0; row < cfg.K; ++row) {
        if (!grid.active(row)) continue;
        for (int m = 0; m < cfg.M; ++m) {
            grid.at(row, m) = c.point(static_cast<int>(rng.below(static_cast<std::uint64_t>(c.order()))));
        }
    }
    return grid;
}

Overhead frame_overhead(const WaveformConfig& cfg) {
    const auto K = static_cast<std::size_t>(cfg.K);
    const auto M = static_cast<std::size_t>(cfg.M);
    const auto cp = static_cast<std::size_t>(cfg.cp_len);
    const auto w = static_cast<std::size_t>(cfg.window_len);
    if (cfg.scheme == Scheme::OFDM) {
        return {M * cp, M * 2 * w, M * K};
    }
    return {cp, 2 * w, M * K};
}

Complex PhaseTracking::derotation(double n) const noexcept {
    const double ph = -kTwoPi * eps * n / K;
    return {std::cos(ph), std::sin(ph)};
}

std::size_t response_length(const WaveformConfig& cfg) noexcept {
    const auto K = static_cast<std::size_t>(cfg.K);
    return cfg.scheme == Scheme::OFDM ? K : K * static_cast<std::size_t>(cfg.M);
}

void Modem::check_grid(const ResourceGrid& grid) const {
    if (grid.K() != cfg_.K || grid.M() != cfg_.M) {
        throw ShapeError("grid shape does not match the waveform configuration");
    }
}

std::unique_ptr<Modem> make_modem(const WaveformConfig& cfg) {
    validate(cfg);
    switch (cfg.scheme) {
    case Scheme::OFDM: return std::make_unique<OfdmModem>(cfg);
    case Scheme::GFDM: return std::make_unique<GfdmModem>(cfg, make_pulse(cfg.pulse, cfg.K, cfg.M));
    case Scheme::WCP_COQAM: return std::make_unique<CoqamModem>(cfg, make_pulse(cfg.pulse, cfg.K, cfg.M));
    }
    throw InvalidParameter("make_modem: unknown scheme");
}

} // namespace mcwave
