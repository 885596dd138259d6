#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "mcwave/types.hpp"

namespace mcwave {

// xoshiro256** seeded through splitmix64. Gaussian samples use Box-Muller
// on 53-bit uniforms, so a seed yields the same stream on every platform
// with IEEE doubles. Not safe for concurrent use: one instance per worker.
class Rng {
public:
    static constexpr std::string_view kAlgorithm = "xoshiro256** (splitmix64 seeding), Box-Muller normals";

    explicit Rng(std::uint64_t seed);

    std::uint64_t seed() const noexcept { return seed_; }

    std::uint64_t next_u64() noexcept;
    // Uniform in [0, 1).
    double uniform() noexcept;
    double normal() noexcept;
    // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
    Complex complex_normal(double variance = 1.0) noexcept;
    int bit() noexcept { return static_cast<int>(next_u64() >> 63); }
    // Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) noexcept;

private:
    std::uint64_t seed_;
    std::array<std::uint64_t, 4> s_{};
    bool has_spare_ = false;
    double spare_ = 0.0;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Deterministic child seed from a parent seed and a path of indices, used
// to give every (scheme, snr, frame) its own independent stream.
std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> path) noexcept;

} // namespace mcwave
