#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mcwave/signal.hpp"

namespace mcwave {

struct TapDelayProfile {
    std::string name;
    std::vector<double> delays_us;
    std::vector<double> powers_db;
};

// Hilly-terrain profiles of the COST-207 tapped delay line (GSM 05.05).
const TapDelayProfile& cost207_ht12();
const TapDelayProfile& cost207_ht6();
// "ht12" or "ht6".
const TapDelayProfile& profile_by_name(const std::string& name);

struct ChannelRealization {
    // Unit-power impulse response on the 1 us sample grid.
    CVec taps;
    // The same gains before the per-realization power normalization, so
    // E|raw[d]|^2 equals the profile's relative power landing on delay d.
    CVec raw_taps;
    std::uint64_t seed = 0;
    std::string profile;
};

// One Rayleigh draw per profile tap, placed on the nearest sample of the
// 1 MHz grid (rounding half up); taps sharing a sample add.
ChannelRealization cost207_ht(std::uint64_t seed, const TapDelayProfile& profile = cost207_ht12(),
                              double sample_rate = kBaseSampleRate);
ChannelRealization identity_channel();

// Linear convolution truncated to len(x).
ComplexSignal apply_channel(const ComplexSignal& x, const ChannelRealization& h);

// y[n] = x[n] exp(j2pi eps (n + n0) / K); eps in subcarrier spacings.
// eps == 0 returns x untouched.
ComplexSignal apply_cfo(const ComplexSignal& x, double eps, int K, long n0 = 0);

// N-point DFT of the zero-padded taps.
CVec freq_response(const ChannelRealization& h, std::size_t N);

void write_profile_csv(const std::filesystem::path& path, const TapDelayProfile& p);

} // namespace mcwave
