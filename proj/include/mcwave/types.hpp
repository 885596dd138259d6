#pragma once

#include <complex>
#include <numbers>
#include <vector>

namespace mcwave {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Base sampling rate of every waveform before oversampling.
inline constexpr double kBaseSampleRate = 1.0e6;

} // namespace mcwave
