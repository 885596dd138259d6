#pragma once

#include <string>
#include <string_view>

#include "mcwave/types.hpp"

namespace mcwave {

enum class PulseFamily { RC, RRC, PHYDYAS, IOTA, Dirichlet };

std::string_view to_string(PulseFamily f) noexcept;
// Accepts rc, rrc, phydyas, iota, dirichlet (case-insensitive).
PulseFamily parse_pulse_family(std::string_view name);

struct PulseSpec {
    PulseFamily family = PulseFamily::RC;
    double rolloff = 0.1; // RC / RRC only
    int overlap = 4;      // PHYDYAS only
    bool operator==(const PulseSpec&) const = default;
};

// Length-MK prototype for circular use. taps() are stored centered: the
// peak sits at index center() = L/2, so taps[n] == taps[(L - n) mod L] for
// L even (taps[n] == taps[L-1-n] for L odd). Modulators read the pulse
// through circular(), which rotates the peak to index 0.
class PrototypeFilter {
public:
    PrototypeFilter(CVec taps, PulseSpec spec, int K, int M);

    const CVec& taps() const noexcept { return taps_; }
    std::size_t size() const noexcept { return taps_.size(); }
    std::size_t center() const noexcept { return taps_.size() / 2; }
    PulseFamily family() const noexcept { return spec_.family; }
    const PulseSpec& spec() const noexcept { return spec_; }
    double rolloff() const noexcept { return spec_.rolloff; }
    int overlap() const noexcept { return spec_.overlap; }
    int K() const noexcept { return K_; }
    int M() const noexcept { return M_; }
    bool is_real() const noexcept;

    // g[n] with the peak at n = 0, n taken modulo L.
    Complex circular(long n) const noexcept;
    CVec circular_taps() const;

private:
    CVec taps_;
    PulseSpec spec_;
    int K_;
    int M_;
};

// Raised cosine sampled at t = (n - L/2)/K symbol periods over M periods
// and truncated to the block. rc_kernel is the continuous shape, reused by
// the interpolator.
double rc_kernel(double t, double rolloff) noexcept;
PrototypeFilter make_rc(int K, int M, double rolloff);
// Root raised cosine as the MK-periodic pulse: square root of the RC
// spectrum sampled on the MK-point DFT grid. Its circular autocorrelation
// vanishes at every nonzero multiple of K.
PrototypeFilter make_rrc(int K, int M, double rolloff);

// Frequency-sampling prototype of the given overlap factor (2, 3 or 4),
// support overlap*K samples centered in the block. Requires M >= overlap.
PrototypeFilter make_phydyas(int K, int M, int overlap = 4);
// Coefficients H_0..H_{overlap-1}.
std::vector<double> phydyas_coefficients(int overlap);

// Isotropic orthogonal pulse. One OQAM half-slot (K/2 samples) spans
// 1/sqrt(2) in the pulse's natural time unit; the pulse is periodized
// over the block.
PrototypeFilter make_iota(int K, int M);
// Continuous pulse in natural units. sum_n x(t - n/sqrt2)^2 = 1, so the
// energy on the real line is 1/sqrt(2).
double iota_pulse(double t) noexcept;
// Truncation order of both cosine expansions.
inline constexpr int kIotaOrder = 8;

// M contiguous DFT bins starting at -floor(M/2). Complex for even M.
PrototypeFilter make_dirichlet(int K, int M);

PrototypeFilter make_pulse(const PulseSpec& spec, int K, int M);

} // namespace mcwave
