#include <array>
#include <cmath>

#include "mcwave/pulses.hpp"

// Isotropic pulse built from the Gaussian g(t) = exp(-pi t^2) by two
// orthogonalization steps on the lattice tau0 = nu0 = 1/sqrt(2):
//   time:      multiply by P(t) = (sum_n g^2(t - n tau0))^(-1/2)
//   frequency: multiply by Q(f), the same operator in the dual domain.
// P and Q are periodic and expanded in cosine series truncated at
// kIotaOrder terms; coefficients come from trapezoid quadrature over one
// period, which is spectrally accurate for smooth periodic integrands.

namespace mcwave {

namespace {

constexpr double kTau0 = 0.70710678118654752440;
constexpr int kQuadrature = 512;

using Coeffs = std::array<double, kIotaOrder + 1>;

double gauss(double t) { return std::exp(-kPi * t * t); }

template <class F>
Coeffs cosine_series(F&& fn, double period) {
    Coeffs c{};
    for (int l = 0; l <= kIotaOrder; ++l) {
        double acc = 0.0;
        for (int i = 0; i < kQuadrature; ++i) {
            const double t = period * i / kQuadrature;
            acc += fn(t) * std::cos(kTwoPi * l * t / period);
        }
        c[static_cast<std::size_t>(l)] = (l == 0 ? 1.0 : 2.0) * acc / kQuadrature;
    }
    return c;
}

struct IotaCoefficients {
    Coeffs p;
    Coeffs q;
};

IotaCoefficients compute() {
    IotaCoefficients out{};
    out.p = cosine_series(
        [](double t) {
            double s = 0.0;
            for (int n = -30; n <= 30; ++n) {
                const double d = t - n * kTau0;
                s += std::exp(-2.0 * kPi * d * d);
            }
            return 1.0 / std::sqrt(s);
        },
        kTau0);
    // Spectrum of P(t) g(t); the Gaussian is its own transform.
    auto y1 = [&](double f) {
        double s = out.p[0] * gauss(f);
        for (int l = 1; l <= kIotaOrder; ++l) {
            s += out.p[static_cast<std::size_t>(l)] * 0.5 * (gauss(f - l / kTau0) + gauss(f + l / kTau0));
        }
        return s;
    };
    out.q = cosine_series(
        [&](double f) {
            double s = 0.0;
            for (int k = -40; k <= 40; ++k) {
                const double v = y1(f - k * kTau0);
                s += v * v;
            }
            return 1.0 / std::sqrt(s);
        },
        kTau0);
    return out;
}

const IotaCoefficients& coefficients() {
    static const IotaCoefficients c = compute();
    return c;
}

} // namespace

double iota_pulse(double t) noexcept {
    const IotaCoefficients& c = coefficients();
    // P has period tau0 and the Q shifts are k/nu0 = 2k tau0, so P factors out.
    double p = c.p[0];
    double s = c.q[0] * gauss(t);
    for (int k = 1; k <= kIotaOrder; ++k) {
        const auto ku = static_cast<std::size_t>(k);
        p += c.p[ku] * std::cos(kTwoPi * k * t / kTau0);
        s += c.q[ku] * 0.5 * (gauss(t - k / kTau0) + gauss(t + k / kTau0));
    }
    return p * s;
}

} // namespace mcwave
