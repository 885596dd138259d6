#include "mcwave/pulses.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mcwave/errors.hpp"
#include "mcwave/signal.hpp"

namespace mcwave {

namespace {

void check_grid(int K, int M, const char* who) {
    if (K < 1 || M < 1) {
        throw InvalidParameter(std::string(who) + ": K and M must be >= 1");
    }
}

void check_rolloff(double a, const char* who) {
    if (!(a >= 0.0 && a <= 1.0)) {
        throw InvalidParameter(std::string(who) + ": roll-off must lie in [0, 1]");
    }
}

CVec normalized(CVec taps) {
    const double e = std::sqrt(energy(taps));
    for (Complex& v : taps) {
        v /= e;
    }
    return taps;
}

// Rotate a peak-at-zero sequence so the peak lands on index L/2.
CVec centered_from_circular(const CVec& g) {
    const std::size_t n = g.size();
    const std::size_t c = n / 2;
    CVec taps(n);
    for (std::size_t i = 0; i < n; ++i) {
        taps[(i + c) % n] = g[i];
    }
    return taps;
}

// Raised-cosine spectrum in units of the symbol rate.
double rc_spectrum(double f, double a) {
    f = std::abs(f);
    const double lo = (1.0 - a) / 2.0;
    const double hi = (1.0 + a) / 2.0;
    if (a == 0.0) {
        if (f < 0.5) return 1.0;
        return f == 0.5 ? 0.5 : 0.0;
    }
    if (f <= lo) return 1.0;
    if (f > hi) return 0.0;
    return 0.5 * (1.0 + std::cos(kPi / a * (f - lo)));
}

// Signed frequency index of DFT bin l on an n-point grid.
long signed_bin(std::size_t l, std::size_t n) {
    return l < (n + 1) / 2 ? static_cast<long>(l) : static_cast<long>(l) - static_cast<long>(n);
}

} // namespace

std::string_view to_string(PulseFamily f) noexcept {
    switch (f) {
    case PulseFamily::RC: return "rc";
    case PulseFamily::RRC: return "rrc";
    case PulseFamily::PHYDYAS: return "phydyas";
    case PulseFamily::IOTA: return "iota";
    case PulseFamily::Dirichlet: return "dirichlet";
    }
    return "?";
}

PulseFamily parse_pulse_family(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "rc") return PulseFamily::RC;
    if (s == "rrc") return PulseFamily::RRC;
    if (s == "phydyas") return PulseFamily::PHYDYAS;
    if (s == "iota") return PulseFamily::IOTA;
    if (s == "dirichlet") return PulseFamily::Dirichlet;
    throw InvalidParameter("unknown pulse family '" + std::string(name) + "'");
}

PrototypeFilter::PrototypeFilter(CVec taps, PulseSpec spec, int K, int M)
    : taps_(std::move(taps)), spec_(spec), K_(K), M_(M) {
    if (taps_.size() != static_cast<std::size_t>(K) * static_cast<std::size_t>(M)) {
        throw ShapeError("PrototypeFilter: length must equal K*M");
    }
}

bool PrototypeFilter::is_real() const noexcept {
    return std::all_of(taps_.begin(), taps_.end(), [](const Complex& v) { return v.imag() == 0.0; });
}

Complex PrototypeFilter::circular(long n) const noexcept {
    const long len = static_cast<long>(taps_.size());
    long idx = (n + static_cast<long>(center())) % len;
    if (idx < 0) idx += len;
    return taps_[static_cast<std::size_t>(idx)];
}

CVec PrototypeFilter::circular_taps() const {
    CVec g(taps_.size());
    for (std::size_t n = 0; n < g.size(); ++n) {
        g[n] = circular(static_cast<long>(n));
    }
    return g;
}

double rc_kernel(double t, double a) noexcept {
    auto sinc = [](double x) { return x == 0.0 ? 1.0 : std::sin(kPi * x) / (kPi * x); };
    const double den = 1.0 - (2.0 * a * t) * (2.0 * a * t);
    if (std::abs(den) < 1e-12) {
        return kPi / 4.0 * sinc(1.0 / (2.0 * a));
    }
    return sinc(t) * std::cos(kPi * a * t) / den;
}

PrototypeFilter make_rc(int K, int M, double rolloff) {
    check_grid(K, M, "make_rc");
    check_rolloff(rolloff, "make_rc");
    const std::size_t n = static_cast<std::size_t>(K) * static_cast<std::size_t>(M);
    const double c = static_cast<double>(n / 2);
    CVec taps(n);
    for (std::size_t i = 0; i < n; ++i) {
        taps[i] = rc_kernel((static_cast<double>(i) - c) / K, rolloff);
    }
    return PrototypeFilter(normalized(std::move(taps)), {PulseFamily::RC, rolloff, 0}, K, M);
}

PrototypeFilter make_rrc(int K, int M, double rolloff) {
    check_grid(K, M, "make_rrc");
    check_rolloff(rolloff, "make_rrc");
    const std::size_t n = static_cast<std::size_t>(K) * static_cast<std::size_t>(M);
    CVec spec(n);
    for (std::size_t l = 0; l < n; ++l) {
        const double f = static_cast<double>(signed_bin(l, n)) / M;
        spec[l] = std::sqrt(rc_spectrum(f, rolloff));
    }
    // The spectrum is real and even, so the pulse is real; drop rounding noise.
    CVec g = dft(spec, Direction::Inverse);
    for (Complex& v : g) {
        v = v.real();
    }
    return PrototypeFilter(normalized(centered_from_circular(g)), {PulseFamily::RRC, rolloff, 0}, K, M);
}

std::vector<double> phydyas_coefficients(int overlap) {
    switch (overlap) {
    case 2: return {1.0, std::sqrt(2.0) / 2.0};
    case 3: return {1.0, 0.911438, 0.411438};
    case 4: return {1.0, 0.971960, std::sqrt(2.0) / 2.0, 0.235147};
    default: throw InvalidParameter("make_phydyas: overlap must be 2, 3 or 4");
    }
}

PrototypeFilter make_phydyas(int K, int M, int overlap) {
    check_grid(K, M, "make_phydyas");
    const std::vector<double> H = phydyas_coefficients(overlap);
    if (M < overlap) {
        throw InvalidParameter("make_phydyas: M must be >= overlap");
    }
    const long n = static_cast<long>(K) * M;
    const long c = n / 2;
    const long half = static_cast<long>(overlap) * K / 2;
    const double period = static_cast<double>(overlap) * K;
    CVec taps(static_cast<std::size_t>(n), Complex{});
    for (long u = -half; u <= half; ++u) {
        const long idx = c + u;
        if (idx < 0 || idx >= n) continue;
        double v = H[0];
        for (int k = 1; k < overlap; ++k) {
            v += 2.0 * H[static_cast<std::size_t>(k)] * std::cos(kTwoPi * k * u / period);
        }
        taps[static_cast<std::size_t>(idx)] = v;
    }
    return PrototypeFilter(normalized(std::move(taps)), {PulseFamily::PHYDYAS, 0.0, overlap}, K, M);
}

PrototypeFilter make_iota(int K, int M) {
    check_grid(K, M, "make_iota");
    const long n = static_cast<long>(K) * M;
    const long c = n / 2;
    const double step = std::sqrt(2.0) / K;
    const double period = step * static_cast<double>(n);
    CVec taps(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
        const double t = static_cast<double>(i - c) * step;
        double v = 0.0;
        for (int w = -3; w <= 3; ++w) {
            v += iota_pulse(t + w * period);
        }
        taps[static_cast<std::size_t>(i)] = v;
    }
    return PrototypeFilter(normalized(std::move(taps)), {PulseFamily::IOTA, 0.0, 0}, K, M);
}

PrototypeFilter make_dirichlet(int K, int M) {
    check_grid(K, M, "make_dirichlet");
    const std::size_t n = static_cast<std::size_t>(K) * static_cast<std::size_t>(M);
    CVec spec(n, Complex{});
    for (int i = 0; i < M; ++i) {
        const long l = static_cast<long>(i) - M / 2;
        spec[static_cast<std::size_t>((l + static_cast<long>(n)) % static_cast<long>(n))] = 1.0;
    }
    CVec g = dft(spec, Direction::Inverse);
    if (M % 2 == 1) {
        for (Complex& v : g) {
            v = v.real();
        }
    }
    return PrototypeFilter(normalized(centered_from_circular(g)), {PulseFamily::Dirichlet, 0.0, 0}, K, M);
}

PrototypeFilter make_pulse(const PulseSpec& spec, int K, int M) {
    switch (spec.family) {
    case PulseFamily::RC: return make_rc(K, M, spec.rolloff);
    case PulseFamily::RRC: return make_rrc(K, M, spec.rolloff);
    case PulseFamily::PHYDYAS: return make_phydyas(K, M, spec.overlap);
    case PulseFamily::IOTA: return make_iota(K, M);
    case PulseFamily::Dirichlet: return make_dirichlet(K, M);
    }
    throw InvalidParameter("make_pulse: unknown family");
}

} // namespace mcwave
