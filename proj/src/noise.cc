#include "mcwave/noise.hpp"

#include <cmath>

namespace mcwave {

double db_to_linear(double db) noexcept { return std::pow(10.0, db / 10.0); }

double linear_to_db(double lin) noexcept { return 10.0 * std::log10(lin); }

ComplexSignal awgn(const ComplexSignal& x, double snr_db, Rng& rng,
                   std::optional<double> reference_power) {
    if (std::isinf(snr_db) && snr_db > 0) {
        return x;
    }
    const double power = reference_power.value_or(x.mean_power());
    const double variance = power / db_to_linear(snr_db);
    CVec y = x.samples();
    for (Complex& v : y) {
        v += rng.complex_normal(variance);
    }
    return ComplexSignal(std::move(y), x.sample_rate());
}

} // namespace mcwave
