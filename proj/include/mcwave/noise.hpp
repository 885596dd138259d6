#pragma once

#include <optional>

#include "mcwave/rng.hpp"
#include "mcwave/signal.hpp"

namespace mcwave {

// Adds circularly-symmetric complex Gaussian noise so that
// reference_power / noise_variance equals snr_db. The reference defaults to
// the measured mean power of x. snr_db = +inf returns x unchanged and draws
// nothing from rng.
ComplexSignal awgn(const ComplexSignal& x, double snr_db, Rng& rng,
                   std::optional<double> reference_power = std::nullopt);

double db_to_linear(double db) noexcept;
double linear_to_db(double lin) noexcept;

} // namespace mcwave
