#pragma once

#include <cstddef>
#include <span>

#include "mcwave/types.hpp"

namespace mcwave {

// Fixed-length transform backed by an FFTW plan (FFTW_ESTIMATE, so plans
// are deterministic and cheap to build). execute() is thread-safe for a
// given plan; plan creation is not and goes through fft_plan().
class FftPlan {
public:
    explicit FftPlan(std::size_t n);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t size() const noexcept { return n_; }

    // In-place, unnormalized. inverse=true uses exp(+j...).
    void execute(std::span<Complex> data, bool inverse) const;

private:
    std::size_t n_;
    void* forward_ = nullptr;
    void* backward_ = nullptr;
};

// Per-thread cache of plans keyed by length.
const FftPlan& fft_plan(std::size_t n);

} // namespace mcwave
