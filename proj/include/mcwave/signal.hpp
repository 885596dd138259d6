#pragma once

#include <span>

#include "mcwave/types.hpp"

namespace mcwave {

// Time-domain complex baseband sequence tagged with its sampling rate.
// Construction validates: at least one sample, all samples finite, rate > 0.
class ComplexSignal {
public:
    explicit ComplexSignal(CVec samples, double sample_rate = kBaseSampleRate);

    const CVec& samples() const noexcept { return samples_; }
    std::span<const Complex> span() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    double sample_rate() const noexcept { return sample_rate_; }
    const Complex& operator[](std::size_t i) const { return samples_[i]; }

    double energy() const noexcept;
    double mean_power() const noexcept { return energy() / static_cast<double>(samples_.size()); }

    // Releases the underlying buffer; the signal is left empty and must not be reused.
    CVec take() && noexcept { return std::move(samples_); }

private:
    CVec samples_;
    double sample_rate_;
};

enum class Direction { Forward, Inverse };

// Non-unitary forward transform X[k] = sum_n x[n] exp(-j2pi kn/N); the
// inverse carries the 1/N factor. Any N >= 1 (radix-2 or Bluestein).
CVec dft(std::span<const Complex> x, Direction dir = Direction::Forward);
ComplexSignal dft(const ComplexSignal& x, Direction dir = Direction::Forward);

enum class ConvolutionMode { Linear, Circular };

// Linear: len(x)+len(h)-1 outputs. Circular: len(x) outputs with h
// zero-extended to len(x); requires len(h) <= len(x).
CVec convolve(std::span<const Complex> x, std::span<const Complex> h,
              ConvolutionMode mode = ConvolutionMode::Linear);
ComplexSignal convolve(const ComplexSignal& x, std::span<const Complex> h,
                       ConvolutionMode mode = ConvolutionMode::Linear);

// Swaps halves so that DC lands at index N/2.
CVec fftshift(std::span<const Complex> x);

double energy(std::span<const Complex> x) noexcept;

} // namespace mcwave
