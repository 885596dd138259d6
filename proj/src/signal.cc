#include "mcwave/signal.hpp"

#include <cmath>

#include "mcwave/errors.hpp"
#include "mcwave/fft.hpp"

namespace mcwave {

ComplexSignal::ComplexSignal(CVec samples, double sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
    if (samples_.empty()) {
        throw InvalidLength("ComplexSignal: at least one sample required");
    }
    if (!(sample_rate_ > 0.0) || !std::isfinite(sample_rate_)) {
        throw InvalidParameter("ComplexSignal: sample rate must be positive");
    }
    for (const Complex& s : samples_) {
        if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
            throw InvalidParameter("ComplexSignal: non-finite sample");
        }
    }
}

double ComplexSignal::energy() const noexcept { return mcwave::energy(samples_); }

double energy(std::span<const Complex> x) noexcept {
    double e = 0.0;
    for (const Complex& v : x) {
        e += std::norm(v);
    }
    return e;
}

CVec dft(std::span<const Complex> x, Direction dir) {
    if (x.empty()) {
        throw InvalidLength("dft: empty input");
    }
    CVec out(x.begin(), x.end());
    const bool inverse = dir == Direction::Inverse;
    fft_plan(out.size()).execute(out, inverse);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(out.size());
        for (Complex& v : out) {
            v *= scale;
        }
    }
    return out;
}

ComplexSignal dft(const ComplexSignal& x, Direction dir) {
    return ComplexSignal(dft(x.span(), dir), x.sample_rate());
}

CVec convolve(std::span<const Complex> x, std::span<const Complex> h, ConvolutionMode mode) {
    if (x.empty() || h.empty()) {
        throw InvalidLength("convolve: empty operand");
    }
    if (mode == ConvolutionMode::Linear) {
        CVec y(x.size() + h.size() - 1, Complex{});
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (std::size_t j = 0; j < h.size(); ++j) {
                y[i + j] += x[i] * h[j];
            }
        }
        return y;
    }
    if (h.size() > x.size()) {
        throw InvalidLength("convolve: circular mode requires len(h) <= len(x)");
    }
    const std::size_t n = x.size();
    CVec y(n, Complex{});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < h.size(); ++j) {
            y[(i + j) % n] += x[i] * h[j];
        }
    }
    return y;
}

ComplexSignal convolve(const ComplexSignal& x, std::span<const Complex> h, ConvolutionMode mode) {
    return ComplexSignal(convolve(x.span(), h, mode), x.sample_rate());
}

CVec fftshift(std::span<const Complex> x) {
    const std::size_t n = x.size();
    const std::size_t shift = n / 2;
    CVec out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[(i + shift) % n] = x[i];
    }
    return out;
}

} // namespace mcwave
