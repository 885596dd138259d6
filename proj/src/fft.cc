#include "mcwave/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>

#include "mcwave/errors.hpp"

namespace mcwave {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(Complex* p) { return reinterpret_cast<fftw_complex*>(p); }

} // namespace

FftPlan::FftPlan(std::size_t n) : n_(n) {
    if (n == 0) {
        throw InvalidLength("FftPlan: length must be >= 1");
    }
    CVec buf(n);
    std::lock_guard lock(planner_mutex());
    const int len = static_cast<int>(n);
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    forward_ = fftw_plan_dft_1d(len, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_FORWARD, flags);
    backward_ = fftw_plan_dft_1d(len, as_fftw(buf.data()), as_fftw(buf.data()), FFTW_BACKWARD, flags);
    if (forward_ == nullptr || backward_ == nullptr) {
        throw InvalidLength("FftPlan: FFTW could not plan this length");
    }
}

FftPlan::~FftPlan() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(static_cast<fftw_plan>(forward_));
    fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlan::execute(std::span<Complex> data, bool inverse) const {
    if (data.size() != n_) {
        throw InvalidLength("FftPlan::execute: buffer length does not match plan");
    }
    auto plan = static_cast<fftw_plan>(inverse ? backward_ : forward_);
    fftw_execute_dft(plan, as_fftw(data.data()), as_fftw(data.data()));
}

const FftPlan& fft_plan(std::size_t n) {
    thread_local std::map<std::size_t, std::unique_ptr<FftPlan>> cache;
    auto it = cache.find(n);
    if (it == cache.end()) {
        it = cache.emplace(n, std::make_unique<FftPlan>(n)).first;
    }
    return *it->second;
}

} // namespace mcwave
