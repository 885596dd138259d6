#include "mcwave/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "mcwave/errors.hpp"
#include "mcwave/pulses.hpp"

namespace mcwave {

void validate(const InterpolatorSpec& spec) {
    if (spec.rate < 1) {
        throw InvalidParameter("interpolator: rate must be >= 1");
    }
    if (spec.span < 1 || spec.span % 2 == 0) {
        throw InvalidParameter("interpolator: span must be odd and positive");
    }
    if (!(spec.rolloff >= 0.0 && spec.rolloff <= 1.0)) {
        throw InvalidParameter("interpolator: roll-off must lie in [0, 1]");
    }
}

std::vector<double> interpolation_kernel(const InterpolatorSpec& spec) {
    validate(spec);
    const int half = (spec.span - 1) / 2 * spec.rate;
    std::vector<double> h(static_cast<std::size_t>(2 * half + 1));
    for (int j = -half; j <= half; ++j) {
        h[static_cast<std::size_t>(j + half)] = rc_kernel(static_cast<double>(j) / spec.rate, spec.rolloff);
    }
    return h;
}

ComplexSignal interpolate(const ComplexSignal& x, const InterpolatorSpec& spec) {
    const std::vector<double> h = interpolation_kernel(spec);
    const std::size_t n = x.size();
    if (n < static_cast<std::size_t>(spec.span)) {
        throw FrameTooShort("interpolate: frame shorter than the filter span");
    }
    const auto L = static_cast<std::size_t>(spec.rate);
    const std::size_t taps = h.size();
    const std::size_t full = n * L + taps - 1;
    const std::size_t first = spec.truncate ? (taps - 1) / 2 : 0;
    const std::size_t count = spec.truncate ? n * L : full;

    CVec y(count);
    const auto& s = x.samples();
    for (std::size_t o = 0; o < count; ++o) {
        // y[t] = sum_i x[i] h[t - iL] over i with 0 <= t - iL < taps.
        const std::size_t t = o + first;
        const std::size_t i_hi = std::min(t / L, n - 1);
        const std::size_t i_lo = t >= taps - 1 ? (t - (taps - 1) + L - 1) / L : 0;
        Complex acc{};
        for (std::size_t i = i_lo; i <= i_hi; ++i) {
            acc += s[i] * h[t - i * L];
        }
        y[o] = acc;
    }
    return ComplexSignal(std::move(y), x.sample_rate() * spec.rate);
}

void PeriodogramAccumulator::add(const ComplexSignal& frame) {
    if (count_ == 0) {
        sum_.assign(frame.size(), 0.0);
        sample_rate_ = frame.sample_rate();
    } else if (frame.size() != sum_.size() || frame.sample_rate() != sample_rate_) {
        throw ShapeError("periodogram: frames differ in length or rate");
    }
    const CVec X = dft(frame.span());
    const double inv = 1.0 / static_cast<double>(X.size());
    for (std::size_t k = 0; k < X.size(); ++k) {
        sum_[k] += std::norm(X[k]) * inv;
    }
    ++count_;
}

PsdEstimate PeriodogramAccumulator::estimate(double subcarrier_spacing) const {
    if (count_ == 0) {
        throw ShapeError("periodogram: no frames");
    }
    if (!(subcarrier_spacing > 0.0)) {
        throw InvalidParameter("periodogram: subcarrier spacing must be positive");
    }
    const std::size_t n = sum_.size();
    const std::size_t half = n / 2;
    PsdEstimate out;
    out.n_avg = count_;
    out.freq.resize(n);
    out.power.resize(n);
    out.psd_db.resize(n);
    const double bin_hz = sample_rate_ / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.power[(i + half) % n] = sum_[i] / static_cast<double>(count_);
    }
    const double peak = *std::max_element(out.power.begin(), out.power.end());
    for (std::size_t b = 0; b < n; ++b) {
        out.freq[b] = (static_cast<double>(b) - static_cast<double>(half)) * bin_hz / subcarrier_spacing;
        const double db = peak > 0.0 ? 10.0 * std::log10(out.power[b] / peak) : kPsdFloorDb;
        out.psd_db[b] = std::isfinite(db) ? std::max(db, kPsdFloorDb) : kPsdFloorDb;
    }
    return out;
}

PsdEstimate periodogram(std::span<const ComplexSignal> frames, double subcarrier_spacing) {
    if (frames.empty()) {
        throw ShapeError("periodogram: no frames");
    }
    PeriodogramAccumulator acc;
    for (const ComplexSignal& f : frames) {
        acc.add(f);
    }
    return acc.estimate(subcarrier_spacing);
}

OobeMetrics oobe_metrics(const PsdEstimate& psd, double band_lo, double band_hi, std::span<const double> offsets) {
    if (psd.freq.empty() || psd.freq.size() != psd.psd_db.size()) {
        throw ShapeError("oobe_metrics: malformed PSD");
    }
    if (!(band_lo < band_hi) || band_lo < psd.freq.front() || band_hi > psd.freq.back()) {
        throw RangeError("oobe_metrics: band outside the frequency grid");
    }
    std::vector<double> lin(psd.psd_db.size());
    for (std::size_t i = 0; i < lin.size(); ++i) {
        lin[i] = std::isfinite(psd.psd_db[i]) ? std::pow(10.0, psd.psd_db[i] / 10.0) : 0.0;
    }
    auto window_mean = [&](double centre) {
        double acc = 0.0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < lin.size(); ++i) {
            if (std::abs(psd.freq[i] - centre) <= 0.5) {
                acc += lin[i];
                ++cnt;
            }
        }
        if (cnt == 0) {
            throw RangeError("oobe_metrics: offset falls outside the frequency grid");
        }
        return acc / static_cast<double>(cnt);
    };
    auto to_db = [](double v) { return v > 0.0 ? std::max(10.0 * std::log10(v), kPsdFloorDb) : kPsdFloorDb; };

    OobeMetrics m;
    for (double o : offsets) {
        const double v = 0.5 * (window_mean(band_hi + o) + window_mean(band_lo - o));
        m.offsets.push_back(o);
        m.at_offset.push_back(to_db(v));
    }
    double in = 0.0;
    double out = 0.0;
    for (std::size_t i = 0; i < lin.size(); ++i) {
        (psd.freq[i] >= band_lo && psd.freq[i] <= band_hi ? in : out) += lin[i];
    }
    m.oob_ratio_db = in > 0.0 ? to_db(out / in) : kPsdFloorDb;
    return m;
}

void write_psd_csv(const std::filesystem::path& path, const PsdEstimate& psd) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) {
        throw Error("cannot write " + path.string());
    }
    std::fputs("freq_over_df,psd_db\n", f);
    for (std::size_t i = 0; i < psd.freq.size(); ++i) {
        std::fprintf(f, "%.9g,%.9g\n", psd.freq[i], psd.psd_db[i]);
    }
    std::fclose(f);
}

} // namespace mcwave
