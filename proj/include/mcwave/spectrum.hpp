#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "mcwave/signal.hpp"

namespace mcwave {

struct InterpolatorSpec {
    int rate = 6;         // L
    int span = 81;        // kernel length in input-rate symbols, odd
    double rolloff = 0.1; // RC kernel
    bool truncate = true; // keep exactly L*N output samples
    bool operator==(const InterpolatorSpec&) const = default;
};

void validate(const InterpolatorSpec& spec);

// RC kernel on the high-rate grid: (span - 1) * L + 1 taps, h[(span-1)L/2] = 1.
std::vector<double> interpolation_kernel(const InterpolatorSpec& spec);

// Zero-stuffs by L and filters with the RC kernel (polyphase, no explicit
// zeros). With truncation the (len(h) - 1)/2 leading transient samples are
// dropped and exactly L*N samples kept; otherwise the full linear
// convolution of length L*N + len(h) - 1 is returned.
ComplexSignal interpolate(const ComplexSignal& x, const InterpolatorSpec& spec);

struct PsdEstimate {
    std::vector<double> freq;   // bin centre / subcarrier spacing, increasing
    std::vector<double> psd_db; // peak-normalized, floored at kPsdFloorDb
    std::vector<double> power;  // mean |X|^2 / N, not normalized
    std::size_t n_avg = 0;
};

inline constexpr double kPsdFloorDb = -300.0;

// Streams frames into a running sum; frames must all have one length. The
// sum runs in insertion order so results are reproducible bit for bit.
class PeriodogramAccumulator {
public:
    void add(const ComplexSignal& frame);
    std::size_t count() const noexcept { return count_; }
    // subcarrier_spacing in Hz sets the frequency unit.
    PsdEstimate estimate(double subcarrier_spacing) const;

private:
    std::vector<double> sum_;
    std::size_t count_ = 0;
    double sample_rate_ = 0.0;
};

PsdEstimate periodogram(std::span<const ComplexSignal> frames, double subcarrier_spacing);

struct OobeMetrics {
    std::vector<double> offsets;   // in subcarrier spacings beyond the band edges
    std::vector<double> at_offset; // dB, both sides averaged in linear power
    double oob_ratio_db = 0.0;     // out-of-band / in-band power, floored
};

inline constexpr double kDefaultOffsetValues[] = {2.0, 5.0, 10.0};
inline constexpr std::span<const double> kDefaultOffsets{kDefaultOffsetValues};

// band_lo / band_hi are the outer edges of the occupied band in subcarrier
// spacings. The value at offset o is the mean linear PSD over
// [edge + o - 0.5, edge + o + 0.5] on each side.
OobeMetrics oobe_metrics(const PsdEstimate& psd, double band_lo, double band_hi,
                         std::span<const double> offsets = kDefaultOffsets);

void write_psd_csv(const std::filesystem::path& path, const PsdEstimate& psd);

} // namespace mcwave
