#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcwave/errors.hpp"
#include "mcwave/pulses.hpp"
#include "mcwave/signal.hpp"

namespace mcwave {

enum class Scheme { OFDM, GFDM, WCP_COQAM };
enum class Allocation { Contiguous, NonContiguous };

std::string_view to_string(Scheme s) noexcept;
std::string_view to_string(Allocation a) noexcept;
Scheme parse_scheme(std::string_view name);
Allocation parse_allocation(std::string_view name);

struct WaveformConfig {
    Scheme scheme = Scheme::OFDM;
    int K = 128;
    int guards = 52;
    int M = 9;
    int cp_len = 32;
    int window_len = 18;
    PulseSpec pulse{};
    int Q = 4;
    Allocation allocation = Allocation::Contiguous;

    int active() const noexcept { return K - guards; }
    bool operator==(const WaveformConfig&) const = default;
};

// Throws InvalidParameter / AllocationError for unusable configurations.
void validate(const WaveformConfig& cfg);

// Grid row i carries the subcarrier at frequency (i - K/2) subcarrier
// spacings, so rows run from the most negative frequency upward.
int row_frequency(int row, int K) noexcept;
// DFT bin of row i on a K-point transform.
int row_bin(int row, int K) noexcept;

// Active rows. Contiguous: K_a rows centered. Non-contiguous: two blocks of
// floor(K_a/2) rows separated by one block width, pattern centered.
std::vector<bool> allocate(const WaveformConfig& cfg);
std::vector<bool> allocate(const WaveformConfig& cfg, Allocation mode);

class ResourceGrid {
public:
    ResourceGrid(int K, int M, std::vector<bool> active_mask);

    int K() const noexcept { return K_; }
    int M() const noexcept { return M_; }
    const std::vector<bool>& active_mask() const noexcept { return mask_; }
    bool active(int row) const { return mask_.at(static_cast<std::size_t>(row)); }
    int active_count() const noexcept;

    Complex& at(int row, int m) { return data_[index(row, m)]; }
    const Complex& at(int row, int m) const { return data_[index(row, m)]; }
    const CVec& data() const noexcept { return data_; }

private:
    std::size_t index(int row, int m) const;

    int K_;
    int M_;
    std::vector<bool> mask_;
    CVec data_; // row-major, K rows x M columns
};

class Constellation;
class Rng;

// Active cells drawn uniformly from the constellation; guards stay zero.
ResourceGrid random_grid(const WaveformConfig& cfg, const Constellation& c, Rng& rng);

struct Overhead {
    std::size_t cp = 0;
    std::size_t window = 0;
    std::size_t payload = 0;
    std::size_t total() const noexcept { return cp + window + payload; }
};

struct Frame {
    ComplexSignal signal;
    Overhead overhead;
};

// Samples per transmitted frame for cfg.
Overhead frame_overhead(const WaveformConfig& cfg);

// Half-sample Hanning ramp r[i] = sin^2(pi (i + 0.5) / (2w)); r[i] + r[w-1-i] = 1.
std::vector<double> hanning_ramp(int window_len);

// Extends block by window_len samples on each side, continuing it
// cyclically with period `period` (the payload length; the leading
// block.size() - period samples are taken to be the CP), and tapers the
// extensions with rising / falling ramps. period = 0 means block.size().
CVec apply_edge_window(std::span<const Complex> block, int window_len, std::size_t period = 0);

struct DemodResult {
    ResourceGrid grid;
    // Row-major K x M; true where the channel bin feeding the cell was
    // singular and the estimate is meaningless.
    std::vector<bool> erased;
};

// Receiver-side common phase tracking under a carrier offset of eps
// subcarrier spacings (fs / K). Each demodulation unit (OFDM symbol, GFDM
// subsymbol, OQAM half-slot) is de-rotated by the offset's phase at the
// unit's time centre, sample 0 being the first sample of the frame. The
// phase drift inside a unit, and the resulting ICI, is left alone.
struct PhaseTracking {
    double eps = 0.0;
    int K = 1;
    Complex derotation(double n) const noexcept;
};

// Frequency response length a demodulator expects: K for OFDM, K*M for the
// block schemes.
std::size_t response_length(const WaveformConfig& cfg) noexcept;

class Modem {
public:
    explicit Modem(WaveformConfig cfg) : cfg_(std::move(cfg)) {}
    virtual ~Modem() = default;

    const WaveformConfig& config() const noexcept { return cfg_; }

    virtual Frame modulate(const ResourceGrid& grid) const = 0;
    // rx must have the frame's length. response, when given, is the channel
    // frequency response on response_length(cfg) bins used for ZF.
    virtual DemodResult demodulate(std::span<const Complex> rx,
                                   std::optional<std::span<const Complex>> response = std::nullopt,
                                   const PhaseTracking* track = nullptr) const = 0;

    DemodResult demodulate(const ComplexSignal& rx,
                           std::optional<std::span<const Complex>> response = std::nullopt,
                           const PhaseTracking* track = nullptr) const {
        return demodulate(rx.span(), response, track);
    }

protected:
    void check_grid(const ResourceGrid& grid) const;

    WaveformConfig cfg_;
};

class OfdmModem : public Modem {
public:
    explicit OfdmModem(WaveformConfig cfg);
    Frame modulate(const ResourceGrid& grid) const override;
    DemodResult demodulate(std::span<const Complex> rx,
                           std::optional<std::span<const Complex>> response,
                           const PhaseTracking* track) const override;
    using Modem::demodulate;
};

class GfdmModem : public Modem {
public:
    GfdmModem(WaveformConfig cfg, PrototypeFilter pulse);
    Frame modulate(const ResourceGrid& grid) const override;
    // Zero-forcing receiver: exact pseudo-inverse of the modulation matrix.
    DemodResult demodulate(std::span<const Complex> rx,
                           std::optional<std::span<const Complex>> response,
                           const PhaseTracking* track) const override;
    using Modem::demodulate;

    const PrototypeFilter& pulse() const noexcept { return pulse_; }
    // Unframed block of K*M samples (no CP, no window).
    CVec modulate_block(const ResourceGrid& grid) const;
    // Inverse of modulate_block on an equalized block.
    CVec zf_block(std::span<const Complex> block) const;

private:
    PrototypeFilter pulse_;
    // zak_[r*M + l]: length-M DFT of the polyphase component g[r + pK].
    CVec zak_;
    double zak_tol_ = 0.0;
};

class CoqamModem : public Modem {
public:
    CoqamModem(WaveformConfig cfg, PrototypeFilter pulse);
    Frame modulate(const ResourceGrid& grid) const override;
    // Matched OQAM receiver: per-slot correlation with the conjugate pulse,
    // phase de-rotation, real part; pairs of half-slots rebuild one symbol.
    DemodResult demodulate(std::span<const Complex> rx,
                           std::optional<std::span<const Complex>> response,
                           const PhaseTracking* track) const override;
    using Modem::demodulate;

    const PrototypeFilter& pulse() const noexcept { return pulse_; }
    CVec modulate_block(const ResourceGrid& grid) const;

private:
    PrototypeFilter pulse_;
    CVec g_; // circular taps
};

std::unique_ptr<Modem> make_modem(const WaveformConfig& cfg);

double spectral_efficiency(const WaveformConfig& cfg);

enum class SeKnob { CyclicPrefix, ActiveSubcarriers, Subcarriers };
std::string_view to_string(SeKnob k) noexcept;
SeKnob parse_se_knob(std::string_view name);

inline constexpr double kSeTolerance = 0.005;

class CannotEqualize : public Error {
public:
    CannotEqualize(const std::string& what, double closest_eta, WaveformConfig closest)
        : Error(what), closest_eta_(closest_eta), closest_(std::move(closest)) {}
    double closest_eta() const noexcept { return closest_eta_; }
    const WaveformConfig& closest() const noexcept { return closest_; }

private:
    double closest_eta_;
    WaveformConfig closest_;
};

struct Equalized {
    WaveformConfig cfg;
    double eta = 0.0;
    double ref_eta = 0.0;
    SeKnob knob = SeKnob::CyclicPrefix;
    std::string adjustment; // human-readable description of what changed
};

// Adjusts `knob` on target until its spectral efficiency matches ref within
// kSeTolerance (relative). CyclicPrefix searches cp_len over the integers,
// ActiveSubcarriers searches the active count with K fixed, Subcarriers
// turns an OFDM target into one long symbol per block (K*M subcarriers,
// guards*M guards, M = 1) so its frame matches the block schemes.
Equalized equalize_spectral_efficiency(const WaveformConfig& ref, const WaveformConfig& target,
                                       SeKnob knob = SeKnob::CyclicPrefix);

} // namespace mcwave
