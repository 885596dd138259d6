#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "mcwave/channel.hpp"
#include "mcwave/scenario.hpp"
#include "mcwave/spectrum.hpp"
#include "mcwave/waveform.hpp"

namespace mcwave {

inline constexpr std::string_view kVersion = "mcwave 0.1.0";

struct SchemeResult {
    Scheme scheme = Scheme::OFDM;
    WaveformConfig cfg;
    double eta = 0.0;
    std::string adjustment = "none";
    std::size_t frame_len = 0;
    // Occupied band edges in base subcarrier spacings.
    double band_lo = 0.0;
    double band_hi = 0.0;
    std::optional<PsdEstimate> psd;
    std::optional<OobeMetrics> oobe;
};

struct SerPoint {
    Scheme scheme = Scheme::OFDM;
    double snr_db = 0.0;
    double cfo_eps = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t symbols = 0;
    std::uint64_t frames = 0;
    double ser() const noexcept { return symbols ? static_cast<double>(errors) / static_cast<double>(symbols) : 0.0; }
};

struct ResultSet {
    Scenario scenario;
    std::vector<SchemeResult> schemes;
    std::vector<SerPoint> ser;
    std::optional<ChannelRealization> channel;
    std::string se_reference; // scheme whose efficiency the others were matched to
};

// Per-scheme configurations after the scenario's spectral-efficiency mode
// is applied. In equal mode the OFDM target is matched to the block
// schemes first; if the knob cannot reach them, the block schemes are
// matched to OFDM instead.
std::vector<SchemeResult> resolve_configs(const Scenario& s, std::string* reference = nullptr);

// Occupied band of cfg in units of the spacing fs / K_ref.
std::pair<double, double> occupied_band(const WaveformConfig& cfg, int K_ref);

ResultSet run_psd(const Scenario& s);
ResultSet run_ser(const Scenario& s);
ResultSet run_scenario(const Scenario& s);

// Writes psd_<scheme>.csv / ser.csv / meta.txt into dir (created).
void write_result(const std::filesystem::path& dir, const ResultSet& r);

} // namespace mcwave
