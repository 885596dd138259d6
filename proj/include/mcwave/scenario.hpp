#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "mcwave/spectrum.hpp"
#include "mcwave/waveform.hpp"

namespace mcwave {

enum class Experiment { Psd, Ser };

// unequal, or equal spectral efficiency reached through one knob.
struct SeMode {
    bool equal = false;
    SeKnob knob = SeKnob::CyclicPrefix;
    bool operator==(const SeMode&) const = default;
};

std::string_view to_string(Experiment e) noexcept;
std::string to_string(const SeMode& m);
SeMode parse_se_mode(std::string_view text);

// Defaults are the base configuration: K = 128 with 52 guards, M = 9,
// CP 32, 18-sample windows, RC roll-off 0.1, 4-QAM, sixfold RC
// interpolation over 81 symbols.
struct Scenario {
    std::string id;
    std::string family = "base";
    Experiment experiment = Experiment::Psd;
    SeMode se_mode{};
    int n_mc = 100;
    std::vector<double> snr_grid;
    std::vector<double> cfo_eps{0.0, 0.05, 0.10};
    std::uint64_t seed = 1;
    int error_target = 200;
    int frame_cap = 400;

    PulseSpec pulse{};
    int K = 128;
    int guards = 52;
    int M = 9;
    int cp_len = 32;
    int window_len = 18;
    int Q = 4;
    Allocation allocation = Allocation::Contiguous;
    InterpolatorSpec interp{};
    std::string channel = "ht12"; // ht12, ht6 or ideal
    std::vector<Scheme> schemes{Scheme::OFDM, Scheme::GFDM, Scheme::WCP_COQAM};

    bool operator==(const Scenario&) const = default;
};

inline constexpr int kFullScaleMonteCarlo = 900;

WaveformConfig config_for(const Scenario& s, Scheme scheme);
void validate(const Scenario& s);

// Flat `key = value` text; `#` starts a comment; lists are comma
// separated. Unknown or repeated keys raise ScenarioError.
Scenario parse_scenario(std::string_view text, const std::string& origin = "<text>");
Scenario load_scenario(const std::filesystem::path& path);
std::string format_scenario(const Scenario& s);

} // namespace mcwave
