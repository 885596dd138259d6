#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mcwave/experiments.hpp"
#include "mcwave/scenario.hpp"

namespace mcwave {

using Manifest = std::vector<Scenario>;

// Every parameter family at desk scale: the base configuration plus one family
// per varied parameter. Each family has a PSD scenario per efficiency mode
// (unequal, equal_cp, equal_active, equal_subcarriers) and, where the
// variation can change error rates, one SER scenario.
Manifest builtin_manifest();
// Families other than "base" in the built-in manifest, in order.
std::vector<std::string> builtin_families();

// One scenario file path per line, relative to the manifest's directory;
// blank lines and `#` comments ignored.
Manifest load_manifest(const std::filesystem::path& path);

// Throws ManifestError on duplicate ids.
void check_manifest(const Manifest& m);

// Applies CLI-level overrides to every scenario.
struct SuiteOverrides {
    std::optional<std::uint64_t> seed;
    bool full_scale = false;
};
void apply_overrides(Manifest& m, const SuiteOverrides& o);

struct SuiteOutcome {
    std::vector<ResultSet> results;
    std::vector<std::pair<std::string, std::string>> failures; // id, message
};

// Runs each scenario into out_dir/<id>/. A failing scenario is recorded
// and the rest still run.
SuiteOutcome run_suite(const Manifest& m, const std::filesystem::path& out_dir, bool keep_results = true);

} // namespace mcwave
