#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "mcwave/channel.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/experiments.hpp"
#include "mcwave/manifest.hpp"

namespace fs = std::filesystem;
using namespace mcwave;

namespace {

void print_summary(const ResultSet& r) {
    std::printf("%s (%s, %s)\n", r.scenario.id.c_str(), std::string(to_string(r.scenario.experiment)).c_str(),
                to_string(r.scenario.se_mode).c_str());
    for (const SchemeResult& s : r.schemes) {
        std::printf("  %-10s eta=%.4f  %s", std::string(to_string(s.scheme)).c_str(), s.eta, s.adjustment.c_str());
        if (s.oobe) {
            std::printf("  psd@2/5/10df = %.1f / %.1f / %.1f dB", s.oobe->at_offset[0], s.oobe->at_offset[1],
                        s.oobe->at_offset[2]);
        }
        std::printf("\n");
    }
}

int report(const SuiteOutcome& out, const fs::path& dir) {
    for (const auto& [id, msg] : out.failures) {
        std::fprintf(stderr, "FAILED %s: %s\n", id.c_str(), msg.c_str());
    }
    std::printf("%zu scenario(s) written to %s, %zu failed\n", out.results.size(), dir.c_str(), out.failures.size());
    return out.failures.empty() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Multicarrier waveform OOBE / CFO simulator"};
    app.require_subcommand(1);

    std::optional<std::uint64_t> seed;
    fs::path out_dir = "results";
    bool full_scale = false;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "Override every scenario's seed");
        sub->add_option("--out", out_dir, "Output directory")->capture_default_str();
        sub->add_flag("--full-scale", full_scale, "Use 900 Monte Carlo frames per PSD");
    };

    fs::path scenario_path;
    auto* run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("--scenario", scenario_path, "Scenario file")->required();
    add_common(run);

    std::string manifest_arg;
    auto* suite = app.add_subcommand("suite", "Run every scenario of a manifest ('builtin' for the shipped one)");
    suite->add_option("--manifest", manifest_arg, "Manifest file or 'builtin'")->required();
    add_common(suite);

    fs::path write_dir;
    auto* list = app.add_subcommand("list-scenarios", "List the built-in scenarios");
    list->add_option("--write", write_dir, "Also write each as a scenario file plus manifest.txt here");

    std::string profile_name;
    std::string variant = "ht12";
    fs::path profile_out;
    auto* exp = app.add_subcommand("export-profile", "Write a tap delay profile as CSV");
    exp->add_option("profile", profile_name, "Profile family (cost207)")->required()->check(CLI::IsMember({"cost207"}));
    exp->add_option("--variant", variant, "ht12 or ht6")->capture_default_str()->check(CLI::IsMember({"ht12", "ht6"}));
    exp->add_option("--out", profile_out, "CSV path (stdout when omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        const SuiteOverrides overrides{seed, full_scale};
        if (*run) {
            Manifest m{load_scenario(scenario_path)};
            apply_overrides(m, overrides);
            const SuiteOutcome out = run_suite(m, out_dir);
            for (const ResultSet& r : out.results) print_summary(r);
            return report(out, out_dir);
        }
        if (*suite) {
            Manifest m = manifest_arg == "builtin" ? builtin_manifest() : load_manifest(manifest_arg);
            apply_overrides(m, overrides);
            const SuiteOutcome out = run_suite(m, out_dir);
            for (const ResultSet& r : out.results) print_summary(r);
            return report(out, out_dir);
        }
        if (*list) {
            const Manifest m = builtin_manifest();
            if (!write_dir.empty()) fs::create_directories(write_dir);
            std::ofstream manifest;
            if (!write_dir.empty()) manifest.open(write_dir / "manifest.txt");
            for (const Scenario& s : m) {
                std::printf("%-32s %-14s %s %s\n", s.id.c_str(), s.family.c_str(),
                            std::string(to_string(s.experiment)).c_str(), to_string(s.se_mode).c_str());
                if (!write_dir.empty()) {
                    std::ofstream(write_dir / (s.id + ".scn")) << format_scenario(s);
                    manifest << s.id << ".scn\n";
                }
            }
            return 0;
        }
        if (*exp) {
            const TapDelayProfile& p = profile_by_name(variant);
            if (profile_out.empty()) {
                std::printf("delay_us,power_db\n");
                for (std::size_t i = 0; i < p.delays_us.size(); ++i) {
                    std::printf("%.9g,%.9g\n", p.delays_us[i], p.powers_db[i]);
                }
            } else {
                write_profile_csv(profile_out, p);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
