#include "mcwave/manifest.hpp"

#include <fstream>
#include <set>

#include "mcwave/errors.hpp"

namespace mcwave {

namespace {

struct Family {
    const char* name;
    bool ser;
    void (*apply)(Scenario&);
};

const std::vector<Family>& families() {
    static const std::vector<Family> f{
        {"base", true, [](Scenario&) {}},
        {"rrc", true, [](Scenario& s) { s.pulse.family = PulseFamily::RRC; }},
        {"phydyas", true, [](Scenario& s) { s.pulse.family = PulseFamily::PHYDYAS; s.M = 8; }},
        {"iota", false, [](Scenario& s) { s.pulse.family = PulseFamily::IOTA; }},
        {"dirichlet", true, [](Scenario& s) { s.pulse.family = PulseFamily::Dirichlet; }},
        {"m5_k128", true, [](Scenario& s) { s.M = 5; }},
        {"m5_k64", true, [](Scenario& s) { s.M = 5; s.K = 64; s.guards = 26; }},
        {"m9_k64", true, [](Scenario& s) { s.K = 64; s.guards = 26; }},
        {"window36", true, [](Scenario& s) { s.window_len = 36; }},
        {"filter41", false, [](Scenario& s) { s.interp.span = 41; }},
        {"cp64", true, [](Scenario& s) { s.cp_len = 64; }},
        {"rate4", false, [](Scenario& s) { s.interp.rate = 4; }},
        {"rate10", false, [](Scenario& s) { s.interp.rate = 10; }},
        {"rolloff04", true, [](Scenario& s) { s.pulse.rolloff = 0.4; }},
        {"qam16", true, [](Scenario& s) { s.Q = 16; }},
        {"noncontiguous", false, [](Scenario& s) { s.allocation = Allocation::NonContiguous; }},
    };
    return f;
}

} // namespace

Manifest builtin_manifest() {
    Manifest m;
    const SeMode modes[] = {{false, SeKnob::CyclicPrefix},
                            {true, SeKnob::CyclicPrefix},
                            {true, SeKnob::ActiveSubcarriers},
                            {true, SeKnob::Subcarriers}};
    for (const Family& f : families()) {
        for (const SeMode& mode : modes) {
            Scenario s;
            f.apply(s);
            s.family = f.name;
            s.experiment = Experiment::Psd;
            s.se_mode = mode;
            s.id = std::string(f.name) + "_psd_" + to_string(mode);
            try {
                (void)resolve_configs(s);
            } catch (const CannotEqualize&) {
                continue; // the knob cannot reach 0.5% for this family
            }
            m.push_back(s);
        }
        if (f.ser) {
            Scenario s;
            f.apply(s);
            s.family = f.name;
            s.experiment = Experiment::Ser;
            s.snr_grid = {0, 5, 10, 15, 20, 25, 30};
            s.id = std::string(f.name) + "_ser";
            m.push_back(s);
        }
    }
    return m;
}

std::vector<std::string> builtin_families() {
    std::vector<std::string> out;
    for (const Family& f : families()) {
        if (std::string(f.name) != "base") out.emplace_back(f.name);
    }
    return out;
}

Manifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ManifestError("cannot read manifest " + path.string());
    Manifest m;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        const auto e = line.find_last_not_of(" \t\r");
        std::filesystem::path p = line.substr(b, e - b + 1);
        if (p.is_relative()) p = path.parent_path() / p;
        try {
            m.push_back(load_scenario(p));
        } catch (const Error& err) {
            throw ManifestError(err.what());
        }
    }
    check_manifest(m);
    return m;
}

void check_manifest(const Manifest& m) {
    std::set<std::string> ids;
    for (const Scenario& s : m) {
        if (!ids.insert(s.id).second) throw ManifestError("duplicate scenario id '" + s.id + "'");
    }
}

void apply_overrides(Manifest& m, const SuiteOverrides& o) {
    for (Scenario& s : m) {
        if (o.seed) s.seed = *o.seed;
        if (o.full_scale) s.n_mc = kFullScaleMonteCarlo;
    }
}

SuiteOutcome run_suite(const Manifest& m, const std::filesystem::path& out_dir, bool keep_results) {
    check_manifest(m);
    SuiteOutcome out;
    for (const Scenario& s : m) {
        try {
            ResultSet r = run_scenario(s);
            write_result(out_dir / s.id, r);
            if (keep_results) out.results.push_back(std::move(r));
        } catch (const Error& e) {
            out.failures.emplace_back(s.id, e.what());
        }
    }
    return out;
}

} // namespace mcwave
