#include "mcwave/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "mcwave/channel.hpp"
#include "mcwave/constellation.hpp"
#include "mcwave/errors.hpp"

namespace mcwave {

std::string_view to_string(Experiment e) noexcept { return e == Experiment::Psd ? "psd" : "ser"; }

std::string to_string(const SeMode& m) {
    return m.equal ? "equal_" + std::string(to_string(m.knob)) : "unequal";
}

SeMode parse_se_mode(std::string_view text) {
    if (text == "unequal") return {};
    if (text.starts_with("equal_")) return {true, parse_se_knob(text.substr(6))};
    if (text == "equal") return {true, SeKnob::CyclicPrefix};
    throw ScenarioError("unknown se_mode '" + std::string(text) + "'");
}

WaveformConfig config_for(const Scenario& s, Scheme scheme) {
    WaveformConfig c;
    c.scheme = scheme;
    c.K = s.K;
    c.guards = s.guards;
    c.M = s.M;
    c.cp_len = s.cp_len;
    c.window_len = s.window_len;
    c.pulse = s.pulse;
    c.Q = s.Q;
    c.allocation = s.allocation;
    return c;
}

void validate(const Scenario& s) {
    if (s.id.empty()) throw ScenarioError("scenario without id");
    const std::string where = "scenario '" + s.id + "': ";
    if (s.n_mc < 1) throw ScenarioError(where + "n_mc must be >= 1");
    if (s.schemes.empty()) throw ScenarioError(where + "no schemes");
    if (s.experiment == Experiment::Ser) {
        if (s.snr_grid.empty()) throw ScenarioError(where + "SER scenario needs a non-empty snr_grid");
        if (s.cfo_eps.empty()) throw ScenarioError(where + "SER scenario needs cfo_eps");
        if (s.error_target < 1 || s.frame_cap < 1) throw ScenarioError(where + "error_target and frame_cap must be >= 1");
    }
    if (s.channel != "ideal") {
        try {
            (void)profile_by_name(s.channel);
        } catch (const Error& e) {
            throw ScenarioError(where + e.what());
        }
    }
    try {
        validate(s.interp);
        for (Scheme sc : s.schemes) {
            validate(config_for(s, sc));
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError(where + e.what());
    }
}

namespace {

std::string trim(std::string_view v) {
    const auto b = v.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = v.find_last_not_of(" \t\r");
    return std::string(v.substr(b, e - b + 1));
}

std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

double to_double(const std::string& v, const std::string& key) {
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used == v.size()) return d;
    } catch (const std::exception&) {
    }
    throw ScenarioError("key '" + key + "': not a number: '" + v + "'");
}

long long to_int(const std::string& v, const std::string& key) {
    long long out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc{} || p != v.data() + v.size()) {
        throw ScenarioError("key '" + key + "': not an integer: '" + v + "'");
    }
    return out;
}

int to_small_int(const std::string& v, const std::string& key) {
    const long long x = to_int(v, key);
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
        throw ScenarioError("key '" + key + "': out of range");
    }
    return static_cast<int>(x);
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ScenarioError("key '" + key + "': expected true/false");
}

std::string fmt_double(double d) {
    if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    // Prefer the shortest form that reads back exactly.
    for (int prec = 1; prec <= 17; ++prec) {
        char shortbuf[64];
        std::snprintf(shortbuf, sizeof shortbuf, "%.*g", prec, d);
        if (std::stod(shortbuf) == d) return shortbuf;
    }
    return buf;
}

template <class T, class F>
std::string join(const std::vector<T>& v, F f) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += f(v[i]);
    }
    return out;
}

} // namespace

Scenario parse_scenario(std::string_view text, const std::string& origin) {
    Scenario s;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string at = origin + ":" + std::to_string(lineno) + ": ";
        if (eq == std::string::npos) throw ScenarioError(at + "expected 'key = value'");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string val = trim(std::string_view(line).substr(eq + 1));
        if (!seen.insert(key).second) throw ScenarioError(at + "duplicate key '" + key + "'");
        try {
            if (key == "id") s.id = val;
            else if (key == "family") s.family = val;
            else if (key == "experiment") {
                if (val == "psd") s.experiment = Experiment::Psd;
                else if (val == "ser") s.experiment = Experiment::Ser;
                else throw ScenarioError("experiment must be psd or ser");
            }
            else if (key == "se_mode") s.se_mode = parse_se_mode(val);
            else if (key == "n_mc") s.n_mc = to_small_int(val, key);
            else if (key == "snr_grid") {
                s.snr_grid.clear();
                for (const auto& v : split_list(val)) s.snr_grid.push_back(to_double(v, key));
            }
            else if (key == "cfo_eps") {
                s.cfo_eps.clear();
                for (const auto& v : split_list(val)) s.cfo_eps.push_back(to_double(v, key));
            }
            else if (key == "seed") s.seed = static_cast<std::uint64_t>(to_int(val, key));
            else if (key == "error_target") s.error_target = to_small_int(val, key);
            else if (key == "frame_cap") s.frame_cap = to_small_int(val, key);
            else if (key == "pulse") s.pulse.family = parse_pulse_family(val);
            else if (key == "rolloff") s.pulse.rolloff = to_double(val, key);
            else if (key == "overlap") s.pulse.overlap = to_small_int(val, key);
            else if (key == "K") s.K = to_small_int(val, key);
            else if (key == "guards") s.guards = to_small_int(val, key);
            else if (key == "M") s.M = to_small_int(val, key);
            else if (key == "cp_len") s.cp_len = to_small_int(val, key);
            else if (key == "window_len") s.window_len = to_small_int(val, key);
            else if (key == "Q") s.Q = to_small_int(val, key);
            else if (key == "allocation") s.allocation = parse_allocation(val);
            else if (key == "interp_rate") s.interp.rate = to_small_int(val, key);
            else if (key == "interp_span") s.interp.span = to_small_int(val, key);
            else if (key == "interp_rolloff") s.interp.rolloff = to_double(val, key);
            else if (key == "truncate") s.interp.truncate = to_bool(val, key);
            else if (key == "channel") s.channel = val;
            else if (key == "schemes") {
                s.schemes.clear();
                for (const auto& v : split_list(val)) s.schemes.push_back(parse_scheme(v));
            }
            else throw ScenarioError("unknown key '" + key + "'");
        } catch (const ScenarioError& e) {
            throw ScenarioError(at + e.what());
        } catch (const Error& e) {
            throw ScenarioError(at + e.what());
        }
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ScenarioError("cannot read scenario file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str(), path.string());
}

std::string format_scenario(const Scenario& s) {
    std::ostringstream o;
    o << "id = " << s.id << "\n"
      << "family = " << s.family << "\n"
      << "experiment = " << to_string(s.experiment) << "\n"
      << "se_mode = " << to_string(s.se_mode) << "\n"
      << "n_mc = " << s.n_mc << "\n";
    if (!s.snr_grid.empty()) o << "snr_grid = " << join(s.snr_grid, fmt_double) << "\n";
    if (!s.cfo_eps.empty()) o << "cfo_eps = " << join(s.cfo_eps, fmt_double) << "\n";
    o << "seed = " << s.seed << "\n"
      << "error_target = " << s.error_target << "\n"
      << "frame_cap = " << s.frame_cap << "\n"
      << "pulse = " << to_string(s.pulse.family) << "\n"
      << "rolloff = " << fmt_double(s.pulse.rolloff) << "\n"
      << "overlap = " << s.pulse.overlap << "\n"
      << "K = " << s.K << "\n"
      << "guards = " << s.guards << "\n"
      << "M = " << s.M << "\n"
      << "cp_len = " << s.cp_len << "\n"
      << "window_len = " << s.window_len << "\n"
      << "Q = " << s.Q << "\n"
      << "allocation = " << to_string(s.allocation) << "\n"
      << "interp_rate = " << s.interp.rate << "\n"
      << "interp_span = " << s.interp.span << "\n"
      << "interp_rolloff = " << fmt_double(s.interp.rolloff) << "\n"
      << "truncate = " << (s.interp.truncate ? "true" : "false") << "\n"
      << "channel = " << s.channel << "\n"
      << "schemes = " << join(s.schemes, [](Scheme sc) { return std::string(to_string(sc)); }) << "\n";
    return o.str();
}

} // namespace mcwave
