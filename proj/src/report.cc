#include <cstdio>
#include <fstream>

#include "mcwave/errors.hpp"
#include "mcwave/experiments.hpp"
#include "mcwave/rng.hpp"

namespace mcwave {

namespace {

std::FILE* open_or_throw(const std::filesystem::path& p) {
    std::FILE* f = std::fopen(p.c_str(), "w");
    if (f == nullptr) throw Error("cannot write " + p.string());
    return f;
}

void write_config(std::FILE* f, const char* prefix, const WaveformConfig& c) {
    std::fprintf(f, "%s.K = %d\n%s.guards = %d\n%s.active = %d\n%s.M = %d\n%s.cp_len = %d\n%s.window_len = %d\n",
                 prefix, c.K, prefix, c.guards, prefix, c.active(), prefix, c.M, prefix, c.cp_len, prefix,
                 c.window_len);
    std::fprintf(f, "%s.pulse = %s\n%s.rolloff = %.9g\n%s.overlap = %d\n%s.Q = %d\n%s.allocation = %s\n", prefix,
                 std::string(to_string(c.pulse.family)).c_str(), prefix, c.pulse.rolloff, prefix, c.pulse.overlap,
                 prefix, c.Q, prefix, std::string(to_string(c.allocation)).c_str());
}

} // namespace

void write_result(const std::filesystem::path& dir, const ResultSet& r) {
    std::filesystem::create_directories(dir);
    for (const SchemeResult& sr : r.schemes) {
        if (sr.psd) {
            write_psd_csv(dir / ("psd_" + std::string(to_string(sr.scheme)) + ".csv"), *sr.psd);
        }
    }
    if (!r.ser.empty()) {
        std::FILE* f = open_or_throw(dir / "ser.csv");
        std::fputs("scheme,snr_db,cfo_eps,ser,errors,symbols\n", f);
        for (const SerPoint& p : r.ser) {
            std::fprintf(f, "%s,%.9g,%.9g,%.9g,%llu,%llu\n", std::string(to_string(p.scheme)).c_str(), p.snr_db,
                         p.cfo_eps, p.ser(), static_cast<unsigned long long>(p.errors),
                         static_cast<unsigned long long>(p.symbols));
        }
        std::fclose(f);
    }

    std::FILE* f = open_or_throw(dir / "meta.txt");
    std::fprintf(f, "# %s\n", std::string(kVersion).c_str());
    std::fprintf(f, "rng = %s\n", std::string(Rng::kAlgorithm).c_str());
    std::fprintf(f, "se_reference = %s\n", r.se_reference.c_str());
    std::fputs("\n[scenario]\n", f);
    std::fputs(format_scenario(r.scenario).c_str(), f);
    for (const SchemeResult& sr : r.schemes) {
        const std::string name(to_string(sr.scheme));
        std::fprintf(f, "\n[%s]\n", name.c_str());
        write_config(f, name.c_str(), sr.cfg);
        std::fprintf(f, "%s.eta = %.12g\n", name.c_str(), sr.eta);
        std::fprintf(f, "%s.adjustment = %s\n", name.c_str(), sr.adjustment.c_str());
        std::fprintf(f, "%s.frame_len = %zu\n", name.c_str(), sr.frame_len);
        std::fprintf(f, "%s.band = %.9g, %.9g\n", name.c_str(), sr.band_lo, sr.band_hi);
        if (sr.psd) {
            std::fprintf(f, "%s.psd_frames = %zu\n%s.psd_bins = %zu\n", name.c_str(), sr.psd->n_avg, name.c_str(),
                         sr.psd->freq.size());
        }
        if (sr.oobe) {
            for (std::size_t i = 0; i < sr.oobe->offsets.size(); ++i) {
                std::fprintf(f, "%s.psd_at_%gdf = %.9g\n", name.c_str(), sr.oobe->offsets[i], sr.oobe->at_offset[i]);
            }
            std::fprintf(f, "%s.oob_ratio_db = %.9g\n", name.c_str(), sr.oobe->oob_ratio_db);
        }
    }
    if (r.channel) {
        std::fprintf(f, "\n[channel]\nprofile = %s\nseed = %llu\n", r.channel->profile.c_str(),
                     static_cast<unsigned long long>(r.channel->seed));
        for (std::size_t i = 0; i < r.channel->taps.size(); ++i) {
            std::fprintf(f, "tap[%zu] = %.17g, %.17g\n", i, r.channel->taps[i].real(), r.channel->taps[i].imag());
        }
    }
    std::fclose(f);
}

} // namespace mcwave
