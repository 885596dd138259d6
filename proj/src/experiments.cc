#include "mcwave/experiments.hpp"

#include <algorithm>
#include <cmath>

#include "mcwave/constellation.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/noise.hpp"
#include "mcwave/rng.hpp"

namespace mcwave {

namespace {

// Stream tags keep the PSD, SER and channel draws apart.
constexpr std::uint64_t kPsdStream = 1;
constexpr std::uint64_t kSerStream = 2;
constexpr std::uint64_t kChannelStream = 3;

std::uint64_t scheme_tag(Scheme s) { return static_cast<std::uint64_t>(s); }

bool is_block(Scheme s) { return s != Scheme::OFDM; }

} // namespace

std::pair<double, double> occupied_band(const WaveformConfig& cfg, int K_ref) {
    const std::vector<bool> mask = allocate(cfg);
    const auto first = std::find(mask.begin(), mask.end(), true) - mask.begin();
    const auto last = mask.rend() - std::find(mask.rbegin(), mask.rend(), true) - 1;
    const double scale = static_cast<double>(K_ref) / cfg.K;
    return {(row_frequency(static_cast<int>(first), cfg.K) - 0.5) * scale,
            (row_frequency(static_cast<int>(last), cfg.K) + 0.5) * scale};
}

std::vector<SchemeResult> resolve_configs(const Scenario& s, std::string* reference) {
    std::vector<SchemeResult> out;
    for (Scheme sc : s.schemes) {
        SchemeResult r;
        r.scheme = sc;
        r.cfg = config_for(s, sc);
        out.push_back(std::move(r));
    }
    if (reference) *reference = "none";
    if (s.se_mode.equal) {
        auto ofdm = std::find_if(out.begin(), out.end(), [](const SchemeResult& r) { return !is_block(r.scheme); });
        auto block = std::find_if(out.begin(), out.end(), [](const SchemeResult& r) { return is_block(r.scheme); });
        if (ofdm != out.end() && block != out.end()) {
            const WaveformConfig block_cfg = block->cfg;
            try {
                const Equalized e = equalize_spectral_efficiency(block_cfg, ofdm->cfg, s.se_mode.knob);
                ofdm->cfg = e.cfg;
                ofdm->adjustment = e.adjustment;
                if (reference) *reference = std::string(to_string(block->scheme));
            } catch (const CannotEqualize&) {
                if (s.se_mode.knob == SeKnob::Subcarriers) throw;
                const WaveformConfig ref = ofdm->cfg;
                for (SchemeResult& r : out) {
                    if (!is_block(r.scheme)) continue;
                    const Equalized e = equalize_spectral_efficiency(ref, r.cfg, s.se_mode.knob);
                    r.cfg = e.cfg;
                    r.adjustment = e.adjustment;
                }
                if (reference) *reference = "ofdm";
            }
        }
    }
    for (SchemeResult& r : out) {
        r.eta = spectral_efficiency(r.cfg);
        r.frame_len = frame_overhead(r.cfg).total();
        std::tie(r.band_lo, r.band_hi) = occupied_band(r.cfg, s.K);
    }
    return out;
}

ResultSet run_psd(const Scenario& s) {
    validate(s);
    if (s.experiment != Experiment::Psd) {
        throw ScenarioError("run_psd: scenario '" + s.id + "' is not a PSD experiment");
    }
    ResultSet rs;
    rs.scenario = s;
    try {
        rs.schemes = resolve_configs(s, &rs.se_reference);
        const Constellation c(s.Q);
        const double spacing = kBaseSampleRate / s.K;
        for (SchemeResult& r : rs.schemes) {
            const auto modem = make_modem(r.cfg);
            PeriodogramAccumulator acc;
            for (int f = 0; f < s.n_mc; ++f) {
                Rng rng(derive_seed(s.seed, {kPsdStream, scheme_tag(r.scheme), static_cast<std::uint64_t>(f)}));
                const ResourceGrid grid = random_grid(r.cfg, c, rng);
                const Frame frame = modem->modulate(grid);
                acc.add(interpolate(frame.signal, s.interp));
            }
            r.psd = acc.estimate(spacing);
            r.oobe = oobe_metrics(*r.psd, r.band_lo, r.band_hi);
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError("scenario '" + s.id + "': " + e.what());
    }
    return rs;
}

ResultSet run_ser(const Scenario& s) {
    validate(s);
    if (s.experiment != Experiment::Ser) {
        throw ScenarioError("run_ser: scenario '" + s.id + "' is not a SER experiment");
    }
    ResultSet rs;
    rs.scenario = s;
    try {
        rs.schemes = resolve_configs(s, &rs.se_reference);
        const Constellation c(s.Q);
        const bool ideal = s.channel == "ideal";
        // One static realization per scenario seed.
        rs.channel = ideal ? identity_channel()
                           : cost207_ht(derive_seed(s.seed, {kChannelStream}), profile_by_name(s.channel));
        for (SchemeResult& r : rs.schemes) {
            const auto modem = make_modem(r.cfg);
            const CVec response = freq_response(*rs.channel, response_length(r.cfg));
            std::optional<std::span<const Complex>> zf;
            if (!ideal) zf = std::span<const Complex>(response);
            const std::vector<bool> mask = allocate(r.cfg);
            for (std::size_t si = 0; si < s.snr_grid.size(); ++si) {
                // All CFO values at one SNR share frames, data and noise, and
                // stop together once every one of them has enough errors.
                std::vector<SerPoint> pts;
                std::vector<PhaseTracking> tracks;
                for (double eps : s.cfo_eps) {
                    pts.push_back({r.scheme, s.snr_grid[si], eps, 0, 0, 0});
                    tracks.push_back({eps, s.K});
                }
                auto done = [&] {
                    return std::all_of(pts.begin(), pts.end(), [&](const SerPoint& p) {
                        return p.errors >= static_cast<std::uint64_t>(s.error_target);
                    });
                };
                for (int f = 0; f < s.frame_cap && !done(); ++f) {
                    Rng rng(derive_seed(s.seed, {kSerStream, scheme_tag(r.scheme), si, static_cast<std::uint64_t>(f)}));
                    const ResourceGrid tx = random_grid(r.cfg, c, rng);
                    ComplexSignal sent = modem->modulate(tx).signal;
                    if (!ideal) sent = apply_channel(sent, *rs.channel);
                    // One noise draw per frame, added after the CFO rotation.
                    Rng noise_rng(rng.next_u64());
                    const ComplexSignal zero(CVec(sent.size(), Complex{}), sent.sample_rate());
                    const CVec noise = awgn(zero, s.snr_grid[si], noise_rng, 1.0).samples();
                    for (std::size_t ei = 0; ei < pts.size(); ++ei) {
                        SerPoint& pt = pts[ei];
                        CVec y = apply_cfo(sent, pt.cfo_eps, s.K).samples();
                        for (std::size_t n = 0; n < y.size(); ++n) y[n] += noise[n];
                        const PhaseTracking* tracking = pt.cfo_eps != 0.0 ? &tracks[ei] : nullptr;
                        const DemodResult rx = modem->demodulate(std::span<const Complex>(y), zf, tracking);
                        for (int row = 0; row < r.cfg.K; ++row) {
                            if (!mask[static_cast<std::size_t>(row)]) continue;
                            for (int m = 0; m < r.cfg.M; ++m) {
                                const bool erased = rx.erased[static_cast<std::size_t>(row * r.cfg.M + m)];
                                if (erased || c.decide(rx.grid.at(row, m)) != c.decide(tx.at(row, m))) {
                                    ++pt.errors;
                                }
                                ++pt.symbols;
                            }
                        }
                        ++pt.frames;
                    }
                }
                rs.ser.insert(rs.ser.end(), pts.begin(), pts.end());
            }
        }
    } catch (const ScenarioError&) {
        throw;
    } catch (const Error& e) {
        throw ScenarioError("scenario '" + s.id + "': " + e.what());
    }
    return rs;
}

ResultSet run_scenario(const Scenario& s) {
    return s.experiment == Experiment::Psd ? run_psd(s) : run_ser(s);
}

} // namespace mcwave
