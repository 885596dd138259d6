#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>

#include "mcwave/constellation.hpp"
#include "mcwave/errors.hpp"
#include "mcwave/waveform.hpp"

namespace mcwave {

double spectral_efficiency(const WaveformConfig& cfg) {
    const std::vector<bool> mask = allocate(cfg);
    const auto active = static_cast<double>(std::count(mask.begin(), mask.end(), true));
    const double bits = active * cfg.M * Constellation(cfg.Q).bits_per_symbol();
    return bits / static_cast<double>(frame_overhead(cfg).total());
}

std::string_view to_string(SeKnob k) noexcept {
    switch (k) {
    case SeKnob::CyclicPrefix: return "cp";
    case SeKnob::ActiveSubcarriers: return "active";
    case SeKnob::Subcarriers: return "subcarriers";
    }
    return "?";
}

SeKnob parse_se_knob(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    if (s == "cp" || s == "cp_len") return SeKnob::CyclicPrefix;
    if (s == "active" || s == "guards") return SeKnob::ActiveSubcarriers;
    if (s == "subcarriers" || s == "k") return SeKnob::Subcarriers;
    throw InvalidParameter("unknown spectral-efficiency knob '" + std::string(name) + "'");
}

namespace {

double rel_err(double eta, double ref) { return std::abs(eta - ref) / ref; }

// Picks the candidate whose efficiency is closest to ref (first on ties).
template <class Apply>
Equalized search(const WaveformConfig& target, double ref_eta, int lo, int hi, SeKnob knob, Apply apply,
                 const char* what) {
    WaveformConfig best = target;
    double best_eta = -1.0;
    for (int v = lo; v <= hi; ++v) {
        WaveformConfig c = target;
        apply(c, v);
        double eta = 0.0;
        try {
            eta = spectral_efficiency(c);
        } catch (const Error&) {
            continue;
        }
        if (best_eta < 0.0 || rel_err(eta, ref_eta) < rel_err(best_eta, ref_eta)) {
            best = c;
            best_eta = eta;
        }
    }
    if (best_eta < 0.0 || rel_err(best_eta, ref_eta) > kSeTolerance) {
        throw CannotEqualize(std::string("cannot match spectral efficiency with knob '") + what +
                                 "'; closest eta " + std::to_string(best_eta) + " vs " + std::to_string(ref_eta),
                             best_eta, best);
    }
    return {best, best_eta, ref_eta, knob, {}};
}

} // namespace

Equalized equalize_spectral_efficiency(const WaveformConfig& ref, const WaveformConfig& target, SeKnob knob) {
    validate(ref);
    validate(target);
    const double ref_eta = spectral_efficiency(ref);
    const double eta0 = spectral_efficiency(target);
    if (rel_err(eta0, ref_eta) == 0.0) {
        return {target, eta0, ref_eta, knob, "unchanged"};
    }
    Equalized out;
    switch (knob) {
    case SeKnob::CyclicPrefix: {
        const int period = target.scheme == Scheme::OFDM ? target.K : target.K * target.M;
        out = search(target, ref_eta, 0, period, knob, [](WaveformConfig& c, int v) { c.cp_len = v; }, "cp");
        out.adjustment = "cp_len " + std::to_string(target.cp_len) + " -> " + std::to_string(out.cfg.cp_len);
        break;
    }
    case SeKnob::ActiveSubcarriers: {
        out = search(target, ref_eta, 1, target.K, knob,
                     [](WaveformConfig& c, int v) { c.guards = c.K - v; }, "active");
        out.adjustment = "active " + std::to_string(target.active()) + " -> " + std::to_string(out.cfg.active()) +
                         " (guards " + std::to_string(out.cfg.guards) + ")";
        break;
    }
    case SeKnob::Subcarriers: {
        WaveformConfig c = target;
        if (target.scheme == Scheme::OFDM) {
            c.K = target.K * target.M;
            c.guards = target.guards * target.M;
            c.M = 1;
        }
        const double eta = spectral_efficiency(c);
        if (target.scheme != Scheme::OFDM || rel_err(eta, ref_eta) > kSeTolerance) {
            throw CannotEqualize("knob 'subcarriers' only stretches an OFDM target to one symbol per block",
                                 eta, c);
        }
        out = {c, eta, ref_eta, knob,
               "K " + std::to_string(target.K) + " -> " + std::to_string(c.K) + ", guards " +
                   std::to_string(target.guards) + " -> " + std::to_string(c.guards) + ", M " +
                   std::to_string(target.M) + " -> 1"};
        break;
    }
    }
    return out;
}

} // namespace mcwave
