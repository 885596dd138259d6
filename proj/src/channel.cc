#include "mcwave/channel.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>

#include "mcwave/errors.hpp"
#include "mcwave/rng.hpp"

namespace mcwave {

const TapDelayProfile& cost207_ht12() {
    static const TapDelayProfile p{
        "ht12",
        {0.0, 0.1, 0.3, 0.5, 0.7, 1.0, 1.3, 15.0, 15.2, 15.7, 17.2, 20.0},
        {-10.0, -8.0, -6.0, -4.0, 0.0, 0.0, -4.0, -8.0, -9.0, -10.0, -12.0, -14.0},
    };
    return p;
}

const TapDelayProfile& cost207_ht6() {
    static const TapDelayProfile p{
        "ht6",
        {0.0, 0.2, 0.4, 0.6, 15.0, 17.2},
        {0.0, -2.0, -4.0, -7.0, -6.0, -12.0},
    };
    return p;
}

const TapDelayProfile& profile_by_name(const std::string& name) {
    if (name == "ht12" || name == "cost207") return cost207_ht12();
    if (name == "ht6") return cost207_ht6();
    throw InvalidParameter("unknown channel profile '" + name + "'");
}

ChannelRealization cost207_ht(std::uint64_t seed, const TapDelayProfile& profile, double sample_rate) {
    if (profile.delays_us.size() != profile.powers_db.size() || profile.delays_us.empty()) {
        throw InvalidParameter("tap delay profile: delays and powers differ in length");
    }
    std::vector<double> lin;
    for (double db : profile.powers_db) {
        lin.push_back(std::pow(10.0, db / 10.0));
    }
    const double total = std::accumulate(lin.begin(), lin.end(), 0.0);
    const double samples_per_us = sample_rate * 1e-6;
    std::vector<std::size_t> index;
    for (double d : profile.delays_us) {
        index.push_back(static_cast<std::size_t>(std::floor(d * samples_per_us + 0.5)));
    }
    ChannelRealization h;
    h.seed = seed;
    h.profile = profile.name;
    h.raw_taps.assign(index.back() + 1, Complex{});
    Rng rng(seed);
    for (std::size_t i = 0; i < lin.size(); ++i) {
        h.raw_taps[index[i]] += rng.complex_normal(lin[i] / total);
    }
    const double e = std::sqrt(energy(h.raw_taps));
    h.taps = h.raw_taps;
    for (Complex& v : h.taps) {
        v /= e;
    }
    return h;
}

ChannelRealization identity_channel() {
    ChannelRealization h;
    h.taps = {Complex{1.0, 0.0}};
    h.raw_taps = h.taps;
    h.profile = "identity";
    return h;
}

ComplexSignal apply_channel(const ComplexSignal& x, const ChannelRealization& h) {
    CVec y = convolve(x.span(), h.taps, ConvolutionMode::Linear);
    y.resize(x.size());
    return ComplexSignal(std::move(y), x.sample_rate());
}

ComplexSignal apply_cfo(const ComplexSignal& x, double eps, int K, long n0) {
    if (eps == 0.0) {
        return x;
    }
    CVec y = x.samples();
    const double w = kTwoPi * eps / K;
    for (std::size_t n = 0; n < y.size(); ++n) {
        const double ph = w * static_cast<double>(static_cast<long>(n) + n0);
        y[n] *= Complex{std::cos(ph), std::sin(ph)};
    }
    return ComplexSignal(std::move(y), x.sample_rate());
}

CVec freq_response(const ChannelRealization& h, std::size_t N) {
    if (N < h.taps.size()) {
        throw InvalidLength("freq_response: N must cover every tap");
    }
    CVec padded(N, Complex{});
    std::copy(h.taps.begin(), h.taps.end(), padded.begin());
    return dft(padded);
}

void write_profile_csv(const std::filesystem::path& path, const TapDelayProfile& p) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (f == nullptr) {
        throw Error("cannot write " + path.string());
    }
    std::fputs("delay_us,power_db\n", f);
    for (std::size_t i = 0; i < p.delays_us.size(); ++i) {
        std::fprintf(f, "%.9g,%.9g\n", p.delays_us[i], p.powers_db[i]);
    }
    std::fclose(f);
}

} // namespace mcwave
