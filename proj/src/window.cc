#include <cmath>

#include "mcwave/errors.hpp"
#include "mcwave/waveform.hpp"

namespace mcwave {

std::vector<double> hanning_ramp(int window_len) {
    if (window_len < 0) {
        throw InvalidParameter("hanning_ramp: negative length");
    }
    std::vector<double> r(static_cast<std::size_t>(window_len));
    for (int i = 0; i < window_len; ++i) {
        const double s = std::sin(kPi * (i + 0.5) / (2.0 * window_len));
        r[static_cast<std::size_t>(i)] = s * s;
    }
    return r;
}

CVec apply_edge_window(std::span<const Complex> block, int window_len, std::size_t period) {
    if (window_len < 0) {
        throw InvalidParameter("apply_edge_window: negative window length");
    }
    const std::size_t len = block.size();
    if (period == 0) {
        period = len;
    }
    if (len == 0 || period > len) {
        throw InvalidLength("apply_edge_window: period must not exceed the block length");
    }
    const auto w = static_cast<std::size_t>(window_len);
    const std::size_t lead = len - period;
    const auto r = hanning_ramp(window_len);
    // Cyclic continuation of the payload, indexed relative to block start.
    auto ext = [&](long n) {
        const long p = static_cast<long>(period);
        long j = (n - static_cast<long>(lead)) % p;
        if (j < 0) j += p;
        return block[static_cast<std::size_t>(j) + lead];
    };
    CVec out;
    out.reserve(len + 2 * w);
    for (std::size_t i = 0; i < w; ++i) {
        out.push_back(ext(static_cast<long>(i) - static_cast<long>(w)) * r[i]);
    }
    out.insert(out.end(), block.begin(), block.end());
    for (std::size_t i = 0; i < w; ++i) {
        out.push_back(ext(static_cast<long>(len + i)) * r[w - 1 - i]);
    }
    return out;
}

} // namespace mcwave
