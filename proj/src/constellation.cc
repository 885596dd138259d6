#include "mcwave/constellation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "mcwave/errors.hpp"

namespace mcwave {

Constellation::Constellation(int order) : order_(order) {
    if (order < 4 || !std::has_single_bit(static_cast<unsigned>(order)) ||
        std::countr_zero(static_cast<unsigned>(order)) % 2 != 0) {
        throw InvalidParameter("Constellation: order must be a power of four >= 4");
    }
    bits_ = std::countr_zero(static_cast<unsigned>(order));
    levels_ = 1 << (bits_ / 2);
    // Mean energy of the odd-integer grid is 2(Q-1)/3.
    scale_ = 1.0 / std::sqrt(2.0 * (order - 1) / 3.0);

    level_to_gray_.resize(static_cast<std::size_t>(levels_));
    gray_to_level_.resize(static_cast<std::size_t>(levels_));
    for (int i = 0; i < levels_; ++i) {
        const int g = i ^ (i >> 1);
        level_to_gray_[static_cast<std::size_t>(i)] = g;
        gray_to_level_[static_cast<std::size_t>(g)] = i;
    }

    const int half_bits = bits_ / 2;
    points_.resize(static_cast<std::size_t>(order));
    for (int label = 0; label < order; ++label) {
        const int gi = label >> half_bits;
        const int gq = label & (levels_ - 1);
        const int li = gray_to_level_[static_cast<std::size_t>(gi)];
        const int lq = gray_to_level_[static_cast<std::size_t>(gq)];
        // Level 0 is the most negative amplitude; QPSK 00 sits in quadrant III.
        const double re = (2 * li - levels_ + 1) * scale_;
        const double im = (2 * lq - levels_ + 1) * scale_;
        points_[static_cast<std::size_t>(label)] = {re, im};
    }
}

int Constellation::axis_level_index(double v) const noexcept {
    const double x = (v / scale_ + levels_ - 1) / 2.0;
    const long idx = std::lround(x);
    return static_cast<int>(std::clamp<long>(idx, 0, levels_ - 1));
}

int Constellation::decide(Complex s) const noexcept {
    const int li = axis_level_index(s.real());
    const int lq = axis_level_index(s.imag());
    const int gi = level_to_gray_[static_cast<std::size_t>(li)];
    const int gq = level_to_gray_[static_cast<std::size_t>(lq)];
    return (gi << (bits_ / 2)) | gq;
}

CVec map_bits(std::span<const std::uint8_t> bits, const Constellation& c) {
    const auto bps = static_cast<std::size_t>(c.bits_per_symbol());
    if (bits.size() % bps != 0) {
        throw InvalidLength("map_bits: bit count not divisible by bits per symbol");
    }
    CVec out(bits.size() / bps);
    for (std::size_t s = 0; s < out.size(); ++s) {
        int label = 0;
        for (std::size_t b = 0; b < bps; ++b) {
            label = (label << 1) | (bits[s * bps + b] & 1);
        }
        out[s] = c.point(label);
    }
    return out;
}

std::vector<std::uint8_t> demap_symbols(std::span<const Complex> symbols, const Constellation& c) {
    const int bps = c.bits_per_symbol();
    std::vector<std::uint8_t> out;
    out.reserve(symbols.size() * static_cast<std::size_t>(bps));
    for (const Complex& s : symbols) {
        const int label = c.decide(s);
        for (int b = bps - 1; b >= 0; --b) {
            out.push_back(static_cast<std::uint8_t>((label >> b) & 1));
        }
    }
    return out;
}

} // namespace mcwave
