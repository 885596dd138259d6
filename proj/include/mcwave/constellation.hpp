#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mcwave/types.hpp"

namespace mcwave {

// Square Gray-coded QAM with unit average symbol energy. The first half of
// each symbol's bits label the in-phase axis, the second half quadrature.
class Constellation {
public:
    // order must be 4, 16, 64, ... (a power of four).
    explicit Constellation(int order);

    int order() const noexcept { return order_; }
    int bits_per_symbol() const noexcept { return bits_; }
    const CVec& points() const noexcept { return points_; }
    // points()[i] carries the bit label i (MSB first).
    const Complex& point(int index) const { return points_.at(static_cast<std::size_t>(index)); }

    // Minimum-distance decision, returned as the point index.
    int decide(Complex s) const noexcept;

private:
    int axis_level_index(double v) const noexcept;

    int order_;
    int bits_;
    int levels_;      // per axis
    double scale_;    // amplitude of the unit grid step / 2
    CVec points_;
    std::vector<int> gray_to_level_;
    std::vector<int> level_to_gray_;
};

CVec map_bits(std::span<const std::uint8_t> bits, const Constellation& c);
std::vector<std::uint8_t> demap_symbols(std::span<const Complex> symbols, const Constellation& c);

} // namespace mcwave
