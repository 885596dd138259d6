#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mcwave/types.hpp"

namespace mcwave::detail {

// Bins whose magnitude falls below this fraction of the largest bin are
// treated as zero by the ZF equalizers.
inline constexpr double kSingularBin = 1e-12;

// Divides the spectrum of a K*M block by the channel response in place and
// returns, per grid row, whether any bin mapped to that subcarrier was
// singular. Bin l (signed frequency l/M in subcarrier units) belongs to the
// row of subcarrier round(l/M).
std::vector<bool> equalize_block(std::span<Complex> block, std::span<const Complex> response, int K, int M);

// [cp tail | block] followed by the edge window; used by both block schemes.
CVec frame_block(std::span<const Complex> block, int cp_len, int window_len);

// Copies the K*M payload samples out of a received block-scheme frame and,
// when a response is given, equalizes them. Returns the per-row singular flags.
std::vector<bool> receive_block(std::span<const Complex> rx, CVec& block, int K, int M, int cp_len,
                                int window_len, std::optional<std::span<const Complex>> response);

} // namespace mcwave::detail
