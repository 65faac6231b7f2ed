#pragma once

#include <array>
#include <cstddef>
#include <span>

#include "bcs/dpcm.hpp"
#include "bcs/mcoder.hpp"

namespace bcs::cabac_style {

inline constexpr std::size_t kPositionContexts = 16;
inline constexpr std::size_t kLevelHistoryContexts = 4;

/// Transform-coefficient style context banks: significance and last flags keyed by scan
/// position (capped), the first level bin keyed by how many levels the block already coded,
/// and one shared context for the remaining level bins.
struct ContextBank {
  std::array<ContextModel, kPositionContexts> sig{};
  std::array<ContextModel, kPositionContexts> last{};
  std::array<ContextModel, kLevelHistoryContexts> level_first{};
  ContextModel level_rest{};

  static constexpr std::size_t kContextCount = 2 * kPositionContexts + kLevelHistoryContexts + 1;
};

/// Scan: for positions 0..M_B-2 a significance flag, followed for significant positions by a
/// last flag that ends the scan when set. The final position's significance is coded without a
/// last flag. Levels follow in reverse scan order, each UEG0 binarized with its sign bypass coded.
void encode_block(std::span<const QuantIndex> indices, ContextBank& ctx, ArithmeticEncoder& enc);
QuantIndexVector decode_block(std::size_t length, ContextBank& ctx, ArithmeticDecoder& dec);

}  // namespace bcs::cabac_style
