#include "bcs/cabac_baseline.hpp"

#include <algorithm>
#include <cstdlib>
#include <vector>

#include "bcs/binarization.hpp"
#include "bcs/error.hpp"

namespace bcs::cabac_style {
namespace {

std::size_t pos_ctx(std::size_t m) { return std::min(m, kPositionContexts - 1); }

ContextModel& level_ctx(ContextBank& ctx, std::size_t prior_levels, std::size_t bin_index) {
  if (bin_index == 0) return ctx.level_first[std::min(prior_levels, kLevelHistoryContexts - 1)];
  return ctx.level_rest;
}

struct LevelSource {
  ContextBank& ctx;
  ArithmeticDecoder& dec;
  std::size_t prior_levels;

  int context_bin(std::size_t i) { return dec.decode(level_ctx(ctx, prior_levels, i)); }
  int bypass_bin() { return dec.decode_bypass(); }
};

}  // namespace

void encode_block(std::span<const QuantIndex> indices, ContextBank& ctx, ArithmeticEncoder& enc) {
  const std::size_t n = indices.size();
  if (n == 0) return;

  std::size_t last = n;  // index of the last significant component, n if none
  for (std::size_t m = n; m-- > 0;) {
    if (indices[m] != 0) {
      last = m;
      break;
    }
  }

  std::vector<std::size_t> significant;
  for (std::size_t m = 0; m < n; ++m) {
    const int sig = indices[m] != 0 ? 1 : 0;
    enc.encode(ctx.sig[pos_ctx(m)], sig);
    if (sig) significant.push_back(m);
    if (m + 1 == n) break;
    if (sig) {
      const int is_last = m == last ? 1 : 0;
      enc.encode(ctx.last[pos_ctx(m)], is_last);
      if (is_last) break;
    }
  }

  std::size_t prior = 0;
  for (auto it = significant.rbegin(); it != significant.rend(); ++it, ++prior) {
    const QuantIndex v = indices[*it];
    const auto magnitude = static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(v)));
    const BinString bins = ueg0_encode(magnitude - 1);
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (i < bins.ctx_coded_count) {
        enc.encode(level_ctx(ctx, prior, i), bins.bins[i]);
      } else {
        enc.encode_bypass(bins.bins[i]);
      }
    }
    enc.encode_bypass(v < 0 ? 1 : 0);
  }
}

QuantIndexVector decode_block(std::size_t length, ContextBank& ctx, ArithmeticDecoder& dec) {
  QuantIndexVector out(length, 0);
  if (length == 0) return out;

  std::vector<std::size_t> significant;
  for (std::size_t m = 0; m < length; ++m) {
    const int sig = dec.decode(ctx.sig[pos_ctx(m)]);
    if (sig) significant.push_back(m);
    if (m + 1 == length) break;
    if (sig && dec.decode(ctx.last[pos_ctx(m)])) break;
  }

  std::size_t prior = 0;
  for (auto it = significant.rbegin(); it != significant.rend(); ++it, ++prior) {
    LevelSource src{ctx, dec, prior};
    const std::uint32_t level_minus1 = ueg0_decode(src);
    if (level_minus1 >= static_cast<std::uint32_t>(INT32_MAX)) throw FormatError("cabac-style block: level overflow");
    const auto magnitude = static_cast<QuantIndex>(level_minus1 + 1);
    out[*it] = dec.decode_bypass() ? -magnitude : magnitude;
  }
  return out;
}

}  // namespace bcs::cabac_style
