#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "bcs/error.hpp"

namespace bcs {

/// Truncated-unary cutoff for the level prefix.
inline constexpr std::uint32_t kUnaryCutoff = 14;

/// Bins in coding order. The first `ctx_coded_count` are context coded, the rest bypass.
struct BinString {
  std::vector<std::uint8_t> bins;
  std::size_t ctx_coded_count = 0;

  std::size_t size() const { return bins.size(); }
  bool operator==(const BinString&) const = default;
};

BinString tu_encode(std::uint32_t value, std::uint32_t cutoff = kUnaryCutoff);
BinString eg0_encode(std::uint32_t value);

/// TU prefix (cutoff 14, context coded) followed, for values >= 14, by an EG0 suffix of
/// value - 14 (bypass).
BinString ueg0_encode(std::uint32_t value);

/// Reads bins in the order ueg0_encode produced them. `Source` supplies
///   int context_bin(std::size_t prefix_index);  // TU bin number 0..13
///   int bypass_bin();
/// and throws on exhaustion.
template <class Source>
std::uint32_t ueg0_decode(Source& src) {
  std::uint32_t value = 0;
  while (value < kUnaryCutoff && src.context_bin(value) != 0) ++value;
  if (value < kUnaryCutoff) return value;

  // EG0 suffix: ones-prefix length l, terminating zero, then l info bits.
  unsigned l = 0;
  while (src.bypass_bin() != 0) {
    if (++l > 31) throw FormatError("ueg0: exp-golomb prefix too long");
  }
  std::uint64_t info = 0;
  for (unsigned i = 0; i < l; ++i) info = (info << 1) | static_cast<std::uint64_t>(src.bypass_bin());
  const std::uint64_t suffix = (std::uint64_t{1} << l) - 1 + info;
  const std::uint64_t total = suffix + kUnaryCutoff;
  if (total > UINT32_MAX) throw FormatError("ueg0: value overflow");
  return static_cast<std::uint32_t>(total);
}

/// Bin source over an explicit BinString; context/bypass distinction is ignored.
class BinStringReader {
 public:
  explicit BinStringReader(const BinString& s) : bins_(s.bins) {}

  int context_bin(std::size_t) { return take(); }
  int bypass_bin() { return take(); }
  bool exhausted() const { return pos_ == bins_.size(); }

 private:
  int take() {
    if (pos_ >= bins_.size()) throw TruncatedError("bin string exhausted mid-codeword", pos_);
    return bins_[pos_++];
  }

  const std::vector<std::uint8_t>& bins_;
  std::size_t pos_ = 0;
};

}  // namespace bcs
