#include "bcs/binarization.hpp"

#include <bit>

namespace bcs {

BinString tu_encode(std::uint32_t value, std::uint32_t cutoff) {
  BinString s;
  const std::uint32_t ones = value < cutoff ? value : cutoff;
  s.bins.assign(ones, 1);
  if (value < cutoff) s.bins.push_back(0);
  s.ctx_coded_count = s.bins.size();
  return s;
}

BinString eg0_encode(std::uint32_t value) {
  const std::uint64_t v1 = std::uint64_t{value} + 1;
  const unsigned l = static_cast<unsigned>(std::bit_width(v1)) - 1;  // floor(log2(value + 1))
  const std::uint64_t info = v1 - (std::uint64_t{1} << l);
  BinString s;
  s.bins.reserve(2 * l + 1);
  s.bins.assign(l, 1);
  s.bins.push_back(0);
  for (unsigned i = l; i-- > 0;) s.bins.push_back(static_cast<std::uint8_t>((info >> i) & 1));
  s.ctx_coded_count = 0;
  return s;
}

BinString ueg0_encode(std::uint32_t value) {
  BinString s = tu_encode(value, kUnaryCutoff);
  if (value >= kUnaryCutoff) {
    const BinString suffix = eg0_encode(value - kUnaryCutoff);
    s.bins.insert(s.bins.end(), suffix.bins.begin(), suffix.bins.end());
  }
  return s;
}

}  // namespace bcs
