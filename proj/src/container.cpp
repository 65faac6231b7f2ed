#include "bcs/container.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "bcs/error.hpp"
#include "bcs/prng.hpp"

namespace bcs {
namespace {

constexpr std::uint8_t kMagic[4] = {'B', 'C', 'S', '1'};

class LeWriter {
 public:
  explicit LeWriter(std::vector<std::uint8_t>& out) : out_(out) {}

  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) { put(v, 2); }
  void u32(std::uint32_t v) { put(v, 4); }
  void u64(std::uint64_t v) { put(v, 8); }
  void f64(double v) { put(std::bit_cast<std::uint64_t>(v), 8); }

 private:
  void put(std::uint64_t v, int n) {
    for (int i = 0; i < n; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  std::vector<std::uint8_t>& out_;
};

class LeReader {
 public:
  LeReader(std::span<const std::uint8_t> in, std::size_t pos) : in_(in), pos_(pos) {}

  std::uint8_t u8() { return static_cast<std::uint8_t>(get(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(get(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(get(4)); }
  std::uint64_t u64() { return get(8); }
  double f64() { return std::bit_cast<double>(get(8)); }

 private:
  std::uint64_t get(int n) {
    if (in_.size() - pos_ < static_cast<std::size_t>(n)) throw TruncatedError("container header truncated", in_.size());
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= std::uint64_t{in_[pos_ + i]} << (8 * i);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::span<const std::uint8_t> in_;
  std::size_t pos_;
};

}  // namespace

std::vector<std::uint8_t> serialize_header(const ContainerHeader& h) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  LeWriter w(out);
  w.u8(h.version);
  w.u8(h.prng_id);
  w.u16(h.width);
  w.u16(h.height);
  w.u8(h.block_size);
  w.u16(h.measurements);
  w.f64(h.step);
  w.u64(h.seed);
  w.u8(static_cast<std::uint8_t>(h.scheme));
  w.u32(h.payload_len);
  return out;
}

ContainerHeader parse_header(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 4) throw TruncatedError("container header truncated", bytes.size());
  for (int i = 0; i < 4; ++i) {
    if (bytes[i] != kMagic[i]) throw FormatError("container: bad magic");
  }
  LeReader r(bytes, 4);
  ContainerHeader h;
  h.version = r.u8();
  h.prng_id = r.u8();
  h.width = r.u16();
  h.height = r.u16();
  h.block_size = r.u8();
  h.measurements = r.u16();
  h.step = r.f64();
  h.seed = r.u64();
  const std::uint8_t scheme = r.u8();
  h.payload_len = r.u32();

  if (h.version != kContainerVersion) throw FormatError("container: unsupported version " + std::to_string(h.version));
  if (h.prng_id != kPrngXoshiroBoxMuller) throw FormatError("container: unknown prng id " + std::to_string(h.prng_id));
  if (scheme > 1) throw FormatError("container: unknown scheme id " + std::to_string(scheme));
  h.scheme = static_cast<Scheme>(scheme);
  if (h.width == 0 || h.height == 0) throw FormatError("container: zero image dimension");
  if (h.block_size == 0) throw FormatError("container: zero block size");
  if (h.measurements == 0 || h.measurements > std::size_t{h.block_size} * h.block_size) {
    throw FormatError("container: M_B out of range");
  }
  if (!(h.step > 0.0) || !std::isfinite(h.step)) throw FormatError("container: invalid quantizer step");
  return h;
}

std::vector<std::uint8_t> serialize(const Container& c) {
  ContainerHeader h = c.header;
  h.payload_len = static_cast<std::uint32_t>(c.payload.size());
  auto out = serialize_header(h);
  out.insert(out.end(), c.payload.begin(), c.payload.end());
  return out;
}

Container parse_container(std::span<const std::uint8_t> bytes, std::size_t* consumed) {
  Container c;
  c.header = parse_header(bytes);
  const std::size_t available = bytes.size() - kHeaderSize;
  if (available < c.header.payload_len) throw TruncatedError("container payload truncated", bytes.size());
  c.payload.assign(bytes.begin() + kHeaderSize, bytes.begin() + static_cast<std::ptrdiff_t>(kHeaderSize + c.header.payload_len));
  if (consumed != nullptr) *consumed = kHeaderSize + c.header.payload_len;
  return c;
}

std::vector<Container> split_containers(std::span<const std::uint8_t> bytes) {
  std::vector<Container> out;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    std::size_t used = 0;
    try {
      out.push_back(parse_container(bytes.subspan(pos), &used));
    } catch (const TruncatedError& e) {
      throw TruncatedError("container " + std::to_string(out.size()) + " truncated", pos + e.offset());
    }
    pos += used;
  }
  return out;
}

}  // namespace bcs
