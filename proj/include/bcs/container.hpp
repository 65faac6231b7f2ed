#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bcs {

enum class Scheme : std::uint8_t {
  kProposed = 0,     // two-context significance/level coding
  kCabacStyle = 1,   // positional contexts with an explicit last flag
};

inline constexpr std::uint8_t kContainerVersion = 1;
inline constexpr std::size_t kHeaderSize = 34;

/// Fixed little-endian header followed by the arithmetic payload:
///
///   off  size  field
///     0     4  magic "BCS1"
///     4     1  version
///     5     1  prng id
///     6     2  width
///     8     2  height
///    10     1  block size B
///    11     2  M_B
///    13     8  quantizer step (IEEE-754 binary64)
///    21     8  matrix seed
///    29     1  scheme id
///    30     4  payload length
///    34     -  payload
struct ContainerHeader {
  std::uint8_t version = kContainerVersion;
  std::uint8_t prng_id = 0x01;
  std::uint16_t width = 0;
  std::uint16_t height = 0;
  std::uint8_t block_size = 0;
  std::uint16_t measurements = 0;
  double step = 0.0;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::kProposed;
  std::uint32_t payload_len = 0;

  bool operator==(const ContainerHeader&) const = default;
};

struct Container {
  ContainerHeader header;
  std::vector<std::uint8_t> payload;

  bool operator==(const Container&) const = default;
};

std::vector<std::uint8_t> serialize_header(const ContainerHeader& h);
ContainerHeader parse_header(std::span<const std::uint8_t> bytes);

std::vector<std::uint8_t> serialize(const Container& c);

/// Parses one container from the front of `bytes`; `consumed` receives its total size.
Container parse_container(std::span<const std::uint8_t> bytes, std::size_t* consumed = nullptr);

/// Splits a concatenation of containers. Trailing bytes that do not form a container are an error.
std::vector<Container> split_containers(std::span<const std::uint8_t> bytes);

}  // namespace bcs
