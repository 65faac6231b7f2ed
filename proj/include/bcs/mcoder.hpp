#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bcs {

inline constexpr int kNumStates = 64;
inline constexpr int kMaxAdaptiveState = 62;  // state 63 is reserved for termination

/// One adaptive binary probability model: LPS probability index and MPS value.
struct ContextModel {
  std::uint8_t state = 0;  // sigma, 0 = p_LPS 0.5
  std::uint8_t mps = 0;

  bool operator==(const ContextModel&) const = default;
};

struct StateTables {
  std::array<double, kNumStates> p_lps{};
  std::array<std::array<std::uint8_t, 4>, kNumStates> range_lps{};
  std::array<std::uint8_t, kNumStates> next_mps{};
  std::array<std::uint8_t, kNumStates> next_lps{};
};

/// The state-machine constants the engine runs on (the published CABAC tables).
const StateTables& published_state_tables();

/// Tables derived from the closed-form recursion p_s = 0.5 * a^s, a = (0.01875/0.5)^(1/63):
/// range_lps = round(p_s * Q_r) with Q_r = 288 + 64 r the range-cell midpoints (cell 0 capped at
/// 128, half the smallest range), next_lps = state nearest to a * p_s + (1 - a).
StateTables derive_state_tables();

/// Compares derived against published tables. Throws std::logic_error if the endpoints or MPS
/// transitions differ, or any range/LPS entry deviates by more than one.
void verify_state_tables();

/// Multiplication-free binary arithmetic encoder: 9-bit range, 10-bit low register,
/// outstanding-bit carry resolution.
class ArithmeticEncoder {
 public:
  ArithmeticEncoder();

  void encode(ContextModel& ctx, int bin);
  void encode_bypass(int bin);

  /// Codes the end-of-stream flag, flushes the registers and pads with zero bits to a byte
  /// boundary. The encoder must not be used afterwards.
  std::vector<std::uint8_t> finish();

  /// Bits committed so far, including outstanding bits but not the flush.
  std::uint64_t bits_written() const { return bit_count_ + outstanding_; }

 private:
  void renormalize();
  void put_bit(int bit);
  void write_bit(int bit);

  std::uint32_t low_ = 0;
  std::uint32_t range_ = 510;
  std::uint64_t outstanding_ = 0;
  bool first_bit_ = true;
  bool finished_ = false;

  std::vector<std::uint8_t> bytes_;
  std::uint8_t partial_ = 0;
  int partial_bits_ = 0;
  std::uint64_t bit_count_ = 0;
};

class ArithmeticDecoder {
 public:
  /// Reads the first nine bits. Throws TruncatedError if the stream is shorter.
  explicit ArithmeticDecoder(std::span<const std::uint8_t> stream);

  int decode(ContextModel& ctx);
  int decode_bypass();

  /// Decodes the end-of-stream flag. Returns true at the end of a terminated stream.
  bool decode_terminate();

  /// After decode_terminate() returned true: verifies the remaining bits are zero padding
  /// within the final byte and that no bytes follow. Throws FormatError otherwise.
  void expect_end() const;

 private:
  int read_bit();
  void renormalize();

  std::span<const std::uint8_t> stream_;
  std::size_t bit_pos_ = 0;
  std::uint32_t range_ = 510;
  std::uint32_t offset_ = 0;
};

}  // namespace bcs
