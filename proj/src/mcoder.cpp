#include "bcs/mcoder.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bcs/error.hpp"

namespace bcs {
namespace {

// rangeTabLPS[state][(range >> 6) & 3]
constexpr std::uint8_t kRangeLps[kNumStates][4] = {
    {128, 176, 208, 240}, {128, 167, 197, 227}, {128, 158, 187, 216}, {123, 150, 178, 205},
    {116, 142, 169, 195}, {111, 135, 160, 185}, {105, 128, 152, 175}, {100, 122, 144, 166},
    {95, 116, 137, 158},  {90, 110, 130, 150},  {85, 104, 123, 142},  {81, 99, 117, 135},
    {77, 94, 111, 128},   {73, 89, 105, 122},   {69, 85, 100, 116},   {66, 80, 95, 110},
    {62, 76, 90, 104},    {59, 72, 86, 99},     {56, 69, 81, 94},     {53, 65, 77, 89},
    {51, 62, 73, 85},     {48, 59, 69, 80},     {46, 56, 66, 76},     {43, 53, 63, 72},
    {41, 50, 59, 69},     {39, 48, 56, 65},     {37, 45, 54, 62},     {35, 43, 51, 59},
    {33, 41, 48, 56},     {32, 39, 46, 53},     {30, 37, 43, 50},     {29, 35, 41, 48},
    {27, 33, 39, 45},     {26, 31, 37, 43},     {24, 30, 35, 41},     {23, 28, 33, 39},
    {22, 27, 32, 37},     {21, 26, 30, 35},     {20, 24, 29, 33},     {19, 23, 27, 31},
    {18, 22, 26, 30},     {17, 21, 25, 28},     {16, 20, 23, 27},     {15, 19, 22, 25},
    {14, 18, 21, 24},     {14, 17, 20, 23},     {13, 16, 19, 22},     {12, 15, 18, 21},
    {12, 14, 17, 20},     {11, 14, 16, 19},     {11, 13, 15, 18},     {10, 12, 15, 17},
    {10, 12, 14, 16},     {9, 11, 13, 15},      {9, 11, 12, 14},      {8, 10, 12, 14},
    {8, 9, 11, 13},       {7, 9, 11, 12},       {7, 9, 10, 12},       {7, 8, 10, 11},
    {6, 8, 9, 11},        {6, 7, 9, 10},        {6, 7, 8, 9},         {2, 2, 2, 2},
};

constexpr std::uint8_t kNextLps[kNumStates] = {
    0,  0,  1,  2,  2,  4,  4,  5,  6,  7,  8,  9,  9,  11, 11, 12, 13, 13, 15, 15, 16, 16,
    18, 18, 19, 19, 21, 21, 22, 22, 23, 24, 24, 25, 26, 26, 27, 27, 28, 29, 29, 30, 30, 30,
    31, 32, 32, 33, 33, 33, 34, 34, 35, 35, 35, 36, 36, 36, 37, 37, 37, 38, 38, 63,
};

constexpr double kMinLps = 0.01875;

double alpha() { return std::pow(kMinLps / 0.5, 1.0 / 63.0); }

std::array<double, kNumStates> representative_probabilities() {
  // p_s = 0.5 * (p_min / 0.5)^(s / 63); the exponent is exactly 0 and 1 at the endpoints.
  std::array<double, kNumStates> p{};
  for (int s = 0; s < kNumStates; ++s) p[s] = 0.5 * std::pow(kMinLps / 0.5, s / 63.0);
  return p;
}

StateTables build_published() {
  StateTables t;
  t.p_lps = representative_probabilities();
  for (int s = 0; s < kNumStates; ++s) {
    for (int r = 0; r < 4; ++r) t.range_lps[s][r] = kRangeLps[s][r];
    t.next_lps[s] = kNextLps[s];
    t.next_mps[s] = static_cast<std::uint8_t>(s == kNumStates - 1 ? s : std::min(s + 1, kMaxAdaptiveState));
  }
  return t;
}

const StateTables& checked_tables() {
  static const StateTables tables = [] {
    verify_state_tables();
    return build_published();
  }();
  return tables;
}

}  // namespace

const StateTables& published_state_tables() { return checked_tables(); }

StateTables derive_state_tables() {
  StateTables t;
  t.p_lps = representative_probabilities();
  const double a = alpha();
  for (int s = 0; s < kMaxAdaptiveState + 1; ++s) {
    for (int r = 0; r < 4; ++r) {
      double v = std::round(t.p_lps[s] * (288.0 + 64.0 * r));
      if (r == 0 && v > 128.0) v = 128.0;
      t.range_lps[s][r] = static_cast<std::uint8_t>(v);
    }
    t.next_mps[s] = static_cast<std::uint8_t>(std::min(s + 1, kMaxAdaptiveState));

    const double target = a * t.p_lps[s] + (1.0 - a);
    int best = 0;
    for (int k = 1; k <= kMaxAdaptiveState; ++k) {
      if (std::fabs(t.p_lps[k] - target) < std::fabs(t.p_lps[best] - target)) best = k;
    }
    t.next_lps[s] = static_cast<std::uint8_t>(best);
  }
  // Termination state: fixed LPS range of 2, self loops.
  t.range_lps[63] = {2, 2, 2, 2};
  t.next_mps[63] = 63;
  t.next_lps[63] = 63;
  return t;
}

void verify_state_tables() {
  const StateTables derived = derive_state_tables();
  const StateTables published = build_published();
  if (derived.p_lps[0] != 0.5 || derived.p_lps[63] != kMinLps) {
    throw std::logic_error("state tables: probability endpoints differ from the closed form");
  }
  for (int s = 0; s < kNumStates; ++s) {
    if (derived.next_mps[s] != published.next_mps[s]) {
      throw std::logic_error("state tables: MPS transition mismatch at state " + std::to_string(s));
    }
    if (std::abs(int{derived.next_lps[s]} - int{published.next_lps[s]}) > 1) {
      throw std::logic_error("state tables: LPS transition mismatch at state " + std::to_string(s));
    }
    for (int r = 0; r < 4; ++r) {
      if (std::abs(int{derived.range_lps[s][r]} - int{published.range_lps[s][r]}) > 1) {
        throw std::logic_error("state tables: rangeLPS mismatch at state " + std::to_string(s));
      }
    }
  }
}

// ---------------------------------------------------------------------------------------------

ArithmeticEncoder::ArithmeticEncoder() { (void)checked_tables(); }

void ArithmeticEncoder::encode(ContextModel& ctx, int bin) {
  const StateTables& t = checked_tables();
  const std::uint32_t lps = t.range_lps[ctx.state][(range_ >> 6) & 3];
  range_ -= lps;
  if (bin != ctx.mps) {
    low_ += range_;
    range_ = lps;
    if (ctx.state == 0) ctx.mps = static_cast<std::uint8_t>(1 - ctx.mps);
    ctx.state = t.next_lps[ctx.state];
  } else {
    ctx.state = t.next_mps[ctx.state];
  }
  renormalize();
}

void ArithmeticEncoder::encode_bypass(int bin) {
  low_ <<= 1;
  if (bin != 0) low_ += range_;
  if (low_ >= 0x400) {
    put_bit(1);
    low_ -= 0x400;
  } else if (low_ < 0x200) {
    put_bit(0);
  } else {
    low_ -= 0x200;
    ++outstanding_;
  }
}

void ArithmeticEncoder::renormalize() {
  while (range_ < 0x100) {
    if (low_ < 0x100) {
      put_bit(0);
    } else if (low_ >= 0x200) {
      low_ -= 0x200;
      put_bit(1);
    } else {
      low_ -= 0x100;
      ++outstanding_;
    }
    range_ <<= 1;
    low_ <<= 1;
  }
}

void ArithmeticEncoder::put_bit(int bit) {
  if (first_bit_) {
    first_bit_ = false;
  } else {
    write_bit(bit);
  }
  for (; outstanding_ > 0; --outstanding_) write_bit(1 - bit);
}

void ArithmeticEncoder::write_bit(int bit) {
  partial_ = static_cast<std::uint8_t>((partial_ << 1) | (bit & 1));
  ++bit_count_;
  if (++partial_bits_ == 8) {
    bytes_.push_back(partial_);
    partial_ = 0;
    partial_bits_ = 0;
  }
}

std::vector<std::uint8_t> ArithmeticEncoder::finish() {
  if (finished_) throw std::logic_error("ArithmeticEncoder::finish called twice");
  finished_ = true;

  // end-of-stream flag = 1, coded with the fixed LPS range of 2
  range_ -= 2;
  low_ += range_;
  range_ = 2;
  renormalize();
  put_bit(static_cast<int>((low_ >> 9) & 1));
  write_bit(static_cast<int>((low_ >> 8) & 1));
  write_bit(1);  // stop bit

  while (partial_bits_ != 0) {
    partial_ = static_cast<std::uint8_t>(partial_ << 1);
    if (++partial_bits_ == 8) {
      bytes_.push_back(partial_);
      partial_ = 0;
      partial_bits_ = 0;
    }
  }
  return std::move(bytes_);
}

// ---------------------------------------------------------------------------------------------

ArithmeticDecoder::ArithmeticDecoder(std::span<const std::uint8_t> stream) : stream_(stream) {
  (void)checked_tables();
  for (int i = 0; i < 9; ++i) offset_ = (offset_ << 1) | static_cast<std::uint32_t>(read_bit());
}

int ArithmeticDecoder::read_bit() {
  const std::size_t byte = bit_pos_ >> 3;
  if (byte >= stream_.size()) throw TruncatedError("arithmetic decoder read past end of payload", stream_.size());
  const int bit = (stream_[byte] >> (7 - (bit_pos_ & 7))) & 1;
  ++bit_pos_;
  return bit;
}

void ArithmeticDecoder::renormalize() {
  while (range_ < 0x100) {
    range_ <<= 1;
    offset_ = (offset_ << 1) | static_cast<std::uint32_t>(read_bit());
  }
}

int ArithmeticDecoder::decode(ContextModel& ctx) {
  const StateTables& t = checked_tables();
  const std::uint32_t lps = t.range_lps[ctx.state][(range_ >> 6) & 3];
  range_ -= lps;
  int bin;
  if (offset_ >= range_) {
    bin = 1 - ctx.mps;
    offset_ -= range_;
    range_ = lps;
    if (ctx.state == 0) ctx.mps = static_cast<std::uint8_t>(1 - ctx.mps);
    ctx.state = t.next_lps[ctx.state];
  } else {
    bin = ctx.mps;
    ctx.state = t.next_mps[ctx.state];
  }
  renormalize();
  return bin;
}

int ArithmeticDecoder::decode_bypass() {
  offset_ = (offset_ << 1) | static_cast<std::uint32_t>(read_bit());
  if (offset_ >= range_) {
    offset_ -= range_;
    return 1;
  }
  return 0;
}

bool ArithmeticDecoder::decode_terminate() {
  range_ -= 2;
  if (offset_ >= range_) return true;
  renormalize();
  return false;
}

void ArithmeticDecoder::expect_end() const {
  const std::size_t byte = bit_pos_ >> 3;
  const int used = static_cast<int>(bit_pos_ & 7);
  if (used != 0) {
    const std::uint8_t pad_mask = static_cast<std::uint8_t>(0xFFu >> used);
    if ((stream_[byte] & pad_mask) != 0) {
      throw FormatError("arithmetic payload: nonzero padding after stop bit at byte " + std::to_string(byte));
    }
  }
  const std::size_t consumed = (bit_pos_ + 7) >> 3;
  if (consumed != stream_.size()) {
    throw FormatError("arithmetic payload: " + std::to_string(stream_.size() - consumed) +
                      " trailing bytes after end of stream");
  }
}

}  // namespace bcs
