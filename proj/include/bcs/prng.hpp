#pragma once

#include <array>
#include <cstdint>
#include <optional>

namespace bcs {

// Generator id recorded in the container header.
inline constexpr std::uint8_t kPrngXoshiroBoxMuller = 0x01;

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// xoshiro256++ 1.0, state filled from splitmix64(seed).
class Xoshiro256pp {
 public:
  explicit Xoshiro256pp(std::uint64_t seed) {
    SplitMix64 sm(seed);
    for (auto& word : s_) word = sm.next();
  }

  static Xoshiro256pp from_state(const std::array<std::uint64_t, 4>& state) {
    Xoshiro256pp g(0);
    g.s_ = state;
    return g;
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform in [0, 1) with 53 random bits.
  double next_uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> s_{};
};

/// Standard normal deviates by the Box-Muller transform. Each pair consumes two uniforms
/// and yields the cosine branch first, then the sine branch.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  Xoshiro256pp rng_;
  std::optional<double> spare_;
};

}  // namespace bcs
