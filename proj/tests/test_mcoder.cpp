#include <doctest.h>

#include <cmath>
#include <random>
#include <string>

#include "bcs/error.hpp"
#include "bcs/mcoder.hpp"

using namespace bcs;

namespace {

// Straight transcription of the encoding flowcharts, keeping bits in a string.
struct ReferenceEncoder {
  const StateTables& t = published_state_tables();
  std::uint32_t low = 0;
  std::uint32_t range = 510;
  int outstanding = 0;
  bool first = true;
  std::string bits;

  void put_bit(int b) {
    if (first) {
      first = false;
    } else {
      bits += char('0' + b);
    }
    for (; outstanding > 0; --outstanding) bits += char('0' + (1 - b));
  }
  void renorm() {
    while (range < 256) {
      if (low < 256) {
        put_bit(0);
      } else if (low >= 512) {
        low -= 512;
        put_bit(1);
      } else {
        low -= 256;
        ++outstanding;
      }
      range <<= 1;
      low <<= 1;
    }
  }
  void decision(ContextModel& c, int bin) {
    const std::uint32_t r_lps = t.range_lps[c.state][(range >> 6) & 3];
    range -= r_lps;
    if (bin != c.mps) {
      low += range;
      range = r_lps;
      if (c.state == 0) c.mps = static_cast<std::uint8_t>(1 - c.mps);
      c.state = t.next_lps[c.state];
    } else {
      c.state = t.next_mps[c.state];
    }
    renorm();
  }
  void bypass(int bin) {
    low <<= 1;
    if (bin) low += range;
    if (low >= 1024) {
      put_bit(1);
      low -= 1024;
    } else if (low < 512) {
      put_bit(0);
    } else {
      low -= 512;
      ++outstanding;
    }
  }
  std::vector<std::uint8_t> terminate_and_flush() {
    range -= 2;
    low += range;
    range = 2;
    renorm();
    put_bit((low >> 9) & 1);
    bits += char('0' + ((low >> 8) & 1));
    bits += '1';
    while (bits.size() % 8) bits += '0';
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < bits.size(); i += 8) out.push_back(static_cast<std::uint8_t>(std::stoi(bits.substr(i, 8), nullptr, 2)));
    return out;
  }
};

struct Symbol {
  int ctx;  // -1 = bypass
  int bin;
};

std::vector<Symbol> random_symbols(std::uint64_t seed, std::size_t n, int contexts) {
  std::mt19937_64 rng(seed);
  std::vector<double> p1(contexts);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& p : p1) p = u(rng);
  std::uniform_int_distribution<int> pick(-1, contexts - 1);
  std::vector<Symbol> s(n);
  for (auto& sym : s) {
    sym.ctx = pick(rng);
    sym.bin = sym.ctx < 0 ? (u(rng) < 0.5) : (u(rng) < p1[sym.ctx]);
  }
  return s;
}

std::vector<std::uint8_t> encode_symbols(const std::vector<Symbol>& syms, int contexts) {
  ArithmeticEncoder enc;
  std::vector<ContextModel> ctx(contexts);
  for (const auto& s : syms) {
    if (s.ctx < 0) {
      enc.encode_bypass(s.bin);
    } else {
      enc.encode(ctx[s.ctx], s.bin);
    }
  }
  return enc.finish();
}

}  // namespace

TEST_CASE("state table endpoints and transitions") {
  const StateTables& t = published_state_tables();
  CHECK(t.p_lps[0] == 0.5);
  CHECK(std::fabs(t.p_lps[63] - 0.01875) < 1e-15);
  for (int s = 1; s < kNumStates; ++s) CHECK(t.p_lps[s] < t.p_lps[s - 1]);
  CHECK(t.next_mps[62] == 62);
  CHECK(t.next_mps[5] == 6);
  CHECK(t.next_lps[0] == 0);
  CHECK(t.range_lps[0][0] == 128);
  CHECK(t.range_lps[0][3] == 240);
  CHECK(t.range_lps[62][0] == 6);
  CHECK(t.range_lps[62][3] == 9);
  for (int s = 0; s <= kMaxAdaptiveState; ++s) {
    CHECK(t.next_lps[s] <= s);
    for (int r = 1; r < 4; ++r) CHECK(t.range_lps[s][r] >= t.range_lps[s][r - 1]);
    if (s > 0) {
      for (int r = 0; r < 4; ++r) CHECK(t.range_lps[s][r] <= t.range_lps[s - 1][r]);
    }
  }
  CHECK_NOTHROW(verify_state_tables());
}

TEST_CASE("derived tables stay within one of the published constants") {
  const StateTables pub = published_state_tables();
  const StateTables der = derive_state_tables();
  for (int s = 0; s <= kMaxAdaptiveState; ++s) {
    CHECK(der.next_mps[s] == pub.next_mps[s]);
    CHECK(std::abs(int(der.next_lps[s]) - int(pub.next_lps[s])) <= 1);
    for (int r = 0; r < 4; ++r) CHECK(std::abs(int(der.range_lps[s][r]) - int(pub.range_lps[s][r])) <= 1);
  }
}

TEST_CASE("lps at state zero flips the mps") {
  ArithmeticEncoder enc;
  ContextModel c;
  enc.encode(c, 1);
  CHECK(c.mps == 1);
  CHECK(c.state == 0);
  enc.encode(c, 1);
  CHECK(c.state == 1);
  enc.encode(c, 0);
  CHECK(c.mps == 1);
  CHECK(c.state == 0);
}

TEST_CASE("empty stream") {
  ArithmeticEncoder enc;
  const auto bytes = enc.finish();
  CHECK(bytes == std::vector<std::uint8_t>{0xFE, 0x80});
  ArithmeticDecoder dec(bytes);
  CHECK(dec.decode_terminate());
  CHECK_NOTHROW(dec.expect_end());
}

TEST_CASE("encoder matches the reference transcription bit for bit") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto syms = random_symbols(seed, 5000, 6);
    ReferenceEncoder ref;
    std::vector<ContextModel> ctx(6);
    for (const auto& s : syms) {
      if (s.ctx < 0) {
        ref.bypass(s.bin);
      } else {
        ref.decision(ctx[s.ctx], s.bin);
      }
    }
    REQUIRE(encode_symbols(syms, 6) == ref.terminate_and_flush());
  }
}

TEST_CASE("random round trip with contexts and bypass") {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    const int contexts = 1 + static_cast<int>(seed % 8);
    const auto syms = random_symbols(seed, 20000, contexts);
    const auto bytes = encode_symbols(syms, contexts);
    ArithmeticDecoder dec(bytes);
    std::vector<ContextModel> ctx(contexts);
    for (const auto& s : syms) {
      const int b = s.ctx < 0 ? dec.decode_bypass() : dec.decode(ctx[s.ctx]);
      REQUIRE(b == s.bin);
    }
    CHECK(dec.decode_terminate());
    CHECK_NOTHROW(dec.expect_end());
  }
}

TEST_CASE("context state evolves identically on both sides") {
  const auto syms = random_symbols(7, 3000, 3);
  ArithmeticEncoder enc;
  std::vector<ContextModel> ectx(3);
  for (const auto& s : syms) {
    if (s.ctx < 0) {
      enc.encode_bypass(s.bin);
    } else {
      enc.encode(ectx[s.ctx], s.bin);
    }
  }
  const auto bytes = enc.finish();
  ArithmeticDecoder dec(bytes);
  std::vector<ContextModel> dctx(3);
  for (const auto& s : syms) {
    if (s.ctx < 0) {
      dec.decode_bypass();
    } else {
      dec.decode(dctx[s.ctx]);
    }
  }
  CHECK(ectx == dctx);
}

TEST_CASE("bypass costs one bit per bin") {
  std::mt19937_64 rng(3);
  ArithmeticEncoder enc;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) enc.encode_bypass(static_cast<int>(rng() & 1));
  const auto bits = 8 * enc.finish().size();
  CHECK(bits >= n - 16);
  CHECK(bits <= n + 16);
}

TEST_CASE("a run of mps bins compresses well") {
  ArithmeticEncoder enc;
  ContextModel c;
  const std::size_t n = 10000;
  for (std::size_t i = 0; i < n; ++i) enc.encode(c, 0);
  CHECK(8 * enc.finish().size() < n / 4);
}

TEST_CASE("decoder rejects truncated and padded streams") {
  CHECK_THROWS_AS(ArithmeticDecoder(std::vector<std::uint8_t>{0xFE}), TruncatedError);

  const auto syms = random_symbols(11, 4000, 2);
  auto bytes = encode_symbols(syms, 2);
  {
    std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + static_cast<long>(bytes.size() / 2));
    ArithmeticDecoder dec(cut);
    std::vector<ContextModel> ctx(2);
    auto run = [&] {
      for (const auto& s : syms) s.ctx < 0 ? dec.decode_bypass() : dec.decode(ctx[s.ctx]);
    };
    CHECK_THROWS_AS(run(), TruncatedError);
  }
  bytes.push_back(0);
  ArithmeticDecoder dec(bytes);
  std::vector<ContextModel> ctx(2);
  for (const auto& s : syms) s.ctx < 0 ? dec.decode_bypass() : dec.decode(ctx[s.ctx]);
  CHECK(dec.decode_terminate());
  CHECK_THROWS_AS(dec.expect_end(), FormatError);
}

TEST_CASE("distinct inputs give distinct streams") {
  std::vector<std::vector<std::uint8_t>> seen;
  for (int k = 0; k < 64; ++k) {
    ArithmeticEncoder enc;
    ContextModel c;
    for (int i = 0; i < 6; ++i) enc.encode(c, (k >> i) & 1);
    seen.push_back(enc.finish());
  }
  for (std::size_t i = 0; i < seen.size(); ++i)
    for (std::size_t j = i + 1; j < seen.size(); ++j) CHECK(seen[i] != seen[j]);
}
