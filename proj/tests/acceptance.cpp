// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <random>
#include <string>
#include <vector>

#include "bcs/binarization.hpp"
#include "bcs/codec.hpp"
#include "bcs/container.hpp"
#include "bcs/dpcm.hpp"
#include "bcs/mcoder.hpp"
#include "bcs/sensing.hpp"
#include "bcs/sweep.hpp"

using namespace bcs;

namespace {

const std::vector<std::string> kCorpus{"astronaut", "camera", "chelsea", "coffee"};

int g_failed = 0;

void report(int id, bool ok, const std::string& title, const std::string& detail) {
  std::printf("[%s] %d. %s: %s\n", ok ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failed;
}

std::string fmt(const char* f, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c, d);
  return buf;
}

GrayImage corpus(const std::string& name) { return load_pgm_file(std::string(BCS_CORPUS_DIR) + "/" + name + ".pgm"); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- 1 and 7: corpus sweep ------------------------------------------------------------------

struct ImageSweep {
  std::string name;
  std::vector<RdRow> rows;
  std::size_t checks = 0;
  std::size_t mismatches = 0;
};

ImageSweep sweep_image(const std::string& name) {
  ImageSweep out;
  out.name = name;
  const GrayImage img = corpus(name);
  const auto grid = default_grid(img, 1, 16);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const std::size_t mb = measurements_for_subrate(grid[k].subrate, 16);
    const DpcmOutput dpcm = run_dpcm(img, 1, mb, 16, grid[k].step, EdgeMode::kReplicate);
    for (const Scheme s : {Scheme::kProposed, Scheme::kCabacStyle}) {
      ++out.checks;
      const auto payload = encode_indices(dpcm.indices, s);
      const auto decoded = decode_indices(payload, s, dpcm.indices.size(), mb);
      bool same = decoded == dpcm.indices;
      DpcmLoop loop(mb, Quantizer(grid[k].step));
      for (std::size_t j = 0; same && j < decoded.size(); ++j) {
        const auto y = loop.decode_block(decoded[j]);
        same = std::equal(y.begin(), y.end(), dpcm.recon[j].begin(), dpcm.recon[j].end());
      }
      if (!same) ++out.mismatches;
    }
    out.rows.push_back(evaluate_point(img, name, k, grid[k], 1, 16, false));
  }
  return out;
}

// ---- 2 and 3: arithmetic coder efficiency ---------------------------------------------------

double binary_entropy(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

void check_efficiency() {
  const std::size_t n = 1000000;
  const StateTables& t = published_state_tables();
  bool ok = true;
  std::string detail;
  std::string split;
  for (const double p : {0.5, 0.2, 0.05}) {
    std::mt19937_64 rng(static_cast<std::uint64_t>(p * 1000));
    std::bernoulli_distribution src(p);
    ArithmeticEncoder enc;
    ContextModel ctx;
    double model_bits = 0.0;  // cost of the state machine's own estimates under ideal coding
    for (std::size_t i = 0; i < n; ++i) {
      const int bin = src(rng) ? 1 : 0;
      const double p_lps = t.p_lps[ctx.state];
      model_bits -= std::log2(bin == ctx.mps ? 1.0 - p_lps : p_lps);
      enc.encode(ctx, bin);
    }
    const double bits = 8.0 * static_cast<double>(enc.finish().size());
    const double ideal = static_cast<double>(n) * binary_entropy(p);
    const double excess = 100.0 * (bits - ideal) / ideal;
    ok = ok && std::fabs(excess) <= 2.0;
    detail += fmt("p=%.2f %+.3f%%  ", p, excess);
    split += fmt(" p=%.2f estimate %+.2f%% engine %+.2f%%;", p, 100.0 * (model_bits - ideal) / ideal,
                 100.0 * (bits - model_bits) / model_bits);
  }
  report(2, ok, "M-coder within 2% of N*H(p), N=1e6", detail);
  std::printf("       excess split:%s\n", split.c_str());

  std::mt19937_64 rng(99);
  const std::size_t nb = 100000;
  ArithmeticEncoder enc;
  for (std::size_t i = 0; i < nb; ++i) enc.encode_bypass(static_cast<int>(rng() & 1));
  const double bits = 8.0 * static_cast<double>(enc.finish().size());
  const double diff = bits - static_cast<double>(nb);
  report(3, std::fabs(diff) <= 16.0, "bypass bins cost N +/- 16 bits, N=1e5", fmt("%.0f bits, %+.0f", bits, diff));
}

// ---- 4: state tables ------------------------------------------------------------------------

// Transcribed from the CABAC standard tables, kept separate from the engine's copy.
constexpr int kRefRangeLps[64][4] = {
    {128, 176, 208, 240}, {128, 167, 197, 227}, {128, 158, 187, 216}, {123, 150, 178, 205}, {116, 142, 169, 195},
    {111, 135, 160, 185}, {105, 128, 152, 175}, {100, 122, 144, 166}, {95, 116, 137, 158},  {90, 110, 130, 150},
    {85, 104, 123, 142},  {81, 99, 117, 135},   {77, 94, 111, 128},   {73, 89, 105, 122},   {69, 85, 100, 116},
    {66, 80, 95, 110},    {62, 76, 90, 104},    {59, 72, 86, 99},     {56, 69, 81, 94},     {53, 65, 77, 89},
    {51, 62, 73, 85},     {48, 59, 69, 80},     {46, 56, 66, 76},     {43, 53, 63, 72},     {41, 50, 59, 69},
    {39, 48, 56, 65},     {37, 45, 54, 62},     {35, 43, 51, 59},     {33, 41, 48, 56},     {32, 39, 46, 53},
    {30, 37, 43, 50},     {29, 35, 41, 48},     {27, 33, 39, 45},     {26, 31, 37, 43},     {24, 30, 35, 41},
    {23, 28, 33, 39},     {22, 27, 32, 37},     {21, 26, 30, 35},     {20, 24, 29, 33},     {19, 23, 27, 31},
    {18, 22, 26, 30},     {17, 21, 25, 28},     {16, 20, 23, 27},     {15, 19, 22, 25},     {14, 18, 21, 24},
    {14, 17, 20, 23},     {13, 16, 19, 22},     {12, 15, 18, 21},     {12, 14, 17, 20},     {11, 14, 16, 19},
    {11, 13, 15, 18},     {10, 12, 15, 17},     {10, 12, 14, 16},     {9, 11, 13, 15},      {9, 11, 12, 14},
    {8, 10, 12, 14},      {8, 9, 11, 13},       {7, 9, 11, 12},       {7, 9, 10, 12},       {7, 8, 10, 11},
    {6, 8, 9, 11},        {6, 7, 9, 10},        {6, 7, 8, 9},         {2, 2, 2, 2},
};
constexpr int kRefTransLps[64] = {0,  0,  1,  2,  2,  4,  4,  5,  6,  7,  8,  9,  9,  11, 11, 12,
                                  13, 13, 15, 15, 16, 16, 18, 18, 19, 19, 21, 21, 22, 22, 23, 24,
                                  24, 25, 26, 26, 27, 27, 28, 29, 29, 30, 30, 30, 31, 32, 32, 33,
                                  33, 33, 34, 34, 35, 35, 35, 36, 36, 36, 37, 37, 37, 38, 38, 63};
constexpr int kRefTransMps[64] = {1,  2,  3,  4,  5,  6,  7,  8,  9,  10, 11, 12, 13, 14, 15, 16,
                                  17, 18, 19, 20, 21, 22, 23, 24, 25, 26, 27, 28, 29, 30, 31, 32,
                                  33, 34, 35, 36, 37, 38, 39, 40, 41, 42, 43, 44, 45, 46, 47, 48,
                                  49, 50, 51, 52, 53, 54, 55, 56, 57, 58, 59, 60, 61, 62, 62, 63};

void check_tables() {
  bool self_check = true;
  try {
    verify_state_tables();
  } catch (const std::exception&) {
    self_check = false;
  }
  const StateTables& t = published_state_tables();
  const bool endpoints = t.p_lps[0] == 0.5 && t.p_lps[63] == 0.01875;
  int mismatches = 0;
  for (int s = 0; s < 64; ++s) {
    for (int r = 0; r < 4; ++r) mismatches += t.range_lps[s][r] != kRefRangeLps[s][r];
    mismatches += t.next_lps[s] != kRefTransLps[s];
    mismatches += t.next_mps[s] != kRefTransMps[s];
  }
  const StateTables d = derive_state_tables();
  int max_dev = 0;
  for (int s = 0; s <= kMaxAdaptiveState; ++s) {
    for (int r = 0; r < 4; ++r) max_dev = std::max(max_dev, std::abs(d.range_lps[s][r] - kRefRangeLps[s][r]));
    max_dev = std::max(max_dev, std::abs(d.next_lps[s] - kRefTransLps[s]));
  }
  report(4, self_check && endpoints && mismatches == 0 && max_dev <= 1, "state tables",
         std::string("endpoints ") + (endpoints ? "exact" : "WRONG") + ", " + std::to_string(mismatches) +
             " entries differ from published, closed-form max deviation " + std::to_string(max_dev) +
             ", startup self-check " + (self_check ? "ok" : "FAILED"));
}

// ---- 5: binarizer ---------------------------------------------------------------------------

void check_binarizer() {
  std::size_t bad = 0;
  for (std::uint32_t v = 0; v <= 10000; ++v) {
    const BinString s = ueg0_encode(v);
    BinStringReader r(s);
    if (ueg0_decode(r) != v || !r.exhausted()) ++bad;
  }
  std::vector<BinString> words;
  for (std::uint32_t v = 0; v <= 512; ++v) words.push_back(ueg0_encode(v));
  std::size_t prefix_pairs = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    for (std::size_t j = 0; j < words.size(); ++j) {
      if (i != j && words[i].size() <= words[j].size() &&
          std::equal(words[i].bins.begin(), words[i].bins.end(), words[j].bins.begin())) {
        ++prefix_pairs;
      }
    }
  }
  report(5, bad == 0 && prefix_pairs == 0, "UEG0 round trip [0,1e4] and prefix-free [0,512]",
         std::to_string(bad) + " round-trip failures, " + std::to_string(prefix_pairs) + " prefix pairs");
}

// ---- 6: dpcm bound --------------------------------------------------------------------------

void check_dpcm() {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<std::size_t> len(1, 256);
  std::uniform_int_distribution<std::size_t> count(1, 64);
  std::uniform_real_distribution<double> step(0.05, 64.0);
  std::uniform_real_distribution<double> scale(1.0, 5000.0);
  std::size_t violations = 0;
  std::size_t components = 0;
  for (int seq = 0; seq < 1000; ++seq) {
    const std::size_t m = len(rng);
    const double q = step(rng);
    std::normal_distribution<double> g(0.0, scale(rng));
    DpcmLoop loop(m, Quantizer(q));
    const std::size_t blocks = count(rng);
    for (std::size_t j = 0; j < blocks; ++j) {
      std::vector<double> y(m);
      for (auto& v : y) v = g(rng);
      loop.encode_block(y);
      const auto rec = loop.reconstruction();
      for (std::size_t i = 0; i < m; ++i) {
        ++components;
        if (std::fabs(y[i] - rec[i]) > q / 2) ++violations;
      }
    }
  }
  report(6, violations == 0, "|y - yhat| <= q/2 on 1e3 random sequences",
         std::to_string(violations) + " violations in " + std::to_string(components) + " components");
}

// ---- 8: significance flatness ---------------------------------------------------------------

struct Flatness {
  double cv = 0;
  double r = 0;
  std::size_t blocks = 0;
};

Flatness flatness(const GrayImage& img, std::uint64_t seed, double subrate) {
  const std::size_t mb = measurements_for_subrate(subrate, 16);
  const double step = grid_step(img, seed, subrate, 16);
  const auto dpcm = run_dpcm(img, seed, mb, 16, step, EdgeMode::kReplicate);
  const auto freq = significance_position_profile(dpcm.indices);
  const double n = static_cast<double>(freq.size());
  double mean = 0, mean_pos = 0;
  for (std::size_t m = 0; m < freq.size(); ++m) {
    mean += freq[m];
    mean_pos += static_cast<double>(m + 1);
  }
  mean /= n;
  mean_pos /= n;
  double sxx = 0, syy = 0, sxy = 0;
  for (std::size_t m = 0; m < freq.size(); ++m) {
    const double dx = static_cast<double>(m + 1) - mean_pos;
    const double dy = freq[m] - mean;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  Flatness f;
  f.cv = std::sqrt(syy / n) / mean;
  f.r = syy > 0 ? sxy / std::sqrt(sxx * syy) : 0.0;
  f.blocks = dpcm.indices.size();
  return f;
}

void check_flatness() {
  const GrayImage img = corpus("astronaut");
  bool ok = true;
  std::string detail = "astronaut seed 1:";
  for (const double s : {0.08, 0.10}) {
    const Flatness f = flatness(img, 1, s);
    ok = ok && f.cv < 0.15 && std::fabs(f.r) < 0.2 && f.blocks >= 500;
    detail += fmt(" s=%.2f cv=%.3f r=%+.3f", s, f.cv, f.r);
  }
  report(8, ok, "significance frequency flat over position (cv < 0.15, |r| < 0.2)", detail);

  // Diagnostic only: how often the same test passes over other matrix realizations.
  int pass = 0;
  const int seeds = 20;
  for (int seed = 1; seed <= seeds; ++seed) {
    bool all = true;
    for (const double s : {0.08, 0.10}) {
      const Flatness f = flatness(img, static_cast<std::uint64_t>(seed), s);
      all = all && f.cv < 0.15 && std::fabs(f.r) < 0.2;
    }
    pass += all;
  }
  std::printf("       seeds 1..%d: %d pass both subrates\n", seeds, pass);
}

// ---- 9: determinism -------------------------------------------------------------------------

void check_determinism() {
  const GrayImage img = corpus("camera");
  EncodeParams a;
  a.seed = 1;
  a.measurements = measurements_for_subrate(0.1, 16);
  a.step = 12.0;
  EncodeParams b = a;
  b.measurements = measurements_for_subrate(0.3, 16);
  b.step = 5.0;
  b.scheme = Scheme::kCabacStyle;

  const auto first = serialize(encode_image(img, a).container);
  const bool repeat = first == serialize(encode_image(img, a).container);
  const auto second = serialize(encode_image(img, b).container);

  std::vector<std::uint8_t> joined = first;
  joined.insert(joined.end(), second.begin(), second.end());
  const auto parts = split_containers(joined);
  bool resplit = parts.size() == 2;
  if (resplit) {
    const auto da = decode_image(parse_container(first));
    const auto db = decode_image(parse_container(second));
    const auto pa = decode_image(parts[0]);
    const auto pb = decode_image(parts[1]);
    resplit = pa.indices == da.indices && pa.recon == da.recon && pa.preview == da.preview &&
              pb.indices == db.indices && pb.recon == db.recon && pb.preview == db.preview;
  }
  report(9, repeat && resplit, "deterministic encode, concatenation and re-split",
         std::string("repeat ") + (repeat ? "identical" : "DIFFERS") + ", re-split " + (resplit ? "identical" : "DIFFERS"));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::future<ImageSweep>> jobs;
  for (const auto& name : kCorpus) jobs.push_back(std::async(std::launch::async, sweep_image, name));
  std::vector<ImageSweep> sweeps;
  for (auto& j : jobs) sweeps.push_back(j.get());
  const double sweep_time = seconds_since(t0);

  std::size_t checks = 0, mismatches = 0;
  for (const auto& s : sweeps) {
    checks += s.checks;
    mismatches += s.mismatches;
  }
  report(1, mismatches == 0 && checks == 160 && sweep_time < 300.0, "lossless entropy stage, 4 images x 20 points x 2 schemes",
         std::to_string(checks - mismatches) + "/" + std::to_string(checks) + " bit-exact, " + fmt("%.1f s", sweep_time));

  check_efficiency();
  check_tables();
  check_binarizer();
  check_dpcm();

  bool dir_ok = true;
  std::string detail;
  for (const auto& s : sweeps) {
    double min13 = 1e9, min23 = 1e9;
    for (const auto& r : s.rows) {
      min13 = std::min(min13, r.br13);
      min23 = std::min(min23, r.br23);
    }
    const RdRow avg = average_row(s.rows);
    const bool ok = min13 > 0 && min23 > 0 && avg.br13 >= 2 && avg.br13 <= 16 && avg.br23 >= 1 && avg.br23 <= 9;
    dir_ok = dir_ok && ok;
    detail += s.name + fmt(" avgBR13=%.2f avgBR23=%.2f minBR13=%.2f minBR23=%.2f", avg.br13, avg.br23, min13, min23) +
              (ok ? "; " : " (out of band); ");
  }
  report(7, dir_ok, "BR13 > 0 and BR23 > 0 everywhere, avg BR13 in [2,16], avg BR23 in [1,9]", detail);

  check_flatness();
  check_determinism();

  std::printf("%d criterion(s) failed\n", g_failed);
  return g_failed == 0 ? 0 : 1;
}
