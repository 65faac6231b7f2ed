#include "bcs/codec.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "bcs/binarization.hpp"
#include "bcs/cabac_baseline.hpp"
#include "bcs/error.hpp"
#include "bcs/prng.hpp"
#include "bcs/sensing.hpp"

namespace bcs {

SyntaxStream decompose(std::span<const QuantIndex> indices) {
  SyntaxStream ss;
  ss.sig_flags.reserve(indices.size());
  for (const QuantIndex v : indices) {
    ss.sig_flags.push_back(v != 0 ? 1 : 0);
    if (v != 0) {
      ss.levels_minus1.push_back(static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(v)) - 1));
      ss.signs.push_back(v < 0 ? 1 : 0);
    }
  }
  return ss;
}

QuantIndexVector recompose(const SyntaxStream& ss, std::size_t length) {
  if (ss.sig_flags.size() != length) throw FormatError("recompose: flag count does not match vector length");
  if (ss.levels_minus1.size() != ss.signs.size()) throw FormatError("recompose: level/sign count mismatch");
  QuantIndexVector out(length, 0);
  std::size_t k = 0;
  for (std::size_t m = 0; m < length; ++m) {
    if (ss.sig_flags[m] == 0) continue;
    if (k >= ss.levels_minus1.size()) throw FormatError("recompose: more significant flags than levels");
    if (ss.levels_minus1[k] >= static_cast<std::uint32_t>(std::numeric_limits<QuantIndex>::max())) {
      throw FormatError("recompose: level out of range");
    }
    const auto magnitude = static_cast<QuantIndex>(ss.levels_minus1[k] + 1);
    out[m] = ss.signs[k] ? -magnitude : magnitude;
    ++k;
  }
  if (k != ss.levels_minus1.size()) throw FormatError("recompose: more levels than significant flags");
  return out;
}

namespace {

struct LevelSource {
  ContextSet& ctx;
  ArithmeticDecoder& dec;

  int context_bin(std::size_t) { return dec.decode(ctx.level); }
  int bypass_bin() { return dec.decode_bypass(); }
};

void check_u16(std::size_t v, const char* what) {
  if (v > std::numeric_limits<std::uint16_t>::max()) throw UsageError(std::string(what) + " exceeds 65535");
}

}  // namespace

void encode_block(std::span<const QuantIndex> indices, ContextSet& ctx, ArithmeticEncoder& enc) {
  for (const QuantIndex v : indices) {
    enc.encode(ctx.sig, v != 0 ? 1 : 0);
    if (v == 0) continue;
    const auto magnitude = static_cast<std::uint32_t>(std::abs(static_cast<std::int64_t>(v)));
    const BinString bins = ueg0_encode(magnitude - 1);
    for (std::size_t i = 0; i < bins.size(); ++i) {
      if (i < bins.ctx_coded_count) {
        enc.encode(ctx.level, bins.bins[i]);
      } else {
        enc.encode_bypass(bins.bins[i]);
      }
    }
    enc.encode_bypass(v < 0 ? 1 : 0);
  }
}

QuantIndexVector decode_block(std::size_t length, ContextSet& ctx, ArithmeticDecoder& dec) {
  QuantIndexVector out(length, 0);
  LevelSource src{ctx, dec};
  for (std::size_t m = 0; m < length; ++m) {
    if (dec.decode(ctx.sig) == 0) continue;
    const std::uint32_t level_minus1 = ueg0_decode(src);
    if (level_minus1 >= static_cast<std::uint32_t>(std::numeric_limits<QuantIndex>::max())) {
      throw FormatError("block " + std::to_string(m) + ": level out of range");
    }
    const auto magnitude = static_cast<QuantIndex>(level_minus1 + 1);
    out[m] = dec.decode_bypass() ? -magnitude : magnitude;
  }
  return out;
}

std::vector<std::uint8_t> encode_indices(std::span<const QuantIndexVector> indices, Scheme scheme) {
  ArithmeticEncoder enc;
  if (scheme == Scheme::kProposed) {
    ContextSet ctx;
    for (const auto& iv : indices) encode_block(iv, ctx, enc);
  } else {
    cabac_style::ContextBank ctx;
    for (const auto& iv : indices) cabac_style::encode_block(iv, ctx, enc);
  }
  return enc.finish();
}

std::vector<QuantIndexVector> decode_indices(std::span<const std::uint8_t> payload, Scheme scheme,
                                             std::size_t block_count, std::size_t length) {
  ArithmeticDecoder dec(payload);
  std::vector<QuantIndexVector> out;
  out.reserve(block_count);
  if (scheme == Scheme::kProposed) {
    ContextSet ctx;
    for (std::size_t j = 0; j < block_count; ++j) out.push_back(decode_block(length, ctx, dec));
  } else {
    cabac_style::ContextBank ctx;
    for (std::size_t j = 0; j < block_count; ++j) out.push_back(cabac_style::decode_block(length, ctx, dec));
  }
  if (!dec.decode_terminate()) throw FormatError("payload continues past the last block");
  dec.expect_end();
  return out;
}

DpcmOutput run_dpcm(const GrayImage& img, std::uint64_t seed, std::size_t measurements, std::size_t block_size,
                    double step, EdgeMode mode) {
  const BlockGrid grid = partition(img, block_size, mode);
  const MeasurementMatrix mat = generate_matrix(seed, measurements, block_size);
  DpcmLoop loop(measurements, Quantizer(step));

  DpcmOutput out;
  out.indices.reserve(grid.count());
  out.measurements.reserve(grid.count());
  out.recon.reserve(grid.count());
  for (const auto& block : grid.blocks) {
    out.measurements.push_back(measure(mat, block));
    out.indices.push_back(loop.encode_block(out.measurements.back()));
    const auto recon = loop.reconstruction();
    out.recon.emplace_back(recon.begin(), recon.end());
  }
  return out;
}

EncodeResult encode_image(const GrayImage& img, const EncodeParams& params) {
  check_u16(img.width, "image width");
  check_u16(img.height, "image height");
  check_u16(params.measurements, "M_B");
  if (params.block_size == 0 || params.block_size > 255) throw UsageError("block size must be in [1, 255]");

  DpcmOutput dpcm = run_dpcm(img, params.seed, params.measurements, params.block_size, params.step, params.edge_mode);

  EncodeResult result;
  ContainerHeader& h = result.container.header;
  h.prng_id = kPrngXoshiroBoxMuller;
  h.width = static_cast<std::uint16_t>(img.width);
  h.height = static_cast<std::uint16_t>(img.height);
  h.block_size = static_cast<std::uint8_t>(params.block_size);
  h.measurements = static_cast<std::uint16_t>(params.measurements);
  h.step = params.step;
  h.seed = params.seed;
  h.scheme = params.scheme;
  result.container.payload = encode_indices(dpcm.indices, params.scheme);
  if (result.container.payload.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw UsageError("payload exceeds 4 GiB");
  }
  h.payload_len = static_cast<std::uint32_t>(result.container.payload.size());

  result.indices = std::move(dpcm.indices);
  result.measurements = std::move(dpcm.measurements);
  result.recon = std::move(dpcm.recon);
  return result;
}

DecodeResult decode_image(const Container& container) {
  const ContainerHeader& h = container.header;
  if (container.payload.size() != h.payload_len) throw FormatError("container payload length mismatch");
  const std::size_t b = h.block_size;
  const std::size_t blocks_x = (h.width + b - 1) / b;
  const std::size_t blocks_y = (h.height + b - 1) / b;

  DecodeResult out;
  out.indices = decode_indices(container.payload, h.scheme, blocks_x * blocks_y, h.measurements);

  const MeasurementMatrix mat = generate_matrix(h.seed, h.measurements, b);
  DpcmLoop loop(h.measurements, Quantizer(h.step));
  BlockGrid grid{b, blocks_x, blocks_y, {}};
  grid.blocks.reserve(out.indices.size());
  out.recon.reserve(out.indices.size());
  for (const auto& iv : out.indices) {
    const auto recon = loop.decode_block(iv);
    out.recon.emplace_back(recon.begin(), recon.end());
    grid.blocks.push_back(backproject(mat, recon));
  }
  out.preview = assemble(grid, h.width, h.height);
  return out;
}

std::vector<double> significance_position_profile(std::span<const QuantIndexVector> indices) {
  if (indices.empty()) throw UsageError("significance profile: no blocks");
  const std::size_t length = indices.front().size();
  std::vector<double> freq(length, 0.0);
  for (const auto& iv : indices) {
    if (iv.size() != length) throw UsageError("significance profile: ragged index vectors");
    for (std::size_t m = 0; m < length; ++m) {
      if (iv[m] != 0) freq[m] += 1.0;
    }
  }
  for (auto& f : freq) f /= static_cast<double>(indices.size());
  return freq;
}

}  // namespace bcs
