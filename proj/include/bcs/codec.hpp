#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bcs/container.hpp"
#include "bcs/dpcm.hpp"
#include "bcs/image_io.hpp"
#include "bcs/mcoder.hpp"

namespace bcs {

/// Per-vector decomposition into the three coded syntax elements.
struct SyntaxStream {
  std::vector<std::uint8_t> sig_flags;       // one per component
  std::vector<std::uint32_t> levels_minus1;  // one per significant component
  std::vector<std::uint8_t> signs;           // 1 = negative

  bool operator==(const SyntaxStream&) const = default;
};

SyntaxStream decompose(std::span<const QuantIndex> indices);
QuantIndexVector recompose(const SyntaxStream& ss, std::size_t length);

/// Proposed scheme: one context for every significance flag and one for every
/// context-coded level bin. Signs and exp-Golomb suffix bins are bypass coded.
struct ContextSet {
  ContextModel sig;
  ContextModel level;

  static constexpr std::size_t kContextCount = 2;
  std::span<const ContextModel> all() const { return {&sig, kContextCount}; }
};

/// Codes one index vector. For each component in order: the significance flag, then, if
/// significant, its UEG0 level bins and sign.
void encode_block(std::span<const QuantIndex> indices, ContextSet& ctx, ArithmeticEncoder& enc);
QuantIndexVector decode_block(std::size_t length, ContextSet& ctx, ArithmeticDecoder& dec);

struct EncodeParams {
  std::uint64_t seed = 0;
  std::size_t measurements = 0;  // M_B
  std::size_t block_size = 16;
  double step = 1.0;
  Scheme scheme = Scheme::kProposed;
  EdgeMode edge_mode = EdgeMode::kStrict;
};

/// Everything the pipeline produced on the encoder side. `recon` is the DPCM feedback
/// (one reconstructed measurement vector per block).
struct EncodeResult {
  Container container;
  std::vector<QuantIndexVector> indices;
  std::vector<std::vector<double>> measurements;
  std::vector<std::vector<double>> recon;
};

struct DecodeResult {
  std::vector<QuantIndexVector> indices;
  std::vector<std::vector<double>> recon;
  GrayImage preview;
};

/// Runs sensing and the DPCM loop only (no entropy coding).
struct DpcmOutput {
  std::vector<QuantIndexVector> indices;
  std::vector<std::vector<double>> measurements;
  std::vector<std::vector<double>> recon;
};
DpcmOutput run_dpcm(const GrayImage& img, std::uint64_t seed, std::size_t measurements, std::size_t block_size,
                    double step, EdgeMode mode = EdgeMode::kStrict);

/// Entropy-codes precomputed index vectors with the given scheme. Returns the terminated payload.
std::vector<std::uint8_t> encode_indices(std::span<const QuantIndexVector> indices, Scheme scheme);
std::vector<QuantIndexVector> decode_indices(std::span<const std::uint8_t> payload, Scheme scheme,
                                             std::size_t block_count, std::size_t length);

EncodeResult encode_image(const GrayImage& img, const EncodeParams& params);
DecodeResult decode_image(const Container& container);

/// freq[m] = fraction of blocks whose component m is nonzero.
std::vector<double> significance_position_profile(std::span<const QuantIndexVector> indices);

}  // namespace bcs
