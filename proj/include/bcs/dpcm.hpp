#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bcs {

using QuantIndex = std::int32_t;
using QuantIndexVector = std::vector<QuantIndex>;

/// Uniform midtread scalar quantizer with no dead zone.
class Quantizer {
 public:
  explicit Quantizer(double step);

  double step() const { return step_; }

  /// sign(d) * floor(|d| / step + 1/2). Rejects NaN and results outside the index range.
  QuantIndex quantize(double residual) const;
  double dequantize(QuantIndex index) const { return static_cast<double>(index) * step_; }

 private:
  double step_;
};

/// Closed-loop measurement-domain DPCM. The predictor for block j is the reconstruction of
/// block j-1; block 1 is predicted from zero.
class DpcmLoop {
 public:
  DpcmLoop(std::size_t length, Quantizer quantizer);

  /// Residual, quantize, reconstruct. Updates the one-block delay buffer.
  QuantIndexVector encode_block(std::span<const double> y);

  /// Reconstruction from indices. Performs the same arithmetic as encode_block's feedback.
  std::span<const double> decode_block(std::span<const QuantIndex> indices);

  /// Reconstruction of the most recently processed block.
  std::span<const double> reconstruction() const { return prev_recon_; }
  const Quantizer& quantizer() const { return quantizer_; }
  void reset();

 private:
  Quantizer quantizer_;
  std::vector<double> prev_recon_;
};

}  // namespace bcs
