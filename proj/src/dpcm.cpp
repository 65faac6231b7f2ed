#include "bcs/dpcm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bcs/error.hpp"

namespace bcs {

Quantizer::Quantizer(double step) : step_(step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw UsageError("quantizer step must be a positive finite number");
}

QuantIndex Quantizer::quantize(double residual) const {
  if (std::isnan(residual)) throw UsageError("quantize: NaN residual");
  const double magnitude = std::floor(std::fabs(residual) / step_ + 0.5);
  if (magnitude > static_cast<double>(std::numeric_limits<QuantIndex>::max())) {
    throw UsageError("quantize: index overflow (step too small for the residual range)");
  }
  const auto m = static_cast<QuantIndex>(magnitude);
  return residual < 0.0 ? -m : m;
}

DpcmLoop::DpcmLoop(std::size_t length, Quantizer quantizer) : quantizer_(quantizer), prev_recon_(length, 0.0) {}

void DpcmLoop::reset() { std::fill(prev_recon_.begin(), prev_recon_.end(), 0.0); }

QuantIndexVector DpcmLoop::encode_block(std::span<const double> y) {
  if (y.size() != prev_recon_.size()) {
    throw UsageError("dpcm: measurement length " + std::to_string(y.size()) + " != " + std::to_string(prev_recon_.size()));
  }
  QuantIndexVector indices(y.size());
  for (std::size_t m = 0; m < y.size(); ++m) {
    const double residual = y[m] - prev_recon_[m];
    indices[m] = quantizer_.quantize(residual);
    prev_recon_[m] = quantizer_.dequantize(indices[m]) + prev_recon_[m];
  }
  return indices;
}

std::span<const double> DpcmLoop::decode_block(std::span<const QuantIndex> indices) {
  if (indices.size() != prev_recon_.size()) {
    throw UsageError("dpcm: index vector length " + std::to_string(indices.size()) + " != " +
                     std::to_string(prev_recon_.size()));
  }
  for (std::size_t m = 0; m < indices.size(); ++m) {
    prev_recon_[m] = quantizer_.dequantize(indices[m]) + prev_recon_[m];
  }
  return prev_recon_;
}

}  // namespace bcs
