#include "bcs/entropy.hpp"

#include <cmath>
#include <map>

#include "bcs/error.hpp"

namespace bcs {
namespace {

double entropy_of(const std::map<QuantIndex, std::size_t>& histogram, std::size_t total) {
  // Summed in ascending symbol order so the result does not depend on input order.
  double e = 0.0;
  const double n = static_cast<double>(total);
  for (const auto& [symbol, count] : histogram) {
    const double p = static_cast<double>(count) / n;
    e -= p * std::log2(p);
  }
  return e == 0.0 ? 0.0 : e;
}

}  // namespace

double zero_order_entropy(std::span<const QuantIndex> indices) {
  if (indices.empty()) throw UsageError("zero_order_entropy: no indices");
  std::map<QuantIndex, std::size_t> histogram;
  for (const QuantIndex v : indices) ++histogram[v];
  return entropy_of(histogram, indices.size());
}

double zero_order_entropy(std::span<const QuantIndexVector> blocks) {
  std::map<QuantIndex, std::size_t> histogram;
  std::size_t total = 0;
  for (const auto& iv : blocks) {
    for (const QuantIndex v : iv) ++histogram[v];
    total += iv.size();
  }
  if (total == 0) throw UsageError("zero_order_entropy: no indices");
  return entropy_of(histogram, total);
}

double bpp_from_entropy(double bits_per_index, std::size_t total_indices, std::size_t pixel_count) {
  if (pixel_count == 0) throw UsageError("bpp_from_entropy: zero pixels");
  return bits_per_index * static_cast<double>(total_indices) / static_cast<double>(pixel_count);
}

}  // namespace bcs
