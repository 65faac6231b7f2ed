#pragma once

#include <cstddef>
#include <span>

#include "bcs/dpcm.hpp"

namespace bcs {

/// Shannon entropy, in bits per index, of the empirical distribution of all indices pooled.
double zero_order_entropy(std::span<const QuantIndex> indices);
double zero_order_entropy(std::span<const QuantIndexVector> blocks);

/// bits/index * index count / pixel count.
double bpp_from_entropy(double bits_per_index, std::size_t total_indices, std::size_t pixel_count);

}  // namespace bcs
