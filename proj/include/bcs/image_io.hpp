#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bcs {

struct GrayImage {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<std::uint8_t> samples;  // row-major

  bool operator==(const GrayImage&) const = default;
};

enum class EdgeMode {
  kStrict,     // reject dimensions that are not multiples of the block size
  kReplicate,  // pad right/bottom by repeating the last column/row
};

/// Non-overlapping B x B blocks in raster order; each block is itself row-major.
struct BlockGrid {
  std::size_t block_size = 0;
  std::size_t blocks_x = 0;
  std::size_t blocks_y = 0;
  std::vector<std::vector<double>> blocks;

  std::size_t count() const { return blocks.size(); }
};

GrayImage read_pgm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_pgm(const GrayImage& img);

GrayImage load_pgm_file(const std::string& path);
void save_pgm_file(const GrayImage& img, const std::string& path);

BlockGrid partition(const GrayImage& img, std::size_t block_size, EdgeMode mode = EdgeMode::kStrict);

/// Inverse of partition. Values are rounded half away from zero and clamped to [0, 255];
/// blocks extending past width/height (padded grids) are cropped.
GrayImage assemble(const BlockGrid& grid, std::size_t width, std::size_t height);

}  // namespace bcs
