#include "bcs/image_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "bcs/error.hpp"

namespace bcs {
namespace {

class HeaderScanner {
 public:
  explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  // Skips whitespace and '#' comment lines, then parses a decimal token.
  std::size_t next_number(const char* field) {
    skip_space_and_comments();
    std::size_t value = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (1u << 24)) throw FormatError(std::string("pgm: ") + field + " out of range");
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      if (pos_ >= bytes_.size()) throw TruncatedError(std::string("pgm: missing ") + field, pos_);
      throw FormatError(std::string("pgm: expected ") + field);
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from the raster.
  void consume_single_space() {
    if (pos_ >= bytes_.size()) throw TruncatedError("pgm: header ends before raster", pos_);
    if (!is_space(bytes_[pos_])) throw FormatError("pgm: expected whitespace after maxval");
    ++pos_;
  }

  std::size_t pos() const { return pos_; }

 private:
  static bool is_space(std::uint8_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f'; }

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (is_space(bytes_[pos_])) {
        ++pos_;
      } else if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 2;
};

std::uint8_t to_pixel(double v) {
  // round half away from zero, then clamp
  double r = std::round(v);
  if (r < 0.0) r = 0.0;
  if (r > 255.0) r = 255.0;
  return static_cast<std::uint8_t>(r);
}

}  // namespace

GrayImage read_pgm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2) throw TruncatedError("pgm: missing magic", bytes.size());
  if (bytes[0] != 'P' || bytes[1] != '5') throw FormatError("pgm: bad magic (only binary P5 is supported)");

  HeaderScanner scan(bytes);
  GrayImage img;
  img.width = scan.next_number("width");
  img.height = scan.next_number("height");
  const std::size_t maxval = scan.next_number("maxval");
  if (img.width == 0 || img.height == 0) throw FormatError("pgm: zero dimension");
  if (maxval != 255) throw FormatError("pgm: maxval " + std::to_string(maxval) + " unsupported (need 255)");
  scan.consume_single_space();

  const std::size_t count = img.width * img.height;
  const std::size_t start = scan.pos();
  if (bytes.size() - start < count) throw TruncatedError("pgm: raster truncated", bytes.size());
  img.samples.assign(bytes.begin() + static_cast<std::ptrdiff_t>(start),
                     bytes.begin() + static_cast<std::ptrdiff_t>(start + count));
  return img;
}

std::vector<std::uint8_t> write_pgm(const GrayImage& img) {
  const std::string header = "P5\n" + std::to_string(img.width) + " " + std::to_string(img.height) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), img.samples.begin(), img.samples.end());
  return out;
}

GrayImage load_pgm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return read_pgm(bytes);
}

void save_pgm_file(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create " + path);
  const auto bytes = write_pgm(img);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

BlockGrid partition(const GrayImage& img, std::size_t block_size, EdgeMode mode) {
  if (block_size == 0) throw UsageError("partition: block size must be positive");
  if (img.samples.size() != img.width * img.height) throw UsageError("partition: sample count does not match geometry");
  const bool divides = img.width % block_size == 0 && img.height % block_size == 0;
  if (!divides && mode == EdgeMode::kStrict) {
    throw UsageError("partition: block size " + std::to_string(block_size) + " does not divide " +
                     std::to_string(img.width) + "x" + std::to_string(img.height));
  }

  BlockGrid grid;
  grid.block_size = block_size;
  grid.blocks_x = (img.width + block_size - 1) / block_size;
  grid.blocks_y = (img.height + block_size - 1) / block_size;
  grid.blocks.reserve(grid.blocks_x * grid.blocks_y);
  for (std::size_t by = 0; by < grid.blocks_y; ++by) {
    for (std::size_t bx = 0; bx < grid.blocks_x; ++bx) {
      std::vector<double> block(block_size * block_size);
      for (std::size_t r = 0; r < block_size; ++r) {
        const std::size_t y = std::min(by * block_size + r, img.height - 1);
        for (std::size_t c = 0; c < block_size; ++c) {
          const std::size_t x = std::min(bx * block_size + c, img.width - 1);
          block[r * block_size + c] = static_cast<double>(img.samples[y * img.width + x]);
        }
      }
      grid.blocks.push_back(std::move(block));
    }
  }
  return grid;
}

GrayImage assemble(const BlockGrid& grid, std::size_t width, std::size_t height) {
  const std::size_t b = grid.block_size;
  if (b == 0 || width == 0 || height == 0) throw UsageError("assemble: empty geometry");
  if (grid.blocks_x != (width + b - 1) / b || grid.blocks_y != (height + b - 1) / b ||
      grid.blocks.size() != grid.blocks_x * grid.blocks_y) {
    throw UsageError("assemble: block grid does not match " + std::to_string(width) + "x" + std::to_string(height));
  }

  GrayImage img{width, height, std::vector<std::uint8_t>(width * height)};
  for (std::size_t j = 0; j < grid.blocks.size(); ++j) {
    const auto& block = grid.blocks[j];
    if (block.size() != b * b) throw UsageError("assemble: block " + std::to_string(j) + " has wrong length");
    const std::size_t x0 = (j % grid.blocks_x) * b;
    const std::size_t y0 = (j / grid.blocks_x) * b;
    for (std::size_t r = 0; r < b && y0 + r < height; ++r) {
      for (std::size_t c = 0; c < b && x0 + c < width; ++c) {
        img.samples[(y0 + r) * width + x0 + c] = to_pixel(block[r * b + c]);
      }
    }
  }
  return img;
}

}  // namespace bcs
