#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bcs {

/// Block measurement operator with orthonormal rows, M_B x B^2, row-major.
/// Only (seed, rows, block_size) are ever transmitted; the entries are regenerated.
class MeasurementMatrix {
 public:
  MeasurementMatrix(std::uint64_t seed, std::size_t rows, std::size_t block_size, std::vector<double> entries);

  std::uint64_t seed() const { return seed_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return block_size_ * block_size_; }
  std::size_t block_size() const { return block_size_; }
  double subrate() const { return static_cast<double>(rows_) / static_cast<double>(cols()); }

  double at(std::size_t r, std::size_t c) const { return entries_[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const { return {entries_.data() + r * cols(), cols()}; }
  std::span<const double> entries() const { return entries_; }

 private:
  std::uint64_t seed_;
  std::size_t rows_;
  std::size_t block_size_;
  std::vector<double> entries_;
};

/// i.i.d. N(0,1) entries from the seeded normal stream in row-major order, then two passes of
/// modified Gram-Schmidt over the rows. A row whose residual norm falls below 1e-12 is redrawn.
MeasurementMatrix generate_matrix(std::uint64_t seed, std::size_t rows, std::size_t block_size);

/// Convenience: M_B = round(subrate * B^2), at least 1.
std::size_t measurements_for_subrate(double subrate, std::size_t block_size);

std::vector<double> measure(const MeasurementMatrix& mat, std::span<const double> block);

/// Adjoint product Phi^T y, a preview-quality reconstruction.
std::vector<double> backproject(const MeasurementMatrix& mat, std::span<const double> y);

}  // namespace bcs
