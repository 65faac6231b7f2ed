#include "bcs/sensing.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "bcs/error.hpp"
#include "bcs/prng.hpp"

namespace bcs {

double NormalStream::next() {
  if (spare_) {
    const double z = *spare_;
    spare_.reset();
    return z;
  }
  const double u1 = rng_.next_uniform();
  const double u2 = rng_.next_uniform();
  // 1 - u1 lies in (0, 1], so the logarithm is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(theta);
  return radius * std::cos(theta);
}

MeasurementMatrix::MeasurementMatrix(std::uint64_t seed, std::size_t rows, std::size_t block_size,
                                     std::vector<double> entries)
    : seed_(seed), rows_(rows), block_size_(block_size), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * block_size_ * block_size_) {
    throw UsageError("MeasurementMatrix: entry count does not match shape");
  }
}

namespace {

constexpr double kDegenerateNorm = 1e-12;

double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

}  // namespace

MeasurementMatrix generate_matrix(std::uint64_t seed, std::size_t rows, std::size_t block_size) {
  const std::size_t cols = block_size * block_size;
  if (block_size == 0) throw UsageError("generate_matrix: block size must be positive");
  if (rows == 0 || rows > cols) {
    throw UsageError("generate_matrix: need 1 <= M_B <= B^2, got M_B=" + std::to_string(rows) +
                     " with B^2=" + std::to_string(cols));
  }

  NormalStream normals(seed);
  std::vector<double> q(rows * cols);
  for (auto& v : q) v = normals.next();

  for (std::size_t i = 0; i < rows; ++i) {
    std::span<double> row(q.data() + i * cols, cols);
    for (;;) {
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t k = 0; k < i; ++k) {
          std::span<const double> basis(q.data() + k * cols, cols);
          const double proj = dot(row, basis);
          for (std::size_t c = 0; c < cols; ++c) row[c] -= proj * basis[c];
        }
      }
      const double norm = std::sqrt(dot(row, row));
      if (norm >= kDegenerateNorm) {
        for (auto& v : row) v /= norm;
        break;
      }
      // Numerically dependent on earlier rows: redraw from the continuing stream.
      for (auto& v : row) v = normals.next();
    }
  }
  return MeasurementMatrix(seed, rows, block_size, std::move(q));
}

std::size_t measurements_for_subrate(double subrate, std::size_t block_size) {
  if (!(subrate > 0.0) || subrate > 1.0) throw UsageError("subrate must lie in (0, 1]");
  const double n = static_cast<double>(block_size * block_size);
  const auto m = static_cast<std::size_t>(std::llround(subrate * n));
  return m == 0 ? 1 : m;
}

std::vector<double> measure(const MeasurementMatrix& mat, std::span<const double> block) {
  if (block.size() != mat.cols()) {
    throw UsageError("measure: block length " + std::to_string(block.size()) + " != " + std::to_string(mat.cols()));
  }
  std::vector<double> y(mat.rows());
  for (std::size_t r = 0; r < mat.rows(); ++r) y[r] = dot(mat.row(r), block);
  return y;
}

std::vector<double> backproject(const MeasurementMatrix& mat, std::span<const double> y) {
  if (y.size() != mat.rows()) {
    throw UsageError("backproject: vector length " + std::to_string(y.size()) + " != " + std::to_string(mat.rows()));
  }
  std::vector<double> x(mat.cols(), 0.0);
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    const auto row = mat.row(r);
    for (std::size_t c = 0; c < x.size(); ++c) x[c] += y[r] * row[c];
  }
  return x;
}

}  // namespace bcs
