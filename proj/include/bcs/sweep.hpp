#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bcs/image_io.hpp"

namespace bcs {

struct SweepPoint {
  double subrate = 0.0;
  double step = 0.0;
};

/// One row of the rate comparison: entropy estimate (method 1), CABAC-style coder (method 2)
/// and the proposed coder (method 3). Coded rates count payload bytes only.
struct RdRow {
  std::string image;
  std::size_t point = 0;
  double subrate = 0.0;
  std::size_t measurements = 0;
  double step = 0.0;
  double bpp_entropy = 0.0;
  double bpp_cabac = 0.0;
  double bpp_ac = 0.0;
  double br13 = 0.0;  // percent saving of method 3 over method 1
  double br23 = 0.0;  // percent saving of method 3 over method 2
  double mse = 0.0;   // measurement-domain mean squared error
  double sig_fraction = 0.0;
  bool verified = false;  // both payloads decoded back to the encoder's indices
};

inline constexpr std::size_t kDefaultGridPoints = 20;
inline constexpr double kGridMinSubrate = 0.05;
inline constexpr double kGridMaxSubrate = 0.7;
inline constexpr double kGridMaxStepScale = 1.0;
inline constexpr double kGridMinStepScale = 0.25;

/// Population standard deviation of the open-loop inter-block difference y^j - y^(j-1), j >= 2.
double residual_sigma(const GrayImage& img, std::uint64_t seed, double subrate, std::size_t block_size);

/// Step the default grid assigns to `subrate`: c * residual_sigma, with c falling log-linearly
/// from 1.0 at the lowest grid subrate to 0.25 at the highest.
double grid_step(const GrayImage& img, std::uint64_t seed, double subrate, std::size_t block_size);

/// 20 points: subrates log-spaced over [0.05, 0.7], each with its grid_step, so coarse steps go
/// with low subrates.
std::vector<SweepPoint> default_grid(const GrayImage& img, std::uint64_t seed, std::size_t block_size);

/// Parses "subrate,step" lines. Blank lines and '#' comments are skipped.
std::vector<SweepPoint> parse_grid(const std::string& text);

RdRow evaluate_point(const GrayImage& img, const std::string& name, std::size_t point_index, const SweepPoint& pt,
                     std::uint64_t seed, std::size_t block_size, bool verify = true);

/// Per-column mean of `rows`, labelled as an average row.
RdRow average_row(const std::vector<RdRow>& rows);

std::string csv_header();
std::string csv_line(const RdRow& row, bool is_average = false);

}  // namespace bcs
