#include "bcs/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bcs/codec.hpp"
#include "bcs/entropy.hpp"
#include "bcs/error.hpp"
#include "bcs/sensing.hpp"

namespace bcs {

double residual_sigma(const GrayImage& img, std::uint64_t seed, double subrate, std::size_t block_size) {
  const BlockGrid grid = partition(img, block_size, EdgeMode::kReplicate);
  const MeasurementMatrix mat = generate_matrix(seed, measurements_for_subrate(subrate, block_size), block_size);
  if (grid.count() < 2) throw UsageError("residual_sigma: need at least two blocks");

  std::vector<double> prev = measure(mat, grid.blocks[0]);
  double sum = 0.0;
  double sum_sq = 0.0;
  std::size_t n = 0;
  for (std::size_t j = 1; j < grid.count(); ++j) {
    std::vector<double> y = measure(mat, grid.blocks[j]);
    for (std::size_t m = 0; m < y.size(); ++m) {
      const double d = y[m] - prev[m];
      sum += d;
      sum_sq += d * d;
    }
    n += y.size();
    prev = std::move(y);
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum_sq / static_cast<double>(n) - mean * mean;
  return std::sqrt(var > 0.0 ? var : 0.0);
}

double grid_step(const GrayImage& img, std::uint64_t seed, double subrate, std::size_t block_size) {
  const double t = std::log(subrate / kGridMinSubrate) / std::log(kGridMaxSubrate / kGridMinSubrate);
  const double scale = kGridMaxStepScale * std::pow(kGridMinStepScale / kGridMaxStepScale, t);
  const double sigma = residual_sigma(img, seed, subrate, block_size);
  return scale * (sigma > 0.0 ? sigma : 1.0);
}

std::vector<SweepPoint> default_grid(const GrayImage& img, std::uint64_t seed, std::size_t block_size) {
  std::vector<SweepPoint> grid;
  grid.reserve(kDefaultGridPoints);
  const double last = static_cast<double>(kDefaultGridPoints - 1);
  for (std::size_t k = 0; k < kDefaultGridPoints; ++k) {
    const double t = static_cast<double>(k) / last;
    const double subrate = kGridMinSubrate * std::pow(kGridMaxSubrate / kGridMinSubrate, t);
    grid.push_back({subrate, grid_step(img, seed, subrate, block_size)});
  }
  return grid;
}

std::vector<SweepPoint> parse_grid(const std::string& text) {
  std::vector<SweepPoint> grid;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    SweepPoint pt;
    char comma = 0;
    std::istringstream fields(line);
    if (!(fields >> pt.subrate >> comma >> pt.step) || comma != ',') {
      throw UsageError("grid line " + std::to_string(line_no) + ": expected \"subrate,step\"");
    }
    if (!(pt.subrate > 0.0) || pt.subrate > 1.0 || !(pt.step > 0.0)) {
      throw UsageError("grid line " + std::to_string(line_no) + ": need 0 < subrate <= 1 and step > 0");
    }
    grid.push_back(pt);
  }
  if (grid.empty()) throw UsageError("grid config has no points");
  return grid;
}

RdRow evaluate_point(const GrayImage& img, const std::string& name, std::size_t point_index, const SweepPoint& pt,
                     std::uint64_t seed, std::size_t block_size, bool verify) {
  const std::size_t mb = measurements_for_subrate(pt.subrate, block_size);
  const DpcmOutput dpcm = run_dpcm(img, seed, mb, block_size, pt.step, EdgeMode::kReplicate);
  const double pixels = static_cast<double>(img.width * img.height);
  const std::size_t total_indices = dpcm.indices.size() * mb;

  RdRow row;
  row.image = name;
  row.point = point_index;
  row.subrate = pt.subrate;
  row.measurements = mb;
  row.step = pt.step;
  row.bpp_entropy = bpp_from_entropy(zero_order_entropy(dpcm.indices), total_indices, img.width * img.height);

  const auto ac = encode_indices(dpcm.indices, Scheme::kProposed);
  const auto cabac = encode_indices(dpcm.indices, Scheme::kCabacStyle);
  row.bpp_ac = 8.0 * static_cast<double>(ac.size()) / pixels;
  row.bpp_cabac = 8.0 * static_cast<double>(cabac.size()) / pixels;
  row.br13 = row.bpp_entropy > 0.0 ? 100.0 * (row.bpp_entropy - row.bpp_ac) / row.bpp_entropy : 0.0;
  row.br23 = 100.0 * (row.bpp_cabac - row.bpp_ac) / row.bpp_cabac;

  double err = 0.0;
  std::size_t significant = 0;
  for (std::size_t j = 0; j < dpcm.indices.size(); ++j) {
    for (std::size_t m = 0; m < mb; ++m) {
      const double d = dpcm.measurements[j][m] - dpcm.recon[j][m];
      err += d * d;
      if (dpcm.indices[j][m] != 0) ++significant;
    }
  }
  row.mse = err / static_cast<double>(total_indices);
  row.sig_fraction = static_cast<double>(significant) / static_cast<double>(total_indices);

  if (verify) {
    row.verified = decode_indices(ac, Scheme::kProposed, dpcm.indices.size(), mb) == dpcm.indices &&
                   decode_indices(cabac, Scheme::kCabacStyle, dpcm.indices.size(), mb) == dpcm.indices;
  }
  return row;
}

RdRow average_row(const std::vector<RdRow>& rows) {
  RdRow avg;
  if (rows.empty()) return avg;
  avg.image = rows.front().image;
  avg.verified = true;
  double mb = 0.0;
  for (const auto& r : rows) {
    avg.subrate += r.subrate;
    mb += static_cast<double>(r.measurements);
    avg.step += r.step;
    avg.bpp_entropy += r.bpp_entropy;
    avg.bpp_cabac += r.bpp_cabac;
    avg.bpp_ac += r.bpp_ac;
    avg.br13 += r.br13;
    avg.br23 += r.br23;
    avg.mse += r.mse;
    avg.sig_fraction += r.sig_fraction;
    avg.verified = avg.verified && r.verified;
  }
  const double n = static_cast<double>(rows.size());
  avg.subrate /= n;
  avg.measurements = static_cast<std::size_t>(std::llround(mb / n));
  avg.step /= n;
  avg.bpp_entropy /= n;
  avg.bpp_cabac /= n;
  avg.bpp_ac /= n;
  avg.br13 /= n;
  avg.br23 /= n;
  avg.mse /= n;
  avg.sig_fraction /= n;
  return avg;
}

std::string csv_header() {
  return "image,point,subrate,m_b,step,bpp_entropy,bpp_cabac,bpp_ac,br13_pct,br23_pct,mse_measurement,sig_fraction";
}

std::string csv_line(const RdRow& r, bool is_average) {
  char buf[512];
  const std::string point = is_average ? std::string("AVG") : std::to_string(r.point + 1);
  std::snprintf(buf, sizeof buf, "%s,%s,%.6f,%zu,%.6f,%.6f,%.6f,%.6f,%.4f,%.4f,%.6f,%.6f", r.image.c_str(),
                point.c_str(), r.subrate, r.measurements, r.step, r.bpp_entropy, r.bpp_cabac, r.bpp_ac, r.br13, r.br23,
                r.mse, r.sig_fraction);
  return buf;
}

}  // namespace bcs
