// bcs: command-line front end for the block compressive-sensing measurement codec.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <iterator>
#include <string>
#include <thread>
#include <vector>

#include "bcs/codec.hpp"
#include "bcs/entropy.hpp"
#include "bcs/error.hpp"
#include "bcs/image_io.hpp"
#include "bcs/sensing.hpp"
#include "bcs/sweep.hpp"

namespace {

using bcs::ErrorKind;

constexpr int kExitOk = 0;

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw bcs::IoError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bcs::IoError("cannot create " + path);
  out << text;
  if (!out) throw bcs::IoError("write failed: " + path);
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw bcs::IoError("cannot create " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw bcs::IoError("write failed: " + path);
}

std::string indices_csv(const std::vector<bcs::QuantIndexVector>& indices) {
  std::string out;
  for (std::size_t j = 0; j < indices.size(); ++j) {
    out += std::to_string(j);
    for (const auto v : indices[j]) {
      out += ',';
      out += std::to_string(v);
    }
    out += '\n';
  }
  return out;
}

bcs::Scheme parse_scheme(const std::string& s) {
  if (s == "ac") return bcs::Scheme::kProposed;
  if (s == "cabac") return bcs::Scheme::kCabacStyle;
  throw bcs::UsageError("unknown scheme '" + s + "' (expected ac or cabac)");
}

void check_subrate(double subrate) {
  if (!(subrate > 0.0) || subrate > 1.0) throw bcs::UsageError("--subrate must lie in (0, 1]");
}

std::string image_name(const std::string& path) { return std::filesystem::path(path).stem().string(); }

struct CommonOptions {
  std::uint64_t seed = 1;
  double subrate = 0.1;
  double step = 8.0;
  std::size_t block_size = 16;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_step = true) {
  cmd->add_option("--seed", o.seed, "measurement matrix seed")->capture_default_str();
  cmd->add_option("--block-size", o.block_size, "block side B")->capture_default_str();
  cmd->add_option("--subrate", o.subrate, "measurements per pixel, M_B / B^2")->capture_default_str();
  if (with_step) cmd->add_option("--step", o.step, "quantizer step")->capture_default_str();
}

int cmd_encode(const std::string& input, const std::string& output, const CommonOptions& o, const std::string& scheme,
               bool pad, const std::string& dump) {
  check_subrate(o.subrate);
  const bcs::GrayImage img = bcs::load_pgm_file(input);
  bcs::EncodeParams p;
  p.seed = o.seed;
  p.block_size = o.block_size;
  p.measurements = bcs::measurements_for_subrate(o.subrate, o.block_size);
  p.step = o.step;
  p.scheme = parse_scheme(scheme);
  p.edge_mode = pad ? bcs::EdgeMode::kReplicate : bcs::EdgeMode::kStrict;

  const bcs::EncodeResult r = bcs::encode_image(img, p);
  const auto bytes = bcs::serialize(r.container);
  write_file(output, bytes);
  if (!dump.empty()) write_file(dump, indices_csv(r.indices));

  const double pixels = static_cast<double>(img.width * img.height);
  std::printf("blocks=%zu m_b=%zu payload_bytes=%zu bpp=%.6f bpp_total=%.6f\n", r.indices.size(), p.measurements,
              r.container.payload.size(), 8.0 * static_cast<double>(r.container.payload.size()) / pixels,
              8.0 * static_cast<double>(bytes.size()) / pixels);
  return kExitOk;
}

int cmd_decode(const std::string& input, const std::string& preview, const std::string& dump) {
  const auto bytes = read_file(input);
  const auto containers = bcs::split_containers(bytes);
  if (containers.size() != 1) {
    throw bcs::UsageError(input + " holds " + std::to_string(containers.size()) + " streams; expected exactly one");
  }
  const bcs::DecodeResult r = bcs::decode_image(containers.front());
  if (!preview.empty()) bcs::save_pgm_file(r.preview, preview);
  if (!dump.empty()) write_file(dump, indices_csv(r.indices));
  std::printf("blocks=%zu m_b=%zu width=%u height=%u\n", r.indices.size(),
              static_cast<std::size_t>(containers.front().header.measurements), containers.front().header.width,
              containers.front().header.height);
  return kExitOk;
}

int cmd_entropy(const std::string& input, const CommonOptions& o) {
  check_subrate(o.subrate);
  const bcs::GrayImage img = bcs::load_pgm_file(input);
  const std::size_t mb = bcs::measurements_for_subrate(o.subrate, o.block_size);
  const auto dpcm = bcs::run_dpcm(img, o.seed, mb, o.block_size, o.step, bcs::EdgeMode::kReplicate);
  const double e = bcs::zero_order_entropy(dpcm.indices);
  const double bpp = bcs::bpp_from_entropy(e, dpcm.indices.size() * mb, img.width * img.height);
  std::printf("bits_per_index=%.6f bpp=%.6f\n", e, bpp);
  return kExitOk;
}

int cmd_sig_profile(const std::string& input, const CommonOptions& o, const std::string& out) {
  check_subrate(o.subrate);
  const bcs::GrayImage img = bcs::load_pgm_file(input);
  const std::size_t mb = bcs::measurements_for_subrate(o.subrate, o.block_size);
  const auto dpcm = bcs::run_dpcm(img, o.seed, mb, o.block_size, o.step, bcs::EdgeMode::kReplicate);
  const auto freq = bcs::significance_position_profile(dpcm.indices);

  std::string header;
  std::string values;
  for (std::size_t m = 0; m < freq.size(); ++m) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", freq[m]);
    header += (m ? ",m" : "m") + std::to_string(m + 1);
    values += (m ? "," : "") + std::string(buf);
  }
  const std::string csv = header + "\n" + values + "\n";
  if (out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file(out, csv);
  }
  return kExitOk;
}

int cmd_rd_sweep(const std::vector<std::string>& inputs, const std::string& grid_path, const std::string& out,
                 std::uint64_t seed, std::size_t block_size, unsigned jobs) {
  std::vector<bcs::SweepPoint> fixed_grid;
  if (!grid_path.empty()) {
    const auto text = read_file(grid_path);
    fixed_grid = bcs::parse_grid(std::string(text.begin(), text.end()));
  }
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());

  std::string csv = bcs::csv_header() + "\n";
  int status = kExitOk;
  for (const auto& path : inputs) {
    try {
      const bcs::GrayImage img = bcs::load_pgm_file(path);
      const std::string name = image_name(path);
      const auto grid = fixed_grid.empty() ? bcs::default_grid(img, seed, block_size) : fixed_grid;

      // Points are independent; rows are collected in point order.
      std::vector<bcs::RdRow> rows(grid.size());
      for (std::size_t begin = 0; begin < grid.size(); begin += jobs) {
        const std::size_t end = std::min(grid.size(), begin + jobs);
        std::vector<std::future<bcs::RdRow>> pending;
        for (std::size_t k = begin; k < end; ++k) {
          pending.push_back(std::async(std::launch::async, [&, k] {
            return bcs::evaluate_point(img, name, k, grid[k], seed, block_size, true);
          }));
        }
        for (std::size_t k = begin; k < end; ++k) rows[k] = pending[k - begin].get();
      }
      for (const auto& r : rows) {
        if (!r.verified) throw bcs::FormatError("point " + std::to_string(r.point + 1) + " failed decode verification");
        csv += bcs::csv_line(r) + "\n";
      }
      csv += bcs::csv_line(bcs::average_row(rows), true) + "\n";
    } catch (const bcs::Error& e) {
      std::fprintf(stderr, "bcs rd-sweep: %s: %s\n", path.c_str(), e.what());
      status = std::max(status, static_cast<int>(e.kind()));
    }
  }
  if (out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    write_file(out, csv);
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block compressive-sensing measurement codec (DPCM + SQ + binary arithmetic coding)"};
  app.require_subcommand(1);

  CommonOptions enc_opts;
  std::string enc_in, enc_out, enc_scheme = "ac", enc_dump;
  bool enc_pad = false;
  auto* enc = app.add_subcommand("encode", "encode a PGM image into a .bcs stream");
  enc->add_option("input", enc_in, "input PGM (P5, maxval 255)")->required();
  enc->add_option("output", enc_out, "output .bcs file")->required();
  add_common(enc, enc_opts);
  enc->add_option("--scheme", enc_scheme, "entropy coder: ac (proposed) or cabac (baseline)")->capture_default_str();
  enc->add_flag("--pad", enc_pad, "replicate-pad images whose size is not a multiple of the block size");
  enc->add_option("--dump-indices", enc_dump, "write quantization indices as CSV");

  std::string dec_in, dec_preview, dec_dump;
  auto* dec = app.add_subcommand("decode", "decode a .bcs stream");
  dec->add_option("input", dec_in, "input .bcs file")->required();
  dec->add_option("--preview", dec_preview, "write the back-projection preview as PGM");
  dec->add_option("--dump-indices", dec_dump, "write decoded quantization indices as CSV");

  std::vector<std::string> sweep_inputs;
  std::string sweep_grid, sweep_out;
  std::uint64_t sweep_seed = 1;
  std::size_t sweep_block = 16;
  unsigned sweep_jobs = 0;
  auto* sweep = app.add_subcommand("rd-sweep", "compare entropy estimate, CABAC-style and proposed coders");
  sweep->add_option("inputs", sweep_inputs, "input PGM images")->required();
  sweep->add_option("--grid", sweep_grid, "grid config, one \"subrate,step\" pair per line");
  sweep->add_option("--out", sweep_out, "output CSV (stdout if omitted)");
  sweep->add_option("--seed", sweep_seed, "measurement matrix seed")->capture_default_str();
  sweep->add_option("--block-size", sweep_block, "block side B")->capture_default_str();
  sweep->add_option("--jobs", sweep_jobs, "parallel points (0 = hardware threads)");

  CommonOptions ent_opts;
  std::string ent_in;
  auto* ent = app.add_subcommand("entropy", "zero-order entropy rate estimate of the DPCM indices");
  ent->add_option("input", ent_in, "input PGM")->required();
  add_common(ent, ent_opts);

  CommonOptions sig_opts;
  std::string sig_in, sig_out;
  auto* sig = app.add_subcommand("sig-profile", "per-position significance frequency");
  sig->add_option("input", sig_in, "input PGM")->required();
  add_common(sig, sig_opts);
  sig->add_option("--out", sig_out, "output CSV (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ErrorKind::kUsage);
  }

  try {
    if (*enc) return cmd_encode(enc_in, enc_out, enc_opts, enc_scheme, enc_pad, enc_dump);
    if (*dec) return cmd_decode(dec_in, dec_preview, dec_dump);
    if (*sweep) return cmd_rd_sweep(sweep_inputs, sweep_grid, sweep_out, sweep_seed, sweep_block, sweep_jobs);
    if (*ent) return cmd_entropy(ent_in, ent_opts);
    if (*sig) return cmd_sig_profile(sig_in, sig_opts, sig_out);
  } catch (const bcs::Error& e) {
    std::fprintf(stderr, "bcs: %s\n", e.what());
    return static_cast<int>(e.kind());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "bcs: internal error: %s\n", e.what());
    return static_cast<int>(ErrorKind::kFormat);
  }
  return static_cast<int>(ErrorKind::kUsage);
}
