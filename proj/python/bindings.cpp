#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <string>

#include "bcs/codec.hpp"
#include "bcs/entropy.hpp"
#include "bcs/error.hpp"
#include "bcs/image_io.hpp"
#include "bcs/sensing.hpp"
#include "bcs/sweep.hpp"

namespace py = pybind11;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using IndexArray = py::array_t<bcs::QuantIndex, py::array::c_style | py::array::forcecast>;

bcs::GrayImage to_image(const U8Array& a) {
  if (a.ndim() != 2) throw bcs::UsageError("image must be a 2-D uint8 array");
  bcs::GrayImage img;
  img.height = static_cast<std::size_t>(a.shape(0));
  img.width = static_cast<std::size_t>(a.shape(1));
  img.samples.assign(a.data(), a.data() + a.size());
  return img;
}

U8Array from_image(const bcs::GrayImage& img) {
  U8Array a({img.height, img.width});
  std::memcpy(a.mutable_data(), img.samples.data(), img.samples.size());
  return a;
}

std::vector<bcs::QuantIndexVector> to_indices(const IndexArray& a) {
  if (a.ndim() != 2) throw bcs::UsageError("indices must be a 2-D array (blocks x M_B)");
  const auto rows = static_cast<std::size_t>(a.shape(0));
  const auto cols = static_cast<std::size_t>(a.shape(1));
  std::vector<bcs::QuantIndexVector> out(rows);
  for (std::size_t j = 0; j < rows; ++j) out[j].assign(a.data() + j * cols, a.data() + (j + 1) * cols);
  return out;
}

IndexArray from_indices(const std::vector<bcs::QuantIndexVector>& v) {
  const std::size_t cols = v.empty() ? 0 : v.front().size();
  IndexArray a({v.size(), cols});
  for (std::size_t j = 0; j < v.size(); ++j) std::memcpy(a.mutable_data(j, 0), v[j].data(), cols * sizeof(bcs::QuantIndex));
  return a;
}

bcs::Scheme parse_scheme(const std::string& s) {
  if (s == "ac") return bcs::Scheme::kProposed;
  if (s == "cabac") return bcs::Scheme::kCabacStyle;
  throw bcs::UsageError("unknown scheme '" + s + "' (expected ac or cabac)");
}

py::dict row_dict(const bcs::RdRow& r) {
  py::dict d;
  d["subrate"] = r.subrate;
  d["m_b"] = r.measurements;
  d["step"] = r.step;
  d["bpp_entropy"] = r.bpp_entropy;
  d["bpp_cabac"] = r.bpp_cabac;
  d["bpp_ac"] = r.bpp_ac;
  d["br13_pct"] = r.br13;
  d["br23_pct"] = r.br23;
  d["mse_measurement"] = r.mse;
  d["sig_fraction"] = r.sig_fraction;
  d["verified"] = r.verified;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Block compressive-sensing measurement codec";

  auto error = py::register_exception<bcs::Error>(m, "BcsError", PyExc_ValueError);
  auto format = py::register_exception<bcs::FormatError>(m, "FormatError", error.ptr());
  py::register_exception<bcs::TruncatedError>(m, "TruncatedError", format.ptr());
  py::register_exception<bcs::UsageError>(m, "UsageError", error.ptr());
  py::register_exception<bcs::IoError>(m, "IoError", error.ptr());

  m.def("read_pgm", [](const py::bytes& data) {
    const std::string s = data;
    return from_image(bcs::read_pgm(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size())));
  }, py::arg("data"), "Parse binary PGM bytes into a (height, width) uint8 array.");

  m.def("write_pgm", [](const U8Array& img) {
    const auto bytes = bcs::write_pgm(to_image(img));
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }, py::arg("image"));

  m.def("measurements_for_subrate", &bcs::measurements_for_subrate, py::arg("subrate"), py::arg("block_size") = 16);

  m.def("generate_matrix", [](std::uint64_t seed, std::size_t rows, std::size_t block_size) {
    const auto mat = bcs::generate_matrix(seed, rows, block_size);
    py::array_t<double> a({mat.rows(), mat.cols()});
    std::memcpy(a.mutable_data(), mat.entries().data(), mat.entries().size() * sizeof(double));
    return a;
  }, py::arg("seed"), py::arg("rows"), py::arg("block_size") = 16,
     "Orthonormal-row Gaussian measurement matrix, shape (rows, block_size**2).");

  m.def("encode", [](const U8Array& image, std::uint64_t seed, double subrate, double step, std::size_t block_size,
                     const std::string& scheme, bool pad) {
    if (!(subrate > 0.0) || subrate > 1.0) throw bcs::UsageError("subrate must lie in (0, 1]");
    bcs::EncodeParams p;
    p.seed = seed;
    p.measurements = bcs::measurements_for_subrate(subrate, block_size);
    p.block_size = block_size;
    p.step = step;
    p.scheme = parse_scheme(scheme);
    p.edge_mode = pad ? bcs::EdgeMode::kReplicate : bcs::EdgeMode::kStrict;
    const auto result = bcs::encode_image(to_image(image), p);
    const auto bytes = bcs::serialize(result.container);
    return py::make_tuple(py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size()),
                          from_indices(result.indices));
  }, py::arg("image"), py::arg("seed") = 1, py::arg("subrate") = 0.1, py::arg("step") = 8.0,
     py::arg("block_size") = 16, py::arg("scheme") = "ac", py::arg("pad") = false,
     "Encode an image. Returns (stream bytes, indices array of shape (blocks, M_B)).");

  m.def("decode", [](const py::bytes& data) {
    const std::string s = data;
    const auto containers = bcs::split_containers(std::span(reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
    py::list out;
    for (const auto& c : containers) {
      const auto r = bcs::decode_image(c);
      py::dict d;
      d["width"] = c.header.width;
      d["height"] = c.header.height;
      d["block_size"] = c.header.block_size;
      d["m_b"] = c.header.measurements;
      d["step"] = c.header.step;
      d["seed"] = c.header.seed;
      d["scheme"] = c.header.scheme == bcs::Scheme::kProposed ? "ac" : "cabac";
      d["indices"] = from_indices(r.indices);
      d["preview"] = from_image(r.preview);
      out.append(d);
    }
    return out;
  }, py::arg("data"), "Decode one or more concatenated streams; returns a list of dicts.");

  m.def("zero_order_entropy", [](const IndexArray& indices) { return bcs::zero_order_entropy(to_indices(indices)); },
        py::arg("indices"), "Entropy in bits per index of all indices pooled.");

  m.def("significance_profile", [](const IndexArray& indices) {
    return bcs::significance_position_profile(to_indices(indices));
  }, py::arg("indices"));

  m.def("default_grid", [](const U8Array& image, std::uint64_t seed, std::size_t block_size) {
    py::list out;
    for (const auto& pt : bcs::default_grid(to_image(image), seed, block_size)) out.append(py::make_tuple(pt.subrate, pt.step));
    return out;
  }, py::arg("image"), py::arg("seed") = 1, py::arg("block_size") = 16, "Default sweep as (subrate, step) pairs.");

  m.def("evaluate_point", [](const U8Array& image, double subrate, double step, std::uint64_t seed,
                             std::size_t block_size) {
    return row_dict(bcs::evaluate_point(to_image(image), "", 0, {subrate, step}, seed, block_size, true));
  }, py::arg("image"), py::arg("subrate"), py::arg("step"), py::arg("seed") = 1, py::arg("block_size") = 16,
     "Rates of the entropy estimate and both coders at one point.");
}
