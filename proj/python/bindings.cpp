#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <string>

#include "softthresh/filters.hpp"
#include "softthresh/image.hpp"
#include "softthresh/local.hpp"
#include "softthresh/special.hpp"
#include "softthresh/thresholding.hpp"

namespace py = pybind11;
using namespace softthresh;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

GreyImage to_image(const U8Array& arr) {
  if (arr.ndim() != 2) throw py::value_error("expected a 2-D uint8 array");
  const auto h = static_cast<int>(arr.shape(0));
  const auto w = static_cast<int>(arr.shape(1));
  std::vector<std::uint8_t> data(arr.data(), arr.data() + arr.size());
  return GreyImage(w, h, std::move(data));
}

U8Array to_array(const GreyImage& img) {
  U8Array out({img.height(), img.width()});
  std::copy(img.pixels().begin(), img.pixels().end(), out.mutable_data());
  return out;
}

ThresholdMap to_threshold_map(const U8Array& arr) {
  if (arr.ndim() != 2) throw py::value_error("expected a 2-D uint8 threshold map");
  std::vector<std::uint8_t> data(arr.data(), arr.data() + arr.size());
  return ThresholdMap(static_cast<int>(arr.shape(1)), static_cast<int>(arr.shape(0)),
                      std::move(data));
}

Histogram to_histogram(const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& arr) {
  if (arr.ndim() != 1 || arr.shape(0) != kMaxGrey + 1) {
    throw py::value_error("expected a histogram of 256 counts");
  }
  Histogram h;
  std::copy(arr.data(), arr.data() + arr.size(), h.counts.begin());
  return h;
}

Distribution to_dist(const std::string& name) {
  if (auto d = parse_distribution(name)) return *d;
  throw py::value_error("unknown distribution '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Soft thresholding of greyscale document images";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto param = py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
  py::register_exception<InvalidWindow>(m, "InvalidWindow", param.ptr());
  py::register_exception<InvalidWhiteMean>(m, "InvalidWhiteMean", param.ptr());
  py::register_exception<DimensionMismatch>(m, "DimensionMismatch", error.ptr());
  py::register_exception<PgmError>(m, "PgmError", error.ptr());
  py::register_exception<DegenerateHistogram>(m, "DegenerateHistogram", error.ptr());
  py::register_exception<NoWhiteClass>(m, "NoWhiteClass", error.ptr());

  m.def("read_pgm", [](py::bytes data) {
    const std::string s = data;
    const auto* p = reinterpret_cast<const std::uint8_t*>(s.data());
    return to_array(read_pgm(std::span<const std::uint8_t>(p, s.size())));
  }, py::arg("data"));
  m.def("write_pgm", [](const U8Array& img, bool ascii) {
    const auto bytes = write_pgm(to_image(img), ascii);
    return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
  }, py::arg("image"), py::arg("ascii") = false);

  m.def("histogram", [](const U8Array& img) {
    const Histogram h = histogram(to_image(img));
    py::array_t<std::uint64_t> out(kMaxGrey + 1);
    std::copy(h.counts.begin(), h.counts.end(), out.mutable_data());
    return out;
  }, py::arg("image"));
  m.def("subtract_clamped", [](const U8Array& a, const U8Array& b, int offset) {
    return to_array(subtract_clamped(to_image(a), to_image(b), offset));
  }, py::arg("a"), py::arg("b"), py::arg("offset"));

  m.def("max_filter", [](const U8Array& img, int k) {
    return to_array(max_filter_fast(to_image(img), WindowSpec(k)));
  }, py::arg("image"), py::arg("k"), "k x k maximum filter (running-max implementation)");
  m.def("min_filter", [](const U8Array& img, int k) {
    return to_array(min_filter_fast(to_image(img), WindowSpec(k)));
  }, py::arg("image"), py::arg("k"));
  m.def("max_filter_naive", [](const U8Array& img, int k) {
    return to_array(max_filter_naive(to_image(img), WindowSpec(k)));
  }, py::arg("image"), py::arg("k"));
  m.def("min_filter_naive", [](const U8Array& img, int k) {
    return to_array(min_filter_naive(to_image(img), WindowSpec(k)));
  }, py::arg("image"), py::arg("k"));

  m.def("otsu_threshold", [](const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& hist) {
    return otsu_threshold(to_histogram(hist));
  }, py::arg("histogram"));
  m.def("hard_threshold", [](const U8Array& img, int t) {
    return to_array(hard_threshold(to_image(img), t));
  }, py::arg("image"), py::arg("threshold"));
  m.def("erf", &error_function, py::arg("x"));
  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("z_alpha", [](double alpha) { return AutoParams(alpha).z_alpha(); },
        py::arg("alpha") = AutoParams::kDefaultAlpha);
  m.def("transfer_value", [](const std::string& dist, int t, double band, double v) {
    return transfer_value(TransferSpec(to_dist(dist), t, band), v);
  }, py::arg("dist"), py::arg("threshold"), py::arg("band"), py::arg("v"));
  m.def("build_lut", [](const std::string& dist, int t, double band) {
    const auto lut = build_lut(TransferSpec(to_dist(dist), t, band));
    U8Array out(kMaxGrey + 1);
    std::copy(lut.table().begin(), lut.table().end(), out.mutable_data());
    return out;
  }, py::arg("dist"), py::arg("threshold"), py::arg("band"));
  m.def("mean_white", [](const py::array_t<std::uint64_t, py::array::c_style | py::array::forcecast>& hist, int t) {
    return mean_white(to_histogram(hist), t);
  }, py::arg("histogram"), py::arg("threshold"));
  m.def("band_from_alpha", [](const std::string& dist, int t, double white_mean, double alpha) {
    return band_from_alpha(to_dist(dist), t, white_mean, AutoParams(alpha));
  }, py::arg("dist"), py::arg("threshold"), py::arg("white_mean"),
     py::arg("alpha") = AutoParams::kDefaultAlpha);
  m.def("band_convert", [](double sigma) {
    const auto b = band_convert(sigma);
    return py::make_tuple(b.uniform_width, b.logistic_scale);
  }, py::arg("sigma"), "Returns (h, theta) with the variance of a normal of std sigma");

  m.def("soft_threshold", [](const U8Array& img, std::optional<int> t, const std::string& dist, double alpha) {
    return to_array(soft_threshold(to_image(img), t, to_dist(dist), AutoParams(alpha)));
  }, py::arg("image"), py::arg("threshold") = py::none(), py::arg("dist") = "logistic",
     py::arg("alpha") = AutoParams::kDefaultAlpha);
  m.def("soft_threshold_detailed", [](const U8Array& img, std::optional<int> t, const std::string& dist,
                                      double alpha, std::optional<double> band) {
    SoftOptions options;
    options.dist = to_dist(dist);
    options.threshold = t;
    options.band = band;
    options.params = AutoParams(alpha);
    const SoftResult r = soft_threshold_detailed(to_image(img), options);
    py::dict out;
    out["image"] = to_array(r.image);
    out["threshold"] = r.threshold;
    out["white_mean"] = r.white_mean ? py::cast(*r.white_mean) : py::none();
    out["band"] = r.spec ? py::cast(r.spec->band()) : py::none();
    out["hard_fallback"] = r.hard_fallback;
    return out;
  }, py::arg("image"), py::arg("threshold") = py::none(), py::arg("dist") = "logistic",
     py::arg("alpha") = AutoParams::kDefaultAlpha, py::arg("band") = py::none());

  m.def("shading_subtraction", [](const U8Array& img, int k) {
    return to_array(shading_subtraction(to_image(img), WindowSpec(k)));
  }, py::arg("image"), py::arg("k"));
  m.def("soft_shading_subtraction", [](const U8Array& img, int k, const std::string& dist, double alpha) {
    return to_array(soft_shading_subtraction(to_image(img), WindowSpec(k), to_dist(dist), AutoParams(alpha)));
  }, py::arg("image"), py::arg("k"), py::arg("dist") = "logistic",
     py::arg("alpha") = AutoParams::kDefaultAlpha);
  m.def("local_soft_threshold", [](const U8Array& img, const U8Array& tmap, int k,
                                   const std::string& dist, double alpha) {
    return to_array(local_soft_threshold(to_image(img), to_threshold_map(tmap), WindowSpec(k),
                                         to_dist(dist), AutoParams(alpha)));
  }, py::arg("image"), py::arg("thresholds"), py::arg("k"), py::arg("dist") = "logistic",
     py::arg("alpha") = AutoParams::kDefaultAlpha);
  m.def("white_class_vw", [](const U8Array& img, const U8Array& tmap) {
    return white_class_vw(to_image(img), to_threshold_map(tmap));
  }, py::arg("image"), py::arg("thresholds"));
}
