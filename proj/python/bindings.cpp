#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "smallcap/io.hpp"

namespace py = pybind11;
using namespace smallcap;

namespace {

Vec vec_from(const std::vector<double>& v) {
  if (v.size() == 2) return Vec(v[0], v[1]);
  if (v.size() == 3) return Vec(v[0], v[1], v[2]);
  throw std::invalid_argument("expected a 2- or 3-vector");
}

std::vector<double> vec_to(const Vec& v) {
  return std::vector<double>(v.v.begin(), v.v.begin() + v.dim);
}

Curve curve_from(const std::string& name) {
  if (name == "parabola") return Curve::parabola;
  if (name == "cone") return Curve::cone;
  throw std::invalid_argument("curve must be 'parabola' or 'cone'");
}

py::array grid_to_numpy(const GridFunction& f) {
  std::vector<py::ssize_t> shape(static_cast<size_t>(f.dim), f.n);
  py::array_t<std::complex<double>> arr(shape);
  std::copy(f.samples.begin(), f.samples.end(), arr.mutable_data());
  return arr;
}

}  // namespace

PYBIND11_MODULE(_smallcap, m) {
  m.doc() = "small cap square function toolkit (C++ core)";

  py::class_<OrientedBox>(m, "OrientedBox")
      .def(py::init([](const std::vector<double>& center, const std::vector<std::vector<double>>& axes,
                       const std::vector<double>& half) {
             std::vector<Vec> ax;
             for (const auto& a : axes) ax.push_back(vec_from(a));
             return make_box(vec_from(center), ax, half);
           }),
           py::arg("center"), py::arg("axes"), py::arg("half_lengths"))
      .def_property_readonly("dim", [](const OrientedBox& b) { return b.dim; })
      .def_property_readonly("center", [](const OrientedBox& b) { return vec_to(b.center); })
      .def_property_readonly("axes",
                             [](const OrientedBox& b) {
                               std::vector<std::vector<double>> out;
                               for (int i = 0; i < b.dim; ++i) out.push_back(vec_to(b.axes[i]));
                               return out;
                             })
      .def_property_readonly("half_lengths",
                             [](const OrientedBox& b) {
                               return std::vector<double>(b.half.begin(), b.half.begin() + b.dim);
                             })
      .def("contains", [](const OrientedBox& b, const std::vector<double>& x) { return b.contains(vec_from(x)); })
      .def("volume", &OrientedBox::volume)
      .def("dilated", &OrientedBox::dilated)
      .def("__repr__", [](const OrientedBox& b) { return to_json(b).dump(); });

  m.def("axis_box", [](const std::vector<double>& center, const std::vector<double>& half) {
    return axis_box(vec_from(center), vec_from(half));
  });
  m.def("dual_box", &dual_box);
  m.def("comparable", &comparable, py::arg("a"), py::arg("b"), py::arg("C") = 100.0);
  m.def("essentially_contained", &essentially_contained);
  m.def("minkowski_sum_aligned", &minkowski_sum_aligned, py::arg("a"), py::arg("b"),
        py::arg("angle_tol") = 0.1);
  m.def("tile_count", [](const OrientedBox& proto, double radius) { return tile_region(proto, radius).size(); });
  m.def("overlap_multiplicity",
        [](const std::vector<OrientedBox>& boxes, const std::vector<std::vector<double>>& pts) {
          std::vector<Vec> samples;
          for (const auto& p : pts) samples.push_back(vec_from(p));
          auto st = overlap_multiplicity(boxes, samples);
          return py::make_tuple(st.max, st.histogram);
        });

  py::class_<CapFamily>(m, "CapFamily")
      .def_property_readonly("curve", [](const CapFamily& f) { return curve_name(f.curve); })
      .def_property_readonly("R", [](const CapFamily& f) { return f.R; })
      .def_property_readonly("exponent", [](const CapFamily& f) { return f.exponent; })
      .def_property_readonly("caps", [](const CapFamily& f) { return f.caps; })
      .def_property_readonly("anchors", [](const CapFamily& f) { return f.anchors; })
      .def("__len__", &CapFamily::size)
      .def("to_json", [](const CapFamily& f) { return to_json(f).dump(); });

  m.def("parabola_caps", &parabola_caps, py::arg("R"), py::arg("alpha"));
  m.def("cone_caps", &cone_caps, py::arg("R"), py::arg("beta"));
  m.def("sector_planks", &sector_planks, py::arg("R"), py::arg("s"));
  m.def("envelope_box", py::overload_cast<const OrientedBox&, double, double>(&envelope_box));
  m.def("nu_box", &nu_box);
  m.def("pi_planks", &pi_planks_for, py::arg("thetas"), py::arg("theta_index"), py::arg("s"), py::arg("R"));

  m.def("predicted_exponent", [](const std::string& curve, double exponent, double p) {
    return predicted_exponent({curve_from(curve), exponent, p});
  });

  m.def("parabolic_rescaling_matrix", [](double a, double delta) {
    AffineMap mm = parabolic_rescaling(a, delta);
    return py::make_tuple(std::vector<std::vector<double>>{{mm.linear[0][0], mm.linear[0][1]},
                                                           {mm.linear[1][0], mm.linear[1][1]}},
                          vec_to(mm.translation));
  });

  m.def("slice_integral", [](double r, double p, double R, double beta, const std::string& method) {
    return slice_integral(r, p, R, beta, method == "brute" ? SliceMethod::brute : SliceMethod::analytic);
  });
  m.def("total_integral", [](double p, double R, double beta, const std::string& method) {
    return total_integral(p, R, beta, method == "brute" ? SliceMethod::brute : SliceMethod::analytic);
  });
  m.def("predicted_overlap", [](double d, double r, double R, double beta) {
    auto pred = predicted_overlap(d, r, R, beta);
    return py::make_tuple(pred.value, pred.in_range);
  });
  m.def("slice_overlap_at", [](const std::vector<double>& point, double r, double R, double beta) {
    auto planks = slice_family(R, beta, r);
    return brute_overlap(vec_from(point), planks);
  });

  m.def("concentrated_indicator_sums", [](double R, double alpha, double p) {
    auto s = concentrated_indicator_sums(R, alpha, p);
    return py::make_tuple(s.lhs_value, s.total, s.shell_sums);
  });
  m.def("flat_indicator_sums", [](double R, double alpha, double p) {
    auto s = flat_indicator_sums(R, alpha, p);
    return py::make_tuple(s.lhs_value, s.total, s.shell_sums);
  });

  m.def("fit_exponent", [](const std::vector<std::pair<double, double>>& pts) {
    auto [slope, err] = fit_exponent(pts);
    return py::make_tuple(slope, err);
  });

  m.def(
      "concentrated_parabola",
      [](double R, double alpha, int oversample) { return grid_to_numpy(concentrated_parabola(R, alpha, oversample)); },
      py::arg("R"), py::arg("alpha"), py::arg("oversample") = 4);
  m.def(
      "cone_bump", [](double R, int oversample) { return grid_to_numpy(cone_bump(R, oversample)); },
      py::arg("R"), py::arg("oversample") = 2);

  m.def(
      "run_sweep",
      [](const std::string& curve, double exponent, double p, const std::vector<double>& R_list,
         const std::string& backend, const std::string& example, int jobs) {
        SweepConfig cfg;
        cfg.curve = curve_from(curve);
        cfg.exponent = exponent;
        cfg.p = p;
        cfg.R_list = R_list;
        cfg.backend = backend == "fft" ? Backend::fft : Backend::indicator;
        std::string ex = example.empty() ? (cfg.curve == Curve::cone ? "cone_bump" : "concentrated") : example;
        cfg.example = ex == "flat"        ? ExampleKind::flat
                      : ex == "cone_bump" ? ExampleKind::cone_bump_example
                                          : ExampleKind::concentrated;
        cfg.jobs = jobs;
        return to_json(run_sweep(cfg)).dump();
      },
      py::arg("curve"), py::arg("exponent"), py::arg("p"), py::arg("R_list"),
      py::arg("backend") = "indicator", py::arg("example") = "", py::arg("jobs") = 1);
}
