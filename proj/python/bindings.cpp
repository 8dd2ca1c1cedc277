#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "ialpha/bmo.hpp"
#include "ialpha/carleson.hpp"
#include "ialpha/coeffs.hpp"
#include "ialpha/corpus.hpp"
#include "ialpha/error.hpp"
#include "ialpha/geometry.hpp"
#include "ialpha/spectral.hpp"

namespace py = pybind11;
using namespace ialpha;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Arrays are (n,) for d = 1 and (n, n) for d = 2, matching the row-major flat order.
SampledField to_field(const Array& a, double period) {
  if (a.ndim() != 1 && a.ndim() != 2) throw py::value_error("field must be a 1-d or 2-d array");
  if (a.ndim() == 2 && a.shape(0) != a.shape(1)) throw py::value_error("2-d field must be square");
  const Grid g = make_grid(static_cast<int>(a.ndim()), static_cast<int>(a.shape(0)), period);
  return SampledField(g, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const SampledField& f) {
  const auto n = static_cast<py::ssize_t>(f.grid().n_per_axis);
  std::vector<py::ssize_t> shape(static_cast<std::size_t>(f.grid().dim), n);
  Array out(shape);
  const auto values = f.values();
  std::copy(values.begin(), values.end(), out.mutable_data());
  return out;
}

ScaleLadder ladder_for(const Grid& g, std::optional<double> top, std::optional<int> levels) {
  if (!top && !levels) return default_ladder(g);
  const ScaleLadder d = default_ladder(g);
  return make_ladder(g, top.value_or(d.top_radius), levels.value_or(d.levels));
}

}  // namespace

PYBIND11_MODULE(_ialpha, m) {
  m.doc() = "Multiscale coefficients, square functions and BMO of periodic sampled fields.";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  m.def("fractional_derivative",
        [](const Array& f, double alpha, double period) {
          return to_array(fractional_derivative(to_field(f, period), alpha));
        },
        py::arg("field"), py::arg("alpha"), py::arg("period") = 1.0);
  m.def("riesz_potential",
        [](const Array& f, double alpha, double period) {
          return to_array(riesz_potential(to_field(f, period), alpha));
        },
        py::arg("field"), py::arg("alpha"), py::arg("period") = 1.0);

  m.def("default_radii",
        [](int dim, int n, double period) { return default_ladder(make_grid(dim, n, period)).radii(); },
        py::arg("dim"), py::arg("n"), py::arg("period") = 1.0);

  m.def("coefficients",
        [](const Array& f, const std::string& kind, double period, std::optional<double> top,
           std::optional<int> levels) {
          const auto field = to_field(f, period);
          const auto ladder = ladder_for(field.grid(), top, levels);
          const auto mat = coefficient_matrix(field, ladder, coefficient_kind_from_string(kind));
          Array out({static_cast<py::ssize_t>(field.size()), static_cast<py::ssize_t>(ladder.levels)});
          std::copy(mat.values.begin(), mat.values.end(), out.mutable_data());
          return py::make_tuple(out, ladder.radii());
        },
        py::arg("field"), py::arg("kind"), py::arg("period") = 1.0, py::arg("top_radius") = py::none(),
        py::arg("levels") = py::none(),
        "Returns (matrix[center, level], radii).");

  m.def("carleson_constant",
        [](const Array& f, double alpha, std::optional<std::string> kind, double period, int center_stride) {
          const auto field = to_field(f, period);
          const auto ladder = default_ladder(field.grid());
          const auto k = kind ? coefficient_kind_from_string(*kind) : standard_kind(alpha);
          const auto mat = coefficient_matrix(field, ladder, k);
          return carleson_constant(mat, alpha, strided_centers(field.grid(), center_stride), ladder.radii())
              .constant;
        },
        py::arg("field"), py::arg("alpha"), py::arg("kind") = py::none(), py::arg("period") = 1.0,
        py::arg("center_stride") = 1);

  m.def("compare",
        [](const Array& f, double alpha, double period, int center_stride, double min_radius_cells) {
          ExperimentOptions opt;
          opt.center_stride = center_stride;
          opt.bmo_center_stride = center_stride;
          opt.bmo_min_radius_cells = min_radius_cells;
          const auto r = comparability_experiment(to_field(f, period), alpha, opt);
          py::dict d;
          d["alpha"] = r.alpha;
          d["kind"] = std::string(to_string(r.kind));
          d["C_sq"] = r.c_sq;
          d["bmo_sq"] = r.bmo_sq;
          d["ratio"] = r.ratio_defined ? py::object(py::float_(r.ratio)) : py::object(py::none());
          return d;
        },
        py::arg("field"), py::arg("alpha"), py::arg("period") = 1.0, py::arg("center_stride") = 1,
        py::arg("min_radius_cells") = 2.0);

  m.def("bmo_norm",
        [](const Array& f, double period, double min_radius_cells, int center_stride) {
          const auto field = to_field(f, period);
          const auto radii = dyadic_radii(field.grid(), min_radius_cells * field.grid().spacing());
          return bmo_norm(field, window_family(field.grid(), radii, center_stride)).norm;
        },
        py::arg("field"), py::arg("period") = 1.0, py::arg("min_radius_cells") = 2.0,
        py::arg("center_stride") = 1);

  m.def("holder_seminorm",
        [](const Array& f, double alpha, double period, int center_stride) {
          return holder_seminorm(to_field(f, period), alpha, center_stride);
        },
        py::arg("field"), py::arg("alpha"), py::arg("period") = 1.0, py::arg("center_stride") = 1);

  m.def("beta",
        [](const Array& pts, std::vector<double> center, double r, int k) {
          if (pts.ndim() != 2) throw py::value_error("points must be an (N, D) array");
          PointCloud cloud(static_cast<int>(pts.shape(1)),
                           std::vector<double>(pts.data(), pts.data() + pts.size()));
          return beta2k(cloud, center, r, k).beta;
        },
        py::arg("points"), py::arg("center"), py::arg("radius"), py::arg("k"));

  m.def("generate",
        [](const std::string& family, int dim, int n, double gamma, double beta_w, int levels, double alpha0,
           std::uint64_t seed, int cells, int frequency) {
          CorpusSpec s;
          s.family = family_from_string(family);
          s.grid = make_grid(dim, n, 1.0);
          s.gamma = gamma;
          s.beta_w = beta_w;
          s.levels = levels;
          s.alpha0 = alpha0;
          s.seed = seed;
          s.cells = cells;
          s.frequency = frequency;
          return to_array(generate(s));
        },
        py::arg("family"), py::arg("dim") = 1, py::arg("n") = 256, py::arg("gamma") = 0.5,
        py::arg("beta_w") = 0.5, py::arg("levels") = 8, py::arg("alpha0") = 0.5, py::arg("seed") = 7,
        py::arg("cells") = 64, py::arg("frequency") = 1);

  m.def("save_field",
        [](const std::filesystem::path& path, const Array& f, double period, const std::string& family) {
          save_field(path, to_field(f, period), family);
        },
        py::arg("path"), py::arg("field"), py::arg("period") = 1.0, py::arg("family") = "unknown");
  m.def("load_field",
        [](const std::filesystem::path& path) {
          const auto ff = load_field(path);
          return py::make_tuple(to_array(ff.field), ff.field.grid().period, ff.family, ff.params);
        },
        py::arg("path"), "Returns (values, period, family, params).");
}
