#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "dsvs/catalog.hpp"
#include "dsvs/cli.hpp"
#include "dsvs/errors.hpp"
#include "dsvs/export.hpp"
#include "dsvs/field.hpp"
#include "dsvs/spec_file.hpp"
#include "dsvs/verify.hpp"

namespace py = pybind11;
using namespace dsvs;

namespace {

Window to_window(const std::tuple<double, double, double, double>& w) {
  const auto [x0, x1, y0, y1] = w;
  return Window{x0, x1, y0, y1};
}

py::dict report_dict(const ResidualReport& r) {
  py::dict d;
  d["check"] = r.check_name;
  d["applicable"] = r.applicable;
  d["note"] = r.note;
  d["samples"] = r.samples;
  d["max_abs"] = r.max_abs;
  d["mean_abs"] = r.mean_abs;
  d["max_rel"] = r.max_rel;
  d["masked"] = r.masked;
  d["singular"] = r.singular;
  d["sign_violations"] = r.sign_violations;
  return d;
}

// Masked points become NaN; rows run over y.
py::array_t<double> grid_array(const FieldGrid& g) {
  py::array_t<double> out({g.ny, g.nx});
  auto v = out.mutable_unchecked<2>();
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) v(iy, ix) = g.valid(ix, iy) ? g.at(ix, iy) : std::nan("");
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Separated solutions of the Davey-Stewartson system with gain";

  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<SingularInputError>(m, "SingularInputError", PyExc_ArithmeticError);

  py::class_<Window>(m, "Window")
      .def(py::init([](double x0, double x1, double y0, double y1) { return Window{x0, x1, y0, y1}; }), py::arg("x0"),
           py::arg("x1"), py::arg("y0"), py::arg("y1"))
      .def_readonly("x0", &Window::x0)
      .def_readonly("x1", &Window::x1)
      .def_readonly("y0", &Window::y0)
      .def_readonly("y1", &Window::y1)
      .def_readonly("rotated_bound", &Window::rotated_bound)
      .def("__repr__", [](const Window& w) { return "Window(" + w.to_string() + ")"; });

  py::class_<SolutionSpec>(m, "SolutionSpec")
      .def_property_readonly("coeffs",
                             [](const SolutionSpec& s) {
                               const auto& c = s.coeffs();
                               return std::make_tuple(c.a0(), c.a1(), c.a2(), c.a3());
                             })
      .def_property_readonly("det", [](const SolutionSpec& s) { return s.coeffs().det(); })
      .def("to_ini", [](const SolutionSpec& s) { return format_spec(s); })
      .def("intensity",
           [](const SolutionSpec& s, double x, double y, double t) { return eval_U(s, {x, y, t}).value; },
           py::arg("x"), py::arg("y"), py::arg("t"));

  py::class_<CatalogEntry>(m, "CatalogEntry")
      .def_readonly("name", &CatalogEntry::name)
      .def_readonly("figure", &CatalogEntry::figure)
      .def_readonly("spec", &CatalogEntry::spec)
      .def_readonly("window", &CatalogEntry::window)
      .def_readonly("reference_times", &CatalogEntry::reference_times)
      .def_readonly("degenerate_times", &CatalogEntry::degenerate_times)
      .def_readonly("known_singular", &CatalogEntry::known_singular)
      .def_readonly("notes", &CatalogEntry::notes);

  m.def("catalog_names", &catalog_names);
  m.def("build_case", [](const std::string& name) { return build_case(name); }, py::arg("name"));
  m.def(
      "parse_spec",
      [](const std::string& text, const std::vector<std::string>& overrides) {
        return parse_spec_text(text, overrides).spec;
      },
      py::arg("text"), py::arg("overrides") = std::vector<std::string>{});

  m.def(
      "sample",
      [](const SolutionSpec& spec, const Window& window, double t, int nx, int ny, const std::string& quantity) {
        return grid_array(sample_field(spec, parse_quantity(quantity), window, t, nx, ny));
      },
      py::arg("spec"), py::arg("window"), py::arg("t"), py::arg("nx") = 64, py::arg("ny") = 64,
      py::arg("quantity") = "U");

  m.def(
      "bilinear_residuals",
      [](const SolutionSpec& spec, const Window& window, double t, int n) {
        const auto r = bilinear_residuals(SeparatedSolution(spec), window, t, {.nx = n, .ny = n});
        py::dict d;
        d["line1"] = report_dict(r.line1);
        d["line2"] = report_dict(r.line2);
        d["consistency_variation"] = r.consistency.variation();
        return d;
      },
      py::arg("spec"), py::arg("window"), py::arg("t"), py::arg("n") = 64);

  m.def(
      "estimate_period",
      [](const SolutionSpec& spec, const Window& window, double t0, double t1, int n_t) {
        return estimate_period(spec, window, t0, t1, n_t).period;
      },
      py::arg("spec"), py::arg("window"), py::arg("t0"), py::arg("t1"), py::arg("n_t") = 128);

  m.def(
      "decay_profile",
      [](const SolutionSpec& spec, const Window& window, const std::vector<double>& times) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : decay_profile(spec, window, times)) out.emplace_back(p.t, p.max);
        return out;
      },
      py::arg("spec"), py::arg("window"), py::arg("times"));

  m.def(
      "render_bytes",
      [](const SolutionSpec& spec, const Window& window, double t, int n, const std::string& format) {
        const auto grid = sample_field(spec, FieldQuantity::U, window, t, n, n);
        if (parse_format(format) == ExportFormat::pgm16) {
          const auto bytes = encode_pgm16(grid);
          return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
        }
        return py::bytes(format == "csv" ? encode_csv(grid) : grid_report(grid));
      },
      py::arg("spec"), py::arg("window"), py::arg("t"), py::arg("n") = 64, py::arg("format") = "csv");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"dsvs"};
        for (const auto& a : args) argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return std::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
