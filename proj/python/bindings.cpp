// Python bindings. Indices are one-based, as in the fan and report files.

#include "torkernel/combinatorics.hpp"
#include "torkernel/kernel.hpp"
#include "torkernel/linalg.hpp"
#include "torkernel/numeric.hpp"
#include "torkernel/render.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace torkernel;

namespace {

py::object to_py(const BigInt& v) { return py::module_::import("builtins").attr("int")(to_string(v)); }

py::object to_py(const Rational& v) { return py::module_::import("fractions").attr("Fraction")(to_string(v)); }

Rational from_py(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

template <typename T>
py::list to_py_list(const std::vector<T>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(to_py(x));
  return out;
}

std::vector<int> shift(const std::vector<int>& xs, int by) {
  std::vector<int> out;
  for (int x : xs) out.push_back(x + by);
  return out;
}

std::vector<std::vector<int>> shift_all(const std::vector<std::vector<int>>& xs, int by) {
  std::vector<std::vector<int>> out;
  for (const auto& x : xs) out.push_back(shift(x, by));
  return out;
}

RatMatrix matrix_from_py(const py::sequence& rows) {
  RatMatrix m;
  for (const auto& row : rows) {
    RatVector r;
    for (const auto& x : row.cast<py::sequence>()) r.push_back(from_py(x));
    m.push_back(std::move(r));
  }
  return m;
}

py::dict stats_to_py(const SampleStats& s) {
  py::dict d;
  d["estimate"] = s.estimate;
  d["std_error"] = s.std_error;
  d["count"] = s.count;
  d["seed"] = s.seed;
  d["accepted"] = s.accepted;
  d["rejected_outside"] = s.rejected_outside;
  d["rejected_boundary"] = s.rejected_boundary;
  d["rejected_g"] = s.rejected_g;
  return d;
}

SamplerOptions sampler(std::int64_t samples, std::uint64_t seed, int workers) {
  SamplerOptions o;
  o.samples = samples;
  o.seed = seed;
  o.workers = workers;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Integral-representation kernels of toric varieties";

  auto base = py::register_exception<Error>(m, "TorkernelError", PyExc_RuntimeError);
  py::register_exception<LinalgError>(m, "LinalgError", base);
  py::register_exception<ParseError>(m, "ParseError", base);
  py::register_exception<DegenerateFanError>(m, "DegenerateFanError", base);
  py::register_exception<KahlerConeError>(m, "KahlerConeError", base);
  py::register_exception<NumericError>(m, "NumericError", base);
  static py::exception<ValidationError> validation_error(m, "ValidationError", base);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ValidationError& e) {
      std::string msg = e.what();
      for (const auto& err : e.report().errors) msg += "\n  " + err;
      py::set_error(validation_error, msg.c_str());
    }
  });

  py::class_<Fan>(m, "Fan")
      .def(py::init([](int n, std::vector<LatticeVector> generators, const std::vector<std::vector<int>>& cones) {
             return Fan{n, std::move(generators), shift_all(cones, -1)};
           }),
           py::arg("n"), py::arg("generators"), py::arg("max_cones"))
      .def_readonly("n", &Fan::n)
      .def_readonly("generators", &Fan::generators)
      .def_property_readonly("max_cones", [](const Fan& f) { return shift_all(f.max_cones, 1); })
      .def_property_readonly("d", &Fan::d)
      .def("to_json", [](const Fan& f) { return fan_to_json(f).dump(); })
      .def("__eq__", [](const Fan& a, const Fan& b) { return a == b; })
      .def("__repr__", [](const Fan& f) { return "Fan(" + fan_to_json(f).dump() + ")"; });

  m.def("parse_fan", [](const std::string& text) { return parse_fan(text); }, py::arg("text"));
  m.def("load_fan", &load_fan, py::arg("path"));
  m.def(
      "validate",
      [](const Fan& f) {
        const auto r = validate_fan(f);
        py::dict d;
        d["errors"] = r.errors;
        d["warnings"] = r.warnings;
        d["is_complete_simplicial"] = r.is_complete_simplicial;
        return d;
      },
      py::arg("fan"));

  m.def(
      "lin_rel",
      [](const std::vector<LatticeVector>& generators) {
        py::list rows;
        for (const auto& row : lin_rel(generators).rows) rows.append(to_py_list(row));
        return rows;
      },
      py::arg("generators"));
  m.def(
      "det_exact", [](const py::sequence& rows) { return to_py(det_exact(matrix_from_py(rows))); }, py::arg("matrix"));
  m.def(
      "prim_coll",
      [](const std::vector<std::vector<int>>& cones) {
        std::vector<std::vector<int>> out;
        for (const auto& s : prim_coll(shift_all(cones, -1))) out.push_back(shift(s, 1));
        return out;
      },
      py::arg("max_cones"));
  m.def(
      "nu_sigma",
      [](const Fan& f, const std::vector<int>& sigma, int l, const std::string& mode) {
        return to_py(nu_sigma(f, shift(sigma, -1), l - 1, parse_nu_mode(mode)));
      },
      py::arg("fan"), py::arg("sigma"), py::arg("l"), py::arg("mode") = "normalized");

  py::class_<KernelReport>(m, "Report")
      .def_property_readonly("n", &KernelReport::n)
      .def_property_readonly("d", &KernelReport::d)
      .def_property_readonly("fan", [](const KernelReport& r) { return r.fan; })
      .def_property_readonly("mode", [](const KernelReport& r) { return to_string(r.mode); })
      .def_property_readonly("relations",
                             [](const KernelReport& r) {
                               py::list rows;
                               for (const auto& row : r.relations.rows) rows.append(to_py_list(row));
                               return rows;
                             })
      .def_property_readonly("primitive_collections",
                             [](const KernelReport& r) { return shift_all(r.primitive_collections, 1); })
      .def_property_readonly("kahler_forms",
                             [](const KernelReport& r) {
                               py::list forms;
                               for (const auto& k : r.kahler) forms.append(to_py_list(k.form.coeffs));
                               return forms;
                             })
      .def_property_readonly("warnings", [](const KernelReport& r) { return r.warnings; })
      .def(
          "render",
          [](const KernelReport& r, const std::string& format, bool include_theorem) {
            RenderOptions o;
            o.format = parse_report_format(format);
            o.include_theorem = include_theorem;
            return render(r, o);
          },
          py::arg("format") = "text", py::arg("include_theorem") = true)
      .def("to_json", [](const KernelReport& r) { return report_to_json(r).dump(2); })
      .def("__eq__", [](const KernelReport& a, const KernelReport& b) { return a == b; });

  m.def(
      "build_kernel", [](const Fan& f, const std::string& mode) { return build_kernel(f, parse_nu_mode(mode)); },
      py::arg("fan"), py::arg("mode") = "normalized");
  m.def("parse_report", &parse_report, py::arg("text"));

  m.def(
      "estimate_C",
      [](const KernelReport& r, const std::vector<double>& rho, std::int64_t samples, std::uint64_t seed,
         int workers) {
        SampleStats s;
        {
          py::gil_scoped_release release;
          s = estimate_C(r, rho, sampler(samples, seed, workers));
        }
        return stats_to_py(s);
      },
      py::arg("report"), py::arg("rho"), py::arg("samples") = 1'000'000, py::arg("seed") = 0, py::arg("workers") = 1);

  m.def(
      "verify_representation",
      [](const KernelReport& r, const std::vector<double>& rho, const std::vector<int>& alpha,
         const std::vector<Complex>& zeta, std::int64_t samples, std::uint64_t seed, int workers, double tolerance) {
        RepresentationResult res;
        {
          py::gil_scoped_release release;
          res = verify_representation(r, rho, alpha, zeta, sampler(samples, seed, workers));
        }
        py::dict d;
        d["c"] = stats_to_py(res.c);
        d["integral"] = stats_to_py(res.integral);
        d["ratio"] = res.ratio;
        d["ratio_std_error"] = res.ratio_std_error;
        d["f_zeta"] = res.f_zeta;
        d["relative_error"] = res.relative_error;
        d["within_3_sigma"] = res.within_3_sigma;
        d["warnings"] = res.warnings;
        d["passed"] = res.passed(tolerance);
        return d;
      },
      py::arg("report"), py::arg("rho"), py::arg("alpha"), py::arg("zeta"), py::arg("samples") = 1'000'000,
      py::arg("seed") = 0, py::arg("workers") = 1, py::arg("tolerance") = 0.05);

  m.def(
      "domain_violations",
      [](const KernelReport& r, const std::vector<double>& rho, const std::vector<Complex>& zeta) {
        return domain_violations(r, rho, zeta);
      },
      py::arg("report"), py::arg("rho"), py::arg("zeta"));
}
