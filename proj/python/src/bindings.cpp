// Thin bindings; structured results cross as JSON text and are decoded in
// hypermeasure/__init__.py.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hypermeasure/denominators.hpp"
#include "hypermeasure/error.hpp"
#include "hypermeasure/hypg_core.hpp"
#include "hypermeasure/json_io.hpp"
#include "hypermeasure/measures.hpp"
#include "hypermeasure/tables.hpp"

namespace py = pybind11;
using namespace hm;

namespace {

std::vector<std::string> coeff_strings(const RatPoly& p) {
  std::vector<std::string> out;
  for (const auto& c : p.c) out.push_back(c.get_str());
  return out;
}

std::string measure_json(const std::string& a, const std::string& b, long m, long n, int prec,
                         std::optional<double> cn, std::optional<double> log_dn) {
  MeasureConstants k;
  if (cn && log_dn) k = MeasureConstants::inline_values(*cn, *log_dn);
  else if (!cn && !log_dn) k = MeasureConstants::from_table(static_cast<u64>(n));
  else fail(ErrorKind::ConstraintViolation, "cn and log_dn go together");
  return json(compute_measure(QuadInt::parse(a), QuadInt::parse(b), m, n, k, prec)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  static py::exception<Error> hm_error(mod, "HypermeasureError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(hm_error, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  mod.def("x_poly", [](long m, long n, long r) { return coeff_strings(x_poly({m, n, r})); });
  mod.def("y_poly", [](long m, long n, long r) { return coeff_strings(y_poly({m, n, r})); });
  mod.def("poly_str", [](long m, long n, long r) { return x_poly({m, n, r}).str(); });
  mod.def("d_mnr", [](long m, long n, long r) { return d_mnr({m, n, r}).value.get_str(); });
  mod.def("n_dmnr", [](long m, long n, long r, i64 d) { return n_dmnr({m, n, r}, d).n_value.get_str(); });
  mod.def(
      "hyp2f1_remainder",
      [](long m, long n, long r, const std::string& re, const std::string& im, int digits) {
        const auto q = hyp2f1_remainder({m, n, r}, ComplexHP::from_string(re, im, digits));
        return py::make_tuple(q.value.re.str(digits), q.value.im.str(digits));
      },
      py::arg("m"), py::arg("n"), py::arg("r"), py::arg("re"), py::arg("im") = "0", py::arg("digits") = 30);
  mod.def("measure_json", &measure_json, py::arg("a"), py::arg("b"), py::arg("m"), py::arg("n"),
          py::arg("prec") = 50, py::arg("cn") = py::none(), py::arg("log_dn") = py::none());
  mod.def("tables_csv", [] { return std::string(paper_tables_csv()); });
}
