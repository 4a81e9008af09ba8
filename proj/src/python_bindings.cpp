#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ideal_moments/analytic.hpp"
#include "ideal_moments/cli.hpp"
#include "ideal_moments/moments.hpp"

namespace py = pybind11;
using namespace ideal_moments;

namespace {

py::int_ to_python(Int128 value) {
  return py::int_(py::reinterpret_steal<py::object>(
      PyLong_FromString(to_string(value).c_str(), nullptr, 10)));
}

Ideal rational_ideal(std::uint64_t n) { return Ideal::from_integer(NumberField::rational(), n); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Ramanujan sums and divisor moments over number fields";

  py::register_exception<ResourceLimitError>(m, "ResourceLimitError");
  py::register_exception<PoleError>(m, "PoleError", PyExc_ValueError);
  py::register_exception<FieldError>(m, "FieldError", PyExc_ValueError);

  py::class_<NumberField>(m, "Field")
      .def(py::init([](const std::string& d) { return NumberField::parse(d); }), py::arg("descriptor"))
      .def_property_readonly("degree", &NumberField::degree)
      .def_property_readonly("descriptor", &NumberField::descriptor)
      .def("__repr__", [](const NumberField& f) { return "Field('" + f.descriptor() + "')"; })
      .def("__eq__", [](const NumberField& a, const NumberField& b) { return a == b; });

  m.def("constants", [](const NumberField& field) {
    const auto c = constants(field);
    py::dict out;
    out["rho"] = c.rho;
    out["zeta0"] = c.zeta0;
    out["zeta2"] = c.zeta2;
    if (c.zeta0_exact) out["zeta0_exact"] = py::make_tuple(to_python(c.zeta0_exact->first), to_python(c.zeta0_exact->second));
    return out;
  });

  m.def(
      "moment_sums",
      [](const NumberField& field, std::uint64_t x, std::uint64_t y, unsigned threads) {
        MomentOptions options;
        options.threads = threads;
        MomentSums sums;
        {
          py::gil_scoped_release release;
          sums = moment_sums(field, x, y, options);
        }
        return py::make_tuple(to_python(sums.first), to_python(sums.second), to_python(sums.ideals));
      },
      py::arg("field"), py::arg("x"), py::arg("y"), py::arg("threads") = 1,
      "Exact (sum S, sum S^2, number of ideals) over N(I) <= y.");

  m.def(
      "inner_sum",
      [](std::uint64_t x, std::uint64_t n) {
        return to_python(inner_sum(NumberField::rational(), x, rational_ideal(n), InnerSumMethod::Mertens));
      },
      py::arg("x"), py::arg("n"), "S(x, (n)) over Q.");

  m.def(
      "ramanujan_sum_q",
      [](std::uint64_t q, std::uint64_t n) { return to_python(ramanujan_sum(rational_ideal(q), rational_ideal(n))); },
      py::arg("q"), py::arg("n"));

  m.def(
      "avg_sigma",
      [](const NumberField& field, std::uint64_t x, double z) {
        const auto r = avg_sigma(field, x, ZParam(z));
        py::dict out;
        out["empirical"] = r.empirical;
        out["predicted"] = r.predicted;
        out["residual"] = r.residual;
        if (r.exact) out["exact"] = to_python(*r.exact);
        return out;
      },
      py::arg("field"), py::arg("x"), py::arg("z"));

  m.def(
      "verify",
      [](const NumberField& field, std::uint64_t n) {
        VerifyOptions options;
        options.n = n;
        py::list out;
        for (const auto& report : run_verify_suite(field, options)) {
          out.append(py::make_tuple(report.name, report.passed, report.checked));
        }
        return out;
      },
      py::arg("field"), py::arg("n") = 100);
}
