#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "bergman/berezin.hpp"
#include "bergman/carleson.hpp"
#include "bergman/dsl.hpp"
#include "bergman/errors.hpp"
#include "bergman/gram.hpp"
#include "bergman/measure.hpp"
#include "bergman/spectral.hpp"

namespace py = pybind11;
using namespace bergman;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Radial measures, their spectral sequences and Berezin transforms";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<VerificationFailure>(m, "VerificationFailure", PyExc_RuntimeError);
    py::register_exception<dsl::ParseError>(m, "ParseError", PyExc_ValueError);

    py::class_<MeasurePrimitive>(m, "Primitive")
        .def_static("dirac", &MeasurePrimitive::dirac, py::arg("location"))
        .def_static("poly", &MeasurePrimitive::poly, py::arg("coefficients"), py::arg("lower") = 0.0,
                    py::arg("upper") = 1.0)
        .def_static("jacobi", &MeasurePrimitive::jacobi, py::arg("p"), py::arg("q"))
        .def_static("lebesgue", &MeasurePrimitive::lebesgue)
        .def("moment", &MeasurePrimitive::moment)
        .def("tail", &MeasurePrimitive::tail)
        .def("__repr__", &MeasurePrimitive::describe);

    py::class_<RadialMeasure>(m, "RadialMeasure")
        .def(py::init<>())
        .def(py::init<MeasurePrimitive, Complex>(), py::arg("primitive"), py::arg("coefficient") = Complex(1.0))
        .def_property_readonly("positivity_certified", &RadialMeasure::positivity_certified)
        .def_property_readonly("has_atoms", &RadialMeasure::has_atoms)
        .def_property_readonly("is_real", &RadialMeasure::is_real)
        .def("__add__", [](const RadialMeasure& a, const RadialMeasure& b) { return a + b; })
        .def("__sub__", [](const RadialMeasure& a, const RadialMeasure& b) { return a - b; })
        .def("__rmul__", [](const RadialMeasure& a, Complex s) { return s * a; })
        .def("__mul__", [](const RadialMeasure& a, Complex s) { return s * a; })
        .def("__repr__", &RadialMeasure::describe);

    m.def("parse_measure", [](const std::string& text) { return dsl::parse_measure(text); },
          py::arg("text"));
    m.def("normal_form", [](const std::string& text) {
        const dsl::ParseResult r = dsl::parse(text);
        if (!r.ok()) throw dsl::ParseError(r.diagnostics);
        return dsl::print(*r.ast);
    }, py::arg("text"));

    m.def("moment", &moment);
    m.def("total_mass", &total_mass);
    m.def("tail_mass", &tail_mass);
    m.def("gamma", [](const RadialMeasure& eta, long n) { return bergman::gamma(eta, n); },
          py::arg("measure"), py::arg("n"));
    m.def("gamma_via_distribution",
          [](const RadialMeasure& eta, long n) { return gamma_via_distribution(eta, n).value; });
    m.def("gamma_via_averages",
          [](const RadialMeasure& eta, long n) { return gamma_via_averages(eta, n).value; });
    m.def("gamma_range", [](const RadialMeasure& eta, long n0, long n1, unsigned workers) {
        return gamma_range(eta, n0, n1, GammaMethod::moments, {}, workers).values;
    }, py::arg("measure"), py::arg("n0"), py::arg("n1"), py::arg("workers") = 1);
    m.def("kappa", &kappa, py::arg("measure"), py::arg("r"));
    m.def("kappa_sup", [](const RadialMeasure& eta) {
        const KappaSupEstimate e = kappa_sup_estimate(eta);
        return py::make_tuple(e.value, e.argmax);
    });

    m.def("beta_direct", [](const RadialMeasure& eta, double a) { return beta_direct(eta, a).value; });
    m.def("beta_series", [](const RadialMeasure& eta, double a, double tol) {
        SeriesOptions opts;
        opts.tolerance = tol;
        return beta_series(eta, a, opts).value;
    }, py::arg("measure"), py::arg("a"), py::arg("tol") = 1e-12);
    m.def("beta_via_averages",
          [](const RadialMeasure& eta, double a) { return beta_via_averages(eta, a).value; });
    m.def("circle_kernel_integral", [](double a, int nodes) {
        const CircleKernel c = circle_kernel_integral(a, nodes);
        return py::make_tuple(c.numeric, c.closed);
    });

    m.def("d_log", &d_log);
    m.def("m_of_s", [](double s) {
        const MOfS r = m_of_s(s);
        return py::make_tuple(r.m, r.value);
    });
    m.def("lip_kernel_integral", &lip_kernel_integral);
    m.def("carleson_verdict", [](const RadialMeasure& eta) {
        const CarlesonReport r = carleson_report(eta);
        py::dict d;
        d["verdict"] = to_string(r.verdict);
        d["kappa_sup"] = r.kappa_sup;
        d["gamma_sup"] = r.gamma_sup;
        d["beta_sup"] = r.beta_sup;
        d["chain_holds"] = r.chain_holds(1e-7);
        return d;
    });

    m.def("gram_matrix", [](const RadialMeasure& eta, int dim, int nodes) {
        return gram_matrix(eta, dim, nodes == 0 ? 2 * dim + 2 : nodes).entries;
    }, py::arg("measure"), py::arg("dim"), py::arg("angular_nodes") = 0);
}
