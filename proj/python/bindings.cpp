#include "lagrtori/chekanov_fibration.hpp"
#include "lagrtori/clifford_fibration.hpp"
#include "lagrtori/displacement_flows.hpp"
#include "lagrtori/error.hpp"
#include "lagrtori/maslov_index.hpp"
#include "lagrtori/reports.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace lagrtori;

namespace {

QuadSpec quad(int nodes, int levels) { return QuadSpec{nodes, levels}; }

}  // namespace

PYBIND11_MODULE(_lagrtori, m)
{
    m.doc() = "Lagrangian tori of the projective plane";
    m.attr("__version__") = LAGRTORI_VERSION;

    static py::handle error = py::exception<Error>(m, "LagrtoriError").release();
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object exc = error(py::str(e.what()));
            exc.attr("code") = to_string(e.code());
            PyErr_SetObject(error.ptr(), exc.ptr());
        }
    });

    m.def("fiber_periods",
          [](double r0, double r1, int nodes, int levels) { return fiber_periods({r0, r1}, quad(nodes, levels)); },
          py::arg("r0"), py::arg("r1"), py::arg("nodes") = 32, py::arg("levels") = 2);
    m.def("maslov_d1", [](double r0, double r1) { return maslov_index(standard_disc(clifford_fiber({r0, r1}), kD1)).mu; });
    m.def("ks_determinant", [](double r0, double r1) { return ks_jacobian({r0, r1}).determinant; });
    m.def("moment_map", [](const Vec3c& z) { return moment_map(HomogeneousPoint(z)); });
    m.def("symbol_flow", [](const Mat3c& a, double t) { return symbol_flow(HermitianSymbol(a), t); }, py::arg("a"),
          py::arg("t"));
    m.def("classify_type",
          [](double a, Complex mu) { return std::string(to_string(classify_type({a, mu, 0.0}))); });
    m.def(
        "chekanov_periods",
        [](double a, Complex mu, double delta, std::uint64_t seed) {
            const auto p = torus_periods_chekanov({a, mu, delta}, {}, seed);
            return std::make_pair(p.p_orbit, p.p_section);
        },
        py::arg("a"), py::arg("mu"), py::arg("delta"), py::arg("seed") = 20240601);
    m.def("enc_verdict", [](std::int64_t n0, std::int64_t d0, std::int64_t n1, std::int64_t d1) {
        return std::string(to_string(enc_verdict({Rational(n0, d0), Rational(n1, d1)}).verdict));
    });

    // Reports come back as JSON text; the Python package decodes them.
    m.def("_bs_count", [](int level, bool closed) { return bs_count_report(level, closed).dump(); });
    m.def("_enc_report", [](int n) { return enc_report(n).dump(); });
    m.def(
        "_chekanov_scan",
        [](Complex mu, double a_min, double a_max, double a_step, double delta_min, double delta_max,
           double delta_step, int cert_grid) {
            ReportOptions opt;
            opt.certificate_grid = cert_grid;
            return chekanov_scan_report({mu, a_min, a_max, a_step, delta_min, delta_max, delta_step}, opt).dump();
        },
        py::arg("mu"), py::arg("a_min"), py::arg("a_max"), py::arg("a_step"), py::arg("delta_min"),
        py::arg("delta_max"), py::arg("delta_step"), py::arg("cert_grid") = 128);
    m.def("plot_svg", [](int level) { return plot_svg(level).svg; });
}
