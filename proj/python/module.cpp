#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <string>
#include <variant>

#include "reflectode/analysis.hpp"
#include "reflectode/expr.hpp"
#include "reflectode/kernel.hpp"
#include "reflectode/oracle.hpp"
#include "reflectode/solver.hpp"

namespace py = pybind11;
using namespace reflectode;

namespace {

// Forcings arrive either as an expression string (metadata extracted by the
// parser) or as a plain Python callable (assumed smooth).
using ForcingArg = std::variant<std::string, std::function<double(double)>>;

Forcing to_forcing(const ForcingArg& arg) {
    if (const auto* text = std::get_if<std::string>(&arg))
        return parse_forcing(*text).forcing();
    Forcing f;
    f.h = std::get<std::function<double(double)>>(arg);
    return f;
}

ProblemSpec make_problem(double a, double b, double t0, double c,
                         const ForcingArg& h) {
    ProblemSpec p;
    p.coeffs = {a, b};
    p.t0 = t0;
    p.c = c;
    p.h = to_forcing(h);
    return p;
}

std::string kind_name(DegenerateSet::Kind k) {
    switch (k) {
        case DegenerateSet::Kind::Empty: return "empty";
        case DegenerateSet::Kind::Single: return "single";
        default: return "progression";
    }
}

std::string sign_name(SignKind s) {
    switch (s) {
        case SignKind::Positive: return "nonnegative";
        case SignKind::Negative: return "nonpositive";
        default: return "zero";
    }
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Solver for u'(t) + a u(-t) + b u(t) = h(t), u(t0) = c";

    py::register_exception<InvalidInputError>(m, "InvalidInputError");
    py::register_exception<NonUniqueError>(m, "NonUniqueError");
    py::register_exception<QuadratureError>(m, "QuadratureError");
    py::register_exception<HypothesisError>(m, "HypothesisError");
    py::register_exception<ParseError>(m, "ParseError");

    m.def(
        "classify",
        [](double a, double b) {
            const CaseClass k = classify({a, b});
            py::dict d;
            d["case"] = std::string(to_string(k.tag));
            d["omega"] = k.omega;
            return d;
        },
        py::arg("a"), py::arg("b"));

    py::class_<HomogeneousPair>(m, "HomogeneousPair")
        .def(py::init([](double a, double b) {
                 const Coefficients c{a, b};
                 return HomogeneousPair(c, classify(c));
             }),
             py::arg("a"), py::arg("b"))
        .def("u", &HomogeneousPair::u, py::arg("t"))
        .def("v", &HomogeneousPair::v, py::arg("t"))
        .def("du", &HomogeneousPair::du, py::arg("t"))
        .def("dv", &HomogeneousPair::dv, py::arg("t"))
        .def("u_even", &HomogeneousPair::u_even, py::arg("t"))
        .def("u_odd", &HomogeneousPair::u_odd, py::arg("t"))
        .def("v_even", &HomogeneousPair::v_even, py::arg("t"))
        .def("v_odd", &HomogeneousPair::v_odd, py::arg("t"));

    py::class_<GreenKernel>(m, "GreenKernel")
        .def(py::init([](double a, double b) {
                 return GreenKernel(Coefficients{a, b});
             }),
             py::arg("a"), py::arg("b"))
        .def("__call__", &GreenKernel::operator(), py::arg("t"), py::arg("s"))
        .def("product_form", &GreenKernel::product_form, py::arg("t"), py::arg("s"));

    m.def(
        "green_grid",
        [](double a, double b, double t_lo, double t_hi, double s_lo, double s_hi,
           std::size_t n) {
            const GreenKernel g{Coefficients{a, b}};
            const GreenGrid grid = green_grid(g, t_lo, t_hi, s_lo, s_hi, n);
            return py::make_tuple(grid.t, grid.s, grid.values);
        },
        py::arg("a"), py::arg("b"), py::arg("t_lo"), py::arg("t_hi"),
        py::arg("s_lo"), py::arg("s_hi"), py::arg("n"),
        "Tabulate G on an n x n lattice; returns (t, s, values) with "
        "values[i*n + j] = G(t[i], s[j]).");

    m.def(
        "integrate",
        [](const std::function<double(double)>& f, double t1, double t2,
           const std::vector<double>& breakpoints,
           const std::vector<double>& singular_points, double tol) {
            return integrate(f, t1, t2, {breakpoints, singular_points}, tol);
        },
        py::arg("f"), py::arg("t1"), py::arg("t2"),
        py::arg("breakpoints") = std::vector<double>{},
        py::arg("singular_points") = std::vector<double>{},
        py::arg("tol") = kDefaultQuadTol);

    py::class_<ForcingExpr>(m, "ForcingExpr")
        .def("__call__", &ForcingExpr::operator(), py::arg("t"))
        .def_property_readonly("source", &ForcingExpr::source)
        .def_property_readonly("breakpoints", &ForcingExpr::breakpoints)
        .def_property_readonly("singular_points", &ForcingExpr::singular_points);

    m.def("parse_forcing", [](const std::string& text) { return parse_forcing(text); },
          py::arg("text"));

    py::class_<Solution>(m, "Solution")
        .def("__call__", &Solution::operator(), py::arg("t"))
        .def("ubar", &Solution::ubar, py::arg("t"))
        .def("utilde", &Solution::utilde, py::arg("t"))
        .def_property_readonly("lambda_", &Solution::lambda)
        .def_property_readonly("ubar_t0", &Solution::ubar_t0)
        .def_property_readonly("case_",
                               [](const Solution& s) {
                                   return std::string(to_string(s.kase().tag));
                               });

    m.def(
        "solve",
        [](double a, double b, double t0, double c, const ForcingArg& h, double tol) {
            return solve(make_problem(a, b, t0, c, h), tol);
        },
        py::arg("a"), py::arg("b"), py::arg("t0"), py::arg("c"), py::arg("h"),
        py::arg("tol") = kDefaultQuadTol,
        "Green's-function solution; h is an expression string or a callable.");

    m.def(
        "closed_form_c31",
        [](double a, double b, double t0, double c, const ForcingArg& h, double tol) {
            return closed_form_c31(make_problem(a, b, t0, c, h), tol);
        },
        py::arg("a"), py::arg("b"), py::arg("t0"), py::arg("c"), py::arg("h"),
        py::arg("tol") = kDefaultQuadTol);

    m.def(
        "closed_form_c32",
        [](double a, double b, double t0, double c, const ForcingArg& h, double tol) {
            return closed_form_c32(make_problem(a, b, t0, c, h), tol);
        },
        py::arg("a"), py::arg("b"), py::arg("t0"), py::arg("c"), py::arg("h"),
        py::arg("tol") = kDefaultQuadTol);

    m.def("eta", &eta, py::arg("a"), py::arg("b"));
    m.def("sigma", &sigma, py::arg("a"), py::arg("b"));

    m.def(
        "degenerate_t0",
        [](double a, double b) {
            const DegenerateSet d = degenerate_t0(a, b);
            py::dict out;
            out["kind"] = kind_name(d.kind);
            if (d.kind == DegenerateSet::Kind::Single) out["point"] = d.base;
            if (d.kind == DegenerateSet::Kind::Progression) {
                out["base"] = d.base;
                out["spacing"] = d.spacing;
            }
            out["describe"] = d.describe();
            return out;
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "sign_report",
        [](double a, double b) {
            const SignReport r = sign_report(a, b);
            py::dict out;
            out["case"] = std::string(to_string(r.kase.tag));
            py::dict strip;
            strip["sign"] = r.strip.sign > 0 ? "nonnegative" : "nonpositive";
            strip["lo"] = r.strip.lo;
            strip["hi"] = r.strip.hi;
            out["strip"] = strip;
            py::dict tris;
            for (const TriangleSign& t : r.triangles) {
                py::dict tri;
                tri["sign"] = sign_name(t.sign);
                tri["conditional"] = t.conditional;
                tri["window"] = py::make_tuple(t.win_lo, t.win_hi);
                tris[t.triangle] = tri;
            }
            out["triangles"] = tris;
            py::dict th;
            for (const auto& [name, value] : r.thresholds) th[name.c_str()] = value;
            out["thresholds"] = th;
            return out;
        },
        py::arg("a"), py::arg("b"));

    m.def(
        "shooting_solve",
        [](double a, double b, double t0, double c, const ForcingArg& h, double T,
           double step) {
            const GridSolution g = shooting_solve(make_problem(a, b, t0, c, h), T, step);
            return py::make_tuple(g.t, g.u);
        },
        py::arg("a"), py::arg("b"), py::arg("t0"), py::arg("c"), py::arg("h"),
        py::arg("T"), py::arg("step") = 1e-3);

    m.def(
        "collocation_solve",
        [](double a, double b, double t0, double c, const ForcingArg& h, double T,
           int n_points) {
            const CollocationResult r =
                collocation_solve(make_problem(a, b, t0, c, h), T, n_points);
            return py::make_tuple(r.t, r.u);
        },
        py::arg("a"), py::arg("b"), py::arg("t0"), py::arg("c"), py::arg("h"),
        py::arg("T"), py::arg("n_points") = 2001);
}
