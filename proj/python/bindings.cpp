#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fracpont/frac_ops.hpp"
#include "fracpont/grid.hpp"
#include "fracpont/ocp.hpp"
#include "fracpont/problems.hpp"
#include "fracpont/special_functions.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace fracpont;

namespace {

SampledPath scalar_path(std::vector<double> values, double a, double b) {
    if (values.size() < 3)
        throw std::invalid_argument("need at least 3 samples (n >= 2 intervals)");
    Grid grid(a, b, values.size() - 1);
    return SampledPath(grid, 1, std::move(values));
}

ProblemParams params_from(const py::dict& d) {
    ProblemParams p;
    for (auto item : d) {
        auto key = item.first.cast<std::string>();
        if (key == "A") {
            try {
                p.A = item.second.cast<std::vector<double>>();
            } catch (const py::cast_error&) {
                p.A = {item.second.cast<double>()};
            }
        } else if (key == "a") {
            p.a = item.second.cast<double>();
        } else if (key == "b") {
            p.b = item.second.cast<double>();
        } else if (key == "alpha") {
            p.alpha = item.second.cast<double>();
        } else if (key == "beta") {
            p.beta = item.second.cast<double>();
        } else if (key == "gamma") {
            p.gamma = item.second.cast<double>();
        } else if (key == "mu") {
            p.mu = item.second.cast<double>();
        } else if (key == "lambda") {
            p.lambda = item.second.cast<double>();
        } else if (key == "omega") {
            p.omega = item.second.cast<double>();
        } else {
            throw std::invalid_argument("unknown problem parameter: " + key);
        }
    }
    return p;
}

std::vector<std::vector<double>> rows_of(const SampledPath& path) {
    std::vector<std::vector<double>> out(path.nodes());
    for (std::size_t i = 0; i < path.nodes(); ++i)
        out[i].assign(path.row(i).begin(), path.row(i).end());
    return out;
}

py::dict solve(const std::string& tag, const py::dict& params, std::size_t n,
               std::size_t max_outer, double grad_tol) {
    auto parsed = params_from(params);
    auto prob = build_problem(tag, parsed);
    Grid grid(prob.a, prob.b, n);
    SweepConfig cfg;
    cfg.max_outer = max_outer;
    cfg.grad_tol = grad_tol;
    auto it = pontryagin_sweep(prob, zero_path(grid, prob.control_dim), grid, cfg);

    std::vector<double> t(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        t[i] = grid.node(i);

    py::dict out;
    out["t"] = t;
    out["q"] = rows_of(it.q);
    out["u"] = rows_of(it.u);
    out["p"] = rows_of(it.p);
    out["dHdv"] = rows_of(it.gradient);
    out["cost"] = it.cost;
    out["stationarity"] = it.stationarity;
    out["iterations"] = it.iterations;
    out["converged"] = it.converged;
    out["cost_history"] = it.cost_history;
    return out;
}

} // namespace

PYBIND11_MODULE(_fracpont, m) {
    m.doc() = "Fractional optimal control toolkit (C++ core)";

    m.def("gamma_fn", &gamma_fn, py::arg("x"),
          "Gamma function on the positive real axis.");

    m.def(
        "mittag_leffler",
        [](double a1, double a2, double t, double abs_tol, std::size_t max_terms) {
            return mittag_leffler(a1, a2, t, SeriesControl{abs_tol, max_terms});
        },
        py::arg("a1"), py::arg("a2"), py::arg("t"), py::arg("abs_tol") = 1e-14,
        py::arg("max_terms") = 400,
        "Two-parameter Mittag-Leffler function E_{a1,a2}(t).");

    m.def(
        "left_frac_integral",
        [](std::vector<double> values, double a, double b, double order) {
            return left_frac_integral(scalar_path(std::move(values), a, b), order).values();
        },
        py::arg("values"), py::arg("a"), py::arg("b"), py::arg("order"),
        "Left Riemann-Liouville integral of order > 0 on a uniform grid.");

    m.def(
        "right_frac_integral",
        [](std::vector<double> values, double a, double b, double order) {
            return right_frac_integral(scalar_path(std::move(values), a, b), order).values();
        },
        py::arg("values"), py::arg("a"), py::arg("b"), py::arg("order"),
        "Right Riemann-Liouville integral of order > 0 on a uniform grid.");

    m.def(
        "caputo_left_derivative",
        [](std::vector<double> values, double a, double b, double alpha) {
            return caputo_left_derivative(scalar_path(std::move(values), a, b),
                                          FracOrder(alpha))
                .values();
        },
        py::arg("values"), py::arg("a"), py::arg("b"), py::arg("alpha"),
        "Left Caputo derivative of order 0 < alpha <= 1 on a uniform grid.");

    m.def(
        "rl_right_derivative",
        [](std::vector<double> values, double a, double b, double alpha) {
            return rl_right_derivative(scalar_path(std::move(values), a, b), FracOrder(alpha))
                .values();
        },
        py::arg("values"), py::arg("a"), py::arg("b"), py::arg("alpha"),
        "Right Riemann-Liouville derivative for paths vanishing at b.");

    m.def("solve", &solve, py::arg("tag"), py::arg("params") = py::dict(),
          py::arg("n") = 1000, py::arg("max_outer") = 200, py::arg("grad_tol") = 1e-6,
          "Run the Pontryagin sweep on a built-in problem tag and return the "
          "trajectory and summary as a dict.");

    m.def(
        "classical_lq_reference",
        [](double A, double a, double b, double t) {
            auto ref = classical_lq_reference(A, a, b, t);
            return py::make_tuple(ref.q, ref.u);
        },
        py::arg("A"), py::arg("a"), py::arg("b"), py::arg("t"),
        "Closed-form optimal (q, u) of the classical LQ problem.");
}
