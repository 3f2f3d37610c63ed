#pragma once

#include "fracpont/ocp.hpp"

#include <array>
#include <string>

namespace fracpont {

// Built-in benchmark problems. Every factory validates the assembled problem
// (finite-difference partials check) before returning it.

// Classical linear-quadratic tracking problem on [a, b] (alpha = 1):
//   L = (x^2 + v^2)/2, f = x + v, q(a) = A.
ControlProblem make_classical_lq(double A, double a, double b);

// Same data at fractional order 0 < alpha <= 1.
ControlProblem make_fractional_lq_1d(double A, double a, double b, double alpha);

// Planar isotropic version, d = m = 2, L = (|x|^2 + |v|^2)/2 on [0, 1]:
//   f = x + omega * J x + v,  J = [[0, -1], [1, 0]].
// omega = 0 is the plain decoupled problem; a nonzero omega couples the
// components while keeping the rotational symmetry, which makes the Noether
// conserved quantity nondegenerate (for omega = 0 it vanishes identically on
// every solution because both components evolve by the same scalar flow).
ControlProblem make_fractional_lq_2d_rot(std::array<double, 2> A, double alpha,
                                         double omega = 0.0);

// Problem with a known optimal control on [0, 1]:
//   L = v^2/2 + gamma*(1-t)^beta * x,  f = lambda*x + mu*v.
struct SolvedExampleParams {
    double alpha = 0.5;
    double beta = 1.0;
    double gamma = 1.0;
    double mu = 1.0;
    double lambda = 1.0;
};
ControlProblem make_solved_fractional(const SolvedExampleParams& params, double A);

// Reduction-to-Euler-Lagrange demo: L = v^2/2 + x^2/2, f = v.
ControlProblem make_euler_lagrange_demo(double A, double a, double b, double alpha);

// Factory keyed by tag name, used by the CLI. Throws std::invalid_argument for
// unknown tags ("custom" problems are programmatic only).
struct ProblemParams {
    std::vector<double> A{1.0};
    double a = 0.0;
    double b = 1.0;
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;
    double mu = 1.0;
    double lambda = 1.0;
    double omega = 0.0;
};
ControlProblem build_problem(const std::string& tag, const ProblemParams& params);

// Closed-form optimal pair of the classical LQ problem.
struct ReferencePoint {
    double q;
    double u;
};
ReferencePoint classical_lq_reference(double A, double a, double b, double t);

// Closed-form optimal control of the solved fractional problem, t in [0, 1]:
//   u*(t) = -mu * gamma * Gamma(beta+1) * (1-t)^(alpha+beta)
//           * E_{alpha, alpha+beta+1}(lambda * (1-t)^alpha).
double solved_fractional_reference(const SolvedExampleParams& params, double t);

// Closed-form adjoint of the solved fractional problem (independent of u).
double solved_fractional_adjoint(const SolvedExampleParams& params, double t);

} // namespace fracpont
