#include "fracpont/problems.hpp"
#include "fracpont/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace fracpont {

namespace {

// Shared quadratic-cost pieces for the LQ family.
void set_quadratic_cost_1d(ControlProblem& prob) {
    prob.L = [](std::span<const double> x, std::span<const double> v, double) {
        return 0.5 * (x[0] * x[0] + v[0] * v[0]);
    };
    prob.dLdx = [](std::span<const double> x, std::span<const double>, double,
                   std::span<double> out) { out[0] = x[0]; };
    prob.dLdv = [](std::span<const double>, std::span<const double> v, double,
                   std::span<double> out) { out[0] = v[0]; };
}

} // namespace

ControlProblem make_classical_lq(double A, double a, double b) {
    return make_fractional_lq_1d(A, a, b, 1.0);
}

ControlProblem make_fractional_lq_1d(double A, double a, double b, double alpha) {
    ControlProblem prob;
    prob.state_dim = 1;
    prob.control_dim = 1;
    prob.a = a;
    prob.b = b;
    prob.alpha = alpha;
    prob.initial_state = {A};
    prob.lipschitz_bound = 1.0;
    set_quadratic_cost_1d(prob);
    prob.f = [](std::span<const double> x, std::span<const double> v, double,
                std::span<double> out) { out[0] = x[0] + v[0]; };
    prob.dfdx = [](std::span<const double>, std::span<const double>, double,
                   std::span<double> out) { out[0] = 1.0; };
    prob.dfdv = [](std::span<const double>, std::span<const double>, double,
                   std::span<double> out) { out[0] = 1.0; };
    validate_problem(prob);
    return prob;
}

ControlProblem make_fractional_lq_2d_rot(std::array<double, 2> A, double alpha, double omega) {
    ControlProblem prob;
    prob.state_dim = 2;
    prob.control_dim = 2;
    prob.a = 0.0;
    prob.b = 1.0;
    prob.alpha = alpha;
    prob.initial_state = {A[0], A[1]};
    prob.lipschitz_bound = std::hypot(1.0, omega);
    prob.L = [](std::span<const double> x, std::span<const double> v, double) {
        return 0.5 * (x[0] * x[0] + x[1] * x[1] + v[0] * v[0] + v[1] * v[1]);
    };
    prob.dLdx = [](std::span<const double> x, std::span<const double>, double,
                   std::span<double> out) {
        out[0] = x[0];
        out[1] = x[1];
    };
    prob.dLdv = [](std::span<const double>, std::span<const double> v, double,
                   std::span<double> out) {
        out[0] = v[0];
        out[1] = v[1];
    };
    prob.f = [omega](std::span<const double> x, std::span<const double> v, double,
                     std::span<double> out) {
        out[0] = x[0] - omega * x[1] + v[0];
        out[1] = x[1] + omega * x[0] + v[1];
    };
    prob.dfdx = [omega](std::span<const double>, std::span<const double>, double,
                        std::span<double> out) {
        out[0] = 1.0;
        out[1] = -omega;
        out[2] = omega;
        out[3] = 1.0;
    };
    prob.dfdv = [](std::span<const double>, std::span<const double>, double,
                   std::span<double> out) {
        out[0] = 1.0;
        out[1] = 0.0;
        out[2] = 0.0;
        out[3] = 1.0;
    };
    validate_problem(prob);
    return prob;
}

ControlProblem make_solved_fractional(const SolvedExampleParams& params, double A) {
    if (params.gamma == 0.0 || params.mu == 0.0 || params.lambda == 0.0)
        throw std::invalid_argument("make_solved_fractional: gamma, mu, lambda must be nonzero");
    if (!(params.beta > 0.0))
        throw std::invalid_argument("make_solved_fractional: beta must be positive");
    ControlProblem prob;
    prob.state_dim = 1;
    prob.control_dim = 1;
    prob.a = 0.0;
    prob.b = 1.0;
    prob.alpha = params.alpha;
    prob.initial_state = {A};
    prob.lipschitz_bound = std::abs(params.lambda);
    const double beta = params.beta;
    const double gamma = params.gamma;
    prob.L = [beta, gamma](std::span<const double> x, std::span<const double> v, double t) {
        return 0.5 * v[0] * v[0] + gamma * std::pow(1.0 - t, beta) * x[0];
    };
    prob.dLdx = [beta, gamma](std::span<const double>, std::span<const double>, double t,
                              std::span<double> out) {
        out[0] = gamma * std::pow(1.0 - t, beta);
    };
    prob.dLdv = [](std::span<const double>, std::span<const double> v, double,
                   std::span<double> out) { out[0] = v[0]; };
    const double lam = params.lambda;
    const double mu = params.mu;
    prob.f = [lam, mu](std::span<const double> x, std::span<const double> v, double,
                       std::span<double> out) { out[0] = lam * x[0] + mu * v[0]; };
    prob.dfdx = [lam](std::span<const double>, std::span<const double>, double,
                      std::span<double> out) { out[0] = lam; };
    prob.dfdv = [mu](std::span<const double>, std::span<const double>, double,
                     std::span<double> out) { out[0] = mu; };
    validate_problem(prob);
    return prob;
}

ControlProblem make_euler_lagrange_demo(double A, double a, double b, double alpha) {
    ControlProblem prob;
    prob.state_dim = 1;
    prob.control_dim = 1;
    prob.a = a;
    prob.b = b;
    prob.alpha = alpha;
    prob.initial_state = {A};
    prob.lipschitz_bound = 0.0;
    set_quadratic_cost_1d(prob);
    prob.f = [](std::span<const double>, std::span<const double> v, double,
                std::span<double> out) { out[0] = v[0]; };
    prob.dfdx = [](std::span<const double>, std::span<const double>, double,
                   std::span<double> out) { out[0] = 0.0; };
    prob.dfdv = [](std::span<const double>, std::span<const double>, double,
                   std::span<double> out) { out[0] = 1.0; };
    validate_problem(prob);
    return prob;
}

ControlProblem build_problem(const std::string& tag, const ProblemParams& params) {
    auto scalar_A = [&]() {
        if (params.A.size() != 1)
            throw std::invalid_argument("build_problem: tag '" + tag + "' needs a scalar A");
        return params.A[0];
    };
    if (tag == "classical_lq")
        return make_classical_lq(scalar_A(), params.a, params.b);
    if (tag == "fractional_lq_1d")
        return make_fractional_lq_1d(scalar_A(), params.a, params.b, params.alpha);
    if (tag == "fractional_lq_2d_rot") {
        if (params.A.size() != 2)
            throw std::invalid_argument("build_problem: fractional_lq_2d_rot needs a 2-vector A");
        return make_fractional_lq_2d_rot({params.A[0], params.A[1]}, params.alpha, params.omega);
    }
    if (tag == "solved_fractional") {
        SolvedExampleParams sp{params.alpha, params.beta, params.gamma, params.mu, params.lambda};
        return make_solved_fractional(sp, scalar_A());
    }
    if (tag == "euler_lagrange_demo")
        return make_euler_lagrange_demo(scalar_A(), params.a, params.b, params.alpha);
    throw std::invalid_argument("build_problem: unknown tag '" + tag +
                                "' (custom problems are programmatic only)");
}

ReferencePoint classical_lq_reference(double A, double a, double b, double t) {
    if (!(a < b))
        throw std::invalid_argument("classical_lq_reference: requires a < b");
    if (!(t >= a && t <= b))
        throw std::domain_error("classical_lq_reference: t outside [a, b]");
    const double s2 = std::sqrt(2.0);
    const double span = b - a;
    const double R = std::sinh(s2 * span) / (s2 * std::cosh(s2 * span) - std::sinh(s2 * span));
    const double tau = t - a;
    const double ch = std::cosh(s2 * tau);
    const double sh = std::sinh(s2 * tau);
    ReferencePoint out;
    out.q = A * (ch + (1.0 - R) / s2 * sh);
    out.u = A * ((1.0 + R) / s2 * sh - R * ch);
    return out;
}

double solved_fractional_adjoint(const SolvedExampleParams& params, double t) {
    if (!(t >= 0.0) || !(t <= 1.0))
        throw std::domain_error("solved_fractional_adjoint: t outside [0, 1]");
    const double s = 1.0 - t;
    if (s == 0.0)
        return 0.0;
    const double order2 = params.alpha + params.beta + 1.0;
    return params.gamma * gamma_fn(params.beta + 1.0) * std::pow(s, params.alpha + params.beta) *
           mittag_leffler(params.alpha, order2, params.lambda * std::pow(s, params.alpha));
}

double solved_fractional_reference(const SolvedExampleParams& params, double t) {
    return -params.mu * solved_fractional_adjoint(params, t);
}

} // namespace fracpont
