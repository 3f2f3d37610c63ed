#pragma once

#include "fracpont/frac_ivp.hpp"
#include "fracpont/grid.hpp"

#include <functional>
#include <vector>

namespace fracpont {

// Fractional optimal control problem
//   minimize  integral_a^b L(q(t), u(t), t) dt
//   subject to  cD^alpha_- q = f(q, u, t),  q(a) = initial_state,
// with user-supplied first partials. construct-time validation compares every
// partial against central finite differences at random sample points, so a
// problem that passes construction has consistent derivatives.
struct ControlProblem {
    std::size_t state_dim = 0;
    std::size_t control_dim = 0;
    double a = 0.0;
    double b = 1.0;
    double alpha = 1.0;
    std::vector<double> initial_state;

    using Scalar = std::function<double(std::span<const double> x, std::span<const double> v,
                                        double t)>;
    using Vector = std::function<void(std::span<const double> x, std::span<const double> v,
                                      double t, std::span<double> out)>;

    Scalar L;
    Vector dLdx;   // size state_dim
    Vector dLdv;   // size control_dim
    Vector f;      // size state_dim
    Vector dfdx;   // row-major state_dim x state_dim
    Vector dfdv;   // row-major state_dim x control_dim
    double lipschitz_bound = 0.0; // advisory
};

struct PartialsCheckConfig {
    std::size_t points = 24;
    double rel_tol = 1e-5;
    double box = 2.0;       // samples drawn from [-box, box] per coordinate
    unsigned seed = 20240817;
};

// Throws std::invalid_argument if shapes/callables are missing or if any
// partial disagrees with central finite differences beyond rel_tol.
void validate_problem(const ControlProblem& prob, const PartialsCheckConfig& cfg = {});

// Pontryagin Hamiltonian H(x, v, w, t) = L(x, v, t) + w . f(x, v, t) and its
// partials, assembled from the problem data.
double hamiltonian(const ControlProblem& prob, std::span<const double> x,
                   std::span<const double> v, std::span<const double> w, double t);
void dHdx(const ControlProblem& prob, std::span<const double> x, std::span<const double> v,
          std::span<const double> w, double t, std::span<double> out);
void dHdv(const ControlProblem& prob, std::span<const double> x, std::span<const double> v,
          std::span<const double> w, double t, std::span<double> out);
void dHdw(const ControlProblem& prob, std::span<const double> x, std::span<const double> v,
          std::span<const double> w, double t, std::span<double> out);

struct SweepConfig {
    std::size_t max_outer = 200;
    double grad_tol = 1e-6;
    double step0 = 1.0;
    double armijo_c = 1e-4;
    double backtrack = 0.5;
    double ivp_tol = 1e-10;
    std::size_t max_picard = 200;
    std::size_t max_backtracks = 60;
};

struct PontryaginIterate {
    SampledPath q;
    SampledPath u;
    SampledPath p;
    SampledPath gradient; // dH/dv along (q, u, p)
    double cost = 0.0;
    double stationarity = 0.0; // sup norm of the gradient path
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> cost_history; // accepted iterates, nonincreasing
};

// Forward state solve for a given control (Volterra fixed point).
SampledPath state_solve(const ControlProblem& prob, const SampledPath& u, const Grid& grid,
                        double tol = 1e-10, std::size_t max_picard = 200);
// Backward adjoint solve: D^alpha_+ p = dH/dx along (q, u), p(b) = 0.
SampledPath adjoint_solve(const ControlProblem& prob, const SampledPath& u, const SampledPath& q,
                          const Grid& grid, double tol = 1e-10, std::size_t max_picard = 200);
// Trapezoidal cost of a control (solves the state internally).
double cost(const ControlProblem& prob, const SampledPath& u, const Grid& grid,
            double tol = 1e-10, std::size_t max_picard = 200);
// Trapezoidal cost of a (state, control) pair with the state supplied.
double cost(const ControlProblem& prob, const SampledPath& u, const SampledPath& q,
            const Grid& grid);
// L2 gradient of the cost: t -> dH/dv(q(t), u(t), p(t), t).
SampledPath gateaux_gradient(const ControlProblem& prob, const SampledPath& u, const Grid& grid,
                             double tol = 1e-10, std::size_t max_picard = 200);
// Linearized state response qbar to a control direction ubar (qbar(a) = 0).
SampledPath solve_linearized(const ControlProblem& prob, const SampledPath& u,
                             const SampledPath& ubar, const Grid& grid, double tol = 1e-10,
                             std::size_t max_picard = 200);
// Directional derivative of the cost at u in direction ubar, computed from the
// linearized state (not from the adjoint): <dLdx, qbar> + <dLdv, ubar>.
double directional_derivative(const ControlProblem& prob, const SampledPath& u,
                              const SampledPath& ubar, const Grid& grid, double tol = 1e-10,
                              std::size_t max_picard = 200);

// Steepest descent on the control with Armijo backtracking. Convergence is
// declared when the stationarity ||dH/dv||_inf checked at the top of an outer
// iteration is <= grad_tol; if the budget runs out first the best iterate is
// returned with converged = false. Requires grid.n >= 8.
PontryaginIterate pontryagin_sweep(const ControlProblem& prob, const SampledPath& u0,
                                   const Grid& grid, const SweepConfig& cfg = {});

// ||q^{u+eps*ubar} - q^u||_inf / eps and ||q^{u+eps*ubar} - q^u - eps*qbar||_inf / eps^2.
double stability_ratio_order1(const ControlProblem& prob, const SampledPath& u,
                              const SampledPath& ubar, double eps, const Grid& grid,
                              double tol = 1e-10);
double stability_ratio_order2(const ControlProblem& prob, const SampledPath& u,
                              const SampledPath& ubar, double eps, const Grid& grid,
                              double tol = 1e-10);
// Alias for the order-2 ratio, which is the one that stays bounded as eps -> 0.
double stability_ratio(const ControlProblem& prob, const SampledPath& u, const SampledPath& ubar,
                       double eps, const Grid& grid, double tol = 1e-10);

// Fractional Gronwall envelope k2 * E_{alpha,1}(k1 * (t - a)^alpha).
double gronwall_bound(double k1, double k2, double alpha, double t, double a);

} // namespace fracpont
