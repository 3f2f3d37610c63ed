#include "fracpont/ocp.hpp"
#include "fracpont/special_functions.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace fracpont {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok)
        throw std::invalid_argument("ControlProblem: " + msg);
}

double fd_step(double coord) { return 1e-6 * std::max(1.0, std::abs(coord)); }

bool close_rel(double got, double want, double tol) {
    return std::abs(got - want) <= tol * (1.0 + std::abs(got) + std::abs(want));
}

void check_grid(const ControlProblem& prob, const Grid& grid) {
    if (grid.a != prob.a || grid.b != prob.b)
        throw std::invalid_argument("ocp: grid interval does not match the problem interval");
}

void check_control(const ControlProblem& prob, const SampledPath& u, const Grid& grid) {
    check_grid(prob, grid);
    if (!(u.grid() == grid))
        throw std::invalid_argument("ocp: control sampled on a different grid");
    if (u.dim() != prob.control_dim)
        throw std::invalid_argument("ocp: control dimension mismatch");
}

double cost_given(const ControlProblem& prob, const SampledPath& q, const SampledPath& u) {
    const Grid& grid = q.grid();
    double acc = 0.0;
    for (std::size_t i = 0; i <= grid.n; ++i) {
        const double w = (i == 0 || i == grid.n) ? 0.5 : 1.0;
        acc += w * prob.L(q.row(i), u.row(i), grid.node(i));
    }
    return acc * grid.h();
}

SampledPath gradient_given(const ControlProblem& prob, const SampledPath& q, const SampledPath& u,
                           const SampledPath& p) {
    SampledPath g(q.grid(), prob.control_dim);
    for (std::size_t i = 0; i < q.nodes(); ++i)
        dHdv(prob, q.row(i), u.row(i), p.row(i), q.grid().node(i), g.row(i));
    return g;
}

SampledPath adjoint_given(const ControlProblem& prob, const SampledPath& u, const SampledPath& q,
                          const Grid& grid, double tol, std::size_t max_picard) {
    const std::size_t d = prob.state_dim;
    VectorField field{
        d,
        [&prob, &u, &q, d](std::span<const double> w, double t, std::size_t node,
                           std::span<double> out) {
            std::vector<double> jac(d * d);
            prob.dLdx(q.row(node), u.row(node), t, out);
            prob.dfdx(q.row(node), u.row(node), t, jac);
            for (std::size_t c = 0; c < d; ++c) {
                double acc = 0.0;
                for (std::size_t r = 0; r < d; ++r)
                    acc += jac[r * d + c] * w[r];
                out[c] += acc;
            }
        },
        std::nullopt};
    IvpSpec spec{FracOrder(prob.alpha), std::vector<double>(d, 0.0), grid, tol, max_picard};
    return solve_right_terminal(field, spec).path;
}

} // namespace

void validate_problem(const ControlProblem& prob, const PartialsCheckConfig& cfg) {
    require(prob.state_dim >= 1, "state_dim must be >= 1");
    require(prob.control_dim >= 1, "control_dim must be >= 1");
    require(std::isfinite(prob.a) && std::isfinite(prob.b) && prob.a < prob.b,
            "requires a < b");
    require(prob.alpha > 0.0 && prob.alpha <= 1.0, "requires 0 < alpha <= 1");
    require(prob.initial_state.size() == prob.state_dim, "initial_state size mismatch");
    require(static_cast<bool>(prob.L) && static_cast<bool>(prob.dLdx) &&
                static_cast<bool>(prob.dLdv) && static_cast<bool>(prob.f) &&
                static_cast<bool>(prob.dfdx) && static_cast<bool>(prob.dfdv),
            "all six callables (L, dLdx, dLdv, f, dfdx, dfdv) must be set");

    const std::size_t d = prob.state_dim;
    const std::size_t m = prob.control_dim;
    std::mt19937 rng(cfg.seed);
    std::uniform_real_distribution<double> coord(-cfg.box, cfg.box);
    std::uniform_real_distribution<double> time(prob.a, prob.b);

    std::vector<double> x(d), v(m), got_x(d), got_v(m);
    std::vector<double> jx(d * d), jv(d * m);
    std::vector<double> fp(d), fm(d);
    for (std::size_t pt = 0; pt < cfg.points; ++pt) {
        for (auto& c : x)
            c = coord(rng);
        for (auto& c : v)
            c = coord(rng);
        const double t = time(rng);

        prob.dLdx(x, v, t, got_x);
        for (std::size_t i = 0; i < d; ++i) {
            const double h = fd_step(x[i]);
            const double keep = x[i];
            x[i] = keep + h;
            const double Lp = prob.L(x, v, t);
            x[i] = keep - h;
            const double Lm = prob.L(x, v, t);
            x[i] = keep;
            if (!close_rel(got_x[i], (Lp - Lm) / (2.0 * h), cfg.rel_tol))
                throw std::invalid_argument("ControlProblem: dLdx disagrees with finite differences");
        }
        prob.dLdv(x, v, t, got_v);
        for (std::size_t i = 0; i < m; ++i) {
            const double h = fd_step(v[i]);
            const double keep = v[i];
            v[i] = keep + h;
            const double Lp = prob.L(x, v, t);
            v[i] = keep - h;
            const double Lm = prob.L(x, v, t);
            v[i] = keep;
            if (!close_rel(got_v[i], (Lp - Lm) / (2.0 * h), cfg.rel_tol))
                throw std::invalid_argument("ControlProblem: dLdv disagrees with finite differences");
        }
        prob.dfdx(x, v, t, jx);
        for (std::size_t c = 0; c < d; ++c) {
            const double h = fd_step(x[c]);
            const double keep = x[c];
            x[c] = keep + h;
            prob.f(x, v, t, fp);
            x[c] = keep - h;
            prob.f(x, v, t, fm);
            x[c] = keep;
            for (std::size_t r = 0; r < d; ++r)
                if (!close_rel(jx[r * d + c], (fp[r] - fm[r]) / (2.0 * h), cfg.rel_tol))
                    throw std::invalid_argument(
                        "ControlProblem: dfdx disagrees with finite differences");
        }
        prob.dfdv(x, v, t, jv);
        for (std::size_t c = 0; c < m; ++c) {
            const double h = fd_step(v[c]);
            const double keep = v[c];
            v[c] = keep + h;
            prob.f(x, v, t, fp);
            v[c] = keep - h;
            prob.f(x, v, t, fm);
            v[c] = keep;
            for (std::size_t r = 0; r < d; ++r)
                if (!close_rel(jv[r * m + c], (fp[r] - fm[r]) / (2.0 * h), cfg.rel_tol))
                    throw std::invalid_argument(
                        "ControlProblem: dfdv disagrees with finite differences");
        }
    }
}

double hamiltonian(const ControlProblem& prob, std::span<const double> x,
                   std::span<const double> v, std::span<const double> w, double t) {
    std::vector<double> fx(prob.state_dim);
    prob.f(x, v, t, fx);
    double acc = prob.L(x, v, t);
    for (std::size_t k = 0; k < prob.state_dim; ++k)
        acc += w[k] * fx[k];
    return acc;
}

void dHdx(const ControlProblem& prob, std::span<const double> x, std::span<const double> v,
          std::span<const double> w, double t, std::span<double> out) {
    const std::size_t d = prob.state_dim;
    std::vector<double> jac(d * d);
    prob.dLdx(x, v, t, out);
    prob.dfdx(x, v, t, jac);
    for (std::size_t c = 0; c < d; ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < d; ++r)
            acc += jac[r * d + c] * w[r];
        out[c] += acc;
    }
}

void dHdv(const ControlProblem& prob, std::span<const double> x, std::span<const double> v,
          std::span<const double> w, double t, std::span<double> out) {
    const std::size_t d = prob.state_dim;
    const std::size_t m = prob.control_dim;
    std::vector<double> jac(d * m);
    prob.dLdv(x, v, t, out);
    prob.dfdv(x, v, t, jac);
    for (std::size_t c = 0; c < m; ++c) {
        double acc = 0.0;
        for (std::size_t r = 0; r < d; ++r)
            acc += jac[r * m + c] * w[r];
        out[c] += acc;
    }
}

void dHdw(const ControlProblem& prob, std::span<const double> x, std::span<const double> v,
          std::span<const double>, double t, std::span<double> out) {
    prob.f(x, v, t, out);
}

SampledPath state_solve(const ControlProblem& prob, const SampledPath& u, const Grid& grid,
                        double tol, std::size_t max_picard) {
    check_control(prob, u, grid);
    VectorField field{prob.state_dim,
                      [&prob, &u](std::span<const double> x, double t, std::size_t node,
                                  std::span<double> out) { prob.f(x, u.row(node), t, out); },
                      prob.lipschitz_bound > 0.0 ? std::optional<double>(prob.lipschitz_bound)
                                                 : std::nullopt};
    IvpSpec spec{FracOrder(prob.alpha), prob.initial_state, grid, tol, max_picard};
    return solve_left_ivp(field, spec).path;
}

SampledPath adjoint_solve(const ControlProblem& prob, const SampledPath& u, const SampledPath& q,
                          const Grid& grid, double tol, std::size_t max_picard) {
    check_control(prob, u, grid);
    if (!(q.grid() == grid) || q.dim() != prob.state_dim)
        throw std::invalid_argument("adjoint_solve: state path mismatch");
    return adjoint_given(prob, u, q, grid, tol, max_picard);
}

double cost(const ControlProblem& prob, const SampledPath& u, const SampledPath& q,
            const Grid& grid) {
    check_control(prob, u, grid);
    if (!(q.grid() == grid))
        throw std::invalid_argument("ocp: state sampled on a different grid");
    if (q.dim() != prob.state_dim)
        throw std::invalid_argument("ocp: state dimension mismatch");
    return cost_given(prob, q, u);
}

double cost(const ControlProblem& prob, const SampledPath& u, const Grid& grid, double tol,
            std::size_t max_picard) {
    return cost_given(prob, state_solve(prob, u, grid, tol, max_picard), u);
}

SampledPath gateaux_gradient(const ControlProblem& prob, const SampledPath& u, const Grid& grid,
                             double tol, std::size_t max_picard) {
    SampledPath q = state_solve(prob, u, grid, tol, max_picard);
    SampledPath p = adjoint_given(prob, u, q, grid, tol, max_picard);
    return gradient_given(prob, q, u, p);
}

SampledPath solve_linearized(const ControlProblem& prob, const SampledPath& u,
                             const SampledPath& ubar, const Grid& grid, double tol,
                             std::size_t max_picard) {
    check_control(prob, u, grid);
    check_control(prob, ubar, grid);
    SampledPath q = state_solve(prob, u, grid, tol, max_picard);
    const std::size_t d = prob.state_dim;
    const std::size_t m = prob.control_dim;
    VectorField field{
        d,
        [&prob, &u, &q, &ubar, d, m](std::span<const double> xbar, double t, std::size_t node,
                                     std::span<double> out) {
            std::vector<double> jx(d * d), jv(d * m);
            prob.dfdx(q.row(node), u.row(node), t, jx);
            prob.dfdv(q.row(node), u.row(node), t, jv);
            for (std::size_t r = 0; r < d; ++r) {
                double acc = 0.0;
                for (std::size_t c = 0; c < d; ++c)
                    acc += jx[r * d + c] * xbar[c];
                for (std::size_t c = 0; c < m; ++c)
                    acc += jv[r * m + c] * ubar.at(node, c);
                out[r] = acc;
            }
        },
        std::nullopt};
    IvpSpec spec{FracOrder(prob.alpha), std::vector<double>(d, 0.0), grid, tol, max_picard};
    return solve_left_ivp(field, spec).path;
}

double directional_derivative(const ControlProblem& prob, const SampledPath& u,
                              const SampledPath& ubar, const Grid& grid, double tol,
                              std::size_t max_picard) {
    SampledPath qbar = solve_linearized(prob, u, ubar, grid, tol, max_picard);
    SampledPath q = state_solve(prob, u, grid, tol, max_picard);
    SampledPath lx(grid, prob.state_dim), lv(grid, prob.control_dim);
    for (std::size_t i = 0; i < q.nodes(); ++i) {
        prob.dLdx(q.row(i), u.row(i), grid.node(i), lx.row(i));
        prob.dLdv(q.row(i), u.row(i), grid.node(i), lv.row(i));
    }
    return inner_product(lx, qbar) + inner_product(lv, ubar);
}

PontryaginIterate pontryagin_sweep(const ControlProblem& prob, const SampledPath& u0,
                                   const Grid& grid, const SweepConfig& cfg) {
    if (grid.n < 8)
        throw std::invalid_argument("pontryagin_sweep: grid too coarse, needs n >= 8");
    check_control(prob, u0, grid);

    SampledPath u = u0;
    SampledPath q = state_solve(prob, u, grid, cfg.ivp_tol, cfg.max_picard);
    SampledPath p = adjoint_given(prob, u, q, grid, cfg.ivp_tol, cfg.max_picard);
    SampledPath grad = gradient_given(prob, q, u, p);
    double J = cost_given(prob, q, u);
    double stat = sup_norm(grad);

    PontryaginIterate it{q, u, p, grad, J, stat, 0, false, {J}};
    for (std::size_t outer = 0; outer < cfg.max_outer; ++outer) {
        if (stat <= cfg.grad_tol) {
            it.converged = true;
            break;
        }
        const double gnorm2 = inner_product(grad, grad);
        double step = cfg.step0;
        bool accepted = false;
        for (std::size_t bt = 0; bt <= cfg.max_backtracks; ++bt) {
            SampledPath u_try = axpy(-step, grad, u);
            SampledPath q_try = state_solve(prob, u_try, grid, cfg.ivp_tol, cfg.max_picard);
            const double J_try = cost_given(prob, q_try, u_try);
            if (J_try <= J - cfg.armijo_c * step * gnorm2) {
                u = std::move(u_try);
                q = std::move(q_try);
                J = J_try;
                accepted = true;
                break;
            }
            step *= cfg.backtrack;
        }
        if (!accepted)
            break; // line search stalled; report the best iterate, not converged
        ++it.iterations;
        p = adjoint_given(prob, u, q, grid, cfg.ivp_tol, cfg.max_picard);
        grad = gradient_given(prob, q, u, p);
        stat = sup_norm(grad);
        it.cost_history.push_back(J);
    }
    it.q = std::move(q);
    it.u = std::move(u);
    it.p = std::move(p);
    it.gradient = std::move(grad);
    it.cost = J;
    it.stationarity = stat;
    return it;
}

double stability_ratio_order1(const ControlProblem& prob, const SampledPath& u,
                              const SampledPath& ubar, double eps, const Grid& grid, double tol) {
    if (eps == 0.0)
        throw std::invalid_argument("stability_ratio: eps must be nonzero");
    SampledPath q0 = state_solve(prob, u, grid, tol);
    SampledPath q1 = state_solve(prob, axpy(eps, ubar, u), grid, tol);
    return sup_distance(q1, q0) / std::abs(eps);
}

double stability_ratio_order2(const ControlProblem& prob, const SampledPath& u,
                              const SampledPath& ubar, double eps, const Grid& grid, double tol) {
    if (eps == 0.0)
        throw std::invalid_argument("stability_ratio: eps must be nonzero");
    SampledPath q0 = state_solve(prob, u, grid, tol);
    SampledPath q1 = state_solve(prob, axpy(eps, ubar, u), grid, tol);
    SampledPath qbar = solve_linearized(prob, u, ubar, grid, tol);
    SampledPath delta = axpy(-1.0, q0, q1);        // q1 - q0
    delta = axpy(-eps, qbar, delta);               // q1 - q0 - eps*qbar
    return sup_norm(delta) / (eps * eps);
}

double stability_ratio(const ControlProblem& prob, const SampledPath& u, const SampledPath& ubar,
                       double eps, const Grid& grid, double tol) {
    return stability_ratio_order2(prob, u, ubar, eps, grid, tol);
}

double gronwall_bound(double k1, double k2, double alpha, double t, double a) {
    if (!(k1 >= 0.0) || !(k2 >= 0.0))
        throw std::invalid_argument("gronwall_bound: requires k1, k2 >= 0");
    (void)FracOrder(alpha); // range check 0 < alpha <= 1
    if (!(t >= a))
        throw std::domain_error("gronwall_bound: requires t >= a");
    return k2 * mittag_leffler(alpha, 1.0, k1 * std::pow(t - a, alpha));
}

} // namespace fracpont
