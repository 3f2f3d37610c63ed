#include "fracpont/frac_ops.hpp"
#include "fracpont/special_functions.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace fracpont {

ProductTrapWeights product_trap_weights(const Grid& grid, double order) {
    if (!(order > 0.0))
        throw std::invalid_argument("product_trap_weights: requires order > 0");
    const std::size_t n = grid.n;

    // The weights are second differences of k^(order+1); long double keeps the
    // cancellation for large k below the quadrature error.
    std::vector<long double> P(n + 2);
    for (std::size_t k = 0; k < n + 2; ++k)
        P[k] = powl(static_cast<long double>(k), static_cast<long double>(order) + 1.0L);

    ProductTrapWeights out;
    out.order = order;
    out.scale = std::pow(grid.h(), order) / gamma_fn(order + 2.0);
    out.w.assign(n + 1, 0.0);
    out.c.assign(n + 1, 0.0);
    for (std::size_t k = 1; k <= n; ++k)
        out.w[k] = static_cast<double>(P[k + 1] - 2.0L * P[k] + P[k - 1]);
    for (std::size_t i = 1; i <= n; ++i) {
        const long double ia = powl(static_cast<long double>(i), static_cast<long double>(order));
        out.c[i] = static_cast<double>(P[i - 1] - ia * (static_cast<long double>(i) - order - 1.0L));
    }
    return out;
}

namespace {

SampledPath apply_left(const SampledPath& g, const ProductTrapWeights& wt) {
    const std::size_t n = g.grid().n;
    const std::size_t d = g.dim();
    SampledPath out(g.grid(), d);
    std::vector<double> acc(d);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t k = 0; k < d; ++k)
            acc[k] = wt.c[i] * g.at(0, k) + g.at(i, k);
        for (std::size_t j = 1; j < i; ++j) {
            const double w = wt.w[i - j];
            const auto row = g.row(j);
            for (std::size_t k = 0; k < d; ++k)
                acc[k] += w * row[k];
        }
        for (std::size_t k = 0; k < d; ++k)
            out.at(i, k) = wt.scale * acc[k];
    }
    return out;
}

} // namespace

SampledPath left_frac_integral(const SampledPath& g, double order) {
    return apply_left(g, product_trap_weights(g.grid(), order));
}

SampledPath left_frac_integral(const SampledPath& g, const ProductTrapWeights& weights) {
    if (weights.w.size() != g.grid().n + 1)
        throw std::invalid_argument("left_frac_integral: weights built for a different grid");
    return apply_left(g, weights);
}

SampledPath right_frac_integral(const SampledPath& g, double order) {
    return reflect(left_frac_integral(reflect(g), order));
}

SampledPath discrete_derivative(const SampledPath& g) {
    const std::size_t n = g.grid().n;
    const std::size_t d = g.dim();
    const double h = g.grid().h();
    SampledPath out(g.grid(), d);
    for (std::size_t k = 0; k < d; ++k) {
        out.at(0, k) = (-3.0 * g.at(0, k) + 4.0 * g.at(1, k) - g.at(2, k)) / (2.0 * h);
        out.at(n, k) = (3.0 * g.at(n, k) - 4.0 * g.at(n - 1, k) + g.at(n - 2, k)) / (2.0 * h);
    }
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t k = 0; k < d; ++k)
            out.at(i, k) = (g.at(i + 1, k) - g.at(i - 1, k)) / (2.0 * h);
    return out;
}

SampledPath caputo_left_derivative(const SampledPath& g, FracOrder alpha) {
    SampledPath dg = discrete_derivative(g);
    if (alpha.alpha == 1.0)
        return dg;
    return left_frac_integral(dg, 1.0 - alpha.alpha);
}

SampledPath caputo_right_derivative(const SampledPath& g, FracOrder alpha) {
    SampledPath dg = discrete_derivative(g);
    if (alpha.alpha == 1.0)
        return scale(-1.0, dg);
    return scale(-1.0, right_frac_integral(dg, 1.0 - alpha.alpha));
}

SampledPath rl_right_derivative(const SampledPath& g, FracOrder alpha, double boundary_tol) {
    const std::size_t n = g.grid().n;
    double gb = 0.0;
    for (std::size_t k = 0; k < g.dim(); ++k)
        gb = std::max(gb, std::abs(g.at(n, k)));
    // At alpha = 1 both derivatives are -g' and the boundary term is absent.
    if (alpha.alpha < 1.0 && gb > boundary_tol * (1.0 + sup_norm(g)))
        std::cerr << "fracpont: rl_right_derivative: |g(b)| = " << gb
                  << " is not negligible; result equals the Caputo derivative, which differs "
                     "from the RL one by a singular boundary term\n";
    return caputo_right_derivative(g, alpha);
}

SampledPath inverse_left_integral(const SampledPath& f, double order) {
    const std::size_t n = f.grid().n;
    const std::size_t d = f.dim();
    if (n < 3)
        throw std::invalid_argument("inverse_left_integral: needs n >= 3");
    const ProductTrapWeights wt = product_trap_weights(f.grid(), order);

    // Rows 1..n determine u_1..u_n given u_0; the free u_0 is closed with a
    // quadratic extrapolation from nodes 1..3 (exact through degree 2). Solve
    // once with u_0 = 0 and once for the unit influence of u_0, then combine.
    std::vector<double> eta(n + 1, 0.0);
    eta[0] = 1.0;
    for (std::size_t i = 1; i <= n; ++i) {
        double acc = -wt.c[i];
        for (std::size_t j = 1; j < i; ++j)
            acc -= wt.w[i - j] * eta[j];
        eta[i] = acc;
    }
    const double denom = 1.0 - 3.0 * eta[1] + 3.0 * eta[2] - eta[3];

    SampledPath out(f.grid(), d);
    std::vector<double> base(n + 1);
    for (std::size_t k = 0; k < d; ++k) {
        base[0] = 0.0;
        for (std::size_t i = 1; i <= n; ++i) {
            double acc = f.at(i, k) / wt.scale;
            for (std::size_t j = 1; j < i; ++j)
                acc -= wt.w[i - j] * base[j];
            base[i] = acc;
        }
        const double u0 = (3.0 * base[1] - 3.0 * base[2] + base[3]) / denom;
        out.at(0, k) = u0;
        for (std::size_t i = 1; i <= n; ++i)
            out.at(i, k) = base[i] + u0 * eta[i];
    }
    return out;
}

} // namespace fracpont
