#include "fracpont/noether.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracpont {

namespace {

double dot(std::span<const double> x, std::span<const double> y) {
    double acc = 0.0;
    for (size_t k = 0; k < x.size(); ++k)
        acc += x[k] * y[k];
    return acc;
}

// Dense solve of the (degree+1)x(degree+1) normal equations in long double.
std::vector<long double> solve_dense(std::vector<long double> m,
                                     std::vector<long double> rhs) {
    const size_t n = rhs.size();
    for (size_t col = 0; col < n; ++col) {
        size_t pivot = col;
        for (size_t row = col + 1; row < n; ++row)
            if (std::fabs((double)m[row * n + col]) > std::fabs((double)m[pivot * n + col]))
                pivot = row;
        if (m[pivot * n + col] == 0.0L)
            throw std::runtime_error("nth_derivative: singular fit matrix");
        if (pivot != col) {
            for (size_t k = col; k < n; ++k)
                std::swap(m[col * n + k], m[pivot * n + k]);
            std::swap(rhs[col], rhs[pivot]);
        }
        for (size_t row = col + 1; row < n; ++row) {
            const long double factor = m[row * n + col] / m[col * n + col];
            for (size_t k = col; k < n; ++k)
                m[row * n + k] -= factor * m[col * n + k];
            rhs[row] -= factor * rhs[col];
        }
    }
    std::vector<long double> x(n, 0.0L);
    for (size_t row = n; row-- > 0;) {
        long double acc = rhs[row];
        for (size_t k = row + 1; k < n; ++k)
            acc -= m[row * n + k] * x[k];
        x[row] = acc / m[row * n + row];
    }
    return x;
}

SampledPath polynomial_fit_derivative(const SampledPath& g, size_t r) {
    const size_t window = 2 * r + 3;
    const size_t degree = r + 2;
    const size_t nodes = g.nodes();
    if (nodes < window)
        throw std::invalid_argument("nth_derivative: grid smaller than the fit window");
    const double h = g.grid().h();
    double r_factorial = 1.0;
    for (size_t k = 2; k <= r; ++k)
        r_factorial *= static_cast<double>(k);
    const double deriv_scale = r_factorial / std::pow(h, static_cast<double>(r));

    SampledPath out(g.grid(), g.dim());
    std::vector<long double> powers(window * (degree + 1));
    for (size_t i = 0; i < nodes; ++i) {
        size_t start = (i > r + 1) ? i - (r + 1) : 0;
        start = std::min(start, nodes - window);
        // Monomials in the offset variable (j - i), in units of h.
        for (size_t j = 0; j < window; ++j) {
            const long double x =
                static_cast<long double>(start + j) - static_cast<long double>(i);
            long double acc = 1.0L;
            for (size_t a = 0; a <= degree; ++a) {
                powers[j * (degree + 1) + a] = acc;
                acc *= x;
            }
        }
        std::vector<long double> m((degree + 1) * (degree + 1), 0.0L);
        for (size_t a = 0; a <= degree; ++a)
            for (size_t b = 0; b <= degree; ++b) {
                long double acc = 0.0L;
                for (size_t j = 0; j < window; ++j)
                    acc += powers[j * (degree + 1) + a] * powers[j * (degree + 1) + b];
                m[a * (degree + 1) + b] = acc;
            }
        for (size_t k = 0; k < g.dim(); ++k) {
            std::vector<long double> rhs(degree + 1, 0.0L);
            for (size_t a = 0; a <= degree; ++a) {
                long double acc = 0.0L;
                for (size_t j = 0; j < window; ++j)
                    acc += powers[j * (degree + 1) + a] *
                           static_cast<long double>(g.at(start + j, k));
                rhs[a] = acc;
            }
            auto coeff = solve_dense(m, std::move(rhs));
            out.at(i, k) = static_cast<double>(coeff[r]) * deriv_scale;
        }
    }
    return out;
}

} // namespace

void validate_group(const OneParamGroup& group, unsigned seed, std::size_t points, double box) {
    if (group.dim == 0 || !group.phi || !group.generator)
        throw std::invalid_argument("validate_group: dim, phi and generator are all required");
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coord(-box, box);
    std::uniform_real_distribution<double> param(-1.0, 1.0);
    const size_t d = group.dim;
    std::vector<double> x(d), y(d), z(d), tmp(d), gen(d);
    for (size_t trial = 0; trial < points; ++trial) {
        for (auto& c : x)
            c = coord(rng);

        group.phi(0.0, x, y);
        for (size_t k = 0; k < d; ++k)
            if (std::abs(y[k] - x[k]) > 1e-12 * (1.0 + std::abs(x[k])))
                throw std::invalid_argument("validate_group: phi(0, x) != x");

        const double s = param(rng);
        const double s2 = param(rng);
        group.phi(s2, x, tmp);
        group.phi(s, tmp, y);
        group.phi(s + s2, x, z);
        for (size_t k = 0; k < d; ++k)
            if (std::abs(y[k] - z[k]) > 1e-8 * (1.0 + std::abs(z[k])))
                throw std::invalid_argument("validate_group: group law phi(s)o phi(s') failed");

        const double ds = 1e-5;
        group.phi(ds, x, y);
        group.phi(-ds, x, z);
        group.generator(x, gen);
        for (size_t k = 0; k < d; ++k) {
            const double fd = (y[k] - z[k]) / (2.0 * ds);
            if (std::abs(fd - gen[k]) > 1e-6 * (1.0 + std::abs(gen[k])))
                throw std::invalid_argument(
                    "validate_group: generator disagrees with d/ds phi at s=0");
        }
    }
}

OneParamGroup rotation_group(double theta) {
    OneParamGroup group;
    group.dim = 2;
    group.phi = [theta](double s, std::span<const double> x, std::span<double> out) {
        const double c = std::cos(theta * s);
        const double sn = std::sin(theta * s);
        const double x0 = x[0];
        const double x1 = x[1];
        out[0] = c * x0 - sn * x1;
        out[1] = sn * x0 + c * x1;
    };
    group.generator = [theta](std::span<const double> x, std::span<double> out) {
        const double x0 = x[0];
        const double x1 = x[1];
        out[0] = -theta * x1;
        out[1] = theta * x0;
    };
    validate_group(group);
    return group;
}

SampledPath nth_derivative(const SampledPath& g, std::size_t r, DerivativeScheme scheme) {
    if (r == 0)
        return g;
    if (scheme == DerivativeScheme::finite_difference) {
        SampledPath out = discrete_derivative(g);
        for (size_t k = 1; k < r; ++k)
            out = discrete_derivative(out);
        return out;
    }
    return polynomial_fit_derivative(g, r);
}

double invariance_residual(const ControlProblem& prob, const SymmetryTriple& triple,
                           const PontryaginIterate& sol, std::span<const double> s_values) {
    const size_t d = prob.state_dim;
    const size_t m = prob.control_dim;
    if (triple.phi1.dim != d || triple.phi2.dim != m || triple.phi3.dim != d)
        throw std::invalid_argument("invariance_residual: triple dimensions do not match problem");
    if (sol.q.dim() != d || sol.u.dim() != m || sol.p.dim() != d)
        throw std::invalid_argument("invariance_residual: solution dimensions do not match");
    if (!(sol.u.grid() == sol.q.grid()) || !(sol.p.grid() == sol.q.grid()))
        throw std::invalid_argument("invariance_residual: solution paths on different grids");
    const Grid& grid = sol.q.grid();
    const size_t nodes = grid.node_count();

    // Discrete Caputo derivative consistent with the state solver: invert the
    // quadrature, so cD q equals the field samples to solver tolerance.
    auto caputo_implicit = [&](const SampledPath& path) {
        SampledPath shifted = path;
        for (size_t i = 0; i < nodes; ++i)
            for (size_t k = 0; k < path.dim(); ++k)
                shifted.at(i, k) -= path.at(0, k);
        return inverse_left_integral(shifted, prob.alpha);
    };

    const SampledPath dq = caputo_implicit(sol.q);
    std::vector<double> base(nodes);
    for (size_t i = 0; i < nodes; ++i) {
        const double t = grid.node(i);
        base[i] = hamiltonian(prob, sol.q.row(i), sol.u.row(i), sol.p.row(i), t) -
                  dot(sol.p.row(i), dq.row(i));
    }

    double worst = 0.0;
    for (double s : s_values) {
        if (!std::isfinite(s))
            throw std::invalid_argument("invariance_residual: s values must be finite");
        SampledPath tq(grid, d), tu(grid, m), tp(grid, d);
        for (size_t i = 0; i < nodes; ++i) {
            triple.phi1.phi(s, sol.q.row(i), tq.row(i));
            triple.phi2.phi(s, sol.u.row(i), tu.row(i));
            triple.phi3.phi(s, sol.p.row(i), tp.row(i));
        }
        const SampledPath tdq = caputo_implicit(tq);
        for (size_t i = 0; i < nodes; ++i) {
            const double t = grid.node(i);
            const double transformed =
                hamiltonian(prob, tq.row(i), tu.row(i), tp.row(i), t) -
                dot(tp.row(i), tdq.row(i));
            worst = std::max(worst, std::abs(transformed - base[i]));
        }
    }
    return worst;
}

SampledPath torres_frederico_residual(const SampledPath& g, const SampledPath& p,
                                      FracOrder alpha) {
    if (!(g.grid() == p.grid()) || g.dim() != p.dim())
        throw std::invalid_argument("torres_frederico_residual: g and p must share grid and dim");
    const SampledPath dg = caputo_left_derivative(g, alpha);
    const SampledPath dp = rl_right_derivative(p, alpha);
    SampledPath out(g.grid(), 1);
    for (size_t i = 0; i < g.nodes(); ++i)
        out.at(i, 0) = dot(dg.row(i), p.row(i)) - dot(g.row(i), dp.row(i));
    return out;
}

ConservedSeries conserved_quantity(const SampledPath& g, const SampledPath& p, FracOrder alpha,
                                   const SeriesTruncation& trunc) {
    if (!(g.grid() == p.grid()) || g.dim() != p.dim())
        throw std::invalid_argument("conserved_quantity: g and p must share grid and dim");
    const size_t n = g.grid().n;
    if (trunc.r_max > 0 && n < 85 * trunc.r_max)
        throw std::invalid_argument("conserved_quantity: n = " + std::to_string(n) +
                                    " too coarse for r_max = " + std::to_string(trunc.r_max) +
                                    " (need n >= " + std::to_string(85 * trunc.r_max) + ")");
    const size_t nodes = g.nodes();

    SampledPath shifted = g;
    for (size_t i = 0; i < nodes; ++i)
        for (size_t k = 0; k < g.dim(); ++k)
            shifted.at(i, k) -= g.at(0, k);

    SampledPath series = zero_path(g.grid(), 1);
    SampledPath last_term = zero_path(g.grid(), 1);
    for (size_t r = 0; r <= trunc.r_max; ++r) {
        const SampledPath pr = nth_derivative(p, r, trunc.scheme);
        const SampledPath gr = nth_derivative(g, r, trunc.scheme);
        const double order = static_cast<double>(r) + 1.0 - alpha.alpha;
        // At alpha = 1, r = 0 the integral order degenerates to I^0 = identity.
        const SampledPath left_part = (order == 0.0) ? shifted : left_frac_integral(shifted, order);
        const SampledPath right_part = (order == 0.0) ? p : right_frac_integral(p, order);
        const double sign = (r % 2 == 0) ? 1.0 : -1.0;
        for (size_t i = 0; i < nodes; ++i) {
            const double term =
                sign * dot(left_part.row(i), pr.row(i)) + dot(gr.row(i), right_part.row(i));
            series.at(i, 0) += term;
            if (r == trunc.r_max)
                last_term.at(i, 0) = term;
        }
    }
    return ConservedSeries{std::move(series), std::move(last_term), 2 * trunc.r_max};
}

DriftReport drift_report(const SampledPath& series, std::size_t margin) {
    if (series.dim() != 1)
        throw std::invalid_argument("drift_report: series must be scalar");
    const size_t nodes = series.nodes();
    if (2 * margin + 1 > nodes)
        throw std::invalid_argument("drift_report: margin leaves no certified interior");
    const size_t lo = margin;
    const size_t hi = nodes - 1 - margin;
    double vmin = series.at(lo, 0);
    double vmax = vmin;
    double mean = 0.0;
    for (size_t i = lo; i <= hi; ++i) {
        const double v = series.at(i, 0);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        mean += v;
    }
    mean /= static_cast<double>(hi - lo + 1);
    DriftReport report;
    report.spread = vmax - vmin;
    report.rel_drift = report.spread / (std::abs(mean) + std::numeric_limits<double>::min());
    report.certified_range = {series.grid().node(lo), series.grid().node(hi)};
    report.last_term_magnitude = 0.0;
    return report;
}

DriftReport drift_report(const ConservedSeries& series) {
    DriftReport report = drift_report(series.series, series.margin);
    const size_t nodes = series.last_term.nodes();
    const size_t lo = series.margin;
    const size_t hi = nodes - 1 - series.margin;
    double mag = 0.0;
    for (size_t i = lo; i <= hi; ++i)
        mag = std::max(mag, std::abs(series.last_term.at(i, 0)));
    report.last_term_magnitude = mag;
    return report;
}

} // namespace fracpont
