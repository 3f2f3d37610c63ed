#include "fracpont/frac_ivp.hpp"
#include "fracpont/errors.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fracpont {

namespace {

void validate(const VectorField& field, const IvpSpec& spec) {
    if (field.dim == 0 || !field.eval)
        throw std::invalid_argument("solve ivp: field must have dim >= 1 and a callable eval");
    if (spec.initial.size() != field.dim)
        throw std::invalid_argument("solve ivp: initial value dimension mismatch");
    if (!(spec.tol > 0.0))
        throw std::invalid_argument("solve ivp: tol must be positive");
    if (spec.max_picard < 1)
        throw std::invalid_argument("solve ivp: max_picard must be >= 1");
}

SampledPath eval_field(const VectorField& field, const SampledPath& g) {
    SampledPath F(g.grid(), field.dim);
    for (std::size_t i = 0; i < g.nodes(); ++i)
        field.eval(g.row(i), g.grid().node(i), i, F.row(i));
    return F;
}

bool all_finite(const SampledPath& g) {
    for (double v : g.values())
        if (!std::isfinite(v))
            return false;
    return true;
}

} // namespace

PicardSolution solve_left_ivp(const VectorField& field, const IvpSpec& spec) {
    validate(field, spec);
    const ProductTrapWeights wt = product_trap_weights(spec.grid, spec.alpha.alpha);

    auto apply_map = [&](const SampledPath& g) {
        SampledPath out = left_frac_integral(eval_field(field, g), wt);
        for (std::size_t i = 0; i < out.nodes(); ++i)
            for (std::size_t k = 0; k < field.dim; ++k)
                out.at(i, k) += spec.initial[k];
        return out;
    };

    SampledPath g = constant_path(spec.grid, spec.initial);
    PicardSolution sol{g, 0, 0.0, {}};
    double last_step = std::numeric_limits<double>::infinity();
    while (true) {
        if (sol.iterations >= spec.max_picard)
            throw NonConvergenceError("solve ivp: Picard iteration did not converge", last_step);
        SampledPath gn = apply_map(g);
        ++sol.iterations;
        if (!all_finite(gn))
            throw std::runtime_error("solve ivp: iteration overflowed (field growth too strong)");
        last_step = sup_distance(gn, g);
        sol.step_norms.push_back(last_step);
        if (last_step <= spec.tol / 10.0) {
            if (sol.iterations >= spec.max_picard)
                throw NonConvergenceError("solve ivp: Picard iteration did not converge",
                                          last_step);
            SampledPath gn2 = apply_map(gn);
            ++sol.iterations;
            if (!all_finite(gn2))
                throw std::runtime_error("solve ivp: iteration overflowed");
            const double res = sup_distance(gn2, gn);
            sol.step_norms.push_back(res);
            if (res <= spec.tol) {
                sol.path = gn;
                sol.residual = res;
                return sol;
            }
            g = gn2;
        } else {
            g = gn;
        }
    }
}

PicardSolution solve_right_terminal(const VectorField& field, const IvpSpec& spec) {
    validate(field, spec);
    const double a = spec.grid.a;
    const double b = spec.grid.b;
    const std::size_t n = spec.grid.n;
    VectorField reflected{field.dim,
                          [&field, a, b, n](std::span<const double> x, double t, std::size_t node,
                                            std::span<double> out) {
                              field.eval(x, a + b - t, n - node, out);
                          },
                          field.lipschitz_hint};
    PicardSolution sol = solve_left_ivp(reflected, spec);
    sol.path = reflect(sol.path);
    return sol;
}

} // namespace fracpont
