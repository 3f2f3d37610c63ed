#pragma once

#include "fracpont/grid.hpp"

namespace fracpont {

// Discrete Riemann-Liouville fractional integrals and Caputo/RL derivatives on
// a uniform grid. The integrals use the product-trapezoidal rule: the
// piecewise-linear interpolant of the samples is integrated exactly against
// the singular kernel, giving closed-form weights and O(h^2) consistency for
// smooth data. Right-sided operators are evaluated by reflecting the path,
// applying the left-sided operator and reflecting back, so reflection duality
// holds bit-for-bit.

// Quadrature weights for (I^order g)(t_i) = scale * (c[i]*g_0 + sum w[i-j]*g_j + g_i).
struct ProductTrapWeights {
    double order;
    double scale;            // h^order / Gamma(order + 2)
    std::vector<double> w;   // interior convolution weights, w[k], 1 <= k <= n
    std::vector<double> c;   // weight of the j = 0 sample for target i
};
ProductTrapWeights product_trap_weights(const Grid& grid, double order);

// Left fractional integral I^order_- for any order > 0; node 0 is 0. The
// weights overload lets iterative solvers reuse weights across sweeps.
SampledPath left_frac_integral(const SampledPath& g, double order);
SampledPath left_frac_integral(const SampledPath& g, const ProductTrapWeights& weights);
// Right fractional integral I^order_+; node n is 0.
SampledPath right_frac_integral(const SampledPath& g, double order);

// Second-order finite-difference time derivative (centered interior, one-sided
// ends). Exposed because the Caputo derivatives and the Noether series use it.
SampledPath discrete_derivative(const SampledPath& g);

// Caputo derivatives via the C^1 reduction: cD^a_- g = I^{1-a}_-(g') and
// cD^a_+ g = -I^{1-a}_+(g'). At alpha = 1 both reduce to +/- g'.
SampledPath caputo_left_derivative(const SampledPath& g, FracOrder alpha);
SampledPath caputo_right_derivative(const SampledPath& g, FracOrder alpha);

// Right Riemann-Liouville derivative under the convention used by the adjoint
// equation: computes -I^{1-a}_+((g - g(b))') which equals D^a_+ g whenever
// g(b) = 0. If |g(b)| exceeds boundary_tol * (1 + sup|g|) a warning is printed
// to stderr, since the RL and Caputo readings then differ by a singular term.
SampledPath rl_right_derivative(const SampledPath& g, FracOrder alpha,
                                double boundary_tol = 1e-8);

// Solves the lower-triangular system I^order_- u = f for u (the implicit,
// Volterra-consistent inverse of left_frac_integral). Requires f(a) = 0 up to
// roundoff; the undetermined node-0 value is closed by quadratic extrapolation
// from nodes 1..3, exact through degree 2. Used by the symmetry
// diagnostics where a discrete Caputo derivative consistent with the Picard
// quadrature is needed: inverse_left_integral(g - g(a), alpha) recovers the
// field samples of a solver output exactly.
SampledPath inverse_left_integral(const SampledPath& f, double order);

} // namespace fracpont
