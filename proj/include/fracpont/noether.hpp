#pragma once

#include "fracpont/frac_ops.hpp"
#include "fracpont/grid.hpp"
#include "fracpont/ocp.hpp"

#include <array>
#include <cstddef>
#include <functional>
#include <span>

namespace fracpont {

// One-parameter group of diffeomorphisms phi(s, .) with phi(0) = id and
// phi(s) o phi(s') = phi(s + s'); generator(x) = d/ds phi(s, x) at s = 0.
struct OneParamGroup {
    std::size_t dim = 0;
    std::function<void(double s, std::span<const double> x, std::span<double> out)> phi;
    std::function<void(std::span<const double> x, std::span<double> out)> generator;
};

// Spot-checks the group axioms and the generator against finite differences
// at seeded random samples. Throws std::invalid_argument on violation.
void validate_group(const OneParamGroup& group, unsigned seed = 20240817,
                    std::size_t points = 16, double box = 2.0);

// Planar rotations phi(s, x) = R(s*theta) x; generator(x) = theta*(-x2, x1).
OneParamGroup rotation_group(double theta);

// Transformations of state, control and adjoint respectively.
struct SymmetryTriple {
    OneParamGroup phi1;
    OneParamGroup phi2;
    OneParamGroup phi3;
};

enum class DerivativeScheme { finite_difference, polynomial_fit };

struct SeriesTruncation {
    std::size_t r_max = 3;
    DerivativeScheme scheme = DerivativeScheme::finite_difference;
};

// r-th discrete derivative of each component. finite_difference applies the
// centered stencil r times; polynomial_fit differentiates a local least
// squares polynomial (window 2r+3 nodes, degree r+2) once.
SampledPath nth_derivative(const SampledPath& g, std::size_t r, DerivativeScheme scheme);

// Sup over s_values and grid nodes of the invariance defect
//   |H(phi1 q, phi2 u, phi3 p, t) - phi3 p . cD(phi1 q) - H(q,u,p,t) + p . cD q|
// where cD is the discrete Caputo derivative realized as the inverse of the
// left fractional integral, so that solver outputs have cD q = f(q, u) to
// solver tolerance and the residual isolates the symmetry defect.
double invariance_residual(const ControlProblem& prob, const SymmetryTriple& triple,
                           const PontryaginIterate& sol, std::span<const double> s_values);

// Pointwise cD^alpha_-(g) . p - g . D^alpha_+(p), the quantity that vanishes
// along symmetric solutions.
SampledPath torres_frederico_residual(const SampledPath& g, const SampledPath& p,
                                      FracOrder alpha);

struct ConservedSeries {
    SampledPath series;    // truncated series, scalar path
    SampledPath last_term; // r = r_max contribution, truncation indicator
    std::size_t margin;    // nodes at each end outside the certified interior
};

// Truncated conserved-quantity series
//   sum_{r=0}^{r_max} (-1)^r I^{r+1-alpha}_-(g - g(a)) . p^(r)
//                   + g^(r) . I^{r+1-alpha}_+ p
// evaluated on the grid. The first and last 2*r_max nodes are flagged
// boundary-degraded (margin). Throws if the grid cannot resolve r_max
// derivative applications (documented: r_max <= 6 needs n >= 512).
ConservedSeries conserved_quantity(const SampledPath& g, const SampledPath& p,
                                   FracOrder alpha, const SeriesTruncation& trunc);

struct DriftReport {
    double spread = 0.0;    // max - min over the certified interior
    double rel_drift = 0.0; // spread / (|interior mean| + machine floor)
    std::array<double, 2> certified_range{0.0, 0.0};
    double last_term_magnitude = 0.0;
};

DriftReport drift_report(const SampledPath& series, std::size_t margin);
DriftReport drift_report(const ConservedSeries& series);

} // namespace fracpont
