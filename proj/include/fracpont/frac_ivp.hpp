#pragma once

#include "fracpont/frac_ops.hpp"
#include "fracpont/grid.hpp"

#include <functional>
#include <optional>

namespace fracpont {

// Right-hand side F(x, t) of a fractional Cauchy problem. The solver only ever
// evaluates F on grid nodes; `node` is the node index of t, which lets callers
// close over other sampled paths without interpolation.
struct VectorField {
    std::size_t dim;
    std::function<void(std::span<const double> x, double t, std::size_t node,
                       std::span<double> out)> eval;
    std::optional<double> lipschitz_hint; // advisory only, not used for stepping
};

struct IvpSpec {
    FracOrder alpha;
    std::vector<double> initial;
    Grid grid;
    double tol = 1e-10;
    std::size_t max_picard = 200;
};

// Result of a Picard solve. `path` satisfies
//   sup_t |path - (initial + I^alpha_- F(path, .))| = residual <= tol.
struct PicardSolution {
    SampledPath path;
    std::size_t iterations = 0;
    double residual = 0.0;
    std::vector<double> step_norms; // sup distance between successive iterates
};

// Solves cD^alpha_- g = F(g, t), g(a) = initial, by full-path Picard iteration
// on the equivalent Volterra fixed point g = initial + I^alpha_-(F(g, .)).
// Stops when the successive-iterate distance falls below tol/10 and the
// fixed-point residual below tol. Throws NonConvergenceError when max_picard
// is exhausted and std::runtime_error if the iteration overflows.
PicardSolution solve_left_ivp(const VectorField& field, const IvpSpec& spec);

// Solves the terminal-value problem cD^alpha_+ p = G(p, t), p(b) = terminal,
// by reflecting t -> a + b - t and running the left solver; for the adjoint
// use (terminal = 0) the Caputo and RL readings coincide.
PicardSolution solve_right_terminal(const VectorField& field, const IvpSpec& spec);

} // namespace fracpont
