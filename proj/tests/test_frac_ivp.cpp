#include "fracpont/errors.hpp"
#include "fracpont/frac_ivp.hpp"
#include "fracpont/problems.hpp"
#include "fracpont/special_functions.hpp"

#include <doctest.h>

#include <cmath>

using namespace fracpont;

namespace {

VectorField identity_field() {
    return {1,
            [](std::span<const double> x, double, std::size_t, std::span<double> out) {
                out[0] = x[0];
            },
            1.0};
}

double sup_path_err(const SampledPath& p, const std::function<double(double)>& ref) {
    double e = 0.0;
    for (std::size_t i = 0; i < p.nodes(); ++i)
        e = std::max(e, std::abs(p.at(i, 0) - ref(p.grid().node(i))));
    return e;
}

} // namespace

TEST_CASE("zero field returns the constant initial path in one iteration") {
    Grid grid(0.0, 2.0, 40);
    VectorField field{2,
                      [](std::span<const double>, double, std::size_t, std::span<double> out) {
                          out[0] = 0.0;
                          out[1] = 0.0;
                      },
                      0.0};
    IvpSpec spec{FracOrder(0.5), {3.0, -1.0}, grid};
    PicardSolution sol = solve_left_ivp(field, spec);
    CHECK(sol.iterations == 2); // one step plus the confirming residual step
    CHECK(sol.residual == 0.0);
    for (std::size_t i = 0; i < sol.path.nodes(); ++i) {
        CHECK(sol.path.at(i, 0) == 3.0);
        CHECK(sol.path.at(i, 1) == -1.0);
    }
}

TEST_CASE("cD^alpha g = g, A = 1 matches the Mittag-Leffler solution") {
    // E_{alpha,1}(t^alpha); measured sup errors 3.051e-4 (n=512), 1.511e-4
    // (n=1024), ratio ~0.50 per doubling at alpha = 0.5
    double prev = 0.0;
    for (std::size_t n : {512u, 1024u}) {
        Grid grid(0.0, 1.0, n);
        IvpSpec spec{FracOrder(0.5), {1.0}, grid};
        PicardSolution sol = solve_left_ivp(identity_field(), spec);
        double err = sup_path_err(sol.path, [](double t) {
            return mittag_leffler(0.5, 1.0, std::sqrt(t));
        });
        if (prev > 0.0)
            CHECK(err < 0.7 * prev);
        prev = err;
        CHECK(sol.residual <= spec.tol);
    }
    CHECK(prev < 5e-4);
}

TEST_CASE("alpha = 1 identity field reproduces exp with O(h^2) error") {
    // measured 8.641e-7 at n=512, 2.160e-7 at n=1024
    double prev = 0.0;
    for (std::size_t n : {512u, 1024u}) {
        Grid grid(0.0, 1.0, n);
        IvpSpec spec{FracOrder(1.0), {1.0}, grid};
        PicardSolution sol = solve_left_ivp(identity_field(), spec);
        double err = sup_path_err(sol.path, [](double t) { return std::exp(t); });
        if (prev > 0.0)
            CHECK(err < 0.35 * prev);
        prev = err;
    }
    CHECK(prev < 1e-6);
}

TEST_CASE("step norms shrink and the residual certificate holds") {
    Grid grid(0.0, 1.0, 256);
    IvpSpec spec{FracOrder(0.5), {1.0}, grid};
    PicardSolution sol = solve_left_ivp(identity_field(), spec);
    REQUIRE(sol.step_norms.size() == sol.iterations);
    CHECK(sol.step_norms.back() < sol.step_norms.front());
    CHECK(sol.step_norms.back() <= spec.tol);
    CHECK(sol.residual <= spec.tol);

    // Residual means: path == initial + I^alpha F(path) up to tol.
    SampledPath rhs = left_frac_integral(sol.path, 0.5);
    double worst = 0.0;
    for (std::size_t i = 0; i < rhs.nodes(); ++i)
        worst = std::max(worst, std::abs(sol.path.at(i, 0) - 1.0 - rhs.at(i, 0)));
    CHECK(worst == doctest::Approx(sol.residual).epsilon(1e-9));
}

TEST_CASE("exhausting max_picard throws NonConvergenceError") {
    Grid grid(0.0, 1.0, 64);
    IvpSpec spec{FracOrder(0.5), {1.0}, grid, 1e-10, 2};
    CHECK_THROWS_AS(solve_left_ivp(identity_field(), spec), NonConvergenceError);
}

TEST_CASE("diverging iteration reports overflow instead of looping") {
    // g' = 1000 g on [0,5]: exp(5000) is far past double range, so the Picard
    // partial sums overflow after ~165 iterations.
    Grid grid(0.0, 5.0, 128);
    VectorField field{1,
                      [](std::span<const double> x, double, std::size_t, std::span<double> out) {
                          out[0] = 1000.0 * x[0];
                      },
                      1000.0};
    IvpSpec spec{FracOrder(1.0), {1.0}, grid, 1e-10, 400};
    CHECK_THROWS_WITH_AS(solve_left_ivp(field, spec), doctest::Contains("overflowed"),
                         std::runtime_error);
}

TEST_CASE("input validation") {
    Grid grid(0.0, 1.0, 32);
    VectorField field = identity_field();
    IvpSpec bad_dim{FracOrder(0.5), {1.0, 2.0}, grid};
    CHECK_THROWS_AS(solve_left_ivp(field, bad_dim), std::invalid_argument);
    IvpSpec bad_tol{FracOrder(0.5), {1.0}, grid, 0.0};
    CHECK_THROWS_AS(solve_left_ivp(field, bad_tol), std::invalid_argument);
}

TEST_CASE("right terminal solve reproduces the solved-example adjoint") {
    // D^alpha_+ p = gamma(1-t)^beta + lambda p, p(1) = 0, closed form via
    // E_{alpha,alpha+beta+1}; measured 5.047e-6 at n=512, 1.268e-6 at n=1024
    SolvedExampleParams prm; // alpha=0.5, beta=gamma=mu=lambda=1
    double prev = 0.0;
    for (std::size_t n : {512u, 1024u}) {
        Grid grid(0.0, 1.0, n);
        VectorField field{1,
                          [&prm](std::span<const double> p, double t, std::size_t,
                                 std::span<double> out) {
                              out[0] = prm.gamma * std::pow(1.0 - t, prm.beta) +
                                       prm.lambda * p[0];
                          },
                          std::abs(prm.lambda)};
        IvpSpec spec{FracOrder(prm.alpha), {0.0}, grid};
        PicardSolution sol = solve_right_terminal(field, spec);
        double err = sup_path_err(sol.path, [&prm](double t) {
            return solved_fractional_adjoint(prm, t);
        });
        if (prev > 0.0)
            CHECK(err < 0.5 * prev);
        prev = err;
    }
    CHECK(prev < 5e-6);
}

TEST_CASE("alpha = 1 right solve is the classical backward ODE") {
    // -p' = p + sin t, p(1) = 0 has p(t) = e^{1-t}(sin 1 - cos 1)/2
    // + (cos t - sin t)/2; measured 2.334e-7 at n=512, 5.836e-8 at n=1024
    auto ref = [](double t) {
        return std::exp(1.0 - t) * (std::sin(1.0) - std::cos(1.0)) / 2.0 +
               (std::cos(t) - std::sin(t)) / 2.0;
    };
    double prev = 0.0;
    for (std::size_t n : {512u, 1024u}) {
        Grid grid(0.0, 1.0, n);
        VectorField field{1,
                          [](std::span<const double> p, double t, std::size_t,
                             std::span<double> out) {
                              out[0] = p[0] + std::sin(t);
                          },
                          1.0};
        IvpSpec spec{FracOrder(1.0), {0.0}, grid};
        PicardSolution sol = solve_right_terminal(field, spec);
        double err = sup_path_err(sol.path, ref);
        if (prev > 0.0)
            CHECK(err < 0.35 * prev);
        prev = err;
    }
    CHECK(prev < 1e-7);
}

TEST_CASE("right solve is the reflection of the left solve") {
    // G(p, t) independent of t reflects exactly: solve_right_terminal on
    // [a, b] equals the reflected left solve by construction.
    Grid grid(0.0, 1.0, 100);
    VectorField field{1,
                      [](std::span<const double> x, double, std::size_t, std::span<double> out) {
                          out[0] = 0.5 * x[0] + 1.0;
                      },
                      0.5};
    IvpSpec spec{FracOrder(0.7), {2.0}, grid};
    PicardSolution right = solve_right_terminal(field, spec);
    PicardSolution left = solve_left_ivp(field, spec);
    for (std::size_t i = 0; i <= grid.n; ++i)
        CHECK(right.path.at(i, 0) == doctest::Approx(left.path.at(grid.n - i, 0)).epsilon(1e-12));
}
