#include "fracpont/frac_ops.hpp"
#include "fracpont/problems.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace fracpont;

TEST_CASE("build_problem dispatches every tag") {
    ProblemParams prm;
    auto lq = build_problem("classical_lq", prm);
    CHECK(lq.state_dim == 1);
    CHECK(lq.control_dim == 1);
    CHECK(lq.alpha == 1.0);

    prm.alpha = 0.7;
    auto f1 = build_problem("fractional_lq_1d", prm);
    CHECK(f1.alpha == 0.7);

    prm.A = {1.0, 0.5};
    auto f2 = build_problem("fractional_lq_2d_rot", prm);
    CHECK(f2.state_dim == 2);
    CHECK(f2.control_dim == 2);
    CHECK(f2.a == 0.0);
    CHECK(f2.b == 1.0);
    CHECK(f2.initial_state == std::vector<double>{1.0, 0.5});

    prm.A = {1.0};
    prm.alpha = 0.5;
    auto sf = build_problem("solved_fractional", prm);
    CHECK(sf.alpha == 0.5);

    auto el = build_problem("euler_lagrange_demo", prm);
    CHECK(el.state_dim == 1);

    CHECK_THROWS_AS(build_problem("no_such_tag", prm), std::invalid_argument);
    CHECK_THROWS_AS(build_problem("custom", prm), std::invalid_argument);
}

TEST_CASE("2d rotation problem needs a 2-vector initial state") {
    ProblemParams prm;
    prm.A = {1.0};
    CHECK_THROWS_AS(build_problem("fractional_lq_2d_rot", prm), std::invalid_argument);
    prm.A = {1.0, 2.0, 3.0};
    CHECK_THROWS_AS(build_problem("fractional_lq_2d_rot", prm), std::invalid_argument);
}

TEST_CASE("2d rotation dynamics wiring") {
    auto prob = make_fractional_lq_2d_rot({1.0, 0.5}, 0.6, 2.0);
    std::vector<double> x{1.0, 2.0}, v{0.5, -1.0}, out(2);
    prob.f(x, v, 0.3, out);
    // f = x + omega*J x + v with J = [[0,-1],[1,0]]
    CHECK(out[0] == doctest::Approx(1.0 - 2.0 * 2.0 + 0.5));
    CHECK(out[1] == doctest::Approx(2.0 + 2.0 * 1.0 - 1.0));
    CHECK(prob.L(x, v, 0.3) == doctest::Approx(0.5 * (1 + 4 + 0.25 + 1)));
}

TEST_CASE("euler_lagrange_demo wiring") {
    auto prob = make_euler_lagrange_demo(1.0, 0.0, 1.0, 0.7);
    std::vector<double> x{2.0}, v{3.0}, out(1);
    prob.f(x, v, 0.1, out);
    CHECK(out[0] == 3.0);
    CHECK(prob.L(x, v, 0.1) == doctest::Approx(6.5));
    CHECK(prob.alpha == 0.7);
}

TEST_CASE("classical LQ reference, frozen values") {
    // Frozen from a long-double evaluation of the closed form; cross-checked
    // against an RK4 shooting solution of the optimality system to 1e-15.
    auto mid = classical_lq_reference(1.0, 0.0, 1.0, 0.5);
    CHECK(mid.q == doctest::Approx(0.8863867036078412).epsilon(1e-14));
    CHECK(mid.u == doctest::Approx(-0.6701211060737187).epsilon(1e-14));
    auto end = classical_lq_reference(1.0, 0.0, 1.0, 1.0);
    CHECK(end.q == doctest::Approx(1.2347436851382391).epsilon(1e-14));
    CHECK(std::abs(end.u) < 1e-14); // free terminal state forces u(b) = 0
    auto start = classical_lq_reference(1.0, 0.0, 1.0, 0.0);
    CHECK(start.q == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("classical LQ reference is linear in A and shifts with the interval") {
    auto one = classical_lq_reference(1.0, 0.0, 1.0, 0.3);
    auto two = classical_lq_reference(2.0, 0.0, 1.0, 0.3);
    CHECK(two.q == doctest::Approx(2.0 * one.q).epsilon(1e-14));
    CHECK(two.u == doctest::Approx(2.0 * one.u).epsilon(1e-14));
    // same problem translated to [1, 2]
    auto moved = classical_lq_reference(1.0, 1.0, 2.0, 1.3);
    CHECK(moved.q == doctest::Approx(one.q).epsilon(1e-13));
    CHECK(moved.u == doctest::Approx(one.u).epsilon(1e-13));
}

TEST_CASE("classical LQ reference rejects t outside the interval") {
    CHECK_THROWS_AS(classical_lq_reference(1.0, 0.0, 1.0, -0.01), std::domain_error);
    CHECK_THROWS_AS(classical_lq_reference(1.0, 0.0, 1.0, 1.01), std::domain_error);
}

TEST_CASE("classical LQ reference satisfies the optimality ODEs discretely") {
    // q' = q + u and u' = q - u (from u = -p, p' = -q - p); the discrete
    // derivative of the sampled closed form must match to O(h^2).
    Grid grid(0.0, 1.0, 40);
    auto q = sample_scalar(grid, [](double t) { return classical_lq_reference(1, 0, 1, t).q; });
    auto u = sample_scalar(grid, [](double t) { return classical_lq_reference(1, 0, 1, t).u; });
    auto dq = discrete_derivative(q);
    auto du = discrete_derivative(u);
    double e1 = 0, e2 = 0;
    for (std::size_t i = 0; i < q.nodes(); ++i) {
        e1 = std::max(e1, std::abs(dq.at(i, 0) - (q.at(i, 0) + u.at(i, 0))));
        e2 = std::max(e2, std::abs(du.at(i, 0) - (q.at(i, 0) - u.at(i, 0))));
    }
    CHECK(e1 < 2e-3); // h^2 ~ 6e-4 times the solution scale
    CHECK(e2 < 2e-3);
}

TEST_CASE("solved fractional adjoint, frozen values") {
    SolvedExampleParams prm;
    // p(t) = gamma*Gamma(beta+1)*(1-t)^{alpha+beta} E_{alpha,alpha+beta+1}(lambda (1-t)^alpha)
    CHECK(solved_fractional_adjoint(prm, 0.0) ==
          doctest::Approx(1.8806009136667709).epsilon(1e-12));
    CHECK(solved_fractional_adjoint(prm, 0.5) ==
          doctest::Approx(0.4764013968671442).epsilon(1e-12));
    CHECK(solved_fractional_adjoint(prm, 1.0) == 0.0);
}

TEST_CASE("solved fractional reference is -mu times the adjoint") {
    SolvedExampleParams prm;
    prm.mu = 2.5;
    for (double t : {0.0, 0.25, 0.7, 1.0}) {
        CHECK(solved_fractional_reference(prm, t) ==
              doctest::Approx(-2.5 * solved_fractional_adjoint(prm, t)).epsilon(1e-14));
    }
}

TEST_CASE("solved fractional parameter validation") {
    SolvedExampleParams prm;
    prm.beta = 0.0;
    CHECK_THROWS_AS(make_solved_fractional(prm, 1.0), std::invalid_argument);
    prm = {};
    prm.gamma = 0.0;
    CHECK_THROWS_AS(make_solved_fractional(prm, 1.0), std::invalid_argument);
    prm = {};
    prm.mu = 0.0;
    CHECK_THROWS_AS(make_solved_fractional(prm, 1.0), std::invalid_argument);
    prm = {};
    prm.lambda = 0.0;
    CHECK_THROWS_AS(make_solved_fractional(prm, 1.0), std::invalid_argument);
    prm = {};
    CHECK_NOTHROW(make_solved_fractional(prm, 1.0));
}
