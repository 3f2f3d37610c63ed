#include "fracpont/cli.hpp"
#include "fracpont/errors.hpp"
#include "fracpont/frac_ops.hpp"
#include "fracpont/io.hpp"
#include "fracpont/noether.hpp"
#include "fracpont/ocp.hpp"
#include "fracpont/problems.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

namespace fracpont {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoConverge = 2;
constexpr int kExitProperty = 3;

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    bool quiet = false;
};

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config: " + path);
    json cfg;
    in >> cfg; // throws json::parse_error on malformed input
    return cfg;
}

struct RunConfig {
    std::string tag;
    ProblemParams params;
    std::size_t n = 1000;
    SweepConfig sweep;
    std::string csv_path = "trajectory.csv";
    std::string summary_path = "summary.json";
    // noether section
    double theta1 = 1.0;
    double theta2 = 1.0;
    double theta3 = -1.0;
    std::size_t r_max = 3;
    DerivativeScheme scheme = DerivativeScheme::finite_difference;
    std::vector<double> s_values{-0.4, -0.2, 0.2, 0.4};
    double drift_tol = 0.05;
    double invariance_tol = 1e-3;
};

RunConfig parse_run_config(const json& cfg) {
    RunConfig rc;
    const json& pj = cfg.at("problem");
    rc.tag = pj.at("tag").get<std::string>();
    if (pj.contains("A")) {
        if (pj.at("A").is_array())
            rc.params.A = pj.at("A").get<std::vector<double>>();
        else
            rc.params.A = {pj.at("A").get<double>()};
    }
    rc.params.alpha = cfg.value("alpha", 1.0);
    if (cfg.contains("interval")) {
        const json& iv = cfg.at("interval");
        if (!iv.is_array() || iv.size() != 2)
            throw std::invalid_argument("config: interval must be [a, b]");
        rc.params.a = iv.at(0).get<double>();
        rc.params.b = iv.at(1).get<double>();
    }
    rc.params.beta = pj.value("beta", 1.0);
    rc.params.gamma = pj.value("gamma", 1.0);
    rc.params.mu = pj.value("mu", 1.0);
    rc.params.lambda = pj.value("lambda", 1.0);
    rc.params.omega = pj.value("omega", 0.0);
    rc.n = cfg.value("n", rc.n);

    if (cfg.contains("sweep")) {
        const json& s = cfg.at("sweep");
        rc.sweep.max_outer = s.value("max_outer", rc.sweep.max_outer);
        rc.sweep.grad_tol = s.value("grad_tol", rc.sweep.grad_tol);
        rc.sweep.step0 = s.value("step0", rc.sweep.step0);
        rc.sweep.armijo_c = s.value("armijo_c", rc.sweep.armijo_c);
        rc.sweep.backtrack = s.value("backtrack", rc.sweep.backtrack);
        rc.sweep.ivp_tol = s.value("ivp_tol", rc.sweep.ivp_tol);
        rc.sweep.max_picard = s.value("max_picard", rc.sweep.max_picard);
        rc.sweep.max_backtracks = s.value("max_backtracks", rc.sweep.max_backtracks);
    }
    if (cfg.contains("outputs")) {
        const json& o = cfg.at("outputs");
        rc.csv_path = o.value("csv_path", rc.csv_path);
        rc.summary_path = o.value("summary_path", rc.summary_path);
    }
    if (cfg.contains("noether")) {
        const json& nj = cfg.at("noether");
        rc.theta1 = nj.value("theta1", rc.theta1);
        rc.theta2 = nj.value("theta2", rc.theta2);
        rc.theta3 = nj.value("theta3", rc.theta3);
        rc.r_max = nj.value("r_max", rc.r_max);
        rc.drift_tol = nj.value("drift_tol", rc.drift_tol);
        rc.invariance_tol = nj.value("invariance_tol", rc.invariance_tol);
        if (nj.contains("s_values"))
            rc.s_values = nj.at("s_values").get<std::vector<double>>();
        const std::string scheme = nj.value("scheme", std::string("finite_difference"));
        if (scheme == "finite_difference")
            rc.scheme = DerivativeScheme::finite_difference;
        else if (scheme == "polynomial_fit")
            rc.scheme = DerivativeScheme::polynomial_fit;
        else
            throw std::invalid_argument("config: unknown derivative scheme '" + scheme + "'");
    }
    return rc;
}

std::string resolve(const CommonOpts& opts, const std::string& name) {
    std::filesystem::create_directories(opts.out_dir);
    return (std::filesystem::path(opts.out_dir) / name).string();
}

int cmd_solve(const CommonOpts& opts) {
    const RunConfig rc = parse_run_config(load_config(opts.config_path));
    const ControlProblem prob = build_problem(rc.tag, rc.params);
    const Grid grid(prob.a, prob.b, rc.n);
    const SampledPath u0 = zero_path(grid, prob.control_dim);
    const PontryaginIterate iterate = pontryagin_sweep(prob, u0, grid, rc.sweep);
    write_iterate_csv(iterate, resolve(opts, rc.csv_path));
    write_json(iterate_summary(iterate), resolve(opts, rc.summary_path));
    if (!opts.quiet)
        std::printf("solve: cost=%.12g stationarity=%.3e iterations=%zu converged=%s\n",
                    iterate.cost, iterate.stationarity, iterate.iterations,
                    iterate.converged ? "true" : "false");
    return iterate.converged ? kExitOk : kExitNoConverge;
}

int cmd_gradcheck(const CommonOpts& opts) {
    const json cfg = load_config(opts.config_path);
    RunConfig rc = parse_run_config(cfg);
    const std::size_t n = cfg.value("n", std::size_t{2048});
    const double pair_tol = cfg.value("pairing_tol", 1e-6);
    const double fd_tol = cfg.value("fd_tol", 1e-4);
    const std::size_t directions = cfg.value("directions", std::size_t{5});

    const ControlProblem prob = build_problem(rc.tag, rc.params);
    const Grid grid(prob.a, prob.b, n);
    const SampledPath u = zero_path(grid, prob.control_dim);
    const SampledPath grad =
        gateaux_gradient(prob, u, grid, rc.sweep.ivp_tol, rc.sweep.max_picard);

    // Smooth directions: low-order Fourier modes with seeded coefficients.
    // Nodal white-noise directions cancel in the pairing integral and inflate
    // the relative error, so they are useless for a consistency check.
    std::mt19937 rng(777);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    bool all_pass = true;
    if (!opts.quiet)
        std::printf("%-4s %-14s %-14s %s\n", "dir", "pairing_rel", "fd_rel", "status");
    for (std::size_t d = 0; d < directions; ++d) {
        SampledPath ubar(grid, prob.control_dim);
        const double span = grid.b - grid.a;
        for (std::size_t k = 0; k < ubar.dim(); ++k) {
            const double c0 = unit(rng), c1 = unit(rng), c2 = unit(rng), c3 = unit(rng);
            for (std::size_t i = 0; i < ubar.nodes(); ++i) {
                const double s = (grid.node(i) - grid.a) / span;
                ubar.at(i, k) = c0 + c1 * std::sin(M_PI * s) + c2 * std::sin(2.0 * M_PI * s) +
                                c3 * std::cos(M_PI * s);
            }
        }
        const double dd =
            directional_derivative(prob, u, ubar, grid, rc.sweep.ivp_tol, rc.sweep.max_picard);
        const double pairing = inner_product(grad, ubar);
        const double rel_pair =
            std::abs(dd - pairing) / std::max({std::abs(dd), std::abs(pairing), 1e-12});

        const double eps = 1e-4;
        const SampledPath up = axpy(eps, ubar, u);
        const SampledPath um = axpy(-eps, ubar, u);
        const double jp = cost(prob, up, grid, rc.sweep.ivp_tol, rc.sweep.max_picard);
        const double jm = cost(prob, um, grid, rc.sweep.ivp_tol, rc.sweep.max_picard);
        const double fd = (jp - jm) / (2.0 * eps);
        const double rel_fd =
            std::abs(fd - pairing) / std::max({std::abs(fd), std::abs(pairing), 1e-12});

        const bool pass = rel_pair <= pair_tol && rel_fd <= fd_tol;
        all_pass = all_pass && pass;
        if (!opts.quiet)
            std::printf("%-4zu %-14.3e %-14.3e %s\n", d, rel_pair, rel_fd,
                        pass ? "ok" : "FAIL");
    }
    return all_pass ? kExitOk : kExitProperty;
}

int cmd_operators(const CommonOpts& opts) {
    std::vector<std::size_t> ladder{512, 1024, 2048, 4096};
    if (!opts.config_path.empty()) {
        const json cfg = load_config(opts.config_path);
        if (cfg.contains("ladder"))
            ladder = cfg.at("ladder").get<std::vector<std::size_t>>();
    }
    const OperatorsReport report = run_operator_suite(ladder);
    if (!opts.quiet) {
        std::printf("%-6s %-14s %-14s %-14s %-14s\n", "n", "semigroup", "intparts",
                    "comp_fwd", "comp_inv");
        for (const auto& row : report.rows)
            std::printf("%-6zu %-14.3e %-14.3e %-14.3e %-14.3e\n", row.n, row.semigroup_rel,
                        row.intparts, row.comp_forward, row.comp_inverse);
        std::printf("alpha continuity (0.999 vs 1): %.3e\n", report.alpha_continuity);
        std::printf("ladders monotone: %s, thresholds met: %s\n",
                    report.ladders_monotone ? "yes" : "no",
                    report.thresholds_met ? "yes" : "no");
    }
    return (report.ladders_monotone && report.thresholds_met) ? kExitOk : kExitProperty;
}

int cmd_noether(const CommonOpts& opts) {
    const RunConfig rc = parse_run_config(load_config(opts.config_path));
    const ControlProblem prob = build_problem(rc.tag, rc.params);
    if (prob.state_dim != 2 || prob.control_dim != 2)
        throw std::invalid_argument("noether: rotation symmetry needs a 2-D problem");
    const Grid grid(prob.a, prob.b, rc.n);
    const SampledPath u0 = zero_path(grid, prob.control_dim);
    const PontryaginIterate iterate = pontryagin_sweep(prob, u0, grid, rc.sweep);
    write_iterate_csv(iterate, resolve(opts, rc.csv_path));
    if (!iterate.converged) {
        if (!opts.quiet)
            std::printf("noether: sweep did not converge (stationarity=%.3e)\n",
                        iterate.stationarity);
        return kExitNoConverge;
    }

    SymmetryTriple triple{rotation_group(rc.theta1), rotation_group(rc.theta2),
                          rotation_group(rc.theta3)};
    const double inv_res = invariance_residual(prob, triple, iterate, rc.s_values);

    // Scale for the invariance threshold: sup of the untransformed integrand.
    double scale = 0.0;
    {
        const FracOrder alpha(prob.alpha);
        for (std::size_t i = 0; i < iterate.q.nodes(); ++i) {
            const double t = grid.node(i);
            scale = std::max(scale, std::abs(hamiltonian(prob, iterate.q.row(i),
                                                         iterate.u.row(i), iterate.p.row(i), t)));
        }
    }
    const double inv_threshold = rc.invariance_tol * (1.0 + scale);

    SampledPath g(grid, prob.state_dim);
    for (std::size_t i = 0; i < g.nodes(); ++i)
        triple.phi1.generator(iterate.q.row(i), g.row(i));
    const FracOrder alpha(prob.alpha);
    const SampledPath tf = torres_frederico_residual(g, iterate.p, alpha);
    const ConservedSeries series =
        conserved_quantity(g, iterate.p, alpha, SeriesTruncation{rc.r_max, rc.scheme});
    const DriftReport drift = drift_report(series);

    write_path_csv(series.series, resolve(opts, "conserved_series.csv"));
    write_path_csv(tf, resolve(opts, "tf_residual.csv"));
    json summary{{"spread", drift.spread},
                 {"rel_drift", drift.rel_drift},
                 {"certified_range", {drift.certified_range[0], drift.certified_range[1]}},
                 {"last_term_magnitude", drift.last_term_magnitude},
                 {"invariance_residual", inv_res},
                 {"invariance_threshold", inv_threshold},
                 {"cost", iterate.cost},
                 {"stationarity", iterate.stationarity},
                 {"iterations", iterate.iterations},
                 {"converged", iterate.converged}};
    write_json(summary, resolve(opts, rc.summary_path));

    const bool symmetric = inv_res <= inv_threshold;
    const bool conserved = drift.rel_drift <= rc.drift_tol;
    if (!opts.quiet) {
        std::printf("noether: invariance_residual=%.3e (threshold %.3e) %s\n", inv_res,
                    inv_threshold, symmetric ? "ok" : "FAIL");
        std::printf("noether: rel_drift=%.3e (threshold %.3e) %s, last_term=%.3e\n",
                    drift.rel_drift, rc.drift_tol, conserved ? "ok" : "FAIL",
                    drift.last_term_magnitude);
    }
    return (symmetric && conserved) ? kExitOk : kExitProperty;
}

} // namespace

OperatorsReport run_operator_suite(const std::vector<std::size_t>& ladder) {
    if (ladder.empty())
        throw std::invalid_argument("run_operator_suite: empty ladder");
    OperatorsReport report;
    for (std::size_t n : ladder) {
        const Grid grid(0.0, 1.0, n);
        OperatorLadderRow row;
        row.n = n;

        // Semigroup, alpha1 = alpha2 = 0.4, g = 1 + t^2.
        {
            const SampledPath g = sample_scalar(grid, [](double t) { return 1.0 + t * t; });
            const SampledPath twice = left_frac_integral(left_frac_integral(g, 0.4), 0.4);
            const SampledPath once = left_frac_integral(g, 0.8);
            row.semigroup_rel = sup_distance(twice, once) / sup_norm(once);
        }

        // Integration by parts, alpha = 0.5, g1 = e^t, g2 = cos t.
        {
            const SampledPath g1 = sample_scalar(grid, [](double t) { return std::exp(t); });
            const SampledPath g2 = sample_scalar(grid, [](double t) { return std::cos(t); });
            const double lhs = inner_product(left_frac_integral(g1, 0.5), g2);
            const double rhs = inner_product(g1, right_frac_integral(g2, 0.5));
            row.intparts = std::abs(lhs - rhs) / (sup_norm(g1) * sup_norm(g2) * (grid.b - grid.a));
        }

        // Composition both ways, alpha = 0.5, skipping the first two nodes
        // where the kernel singularity dominates. The forward direction uses
        // g = sin t with g(a) = 0: a nonzero g(a) makes I^alpha g carry a
        // t^alpha kink at the left end whose discrete Caputo error does not
        // shrink with h. The inverse direction is insensitive to g(a).
        {
            const FracOrder alpha(0.5);
            const SampledPath gs = sample_scalar(grid, [](double t) { return std::sin(t); });
            const SampledPath gc = sample_scalar(grid, [](double t) { return std::cos(t); });
            const SampledPath fwd = caputo_left_derivative(left_frac_integral(gs, 0.5), alpha);
            const SampledPath inv = left_frac_integral(caputo_left_derivative(gc, alpha), 0.5);
            double err_fwd = 0.0;
            double err_inv = 0.0;
            for (std::size_t i = 2; i < gs.nodes(); ++i) {
                err_fwd = std::max(err_fwd, std::abs(fwd.at(i, 0) - gs.at(i, 0)));
                err_inv = std::max(err_inv, std::abs(inv.at(i, 0) - (gc.at(i, 0) - gc.at(0, 0))));
            }
            row.comp_forward = err_fwd / sup_norm(gs);
            row.comp_inverse = err_inv / sup_norm(gc);
        }
        report.rows.push_back(row);
    }

    // Continuity in alpha near the classical case, g = cos t at n = 1024.
    {
        const Grid grid(0.0, 1.0, 1024);
        const SampledPath g = sample_scalar(grid, [](double t) { return std::cos(t); });
        const SampledPath near_one = caputo_left_derivative(g, FracOrder(0.999));
        const SampledPath classical = caputo_left_derivative(g, FracOrder(1.0));
        double gap = 0.0;
        for (std::size_t i = 2; i < g.nodes(); ++i)
            gap = std::max(gap, std::abs(near_one.at(i, 0) - classical.at(i, 0)));
        report.alpha_continuity = gap;
    }

    report.ladders_monotone = true;
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
        const auto& prev = report.rows[i - 1];
        const auto& cur = report.rows[i];
        if (cur.semigroup_rel > prev.semigroup_rel || cur.intparts > prev.intparts ||
            cur.comp_forward > prev.comp_forward || cur.comp_inverse > prev.comp_inverse)
            report.ladders_monotone = false;
    }
    const auto& last = report.rows.back();
    report.thresholds_met = last.semigroup_rel <= 1e-3 && last.intparts <= 1e-6 &&
                            last.comp_forward <= 1e-2 && last.comp_inverse <= 1e-2 &&
                            report.alpha_continuity <= 1e-2;
    return report;
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"fracpont: fractional optimal control toolkit"};
    app.require_subcommand(1);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* copt = sub->add_option("--config", opts.config_path, "JSON config file");
        if (config_required)
            copt->required();
        sub->add_option("--out", opts.out_dir, "output directory (default .)");
        sub->add_flag("--quiet", opts.quiet, "suppress progress output");
    };
    CLI::App* solve = app.add_subcommand("solve", "run the forward-backward sweep");
    CLI::App* gradcheck = app.add_subcommand("gradcheck", "gradient consistency table");
    CLI::App* operators =
        app.add_subcommand("operators", "fractional operator identity ladders");
    CLI::App* noether = app.add_subcommand("noether", "symmetry and conserved-quantity run");
    add_common(solve, true);
    add_common(gradcheck, true);
    add_common(operators, false);
    add_common(noether, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        if (solve->parsed())
            return cmd_solve(opts);
        if (gradcheck->parsed())
            return cmd_gradcheck(opts);
        if (operators->parsed())
            return cmd_operators(opts);
        if (noether->parsed())
            return cmd_noether(opts);
        return kExitInput;
    } catch (const NonConvergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNoConverge;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitInput;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInput;
    }
}

} // namespace fracpont
