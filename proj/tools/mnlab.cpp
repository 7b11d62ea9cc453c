// mnlab: command-line front end for the piecewise-weight boundary-value
// laboratory. Subcommands: solve | sweep | blowup | sequence | landscape |
// pitchfork. Exit codes: 0 ok, 2 validation/usage error, 3 numerical
// failure. MNLAB_THREADS caps scan workers.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "mnlab/continuation.hpp"
#include "mnlab/core.hpp"
#include "mnlab/io.hpp"
#include "mnlab/solvers.hpp"
#include "mnlab/svg.hpp"

namespace fs = std::filesystem;
using namespace mnlab;

namespace {

struct GlobalOpts {
    double tol_quad = 1e-12;
    double tol_rk = 1e-11;
    std::string format = "csv";
    std::string out_dir = ".";
    bool plot = false;

    solvers::SolveOptions solve_options() const {
        solvers::SolveOptions o;
        o.quad.abs_tol = o.quad.rel_tol = tol_quad;
        o.flow.rk_abs_tol = o.flow.rk_rel_tol = tol_rk;
        return o;
    }
    std::string path(const std::string& name) const {
        return (fs::path(out_dir) / name).string();
    }
};

void add_global_flags(CLI::App* app, GlobalOpts& g) {
    app->set_help_flag("--help", "print this help message and exit");
    app->add_option("--tol-quad", g.tol_quad, "quadrature abs/rel tolerance")
        ->check(CLI::PositiveNumber);
    app->add_option("--tol-rk", g.tol_rk, "integrator abs/rel tolerance")
        ->check(CLI::PositiveNumber);
    app->add_option("--format", g.format, "solution record format")
        ->check(CLI::IsMember({"csv", "json"}));
    app->add_option("--out", g.out_dir, "output directory");
    app->add_flag("--plot", g.plot, "emit SVG plots");
}

void phase_plot(const PositiveSolution& sol, const std::string& path) {
    svg::Plot plot("phase plane: lambda=" + io::fmt17(sol.params.lambda) +
                       " h=" + io::fmt17(sol.params.h),
                   "u", "v");
    for (const auto& arc : sol.arcs) {
        svg::Series s;
        s.color = arc.regime == Regime::Nonlinear ? "#d62728" : "#2ca02c";
        for (const auto& st : arc.samples) {
            s.x.push_back(st.u);
            s.y.push_back(st.v);
        }
        plot.add(std::move(s));
    }
    plot.write(path);
}

void emit_solutions(const GlobalOpts& g, const std::vector<PositiveSolution>& sols) {
    std::vector<std::string> refs;
    for (std::size_t i = 0; i < sols.size(); ++i) {
        const std::string ref = "trajectory_" + std::to_string(i) + ".csv";
        io::write_trajectory_csv(g.path(ref), sols[i]);
        refs.push_back(ref);
        if (g.plot) phase_plot(sols[i], g.path("phase_" + std::to_string(i) + ".svg"));
    }
    if (g.format == "json")
        io::write_solutions_json(g.path("solutions.json"), sols, refs);
    else
        io::write_solutions_csv(g.path("solutions.csv"), sols);
    for (const auto& s : sols)
        std::printf("solution: v0=%s r_max=%s x_max=%s %s shoot=%.3g green=%.3g\n",
                    io::fmt17(s.v0).c_str(), io::fmt17(s.r_max).c_str(),
                    io::fmt17(s.x_max).c_str(), to_string(s.symmetry), s.shoot_residual,
                    s.fixed_point_residual);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for -u'' = lambda u + a_h(x) u^p, u(0)=u(1)=0"};
    app.set_help_flag("--help", "print this help message and exit");
    app.require_subcommand(1);
    GlobalOpts g;

    // solve
    double lambda = 0.0, p = 3.0, h = 0.5, R = 0.0, epsilon = 0.05, v0_max = 0.0;
    int n_scan = 600;
    bool all = false, match = false;
    auto* solve = app.add_subcommand("solve", "construct positive solutions at one parameter point");
    add_global_flags(solve, g);
    solve->add_option("--lambda", lambda, "spectral parameter")->required();
    solve->add_option("--p", p, "superlinear exponent (> 1)")->required();
    auto* h_opt = solve->add_option("--h", h, "window width in (0,1)");
    solve->add_flag("--all", all, "scan for every positive solution");
    solve->add_flag("--match", match, "lambda > pi^2/4 matching construction (selects h)");
    solve->add_option("--R", R, "target sup norm for --match");
    solve->add_option("--v0-max", v0_max, "scan ceiling (default 10x symmetric slope)");
    solve->add_option("--n-scan", n_scan, "scan resolution")->check(CLI::Range(100, 100000));
    solve->add_option("--epsilon", epsilon, "landscape guard band");

    // sweep
    double lambda_min = -5.0, lambda_max = 9.0;
    int n_grid = 20;
    bool no_scan = false;
    auto* sweep = app.add_subcommand("sweep", "bifurcation diagram in lambda");
    add_global_flags(sweep, g);
    sweep->add_option("--p", p, "exponent")->required();
    sweep->add_option("--h", h, "window width")->required();
    sweep->add_option("--lambda-min", lambda_min)->required();
    sweep->add_option("--lambda-max", lambda_max)->required();
    sweep->add_option("--n", n_grid, "grid points")->check(CLI::Range(2, 100000));
    sweep->add_flag("--no-scan", no_scan, "symmetric branch only");
    sweep->add_option("--n-scan", n_scan, "scan resolution");

    // blowup
    std::vector<double> h_grid, probes{0.25, 0.5, 0.75};
    auto* blowup = app.add_subcommand("blowup", "symmetric solutions along h -> 1");
    add_global_flags(blowup, g);
    blowup->add_option("--lambda", lambda)->required();
    blowup->add_option("--p", p)->required();
    blowup->add_option("--h", h_grid, "increasing h grid")->required()->delimiter(',');
    blowup->add_option("--probes", probes, "interior probe points")->delimiter(',');

    // sequence
    double alpha = 1.0;
    int n_max = 5;
    auto* sequence = app.add_subcommand("sequence", "metasolution perturbation sequence");
    add_global_flags(sequence, g);
    sequence->add_option("--alpha", alpha, "held amplitude")->required();
    sequence->add_option("--p", p)->required();
    sequence->add_option("--n", n_max, "sequence length")->check(CLI::Range(1, 64));

    // landscape
    std::vector<double> R_list;
    int theta_points = 400;
    auto* landscape = app.add_subcommand("landscape", "phi(R,.) curves over theta");
    add_global_flags(landscape, g);
    landscape->add_option("--lambda", lambda)->required();
    landscape->add_option("--p", p)->required();
    landscape->add_option("--R", R_list, "amplitudes")->required()->delimiter(',');
    landscape->add_option("--theta-points", theta_points)->check(CLI::Range(16, 100000));

    // pitchfork
    double lambda_lo = -20.0, lambda_hi = 0.0, resolution = 0.05;
    auto* pitchfork = app.add_subcommand("pitchfork", "empirical symmetry-breaking threshold");
    add_global_flags(pitchfork, g);
    pitchfork->add_option("--p", p)->required();
    pitchfork->add_option("--h", h)->required();
    pitchfork->add_option("--lambda-lo", lambda_lo)->required();
    pitchfork->add_option("--lambda-hi", lambda_hi)->required();
    pitchfork->add_option("--resolution", resolution)->check(CLI::PositiveNumber);
    pitchfork->add_option("--n-scan", n_scan);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        fs::create_directories(g.out_dir);
        const auto opts = g.solve_options();

        if (solve->parsed()) {
            std::vector<PositiveSolution> sols;
            if (match) {
                if (R <= 0.0) throw std::invalid_argument("solve --match requires --R > 0");
                const auto m = solvers::solve_matching(lambda, p, R, epsilon, opts);
                std::printf("matching: theta0=%s theta1=%s h=%s residuals=(%.3g, %.3g)\n",
                            io::fmt17(m.theta0).c_str(), io::fmt17(m.theta1).c_str(),
                            io::fmt17(m.h).c_str(), m.angle_residual, m.level_residual);
                sols.push_back(solvers::matching_to_solution(m, opts));
                auto swapped = m;
                std::swap(swapped.theta0, swapped.theta1);
                sols.push_back(solvers::matching_to_solution(swapped, opts));
            } else {
                if (h_opt->count() == 0)
                    throw std::invalid_argument("solve requires --h unless --match is given");
                const ProblemParams params(lambda, p, h);
                if (all) {
                    const double ceil_v0 =
                        v0_max > 0.0 ? v0_max : solvers::default_v0_max(params, opts);
                    sols = solvers::find_all_positive(params, ceil_v0, n_scan, opts);
                    if (sols.empty()) std::printf("no positive solutions located by the scan\n");
                } else {
                    sols.push_back(solvers::solve_symmetric(params, opts));
                }
            }
            emit_solutions(g, sols);
        } else if (sweep->parsed()) {
            std::vector<double> grid(n_grid);
            for (int i = 0; i < n_grid; ++i)
                grid[i] = lambda_min + (lambda_max - lambda_min) * double(i) / double(n_grid - 1);
            continuation::SweepConfig sc;
            sc.with_scan = !no_scan;
            sc.n_scan = n_scan;
            const auto result = continuation::sweep_lambda(p, h, grid, sc, opts);
            io::write_branch_csv(g.path("branch.csv"), result);
            if (g.plot) {
                svg::Plot plot("bifurcation diagram h=" + io::fmt17(h), "lambda", "sup norm");
                svg::Series sym, asym;
                sym.color = "#1f77b4";
                asym.color = "#d62728";
                for (const auto& b : result.points)
                    (b.symmetry == Symmetry::Symmetric ? sym : asym).x.push_back(b.lambda),
                        (b.symmetry == Symmetry::Symmetric ? sym : asym).y.push_back(b.r_max);
                plot.add(std::move(sym));
                plot.add(std::move(asym));
                plot.write(g.path("branch.svg"));
            }
            std::printf("sweep: %zu branch points, %zu failures\n", result.points.size(),
                        result.failures.size());
        } else if (blowup->parsed()) {
            const auto table = continuation::blowup_study(lambda, p, h_grid, probes, opts);
            io::write_blowup_csv(g.path("blowup.csv"), table);
            std::printf("blowup: %zu rows, %zu failures\n", table.h_grid.size(),
                        table.failures.size());
        } else if (sequence->parsed()) {
            const auto rows = continuation::metasolution_sequence(alpha, p, n_max, opts);
            io::write_sequence_csv(g.path("sequence.csv"), rows);
            for (const auto& r : rows)
                std::printf("n=%d h=%s lambda=%s sup_error=%.3g\n", r.n, io::fmt17(r.h).c_str(),
                            io::fmt17(r.lambda).c_str(), r.sup_error);
        } else if (landscape->parsed()) {
            std::vector<double> thetas(theta_points);
            for (int i = 0; i < theta_points; ++i)
                thetas[i] = 0.5 * kPi * double(i) / double(theta_points - 1);
            std::vector<std::vector<double>> cols;
            for (double Rv : R_list) {
                std::vector<double> col(thetas.size());
                for (std::size_t i = 0; i < thetas.size(); ++i)
                    col[i] = timemaps::phi(Rv, thetas[i], lambda, p, opts.quad);
                cols.push_back(std::move(col));
            }
            io::write_landscape_csv(g.path("landscape.csv"), thetas, R_list, cols);
            if (g.plot) {
                svg::Plot plot("phi(R,theta), lambda=" + io::fmt17(lambda), "theta", "phi");
                const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b"};
                for (std::size_t k = 0; k < cols.size(); ++k) {
                    svg::Series s;
                    s.color = palette[k % 5];
                    s.x = thetas;
                    s.y = cols[k];
                    plot.add(std::move(s));
                }
                plot.write(g.path("landscape.svg"));
            }
            std::printf("landscape: %zu curves over %d theta points\n", cols.size(), theta_points);
        } else if (pitchfork->parsed()) {
            const auto est =
                continuation::estimate_pitchfork(p, h, lambda_lo, lambda_hi, resolution, n_scan, opts);
            std::ofstream f(g.path("pitchfork.csv"));
            f << "found,estimate,resolution,count_lo,count_hi\n"
              << (est.found ? 1 : 0) << ',' << io::fmt17(est.estimate) << ','
              << io::fmt17(est.resolution) << ',' << est.count_lo << ',' << est.count_hi << '\n';
            if (est.found)
                std::printf("pitchfork estimate: lambda = %s (resolution %s, empirical)\n",
                            io::fmt17(est.estimate).c_str(), io::fmt17(est.resolution).c_str());
            else
                std::printf("pitchfork: no transition found in [%s, %s] (counts %d -> %d)\n",
                            io::fmt17(lambda_lo).c_str(), io::fmt17(lambda_hi).c_str(),
                            est.count_lo, est.count_hi);
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    }
    return 0;
}
