#include "mnlab/continuation.hpp"

#include <algorithm>
#include <cmath>

namespace mnlab::continuation {

namespace {

BranchPoint to_branch_point(const PositiveSolution& s) {
    BranchPoint b;
    b.lambda = s.params.lambda;
    b.h = s.params.h;
    b.r_max = s.r_max;
    b.v0 = s.v0;
    b.symmetry = s.symmetry;
    b.shoot_residual = s.shoot_residual;
    b.fixed_point_residual = s.fixed_point_residual;
    b.energy_drift = s.energy_drift;
    return b;
}

}  // namespace

SweepResult sweep_lambda(double p, double h, std::span<const double> lambda_grid,
                         const SweepConfig& cfg, const SolveOptions& opts) {
    std::vector<double> grid(lambda_grid.begin(), lambda_grid.end());
    std::sort(grid.begin(), grid.end());
    for (double l : grid)
        if (!(l < kPiSq))
            throw std::invalid_argument("sweep_lambda: every grid value must be < pi^2");

    SweepResult out;
    double hint = 0.0;
    for (double lambda : grid) {
        const ProblemParams params(lambda, p, h);
        try {
            const double amp = solvers::symmetric_amplitude(params, opts, hint);
            hint = amp;  // warm start for the next bracket
            PositiveSolution sym = solvers::solve_symmetric(params, opts);
            out.points.push_back(to_branch_point(sym));
            if (cfg.with_scan) {
                const double v0_max = cfg.v0_max_factor * sym.v0;
                auto all = solvers::find_all_positive(params, v0_max, cfg.n_scan, opts);
                for (const auto& s : all)
                    if (s.symmetry != Symmetry::Symmetric)
                        out.points.push_back(to_branch_point(s));
            }
        } catch (const std::exception& e) {
            out.failures.push_back("lambda = " + std::to_string(lambda) + ": " + e.what());
        }
    }
    std::stable_sort(out.points.begin(), out.points.end(),
                     [](const BranchPoint& a, const BranchPoint& b) { return a.lambda < b.lambda; });
    return out;
}

PitchforkEstimate estimate_pitchfork(double p, double h, double lambda_lo, double lambda_hi,
                                     double resolution, int n_scan, const SolveOptions& opts) {
    if (!(lambda_lo < lambda_hi && lambda_hi < kPiSq))
        throw std::invalid_argument("estimate_pitchfork: need lambda_lo < lambda_hi < pi^2");
    auto count = [&](double lambda) {
        const ProblemParams params(lambda, p, h);
        const double v0_max = solvers::default_v0_max(params, opts);
        return static_cast<int>(solvers::find_all_positive(params, v0_max, n_scan, opts).size());
    };
    PitchforkEstimate out;
    out.resolution = resolution;
    out.count_lo = count(lambda_lo);
    out.count_hi = count(lambda_hi);
    if (out.count_lo < 3 || out.count_hi >= 3) return out;  // not found: no transition inside
    double lo = lambda_lo, hi = lambda_hi;
    while (hi - lo > resolution) {
        const double mid = 0.5 * (lo + hi);
        (count(mid) >= 3 ? lo : hi) = mid;
    }
    out.found = true;
    out.estimate = 0.5 * (lo + hi);
    return out;
}

BlowupTable blowup_study(double lambda, double p, std::span<const double> h_grid,
                         std::span<const double> x_probes, const SolveOptions& opts) {
    if (!(lambda < kPiSq)) throw std::invalid_argument("blowup_study: lambda must be < pi^2");
    for (std::size_t i = 1; i < h_grid.size(); ++i)
        if (!(h_grid[i] > h_grid[i - 1]))
            throw std::invalid_argument("blowup_study: h grid must be increasing");
    BlowupTable out;
    out.lambda = lambda;
    out.p = p;
    out.x_probes.assign(x_probes.begin(), x_probes.end());
    for (double h : h_grid) {
        try {
            const PositiveSolution sol = solvers::solve_symmetric(ProblemParams(lambda, p, h), opts);
            std::vector<double> row;
            row.reserve(x_probes.size());
            for (double x : x_probes) row.push_back(sol.value(x));
            out.h_grid.push_back(h);
            out.values.push_back(std::move(row));
            out.sup_norms.push_back(sol.r_max);
        } catch (const std::exception& e) {
            out.failures.push_back("h = " + std::to_string(h) + ": " + e.what());
            break;  // later h only get harder; report the last successful one
        }
    }
    return out;
}

std::vector<MetaSequenceRow> metasolution_sequence(double alpha, double p, int n_max,
                                                   const SolveOptions& opts) {
    if (!(alpha > 0.0)) throw std::invalid_argument("metasolution_sequence: alpha must be > 0");
    std::vector<MetaSequenceRow> rows;
    double lambda_prev = kPiSq - 1.0;
    double h_prev = 0.0;
    for (int n = 1; n <= n_max; ++n) {
        // window edges beyond the bare construction, so both sequences
        // increase strictly
        const double left = std::max(kPiSq - 1.0 / n, kPiSq - 0.6 * (kPiSq - lambda_prev));
        double h_try = std::max(1.0 - 1.0 / n + 1e-6, h_prev + 0.25 * (1.0 - h_prev));
        auto amp = [&](double lambda, double h) {
            return solvers::symmetric_amplitude(ProblemParams(lambda, p, h), opts);
        };
        int grow = 0;
        while (amp(left, h_try) <= 1.05 * alpha) {
            h_try = 0.5 * (1.0 + h_try);
            if (++grow > 60) {
                rows.push_back({n, h_try, 0.0, 0.0, 0.0});
                throw solvers::SolverError(
                    "metasolution_sequence: amplitude bracket failed at n = " + std::to_string(n));
            }
        }
        roots::RootOptions ro;
        ro.width_tol = 1e-14;
        const double lambda_n = roots::bisect(
            [&](double l) { return amp(l, h_try) - alpha; }, left, kPiSq - 1e-12, ro);
        const PositiveSolution sol = solvers::solve_symmetric(ProblemParams(lambda_n, p, h_try), opts);
        double sup_err = 0.0;
        for (const auto& arc : sol.arcs)
            for (const auto& s : arc.samples)
                sup_err = std::max(sup_err, std::abs(s.u - alpha * std::sin(kPi * s.x)));
        rows.push_back({n, h_try, lambda_n, sol.r_max, sup_err});
        lambda_prev = lambda_n;
        h_prev = h_try;
    }
    return rows;
}

MinREstimate estimate_min_R(double lambda, double p, double epsilon, const SolveOptions& opts) {
    MinREstimate out;
    double R = 1.0;
    for (int k = 0; k < 32; ++k) {
        bool ok = false;
        try {
            (void)solvers::solve_matching(lambda, p, R, epsilon, opts);
            ok = true;
        } catch (const std::exception&) {
        }
        if (ok) {
            out.found = true;
            out.estimate = R;
            try {
                (void)solvers::solve_matching(lambda, p, 2.0 * R, epsilon, opts);
                out.monotone_checked = true;
            } catch (const std::exception&) {
                out.monotone_checked = false;  // reported, not assumed
            }
            return out;
        }
        R *= 2.0;
    }
    return out;
}

}  // namespace mnlab::continuation
