#pragma once
// Parameter sweeps over the verified solvers: bifurcation diagrams in
// lambda, blow-up tables in h, metasolution sequences toward (pi^2, h = 1),
// and empirical threshold estimation for the pitchfork value and the least
// matching amplitude. Thresholds are reported with their resolution and
// never asserted against closed forms; the underlying results are existence
// statements.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mnlab/core.hpp"
#include "mnlab/solvers.hpp"

namespace mnlab::continuation {

using solvers::SolveOptions;

/// One verified solution on a branch.
struct BranchPoint {
    double lambda = 0.0;
    double h = 0.0;
    double r_max = 0.0;
    double v0 = 0.0;
    Symmetry symmetry = Symmetry::Symmetric;
    double shoot_residual = 0.0;
    double fixed_point_residual = 0.0;
    double energy_drift = 0.0;
};

struct SweepResult {
    std::vector<BranchPoint> points;           // sorted by lambda
    std::vector<std::string> failures;         // per-point diagnostics
};

struct SweepConfig {
    bool with_scan = true;   // append asymmetric solutions found by scanning
    int n_scan = 600;
    double v0_max_factor = 10.0;
};

/// Solve the symmetric branch on the grid (warm-started along the chain) and
/// append scan-located asymmetric solutions. Individual failures are
/// recorded and the sweep continues.
SweepResult sweep_lambda(double p, double h, std::span<const double> lambda_grid,
                         const SweepConfig& cfg = {}, const SolveOptions& opts = {});

struct PitchforkEstimate {
    bool found = false;
    double estimate = 0.0;
    double resolution = 0.0;
    int count_lo = 0;   // solutions at the low end
    int count_hi = 0;   // solutions at the high end
};

/// Bisection on "does the scan find >= 3 positive solutions" over
/// [lambda_lo, lambda_hi]; empirical, no paper ground truth.
PitchforkEstimate estimate_pitchfork(double p, double h, double lambda_lo, double lambda_hi,
                                     double resolution = 0.05, int n_scan = 400,
                                     const SolveOptions& opts = {});

struct BlowupTable {
    double lambda = 0.0;
    double p = 0.0;
    std::vector<double> h_grid;
    std::vector<double> x_probes;
    std::vector<std::vector<double>> values;  // values[i][j] = u_{h_i}(x_j)
    std::vector<double> sup_norms;            // ||u_h||_inf per row
    std::vector<std::string> failures;
};

/// Symmetric solutions along an increasing h grid, tabulated at the probes.
BlowupTable blowup_study(double lambda, double p, std::span<const double> h_grid,
                         std::span<const double> x_probes, const SolveOptions& opts = {});

struct MetaSequenceRow {
    int n = 0;
    double h = 0.0;
    double lambda = 0.0;
    double r_max = 0.0;      // held at alpha by construction
    double sup_error = 0.0;  // sup |u - alpha sin(pi x)|
};

/// The perturbation sequence toward the linear eigenpair: h_n increasing to
/// 1, lambda_n increasing to pi^2, with ||u||_inf pinned at alpha and the
/// profile converging to alpha sin(pi x). Windows are tightened beyond the
/// bare existence construction so both sequences increase strictly.
std::vector<MetaSequenceRow> metasolution_sequence(double alpha, double p, int n_max,
                                                   const SolveOptions& opts = {});

struct MinREstimate {
    bool found = false;
    double estimate = 0.0;       // least tested R at which matching succeeds
    bool monotone_checked = false;  // matching also succeeded at 2R
};

/// Doubling search for the least tested amplitude at which solve_matching
/// succeeds; labeled empirical.
MinREstimate estimate_min_R(double lambda, double p, double epsilon = 0.05,
                            const SolveOptions& opts = {});

}  // namespace mnlab::continuation
