#pragma once
// Construction of positive solutions: the symmetric branch by time-map root
// finding (with the three lambda regimes of the phase-plane construction),
// asymmetric solutions for lambda <= 0 by multi-root shooting scans, and the
// matching system driven by the phi landscape for lambda in (pi^2/4, pi^2).

#include <utility>
#include <vector>

#include "mnlab/core.hpp"
#include "mnlab/quadrature.hpp"
#include "mnlab/roots.hpp"
#include "mnlab/shooting.hpp"
#include "mnlab/timemaps.hpp"

namespace mnlab::solvers {

struct SolveOptions {
    quadrature::QuadratureConfig quad;
    shooting::FlowConfig flow;
    roots::RootOptions root;
};

/// lambda >= pi^2: only the trivial solution exists on the branch closure.
class NoSolutionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bracketing or verification failure with diagnostics in what().
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The monotone-middle check failed for every attempted epsilon: R is below
/// the landscape threshold for this lambda.
class LandscapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A climbing branch was found non-monotone: multi-peak landscapes are
/// detected and reported, not traversed.
class UnsupportedLandscapeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The unique symmetric positive solution for lambda < pi^2, re-verified by
/// shooting and by the Green fixed-point residual.
PositiveSolution solve_symmetric(const ProblemParams& params, const SolveOptions& opts = {});

/// Amplitude-only probe of the symmetric branch (no trajectory, no
/// verification); cheap enough for bisection loops in continuation.
double symmetric_amplitude(const ProblemParams& params, const SolveOptions& opts = {},
                           double amplitude_hint = 0.0);

/// Initial slope of the symmetric solution (root data only).
double symmetric_v0(const ProblemParams& params, const SolveOptions& opts = {});

/// Default scan ceiling: 10x the symmetric slope (heuristic; asymmetric
/// branches sit at energies above the symmetric one).
double default_v0_max(const ProblemParams& params, const SolveOptions& opts = {});

/// Scan v0 -> u(1) over (0, v0_max], bracket the sign changes, refine each to
/// |u(1)| < 1e-9, keep genuinely positive trajectories, deduplicate, classify
/// symmetry and complete every asymmetric solution with its reflection
/// partner. Empty result is a valid outcome.
std::vector<PositiveSolution> find_all_positive(const ProblemParams& params, double v0_max,
                                                int n_scan, const SolveOptions& opts = {});

/// Critical structure of phi(R, .) for fixed (lambda, p): minimizer near 0,
/// maximizer near pi/2 and the far equal-level point theta_bar.
struct PhiLandscape {
    double R = 0.0;
    double lambda = 0.0;
    double p = 0.0;
    double epsilon = 0.0;  // the epsilon that passed the monotone check
    double theta_m = 0.0;
    double phi_m = 0.0;
    double theta_M = 0.0;
    double phi_M = 0.0;
    double theta_bar = 0.0;
};

/// Locate the landscape by dense sampling plus local refinement. The
/// monotone-middle check on [eps, pi/2-eps] is retried with doubled epsilon
/// (up to three times): the maximizer moves away from pi/2 as R decreases,
/// so failures call for a wider guard band, not a narrower one.
PhiLandscape phi_landscape(double R, double lambda, double p, double epsilon,
                           const SolveOptions& opts = {});

/// Equal-level pair phi(R, theta_left) = phi(R, theta_right) = level with
/// theta_left in (theta_m, theta_M) and theta_right in (theta_M, theta_bar),
/// by inverting the two monotone restrictions.
std::pair<double, double> climb_pair(const PhiLandscape& landscape, double level,
                                     const SolveOptions& opts = {});

/// A root of the matching system: angles, the window width h it selects and
/// the residuals of both matching equations.
struct MatchingSolution {
    double lambda = 0.0;
    double p = 0.0;
    double R = 0.0;
    double theta0 = 0.0;
    double theta1 = 0.0;
    double h = 0.0;
    double s_hat = 0.0;          // climbing parameter of the root
    double angle_residual = 0.0; // |theta0 + theta1 - h sqrt(lambda)|
    double level_residual = 0.0; // max |phi(theta_i) - (1-h) sqrt(lambda)|
};

/// Solve the matching system at fixed (lambda, p, R) by bisection on the
/// climbing parameter; requires lambda in (pi^2/4, pi^2) and R large enough
/// that the landscape exists and the bracket conditions hold.
MatchingSolution solve_matching(double lambda, double p, double R, double epsilon,
                                const SolveOptions& opts = {});

/// Reconstruct the positive solution selected by a matching root: gate state
/// (R cos theta0, sqrt(lambda) R sin theta0), slope recovered through the
/// energy level, verified by a full shoot.
PositiveSolution matching_to_solution(const MatchingSolution& m, const SolveOptions& opts = {});

/// x -> 1-x reflection with arcs relabeled; involutive up to the rounding of
/// 1-x (< 1 ulp).
PositiveSolution reflect(const PositiveSolution& sol);

/// The quarter-time and half-time amplitudes of the lambda < 0 construction:
/// u0 with T_N = (1-h)/4, u1 with T_N = (1-h)/2, and their axis slopes.
/// Always u0 > u1 >= homoclinic crossing.
struct QuarterHalfAmplitudes {
    double u0 = 0.0;
    double u1 = 0.0;
    double v0 = 0.0;
    double v1 = 0.0;
};
QuarterHalfAmplitudes section4_amplitudes(double lambda, double p, double h,
                                          const SolveOptions& opts = {});

namespace detail {
/// Worker count for scan parallelism: hardware concurrency capped by the
/// MNLAB_THREADS environment variable.
int worker_count();
}  // namespace detail

}  // namespace mnlab::solvers
