#pragma once
// Direct integration of the piecewise planar system and the Green-operator
// fixed-point oracle. The nonlinear regime uses an adaptive embedded
// Dormand-Prince 5(4) pair with quartic dense output; the linear regime uses
// exact closed-form propagators so the middle window costs nothing and stays
// exact as h grows toward 1. u^p is extended oddly through u = 0 so residual
// scans stay smooth; zero crossings are reported as events.

#include <span>
#include <vector>

#include "mnlab/core.hpp"

namespace mnlab::shooting {

struct FlowConfig {
    double rk_abs_tol = 1e-11;
    double rk_rel_tol = 1e-11;
    double max_step = 0.0;       // 0 disables the cap
    bool dense_output = true;    // store uniform samples along arcs
    int samples_per_unit = 2000; // uniform sample density when dense
    int min_arc_samples = 513;   // floor per arc, so steep short arcs stay resolved
};

enum class Direction { Forward, Backward };

class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct FlowResult {
    PhaseState end;
    std::vector<PhaseState> samples;  // only when dense_output
    bool hit_zero = false;            // u crossed zero strictly inside the arc
    double zero_x = 0.0;
    double energy_drift = 0.0;        // max |E - E0| / max(|E0|, tiny)
    std::size_t n_steps = 0;
};

/// Advance the nonlinear system u'=v, v' = -lambda u - sgn(u)|u|^p by
/// delta_x >= 0 in the given direction. Energy is conserved along the arc to
/// the integrator tolerance; the drift actually incurred is reported.
FlowResult nonlinear_flow(const PhaseState& start, double delta_x, double lambda,
                          double p, const FlowConfig& cfg = {},
                          Direction dir = Direction::Forward);

/// Exact propagator of the linear system u'=v, v' = -lambda u over a signed
/// step delta_x: rotation for lambda > 0, shear for lambda = 0, cosh/sinh
/// map for lambda < 0.
PhaseState linear_flow(const PhaseState& start, double delta_x, double lambda);

/// Linear flow with uniform samples and zero-crossing detection (closed form
/// throughout).
FlowResult linear_flow_arc(const PhaseState& start, double delta_x, double lambda,
                           const FlowConfig& cfg = {});

struct ShootResult {
    PositiveSolution solution;
    PhaseState terminal;
    bool positive = true;    // u > 0 on (0,1)
    double first_zero_x = 0.0;
    bool ok = true;
};

/// Compose nonlinear / linear / nonlinear flows from (0,0,v0) to x = 1.
/// Never throws for positivity failures: a crossing is recorded in the
/// result. The returned solution carries the three sampled arcs, the sup
/// norm with its location (cubic-refined), the symmetry class and |u(1)|;
/// the Green residual is left to fixed_point_residual.
ShootResult shoot(double v0, const ProblemParams& params, const FlowConfig& cfg = {});

/// Terminal value u(1) only; no samples are stored. This is the residual map
/// of the scan route.
double shoot_terminal_u(double v0, const ProblemParams& params, const FlowConfig& cfg = {});

/// K f on the grid, where K is the inverse of -d^2/dx^2 with zero Dirichlet
/// data:  K f(x) = Int_0^x (y-x) f(y) dy - x Int_0^1 (y-1) f(y) dy.
/// Cumulative integrals use local cubic interpolation (order 4); the result
/// vanishes at both endpoints by construction.
std::vector<double> green_apply(std::span<const double> x, std::span<const double> f);

/// sup over the solution's sample grid of |u - K(lambda u + a_h u^p)|,
/// evaluated piecewise so the weight jump at the interfaces costs no
/// accuracy. Module-independent acceptance oracle for every solver output.
double fixed_point_residual(const PositiveSolution& sol);

}  // namespace mnlab::shooting
