#pragma once
// Domain types for the boundary-value problem
//
//     -u'' = lambda*u + a_h(x) u^p  on (0,1),   u(0) = u(1) = 0,
//
// where a_h is 1 on [0,(1-h)/2] and [(1+h)/2,1] and 0 on the open middle
// window of width h. Everything downstream (time maps, shooting, solvers)
// shares these types.

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnlab {

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kPiSq = kPi * kPi;

enum class Regime { Nonlinear, Linear };
enum class Symmetry { Symmetric, AsymmetricLeft, AsymmetricRight };

const char* to_string(Regime r);
const char* to_string(Symmetry s);

/// Parameter triple (lambda, p, h). Construction enforces p > 1 and
/// 0 < h < 1. The solvability bound lambda < pi^2 is a solver precondition,
/// not a type invariant, so sweeps may carry arbitrary lambda values.
struct ProblemParams {
    double lambda;
    double p;
    double h;

    ProblemParams(double lambda_, double p_, double h_);

    double x_left() const { return 0.5 * (1.0 - h); }
    double x_right() const { return 0.5 * (1.0 + h); }
};

/// A point (x, u, u') on a trajectory of the planar system u'=v,
/// v' = -lambda*u - a(x) u^p.
struct PhaseState {
    double x = 0.0;
    double u = 0.0;
    double v = 0.0;
};

struct EnergyValue {
    double value = 0.0;
    Regime regime = Regime::Nonlinear;
};

/// One maximal interval on which the weight is constant, with the phase
/// states sampled along it. Samples are strictly increasing in x and start
/// and end exactly at x_start and x_end.
struct TrajectoryArc {
    Regime regime = Regime::Nonlinear;
    double x_start = 0.0;
    double x_end = 0.0;
    std::vector<PhaseState> samples;
};

/// A verified positive solution: initial slope, the three arcs
/// (nonlinear, linear, nonlinear), its sup norm and maximizer, symmetry
/// class and the two independent residuals.
struct PositiveSolution {
    ProblemParams params;
    double v0 = 0.0;
    std::array<TrajectoryArc, 3> arcs;
    double r_max = 0.0;
    double x_max = 0.0;
    Symmetry symmetry = Symmetry::Symmetric;
    double shoot_residual = 0.0;        // |u(1)|
    double fixed_point_residual = 0.0;  // sup defect of u = K(lambda u + a u^p)
    double energy_drift = 0.0;          // max per-regime relative drift

    explicit PositiveSolution(const ProblemParams& p_) : params(p_) {}

    /// Hermite interpolation on the stored samples (v' from the ODE).
    PhaseState eval(double x) const;
    double value(double x) const { return eval(x).u; }

    /// sup_x |u(x) - u(1-x)| over the sample grid.
    double symmetry_defect() const;
};

/// Piecewise-constant weight a_h(x); the interface points (1±h)/2 belong to
/// the closed outer intervals and map to 1.
double weight(double x, const ProblemParams& params);

/// E_N(u,v) = v^2/2 + lambda u^2/2 + u^{p+1}/(p+1), constant along arcs of
/// the autonomous nonlinear system.
double energy_nonlinear(double u, double v, const ProblemParams& params);
double energy_nonlinear(double u, double v, double lambda, double p);

/// E_L(u,v) = v^2/2 + lambda u^2/2.
double energy_linear(double u, double v, double lambda);

}  // namespace mnlab
