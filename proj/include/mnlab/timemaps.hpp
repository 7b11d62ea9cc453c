#pragma once
// Time-of-flight formulas for the piecewise phase-plane construction: the
// nonlinear time maps in the amplitude, the closed-form hyperbolic times of
// the linear regime for lambda < 0, and the rescaled map phi(R,theta) with
// its theta-derivative and large-R profiles for lambda > 0.
//
// All maps take (lambda, p) explicitly so landscape scans can vary R at
// fixed lambda without re-validating h.

#include "mnlab/quadrature.hpp"

namespace mnlab::timemaps {

using quadrature::QuadratureConfig;

/// Amplitude/time pair on a nonlinear orbit.
struct TimeMapPoint {
    double u0 = 0.0;
    double time = 0.0;
};

/// One sample of the rescaled map phi(R, .).
struct PhiValue {
    double R = 0.0;
    double theta = 0.0;
    double value = 0.0;
};

/// u_ho = (-lambda (p+1)/2)^{1/(p-1)}: crossing of the homoclinic level with
/// the positive u-axis (lambda < 0).
double homoclinic_crossing(double lambda, double p);

/// omega = (-lambda)^{1/(p-1)}: the interior center of the nonlinear system
/// for lambda < 0; always below the homoclinic crossing.
double equilibrium(double lambda, double p);

/// Half-period from (0, v0) to (u0, 0) along the nonlinear orbit with axis
/// crossing u0:  Int_0^1 ds / sqrt(lambda(1-s^2) + 2/(p+1) u0^{p-1}(1-s^{p+1})).
/// Requires u0 > u_ho when lambda < 0, u0 > 0 otherwise. Strictly decreasing
/// in u0.
double time_N_full(double lambda, double p, double u0, const QuadratureConfig& cfg = {});

/// Time from (u0, 0) down to the orbit point with u = u_l (0 <= u_l < u0):
/// same integrand as time_N_full over [u_l/u0, 1].
double time_N_partial(double lambda, double p, double u0, double u_l,
                      const QuadratureConfig& cfg = {});

/// Time from the v-axis to the unstable-cone point (u_omega, sqrt(-lambda) u_omega)
/// along the nonlinear orbit through it (lambda < 0):
/// Int_0^1 ds / sqrt(-lambda s^2 + 2/(p+1) u_omega^{p-1}(1-s^{p+1})).
/// Decreasing in u_omega.
double time_N_from_axis(double lambda, double p, double u_omega,
                        const QuadratureConfig& cfg = {});

struct UnstableToAxis {
    double u_omega = 0.0;  // cone crossing of the orbit through (u_plus, 0)
    double time = 0.0;     // flight time from the cone to (u_plus, 0)
};

/// Decomposition data for the orbit through (u_plus, 0), u_plus > u_ho:
/// u_omega/u_plus = ((p+1)(lambda/2) u_plus^{1-p} + 1)^{1/(p+1)} and the
/// remaining flight time, so that
/// time_N_full(u_plus) = time_N_from_axis(u_omega) + time.
UnstableToAxis time_N_unstable_to_axis(double lambda, double p, double u_plus,
                                       const QuadratureConfig& cfg = {});

/// Closed-form hyperbolic flight time (lambda < 0) from (u_plus, 0) to the
/// orbit point with u = u_l > u_plus:
/// (1/sqrt(-lambda)) ln(r + sqrt(r^2-1)), r = u_l/u_plus.
double time_L_hyperbolic(double lambda, double u_plus, double u_l);

/// The same time evaluated by direct quadrature of
/// Int_{u_plus}^{u_l} du / sqrt(lambda (u_plus^2 - u^2)); dual route used to
/// pin the closed form.
double time_L_hyperbolic_quadrature(double lambda, double u_plus, double u_l,
                                    const QuadratureConfig& cfg = {});

/// Closed-form hyperbolic time (lambda < 0) from (u_r, v_r) to the v-axis
/// point (0, v_minus): (1/sqrt(-lambda)) asinh(sqrt(-lambda) u_r / |v_minus|).
/// Sign convention: v_minus < 0, u_r > 0, time > 0.
double time_L_to_axis(double lambda, double u_r, double v_minus);

/// Quadrature form of the same time: Int_0^{u_r} du / sqrt(v_minus^2 - lambda u^2).
double time_L_to_axis_quadrature(double lambda, double u_r, double v_minus,
                                 const QuadratureConfig& cfg = {});

/// Cone slope m_h = sqrt(|lambda| (D(h)+1)) with D(h) = g^{-1}(sqrt(|lambda|) h)^{-2},
/// g(s) = ln(s + sqrt(s^2+1)); the states on v = -m_h u reach the negative
/// v-axis in time exactly h. Decreasing in h. (Equals sqrt(|lambda|)
/// coth(sqrt(|lambda|) h); the inversion is done numerically and the
/// identity is pinned by tests.)
double cone_slope(double lambda, double h);

/// Gate ratio C = g^{-1}((h/2) sqrt(-lambda)) > 1 with g(s) = ln(s+sqrt(s^2-1)):
/// the amplitude ratio u_l/u_plus for which the hyperbolic flight time
/// between them is exactly h/2.
double linear_gate_ratio(double lambda, double h);

/// Flight time (lambda > 0) from (0, v0) to the ray v = tan(theta) u in the
/// rescaled plane, along the orbit whose ray crossing has u = u_target:
/// (1/sqrt(lambda)) Int_0^1 ds / sqrt(tan^2 theta + 1 - s^2
///                                    + 2 u_target^{p-1}/(lambda(p+1)) (1-s^{p+1})).
double time_N_axis_to_ray(double lambda, double p, double theta, double u_target,
                          const QuadratureConfig& cfg = {});

/// The rescaled-variables form of the same flight time,
/// S_N(lambda, R, theta) with u_target = R cos(theta); evaluated through the
/// factored R^{-(p-1)/2} integrand, which is the alternate algebraic route
/// behind phi.
double s_nonlinear(double lambda, double p, double R, double theta,
                   const QuadratureConfig& cfg = {});

/// phi(R, theta) = 2 sqrt(lambda) S_N: the rescaled two-variable time map,
/// extended by continuity with phi(., pi/2) = 0. Bounded above by pi - 2 theta
/// and decreasing in R.
double phi(double R, double theta, double lambda, double p,
           const QuadratureConfig& cfg = {});

/// d(phi)/d(theta). Exactly -2 at theta = pi/2. Refuses theta < 1e-6 where
/// the derivative integral degenerates; use phi differences there instead.
double phi_dtheta(double R, double theta, double lambda, double p,
                  const QuadratureConfig& cfg = {});

/// Large-R profile phi ~ R^{-(p-1)/2} sqrt(2 lambda (p+1) / cos^{p-1} theta) * B_p
/// with B_p the beta_integral constant.
double phi_asymptotic(double R, double theta, double lambda, double p,
                      const QuadratureConfig& cfg = {});

/// Theta-derivative of the large-R profile (positive on (0, pi/2)).
double phi_dtheta_asymptotic(double R, double theta, double lambda, double p,
                             const QuadratureConfig& cfg = {});

}  // namespace mnlab::timemaps
