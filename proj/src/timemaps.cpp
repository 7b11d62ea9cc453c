#include "mnlab/timemaps.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mnlab/core.hpp"
#include "mnlab/roots.hpp"

namespace mnlab::timemaps {

using quadrature::detail::one_minus_pow_c;
using quadrature::integrate_endpoint_singular;

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Complement 1 - s on the interval [a, 1]: the kernel hands the exact
// distance to the nearer endpoint, which is 1 - s on the right half.
inline double om_of(double s, double dist, double mid) {
    return s > mid ? dist : 1.0 - s;
}

}  // namespace

double homoclinic_crossing(double lambda, double p) {
    require(lambda < 0.0, "homoclinic_crossing: lambda must be < 0");
    require(p > 1.0, "homoclinic_crossing: p must be > 1");
    return std::pow(-lambda * (p + 1.0) / 2.0, 1.0 / (p - 1.0));
}

double equilibrium(double lambda, double p) {
    require(lambda < 0.0, "equilibrium: lambda must be < 0");
    require(p > 1.0, "equilibrium: p must be > 1");
    return std::pow(-lambda, 1.0 / (p - 1.0));
}

namespace {

// Int_{lo}^{1} ds / sqrt(lambda (1-s^2) + B (1-s^{p+1})), the common kernel
// of the amplitude time maps. Near s = 1 the radicand is evaluated through
// the complement 1-s; away from it through (lambda+B) + s^2 (-lambda - B s^{q-2}),
// whose leading constant is exact by Sterbenz when B -> -lambda (the
// near-homoclinic regime, where the naive form drowns in rounding noise).
double amplitude_time_integral(double lambda, double B, double q, double lo,
                               const QuadratureConfig& cfg) {
    const double mid = 0.5 * (lo + 1.0);
    const double eps_c = lambda + B;  // radicand value at s = 0
    return integrate_endpoint_singular(
        [=](double s, double dist) {
            double radicand;
            if (s > mid) {
                const double om = dist;
                radicand = lambda * om * (1.0 + s) + B * one_minus_pow_c(om, q);
            } else {
                radicand = eps_c + s * s * (-lambda - B * std::pow(s, q - 2.0));
            }
            return 1.0 / std::sqrt(radicand);
        },
        lo, 1.0, cfg);
}

}  // namespace

double time_N_full(double lambda, double p, double u0, const QuadratureConfig& cfg) {
    require(p > 1.0, "time_N_full: p must be > 1");
    if (lambda < 0.0) {
        require(u0 > homoclinic_crossing(lambda, p),
                "time_N_full: u0 must exceed the homoclinic crossing for lambda < 0");
    } else {
        require(u0 > 0.0, "time_N_full: u0 must be > 0");
    }
    const double B = 2.0 / (p + 1.0) * std::pow(u0, p - 1.0);
    return amplitude_time_integral(lambda, B, p + 1.0, 0.0, cfg);
}

double time_N_partial(double lambda, double p, double u0, double u_l,
                      const QuadratureConfig& cfg) {
    require(u_l >= 0.0 && u_l < u0, "time_N_partial: need 0 <= u_l < u0");
    if (u_l == 0.0) return time_N_full(lambda, p, u0, cfg);
    require(p > 1.0, "time_N_partial: p must be > 1");
    if (lambda < 0.0)
        require(u0 > homoclinic_crossing(lambda, p),
                "time_N_partial: u0 must exceed the homoclinic crossing for lambda < 0");
    const double B = 2.0 / (p + 1.0) * std::pow(u0, p - 1.0);
    return amplitude_time_integral(lambda, B, p + 1.0, u_l / u0, cfg);
}

double time_N_from_axis(double lambda, double p, double u_omega,
                        const QuadratureConfig& cfg) {
    require(lambda < 0.0, "time_N_from_axis: lambda must be < 0");
    require(u_omega > 0.0, "time_N_from_axis: u_omega must be > 0");
    require(p > 1.0, "time_N_from_axis: p must be > 1");
    const double B = 2.0 / (p + 1.0) * std::pow(u_omega, p - 1.0);
    const double q = p + 1.0;
    return integrate_endpoint_singular(
        [=](double s, double dist) {
            const double om = om_of(s, dist, 0.5);
            return 1.0 / std::sqrt(-lambda * s * s + B * one_minus_pow_c(om, q));
        },
        0.0, 1.0, cfg);
}

UnstableToAxis time_N_unstable_to_axis(double lambda, double p, double u_plus,
                                       const QuadratureConfig& cfg) {
    require(lambda < 0.0, "time_N_unstable_to_axis: lambda must be < 0");
    require(u_plus > homoclinic_crossing(lambda, p),
            "time_N_unstable_to_axis: u_plus must exceed the homoclinic crossing");
    const double ratio =
        std::pow((p + 1.0) * 0.5 * lambda * std::pow(u_plus, 1.0 - p) + 1.0, 1.0 / (p + 1.0));
    UnstableToAxis out;
    out.u_omega = ratio * u_plus;
    const double B = 2.0 / (p + 1.0) * std::pow(u_plus, p - 1.0);
    out.time = amplitude_time_integral(lambda, B, p + 1.0, ratio, cfg);
    return out;
}

double time_L_hyperbolic(double lambda, double u_plus, double u_l) {
    require(lambda < 0.0, "time_L_hyperbolic: lambda must be < 0");
    require(u_plus > 0.0 && u_l > u_plus, "time_L_hyperbolic: need u_l > u_plus > 0");
    return std::acosh(u_l / u_plus) / std::sqrt(-lambda);
}

double time_L_hyperbolic_quadrature(double lambda, double u_plus, double u_l,
                                    const QuadratureConfig& cfg) {
    require(lambda < 0.0, "time_L_hyperbolic_quadrature: lambda must be < 0");
    require(u_plus > 0.0 && u_l > u_plus, "time_L_hyperbolic_quadrature: need u_l > u_plus > 0");
    const double mid = 0.5 * (u_plus + u_l);
    return integrate_endpoint_singular(
        [=](double u, double dist) {
            const double um = u < mid ? dist : u - u_plus;  // u - u_plus, exact at the left end
            return 1.0 / std::sqrt(-lambda * um * (u + u_plus));
        },
        u_plus, u_l, cfg);
}

double time_L_to_axis(double lambda, double u_r, double v_minus) {
    require(lambda < 0.0, "time_L_to_axis: lambda must be < 0");
    require(u_r >= 0.0, "time_L_to_axis: u_r must be >= 0");
    require(v_minus < 0.0, "time_L_to_axis: v_minus must be < 0");
    const double om = std::sqrt(-lambda);
    return std::asinh(om * u_r / std::abs(v_minus)) / om;
}

double time_L_to_axis_quadrature(double lambda, double u_r, double v_minus,
                                 const QuadratureConfig& cfg) {
    require(lambda < 0.0, "time_L_to_axis_quadrature: lambda must be < 0");
    require(u_r > 0.0, "time_L_to_axis_quadrature: u_r must be > 0");
    require(v_minus < 0.0, "time_L_to_axis_quadrature: v_minus must be < 0");
    return integrate_endpoint_singular(
        [=](double u) { return 1.0 / std::sqrt(v_minus * v_minus - lambda * u * u); }, 0.0, u_r,
        cfg);
}

double cone_slope(double lambda, double h) {
    require(lambda < 0.0, "cone_slope: lambda must be < 0");
    require(h > 0.0 && h < 1.0, "cone_slope: h must lie in (0,1)");
    const double y = std::sqrt(-lambda) * h;
    // invert g(s) = ln(s + sqrt(s^2+1)) on [0, e^y]
    const double s = roots::invert_monotone(
        [](double x) { return std::log(x + std::sqrt(x * x + 1.0)); },
        [](double x) { return 1.0 / std::sqrt(x * x + 1.0); }, y, 0.0, std::exp(y));
    const double D = 1.0 / (s * s);
    return std::sqrt(-lambda * (D + 1.0));
}

double linear_gate_ratio(double lambda, double h) {
    require(lambda < 0.0, "linear_gate_ratio: lambda must be < 0");
    require(h > 0.0 && h < 1.0, "linear_gate_ratio: h must lie in (0,1)");
    const double y = 0.5 * h * std::sqrt(-lambda);
    // invert g(s) = ln(s + sqrt(s^2-1)) on [1, e^y + 1]
    return roots::invert_monotone(
        [](double x) { return std::log(x + std::sqrt(std::max(x * x - 1.0, 0.0))); },
        [](double x) { return 1.0 / std::sqrt(std::max(x * x - 1.0, 1e-300)); }, y, 1.0,
        std::exp(y) + 1.0);
}

double time_N_axis_to_ray(double lambda, double p, double theta, double u_target,
                          const QuadratureConfig& cfg) {
    require(lambda > 0.0, "time_N_axis_to_ray: lambda must be > 0");
    require(p > 1.0, "time_N_axis_to_ray: p must be > 1");
    require(theta >= 0.0 && theta < 0.5 * kPi, "time_N_axis_to_ray: theta must lie in [0, pi/2)");
    require(u_target > 0.0, "time_N_axis_to_ray: u_target must be > 0");
    const double t2 = std::tan(theta) * std::tan(theta);
    const double B = 2.0 * std::pow(u_target, p - 1.0) / (lambda * (p + 1.0));
    const double q = p + 1.0;
    return integrate_endpoint_singular(
               [=](double s, double dist) {
                   const double om = om_of(s, dist, 0.5);
                   return 1.0 / std::sqrt(t2 + om * (1.0 + s) + B * one_minus_pow_c(om, q));
               },
               0.0, 1.0, cfg) /
           std::sqrt(lambda);
}

double s_nonlinear(double lambda, double p, double R, double theta,
                   const QuadratureConfig& cfg) {
    require(lambda > 0.0, "s_nonlinear: lambda must be > 0");
    require(p > 1.0, "s_nonlinear: p must be > 1");
    require(R > 0.0, "s_nonlinear: R must be > 0");
    require(theta >= 0.0 && theta < 0.5 * kPi, "s_nonlinear: theta must lie in [0, pi/2)");
    const double c = std::cos(theta), sn = std::sin(theta);
    const double Rp = std::pow(R, p - 1.0);
    const double A = 1.0 / (Rp * c * c);
    const double B = 2.0 * std::pow(c, p - 1.0) / (lambda * (p + 1.0));
    const double q = p + 1.0;
    const double integral = integrate_endpoint_singular(
        [=](double s, double dist) {
            const double om = om_of(s, dist, 0.5);
            // 1 - s^2 cos^2 = (1-s^2) cos^2 + sin^2, free of cancellation
            const double omc = om * (1.0 + s) * c * c + sn * sn;
            return 1.0 / std::sqrt(A * omc + B * one_minus_pow_c(om, q));
        },
        0.0, 1.0, cfg);
    return std::pow(R, -0.5 * (p - 1.0)) * integral / std::sqrt(lambda);
}

double phi(double R, double theta, double lambda, double p, const QuadratureConfig& cfg) {
    require(R > 0.0, "phi: R must be > 0");
    require(lambda > 0.0, "phi: lambda must be > 0");
    require(p > 1.0, "phi: p must be > 1");
    require(theta >= 0.0 && theta <= 0.5 * kPi, "phi: theta must lie in [0, pi/2]");
    if (theta >= 0.5 * kPi) return 0.0;  // continuous extension
    const double t2 = std::tan(theta) * std::tan(theta);
    const double B = 2.0 * std::pow(R, p - 1.0) * std::pow(std::cos(theta), p - 1.0) /
                     (lambda * (p + 1.0));
    const double q = p + 1.0;
    return 2.0 * integrate_endpoint_singular(
                     [=](double s, double dist) {
                         const double om = om_of(s, dist, 0.5);
                         return 1.0 / std::sqrt(t2 + om * (1.0 + s) + B * one_minus_pow_c(om, q));
                     },
                     0.0, 1.0, cfg);
}

double phi_dtheta(double R, double theta, double lambda, double p,
                  const QuadratureConfig& cfg) {
    require(R > 0.0, "phi_dtheta: R must be > 0");
    require(lambda > 0.0, "phi_dtheta: lambda must be > 0");
    require(p > 1.0, "phi_dtheta: p must be > 1");
    require(theta <= 0.5 * kPi, "phi_dtheta: theta must lie in (0, pi/2]");
    require(theta >= 1e-6,
            "phi_dtheta: derivative integral degenerates near theta = 0; use phi differences");
    if (theta == 0.5 * kPi) return -2.0;
    const double c = std::cos(theta), sn = std::sin(theta);
    const double Rp = std::pow(R, p - 1.0);
    const double k = std::pow(c, p + 1.0) / (lambda * (p + 1.0));
    const double q = p + 1.0;
    const double pref = 2.0 * std::pow(R, -0.5 * (p - 1.0)) * sn;
    const double integral = integrate_endpoint_singular(
        [=](double s, double dist) {
            const double om = om_of(s, dist, 0.5);
            const double omp = one_minus_pow_c(om, q);
            const double omc = om * (1.0 + s) * c * c + sn * sn;  // 1 - s^2 cos^2
            const double P = omc / Rp + 2.0 * k * omp;
            const double num = (p - 1.0) * k * omp - 1.0 / Rp;
            return num / (P * std::sqrt(P));
        },
        0.0, 1.0, cfg);
    return pref * integral;
}

double phi_asymptotic(double R, double theta, double lambda, double p,
                      const QuadratureConfig& cfg) {
    require(R > 0.0 && theta >= 0.0 && theta < 0.5 * kPi,
            "phi_asymptotic: need R > 0 and theta in [0, pi/2)");
    const double Bp = quadrature::beta_integral(p, cfg);
    return std::pow(R, -0.5 * (p - 1.0)) *
           std::sqrt(2.0 * lambda * (p + 1.0) / std::pow(std::cos(theta), p - 1.0)) * Bp;
}

double phi_dtheta_asymptotic(double R, double theta, double lambda, double p,
                             const QuadratureConfig& cfg) {
    require(R > 0.0 && theta >= 0.0 && theta < 0.5 * kPi,
            "phi_dtheta_asymptotic: need R > 0 and theta in [0, pi/2)");
    const double Bp = quadrature::beta_integral(p, cfg);
    return std::pow(R, -0.5 * (p - 1.0)) * (p - 1.0) * std::sin(theta) *
           std::sqrt(0.5 * lambda * (p + 1.0)) *
           std::pow(std::cos(theta), -0.5 * (p + 1.0)) * Bp;
}

}  // namespace mnlab::timemaps
