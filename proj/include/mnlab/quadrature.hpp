#pragma once
// Quadrature for the time-map integrals. Every integrand in this project is
// smooth on the open interval with at worst an inverse-square-root
// singularity at an endpoint, so the kernel substitutes s = b - t^2
// (resp. s = a + t^2) on each half interval, which turns 1/sqrt(b-s)
// behavior into a bounded analytic integrand, and then applies tanh-sinh
// refinement in t. Deterministic for fixed inputs and config.
//
// Integrands may take either f(s) or f(s, d), where d is the exact distance
// to the nearer interval endpoint. The two-argument form lets a singular
// integrand evaluate complements like 1-s without cancellation arbitrarily
// close to the endpoint and is what the library uses internally; plain f(s)
// integrands that overflow within rounding distance of an endpoint are
// truncated there and reach ~1e-8 instead of full precision.

#include <cmath>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>

namespace mnlab::quadrature {

struct QuadratureConfig {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_levels = 12;
};

/// Thrown when level refinement exhausts max_levels; carries the best
/// estimate reached and the last inter-level difference as an error bound.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& msg, double best, double bound)
        : std::runtime_error(msg), best_(best), bound_(bound) {}
    double best_estimate() const { return best_; }
    double error_bound() const { return bound_; }

private:
    double best_, bound_;
};

/// Thrown when the integrand returns NaN/Inf at a node that is not within
/// rounding distance of a singular endpoint.
class IntegrandDomainError : public std::runtime_error {
public:
    IntegrandDomainError(const std::string& msg, double node)
        : std::runtime_error(msg), node_(node) {}
    double node() const { return node_; }

private:
    double node_;
};

namespace detail {

// 1 - s^q without cancellation given the exact complement om = 1 - s.
inline double one_minus_pow_c(double om, double q) {
    if (om >= 0.5) return 1.0 - std::pow(1.0 - om, q);
    return -std::expm1(q * std::log1p(-om));
}

// 1 - s^q from s alone (exact complement for s >= 0.5 by Sterbenz).
inline double one_minus_pow(double s, double q) {
    if (s <= 0.0) return 1.0;
    return one_minus_pow_c(1.0 - s, q);
}

inline double one_minus_sq(double s) { return (1.0 - s) * (1.0 + s); }

template <class F>
inline double call_integrand(F&& f, double s, double dist) {
    if constexpr (std::is_invocable_r_v<double, F, double, double>)
        return f(s, dist);
    else
        return f(s);
}

// Tanh-sinh on [0, T]. The integrand g(t, exact_t_offset) may be singularly
// behaved only at t = 0; `origin` maps a t-node to the caller's coordinate
// for error messages.
template <class G, class Origin>
double tanh_sinh_half(G&& g, double T, const QuadratureConfig& cfg,
                      const Origin& origin, double* err_out) {
    constexpr double t_hard = 4.3;  // weights below ~1e-19 past this point
    const double d = 0.5 * T;

    auto node_term = [&](double t, double& term) -> bool {
        const double u = 1.57079632679489661923 * std::sinh(t);
        const double sech = 1.0 / std::cosh(u);
        const double w = d * 1.57079632679489661923 * std::cosh(t) * sech * sech;
        if (w == 0.0) return false;
        const double off = d * std::exp(-std::abs(u)) * sech;  // exact distance to the end
        if (off == 0.0) return false;
        const double tx = t < 0.0 ? off : T - off;   // t < 0 maps to the t = 0 side
        const double fx = g(tx);
        if (!std::isfinite(fx)) {
            if (tx <= 1e-6 * T) return false;  // rounding shadow of the singular endpoint
            throw IntegrandDomainError(
                "integrand is not finite at node " + std::to_string(origin(tx)), origin(tx));
        }
        term = w * fx;
        return true;
    };

    double sum = 0.0;
    {
        double term;
        if (node_term(0.0, term)) sum += term;
        for (int sgn : {-1, +1})
            for (int j = 1; j * 1.0 <= t_hard; ++j)
                if (node_term(sgn * j, term)) sum += term;
    }
    double h = 1.0;
    double prev = h * sum;
    double best = prev, bound = std::abs(prev);
    for (int level = 1; level <= cfg.max_levels; ++level) {
        h *= 0.5;
        double term;
        for (int sgn : {-1, +1})
            for (int j = 1; j * h <= t_hard; j += 2)
                if (node_term(sgn * j * h, term)) sum += term;
        const double cur = h * sum;
        const double diff = std::abs(cur - prev);
        best = cur;
        bound = diff;
        if (diff <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(cur))) {
            if (err_out) *err_out = diff;
            return cur;
        }
        prev = cur;
    }
    throw ConvergenceError("quadrature did not converge within " +
                               std::to_string(cfg.max_levels) + " levels",
                           best, bound);
}

}  // namespace detail

/// Integral of f over (a,b) where f may have inverse-square-root
/// singularities at either endpoint. Splits at the midpoint and applies the
/// s = endpoint -/+ t^2 substitution on each half before tanh-sinh
/// refinement. f is called as f(s) or f(s, distance_to_nearer_endpoint).
template <class F>
double integrate_endpoint_singular(F&& f, double a, double b,
                                   const QuadratureConfig& cfg = {},
                                   double* err_out = nullptr) {
    if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
        throw std::invalid_argument("integrate_endpoint_singular: need finite a < b");
    const double c = 0.5 * (a + b);
    QuadratureConfig half = cfg;
    half.abs_tol = 0.5 * cfg.abs_tol;
    half.rel_tol = 0.5 * cfg.rel_tol;

    double e1 = 0.0, e2 = 0.0;
    double left = 0.0, right = 0.0;
    bool failed = false;
    // left half: s = a + t^2, distance to a is exactly t^2
    const double Tl = std::sqrt(c - a);
    try {
        left = detail::tanh_sinh_half(
            [&](double t) { return 2.0 * t * detail::call_integrand(f, a + t * t, t * t); }, Tl,
            half, [&](double t) { return a + t * t; }, &e1);
    } catch (const ConvergenceError& e) {
        left = e.best_estimate();
        e1 = e.error_bound();
        failed = true;
    }
    // right half: s = b - t^2
    const double Tr = std::sqrt(b - c);
    try {
        right = detail::tanh_sinh_half(
            [&](double t) { return 2.0 * t * detail::call_integrand(f, b - t * t, t * t); }, Tr,
            half, [&](double t) { return b - t * t; }, &e2);
    } catch (const ConvergenceError& e) {
        right = e.best_estimate();
        e2 = e.error_bound();
        failed = true;
    }
    if (failed)
        throw ConvergenceError("quadrature did not converge within " +
                                   std::to_string(cfg.max_levels) + " levels",
                               left + right, e1 + e2);
    if (err_out) *err_out = e1 + e2;
    return left + right;
}

/// The constant B_p = Int_0^1 ds / sqrt(1 - s^{p+1}) appearing in the
/// large-amplitude profiles of the rescaled time map. Note this is
/// (1/(p+1))*B(1/(p+1), 1/2) in terms of the Euler beta function; the raw
/// integral is the normalization that fits the asymptotics.
double beta_integral(double p, const QuadratureConfig& cfg = {});

}  // namespace mnlab::quadrature
