#include "mnlab/core.hpp"

#include <algorithm>
#include <cmath>

namespace mnlab {

const char* to_string(Regime r) {
    return r == Regime::Nonlinear ? "nonlinear" : "linear";
}

const char* to_string(Symmetry s) {
    switch (s) {
        case Symmetry::Symmetric: return "symmetric";
        case Symmetry::AsymmetricLeft: return "asymmetric_left";
        case Symmetry::AsymmetricRight: return "asymmetric_right";
    }
    return "?";
}

ProblemParams::ProblemParams(double lambda_, double p_, double h_)
    : lambda(lambda_), p(p_), h(h_) {
    if (!(p > 1.0))
        throw std::invalid_argument("ProblemParams: exponent p must be > 1, got " + std::to_string(p_));
    if (!(h > 0.0 && h < 1.0))
        throw std::invalid_argument("ProblemParams: window width h must lie in (0,1), got " + std::to_string(h_));
    if (!std::isfinite(lambda_))
        throw std::invalid_argument("ProblemParams: lambda must be finite");
}

double weight(double x, const ProblemParams& params) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("weight: x must lie in [0,1], got " + std::to_string(x));
    // the interfaces belong to the closed outer intervals
    return (x <= params.x_left() || x >= params.x_right()) ? 1.0 : 0.0;
}

double energy_nonlinear(double u, double v, double lambda, double p) {
    if (u < 0.0)
        throw std::invalid_argument("energy_nonlinear: u must be >= 0");
    return 0.5 * v * v + 0.5 * lambda * u * u + std::pow(u, p + 1.0) / (p + 1.0);
}

double energy_nonlinear(double u, double v, const ProblemParams& params) {
    return energy_nonlinear(u, v, params.lambda, params.p);
}

double energy_linear(double u, double v, double lambda) {
    return 0.5 * v * v + 0.5 * lambda * u * u;
}

namespace {

// Cubic Hermite value on [x0,x1] from endpoint values and slopes.
double hermite(double x, double x0, double x1, double f0, double d0, double f1, double d1) {
    const double w = x1 - x0;
    if (w <= 0.0) return f0;
    const double t = (x - x0) / w;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * f0 + (t3 - 2 * t2 + t) * w * d0 +
           (-2 * t3 + 3 * t2) * f1 + (t3 - t2) * w * d1;
}

double rhs_v(double u, double lambda, double p, Regime regime) {
    double a = regime == Regime::Nonlinear ? 1.0 : 0.0;
    // odd extension of u^p keeps the field defined through u = 0
    return -lambda * u - a * (u >= 0.0 ? std::pow(u, p) : -std::pow(-u, p));
}

}  // namespace

PhaseState PositiveSolution::eval(double x) const {
    x = std::clamp(x, 0.0, 1.0);
    const TrajectoryArc* arc = &arcs[0];
    for (const auto& a : arcs) {
        if (x <= a.x_end || &a == &arcs[2]) { arc = &a; break; }
    }
    const auto& s = arc->samples;
    if (s.size() < 2) return {x, 0.0, 0.0};
    auto it = std::lower_bound(s.begin(), s.end(), x,
                               [](const PhaseState& a, double xv) { return a.x < xv; });
    if (it == s.begin()) ++it;
    if (it == s.end()) --it;
    const PhaseState& b = *it;
    const PhaseState& a = *(it - 1);
    if (b.x == a.x) return b;
    PhaseState out;
    out.x = x;
    out.u = hermite(x, a.x, b.x, a.u, a.v, b.u, b.v);
    const double da = rhs_v(a.u, params.lambda, params.p, arc->regime);
    const double db = rhs_v(b.u, params.lambda, params.p, arc->regime);
    out.v = hermite(x, a.x, b.x, a.v, da, b.v, db);
    return out;
}

double PositiveSolution::symmetry_defect() const {
    double defect = 0.0;
    for (const auto& arc : arcs)
        for (const auto& s : arc.samples)
            defect = std::max(defect, std::abs(s.u - value(1.0 - s.x)));
    return defect;
}

}  // namespace mnlab
