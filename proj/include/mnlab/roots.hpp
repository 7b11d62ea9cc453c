#pragma once
// Bracketed root finding shared by the solvers: plain bisection to a target
// interval width followed by one finite-difference Newton polish, plus a
// safeguarded Newton for inverting the monotone log-type maps g(s) of the
// linear-regime time formulas.

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace mnlab::roots {

struct RootOptions {
    double width_tol = 1e-12;  // scaled by max(1, |x|)
    int max_iter = 200;
    bool polish = true;
};

class BracketError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Root of f in [lo, hi]; f(lo) and f(hi) must differ in sign.
template <class F>
double bisect(F&& f, double lo, double hi, const RootOptions& opts = {}) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw BracketError("bisect: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    for (int it = 0; it < opts.max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (hi - lo <= opts.width_tol * std::max(1.0, std::abs(mid))) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) { lo = mid; flo = fm; }
        else { hi = mid; fhi = fm; }
    }
    double x = 0.5 * (lo + hi);
    if (opts.polish) {
        const double fx = f(x);
        const double step = std::max(1e-7 * std::abs(x), 1e-9);
        const double dfx = (f(x + step) - f(x - step)) / (2.0 * step);
        if (std::isfinite(dfx) && dfx != 0.0) {
            const double xn = x - fx / dfx;
            if (xn > lo && xn < hi && std::abs(f(xn)) <= std::abs(fx)) x = xn;
        }
    }
    return x;
}

/// Expand [lo, lo*factor^k] upward until f changes sign from f(lo).
template <class F>
std::pair<double, double> bracket_upward(F&& f, double lo, double factor = 2.0,
                                         int max_steps = 80) {
    double flo = f(lo);
    double a = lo;
    for (int k = 0; k < max_steps; ++k) {
        const double b = a * factor;
        const double fb = f(b);
        if (fb == 0.0 || (fb > 0.0) != (flo > 0.0)) return {a, b};
        a = b;
    }
    throw BracketError("bracket_upward: no sign change found starting from " + std::to_string(lo));
}

/// Solve g(x) = y for monotone g on [lo, hi] by Newton with analytic
/// derivative dg, keeping a bracket and falling back to bisection when a
/// step leaves it.
template <class G, class DG>
double invert_monotone(G&& g, DG&& dg, double y, double lo, double hi,
                       double tol = 1e-14, int max_iter = 100) {
    double glo = g(lo) - y, ghi = g(hi) - y;
    if (glo == 0.0) return lo;
    if (ghi == 0.0) return hi;
    if ((glo > 0.0) == (ghi > 0.0))
        throw BracketError("invert_monotone: target not bracketed");
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < max_iter; ++it) {
        const double gx = g(x) - y;
        if ((gx > 0.0) == (glo > 0.0)) lo = x; else hi = x;
        const double d = dg(x);
        double xn = d != 0.0 ? x - gx / d : 0.5 * (lo + hi);
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= tol * std::max(1.0, std::abs(x))) return xn;
        x = xn;
    }
    return x;
}

}  // namespace mnlab::roots
