#pragma once
// Test-only oracles, kept independent of the library's quadrature and
// integration paths:
//   * a Richardson-extrapolated midpoint rule, applied after the
//     substitution s = b - t^2 so an inverse-square-root endpoint
//     singularity becomes a bounded integrand;
//   * a fixed-step classical RK4 flow of the nonlinear system with event
//     location by secant refinement on the stored fine grid.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Composite midpoint on [0,T] with n panels.
template <class G>
double midpoint(G&& g, double T, int n) {
    double s = 0.0;
    const double h = T / n;
    for (int i = 0; i < n; ++i) s += g((i + 0.5) * h);
    return s * h;
}

// Integral of f over [a,b] with at worst 1/sqrt(b-s) behavior at b:
// substitute s = b - t^2 and run midpoint with Richardson extrapolation.
template <class F>
double integrate_singular_at_b(F&& f, double a, double b, int levels = 12) {
    auto g = [&](double t) { return 2.0 * t * f(b - t * t); };
    const double T = std::sqrt(b - a);
    std::vector<double> row;
    double prev_best = 0.0;
    int n = 16;
    for (int k = 0; k < levels; ++k, n *= 2) {
        std::vector<double> next(k + 1);
        next[0] = midpoint(g, T, n);
        double pow4 = 1.0;
        for (int j = 1; j <= k; ++j) {
            pow4 *= 4.0;
            next[j] = next[j - 1] + (next[j - 1] - row[j - 1]) / (pow4 - 1.0);
        }
        if (k > 2 && std::abs(next.back() - prev_best) <
                         1e-14 * std::max(1.0, std::abs(next.back())))
            return next.back();
        prev_best = next.back();
        row = std::move(next);
    }
    return prev_best;
}

struct FlowPoint {
    double x, u, v;
};

// Classical RK4 on u' = v, v' = -lambda u - |u|^{p-1} u with n fixed steps;
// returns the full path.
inline std::vector<FlowPoint> rk4_nonlinear_path(double u, double v, double lambda, double p,
                                                 double x0, double x1, int n) {
    std::vector<FlowPoint> path;
    path.reserve(n + 1);
    auto fv = [&](double uu) {
        return -lambda * uu - (uu >= 0.0 ? std::pow(uu, p) : -std::pow(-uu, p));
    };
    const double h = (x1 - x0) / n;
    double x = x0;
    path.push_back({x, u, v});
    for (int i = 0; i < n; ++i) {
        const double k1u = v, k1v = fv(u);
        const double k2u = v + 0.5 * h * k1v, k2v = fv(u + 0.5 * h * k1u);
        const double k3u = v + 0.5 * h * k2v, k3v = fv(u + 0.5 * h * k2u);
        const double k4u = v + h * k3v, k4v = fv(u + h * k3u);
        u += h / 6.0 * (k1u + 2 * k2u + 2 * k3u + k4u);
        v += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
        x = x0 + (i + 1) * h;
        path.push_back({x, u, v});
    }
    return path;
}

// First x where the scalar functional phi(u,v) changes sign along the path,
// refined by secant interpolation between the bracketing grid points.
inline double first_crossing(const std::vector<FlowPoint>& path,
                             const std::function<double(double, double)>& phi) {
    double prev = phi(path.front().u, path.front().v);
    for (std::size_t i = 1; i < path.size(); ++i) {
        const double cur = phi(path[i].u, path[i].v);
        if ((prev > 0.0) != (cur > 0.0)) {
            const double w = prev / (prev - cur);
            return path[i - 1].x + w * (path[i].x - path[i - 1].x);
        }
        prev = cur;
    }
    return path.back().x;
}

}  // namespace oracle
