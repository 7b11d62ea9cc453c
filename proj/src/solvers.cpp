#include "mnlab/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

namespace mnlab::solvers {

namespace tm = mnlab::timemaps;
namespace sh = mnlab::shooting;

namespace detail {

int worker_count() {
    int n = static_cast<int>(std::thread::hardware_concurrency());
    if (n < 1) n = 1;
    if (const char* env = std::getenv("MNLAB_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) n = std::min(n, cap);
    }
    return n;
}

// Static partition; results must be written by index by the callable.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const int workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += workers) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

namespace {

struct SymRoot {
    double v0 = 0.0;
    double r_max = 0.0;
    double x_max = 0.0;
    double amplitude_root = 0.0;  // u0 (lambda <= 0) or u_l (lambda > 0)
};

// lambda < 0: gate amplitude u_l on the same nonlinear energy level as
// (u0, 0), sitting on the line v = -sqrt(-lambda(1-C^{-2})) u.
double gate_amplitude(double u0, double lambda, double p, double C) {
    const double E0 = 0.5 * lambda * u0 * u0 + std::pow(u0, p + 1.0) / (p + 1.0);
    const double a = 0.5 * lambda / (C * C);
    auto psi = [&](double s) { return a * s * s + std::pow(s, p + 1.0) / (p + 1.0) - E0; };
    const double sbar = std::pow(-lambda * (p + 1.0) / (2.0 * C * C), 1.0 / (p - 1.0));
    return roots::bisect(psi, sbar, u0);
}

// Invert time_N_full(lambda, p, .) = target on (u_ho, inf) for lambda < 0.
double invert_time_N_full_negative(double lambda, double p, double target,
                                   const SolveOptions& opts, double hint) {
    const double u_ho = tm::homoclinic_crossing(lambda, p);
    auto f = [&](double u0) { return tm::time_N_full(lambda, p, u0, opts.quad) - target; };
    double lo = 0.0;
    for (double eps : {1e-9, 1e-12, 1e-14}) {
        lo = u_ho * (1.0 + eps);
        if (f(lo) > 0.0) break;
        lo = 0.0;
    }
    if (lo == 0.0)
        throw SolverError("time_N_full inversion: target " + std::to_string(target) +
                          " unreachable above the homoclinic crossing (lambda = " +
                          std::to_string(lambda) + ")");
    double hi = hint > lo ? hint : 2.0 * u_ho;
    while (f(hi) > 0.0) {
        hi *= 2.0;
        if (!std::isfinite(hi))
            throw SolverError("time_N_full inversion: no upper bracket");
    }
    return roots::bisect(f, lo, hi, opts.root);
}

SymRoot symmetric_root(const ProblemParams& params, const SolveOptions& opts,
                       double hint = 0.0) {
    const double lambda = params.lambda, p = params.p, h = params.h;
    if (!(lambda < kPiSq))
        throw NoSolutionError("solve_symmetric: positive solutions require lambda < pi^2 (= " +
                              std::to_string(kPiSq) + "), got " + std::to_string(lambda));
    const double target = 0.5 * (1.0 - h);
    SymRoot out;
    if (lambda < 0.0) {
        const double C = tm::linear_gate_ratio(lambda, h);
        auto total = [&](double u0) {
            const double u_l = gate_amplitude(u0, lambda, p, C);
            return tm::time_N_full(lambda, p, u0, opts.quad) +
                   tm::time_N_partial(lambda, p, u0, u_l, opts.quad) - target;
        };
        const double u_ho = tm::homoclinic_crossing(lambda, p);
        double lo = 0.0;
        for (double eps : {1e-9, 1e-12, 1e-14}) {
            lo = u_ho * (1.0 + eps);
            if (total(lo) > 0.0) break;
            lo = 0.0;
        }
        if (lo == 0.0)
            throw SolverError("solve_symmetric: no bracket above the homoclinic crossing at "
                              "lambda = " + std::to_string(lambda) + ", h = " + std::to_string(h));
        double hi = hint > lo ? hint : 2.0 * u_ho;
        while (total(hi) > 0.0) {
            hi *= 2.0;
            if (!std::isfinite(hi)) throw SolverError("solve_symmetric: no upper bracket");
        }
        const double u0 = roots::bisect(total, lo, hi, opts.root);
        const double E0 = 0.5 * lambda * u0 * u0 + std::pow(u0, p + 1.0) / (p + 1.0);
        out.v0 = std::sqrt(2.0 * E0);
        out.r_max = u0;
        out.x_max = tm::time_N_full(lambda, p, u0, opts.quad);
        out.amplitude_root = u0;
    } else if (lambda == 0.0) {
        auto f = [&](double u0) { return tm::time_N_full(0.0, p, u0, opts.quad) - target; };
        // the map scales as u0^{-(p-1)/2}, which pins the root up to rounding
        const double T1 = tm::time_N_full(0.0, p, 1.0, opts.quad);
        const double est = hint > 0.0 ? hint : std::pow(T1 / target, 2.0 / (p - 1.0));
        double lo = 0.5 * est, hi = 2.0 * est;
        while (f(lo) < 0.0) lo *= 0.5;
        while (f(hi) > 0.0) hi *= 2.0;
        const double u0 = roots::bisect(f, lo, hi, opts.root);
        out.v0 = std::sqrt(2.0 * std::pow(u0, p + 1.0) / (p + 1.0));
        out.r_max = u0;
        out.x_max = 0.5;
        out.amplitude_root = u0;
    } else {
        const double theta_h = 0.5 * h * std::sqrt(lambda);
        auto f = [&](double u_l) {
            return tm::time_N_axis_to_ray(lambda, p, theta_h, u_l, opts.quad) - target;
        };
        double lo = hint > 0.0 ? hint * 1e-3 : 1e-10;
        while (f(lo) < 0.0 && lo > 1e-280) lo *= 1e-3;
        double hi = hint > 0.0 ? hint : 1.0;
        while (f(hi) > 0.0) {
            hi *= 2.0;
            if (!std::isfinite(hi)) throw SolverError("solve_symmetric: no upper bracket");
        }
        const double u_l = roots::bisect(f, lo, hi, opts.root);
        const double v_l = std::sqrt(lambda) * std::tan(theta_h) * u_l;
        const double E = energy_nonlinear(u_l, v_l, lambda, p);
        out.v0 = std::sqrt(2.0 * E);
        out.r_max = u_l / std::cos(theta_h);
        out.x_max = 0.5;
        out.amplitude_root = u_l;
    }
    return out;
}

}  // namespace

double symmetric_amplitude(const ProblemParams& params, const SolveOptions& opts,
                           double amplitude_hint) {
    return symmetric_root(params, opts, amplitude_hint).r_max;
}

double symmetric_v0(const ProblemParams& params, const SolveOptions& opts) {
    return symmetric_root(params, opts).v0;
}

double default_v0_max(const ProblemParams& params, const SolveOptions& opts) {
    return 10.0 * symmetric_v0(params, opts);
}

PositiveSolution solve_symmetric(const ProblemParams& params, const SolveOptions& opts) {
    const SymRoot root = symmetric_root(params, opts);
    sh::ShootResult sr = sh::shoot(root.v0, params, opts.flow);
    PositiveSolution& sol = sr.solution;

    const double scale = std::max(1.0, root.r_max);
    if (!sr.positive)
        throw SolverError("solve_symmetric: constructed trajectory lost positivity at x = " +
                          std::to_string(sr.first_zero_x));
    if (sol.shoot_residual > 1e-7 * scale)
        throw SolverError("solve_symmetric: shoot residual " +
                          std::to_string(sol.shoot_residual) + " exceeds 1e-7 x scale");
    sol.fixed_point_residual = sh::fixed_point_residual(sol);
    if (sol.fixed_point_residual > 1e-6 * scale)
        throw SolverError("solve_symmetric: Green fixed-point residual " +
                          std::to_string(sol.fixed_point_residual) + " exceeds 1e-6 x scale");
    if (sol.symmetry != Symmetry::Symmetric)
        throw SolverError("solve_symmetric: output failed the symmetry check, defect = " +
                          std::to_string(sol.symmetry_defect()));
    // construction values are sharper than sampled ones
    sol.r_max = root.r_max;
    sol.x_max = root.x_max;
    return sol;
}

std::vector<PositiveSolution> find_all_positive(const ProblemParams& params, double v0_max,
                                                int n_scan, const SolveOptions& opts) {
    if (!(v0_max > 0.0)) throw std::invalid_argument("find_all_positive: v0_max must be > 0");
    if (n_scan < 100) throw std::invalid_argument("find_all_positive: n_scan must be >= 100");

    sh::FlowConfig lean = opts.flow;
    lean.dense_output = false;
    // the scan only needs the sign structure of v0 -> u(1); final roots are
    // re-polished at the verification tolerance
    sh::FlowConfig coarse = lean;
    coarse.rk_abs_tol = coarse.rk_rel_tol = std::max(1e-9, lean.rk_rel_tol);

    std::vector<double> grid(n_scan), res(n_scan);
    for (int i = 0; i < n_scan; ++i) grid[i] = v0_max * double(i + 1) / double(n_scan);
    detail::parallel_for(n_scan, [&](std::size_t i) {
        res[i] = sh::shoot_terminal_u(grid[i], params, coarse);
    });

    struct Bracket {
        double lo, hi;
        bool keep = false;
    };
    std::vector<Bracket> brackets;
    for (int i = 0; i + 1 < n_scan; ++i)
        if (res[i] == 0.0 || (res[i] > 0.0) != (res[i + 1] > 0.0))
            brackets.push_back({grid[i], grid[i + 1]});

    // phase 1: narrow each bracket cheaply, then discard brackets whose
    // positive-side trajectory loses positivity in the interior (sign
    // changes of the odd-extended flow, not positive solutions)
    detail::parallel_for(brackets.size(), [&](std::size_t k) {
        auto& b = brackets[k];
        auto f = [&](double v) { return sh::shoot_terminal_u(v, params, coarse); };
        double flo = f(b.lo), fhi = f(b.hi);
        if ((flo > 0.0) == (fhi > 0.0) && flo != 0.0 && fhi != 0.0) return;
        for (int it = 0; it < 16; ++it) {
            const double mid = 0.5 * (b.lo + b.hi);
            const double fm = f(mid);
            if (fm == 0.0) break;
            if ((fm > 0.0) == (flo > 0.0)) { b.lo = mid; flo = fm; }
            else { b.hi = mid; fhi = fm; }
        }
        const double probe = flo > 0.0 ? b.lo : b.hi;
        sh::ShootResult sr = sh::shoot(probe, params, coarse);
        b.keep = sr.positive;
    });

    auto refine = [&](double lo, double hi) {
        auto f = [&](double v) { return sh::shoot_terminal_u(v, params, lean); };
        // re-establish the bracket at the tight tolerance
        const double w = std::max(hi - lo, 1e-12 * std::max(1.0, hi));
        double a = std::max(lo - 8.0 * w, 0.5 * lo), c = hi + 8.0 * w;
        double fa = f(a), fc = f(c);
        if ((fa > 0.0) == (fc > 0.0)) return std::nan("");
        roots::RootOptions ro;
        ro.width_tol = 1e-13;
        return roots::bisect(f, a, c, ro);
    };

    std::vector<PositiveSolution> found;
    auto admit = [&](double v0) {
        if (!(v0 > 0.0) || !std::isfinite(v0)) return;
        for (const auto& s : found)
            if (std::abs(s.v0 - v0) <= 1e-8 * std::max(1.0, v0)) return;
        sh::ShootResult sr = sh::shoot(v0, params, opts.flow);
        if (!sr.positive) return;
        if (sr.solution.shoot_residual > 1e-9 * std::max(1.0, sr.solution.r_max)) return;
        sr.solution.fixed_point_residual = sh::fixed_point_residual(sr.solution);
        found.push_back(std::move(sr.solution));
    };
    for (const auto& b : brackets)
        if (b.keep) admit(refine(b.lo, b.hi));

    // complete reflection pairs: the mirror of an asymmetric solution has
    // initial slope -u'(1)
    const std::size_t primary = found.size();
    for (std::size_t k = 0; k < primary; ++k) {
        if (found[k].symmetry == Symmetry::Symmetric) continue;
        const double v0_ref = -found[k].arcs[2].samples.back().v;
        if (!(v0_ref > 0.0)) continue;
        bool present = false;
        for (const auto& s : found)
            if (std::abs(s.v0 - v0_ref) <= 1e-6 * std::max(1.0, v0_ref)) present = true;
        if (present) continue;
        auto f = [&](double v) { return sh::shoot_terminal_u(v, params, lean); };
        const double lo = v0_ref * 0.995, hi = v0_ref * 1.005;
        const double flo = f(lo), fhi = f(hi);
        if ((flo > 0.0) != (fhi > 0.0)) admit(refine(lo, hi));
    }

    std::sort(found.begin(), found.end(),
              [](const PositiveSolution& a, const PositiveSolution& b) { return a.v0 < b.v0; });
    return found;
}

PhiLandscape phi_landscape(double R, double lambda, double p, double epsilon,
                           const SolveOptions& opts) {
    if (!(lambda > 0.0)) throw std::invalid_argument("phi_landscape: lambda must be > 0");
    if (!(R > 0.0)) throw std::invalid_argument("phi_landscape: R must be > 0");
    if (!(epsilon > 0.0 && epsilon < 0.25 * kPi))
        throw std::invalid_argument("phi_landscape: epsilon must lie in (0, pi/4)");

    auto phi_at = [&](double th) { return tm::phi(R, th, lambda, p, opts.quad); };

    // monotone middle check, widening the guard band on failure: when R is
    // only moderately large the maximizer sits well below pi/2
    const double eps_cap = 0.45 * kPi * 0.5;
    double eps = epsilon;
    std::string last_violation;
    bool ok = false;
    for (int attempt = 0; attempt <= 3 && !ok; ++attempt) {
        if (attempt > 0) {
            const double grown = std::min(2.0 * eps, eps_cap);
            if (grown == eps) break;
            eps = grown;
        }
        const int n = 256;
        const double a = eps, b = 0.5 * kPi - eps;
        ok = true;
        double prev = phi_at(a);
        for (int i = 1; i <= n; ++i) {
            const double th = a + (b - a) * double(i) / n;
            const double cur = phi_at(th);
            if (cur <= prev - 1e-11 * std::max(1.0, std::abs(prev))) {
                ok = false;
                last_violation = "[" + std::to_string(a + (b - a) * double(i - 1) / n) + ", " +
                                 std::to_string(th) + "]";
                break;
            }
            prev = cur;
        }
    }
    if (!ok)
        throw LandscapeError("phi_landscape: R below R* for lambda = " + std::to_string(lambda) +
                             ": phi(R,.) is not increasing on the middle subinterval " +
                             last_violation + " (R = " + std::to_string(R) + ")");

    PhiLandscape L;
    L.R = R; L.lambda = lambda; L.p = p; L.epsilon = eps;

    auto golden = [&](double a, double b, bool minimize) {
        const double gr = 0.6180339887498949;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = phi_at(x1), f2 = phi_at(x2);
        if (minimize) { f1 = -f1; f2 = -f2; }
        for (int it = 0; it < 90 && b - a > 1e-12; ++it) {
            if (f1 < f2) {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = phi_at(x2); if (minimize) f2 = -f2;
            } else {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = phi_at(x1); if (minimize) f1 = -f1;
            }
        }
        return 0.5 * (a + b);
    };

    // maximizer on [pi/2 - eps, pi/2)
    {
        const int n = 512;
        const double a = 0.5 * kPi - eps, b = 0.5 * kPi - 1e-10;
        int best = 0; double best_val = -1.0;
        for (int i = 0; i <= n; ++i) {
            const double th = a + (b - a) * double(i) / n;
            const double val = phi_at(th);
            if (val > best_val) { best_val = val; best = i; }
        }
        const double lo = a + (b - a) * double(std::max(0, best - 1)) / n;
        const double hi = a + (b - a) * double(std::min(n, best + 1)) / n;
        L.theta_M = best == 0 ? a : (best == n ? b : golden(lo, hi, false));
        L.phi_M = phi_at(L.theta_M);
    }
    // minimizer on [0, eps]
    {
        const int n = 512;
        int best = 0; double best_val = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= n; ++i) {
            const double th = eps * double(i) / n;
            const double val = phi_at(th);
            if (val < best_val) { best_val = val; best = i; }
        }
        if (best == 0) {
            L.theta_m = 0.0;
        } else if (best == n) {
            L.theta_m = eps;
        } else {
            L.theta_m = golden(eps * double(best - 1) / n, eps * double(best + 1) / n, true);
        }
        L.phi_m = phi_at(L.theta_m);
    }
    if (!(L.phi_M >= phi_at(0.5 * kPi - eps)) || !(phi_at(0.5 * kPi - eps) > L.phi_m))
        throw LandscapeError("phi_landscape: level ordering phi_M >= phi(pi/2-eps) > phi_m "
                             "failed at R = " + std::to_string(R));

    // theta_bar: least theta past the peak with phi = phi_m
    {
        const int n = 512;
        const double a = L.theta_M, b = 0.5 * kPi - 1e-12;
        double prev = L.phi_M, prev_th = a;
        double found_lo = 0.0, found_hi = 0.0;
        for (int i = 1; i <= n; ++i) {
            const double th = a + (b - a) * double(i) / n;
            const double val = phi_at(th);
            if (val <= L.phi_m) { found_lo = prev_th; found_hi = th; break; }
            prev = val; prev_th = th;
        }
        (void)prev;
        if (found_hi == 0.0)
            throw LandscapeError("phi_landscape: no crossing of the phi_m level past the peak");
        roots::RootOptions ro; ro.width_tol = 1e-13;
        L.theta_bar = roots::bisect([&](double th) { return phi_at(th) - L.phi_m; },
                                    found_lo, found_hi, ro);
    }

    // both climbing branches must be monotone, otherwise the landscape has
    // several peaks and the pairing construction does not apply
    auto monotone_on = [&](double a, double b, bool increasing) {
        const int n = 200;
        double prev = phi_at(a);
        for (int i = 1; i <= n; ++i) {
            const double th = a + (b - a) * double(i) / n;
            const double cur = phi_at(th);
            const double slack = 1e-11 * std::max(1.0, std::abs(prev));
            if (increasing ? cur <= prev - slack : cur >= prev + slack) return false;
            prev = cur;
        }
        return true;
    };
    if (L.theta_M > L.theta_m && !monotone_on(L.theta_m, L.theta_M, true))
        throw UnsupportedLandscapeError(
            "phi_landscape: ascent [theta_m, theta_M] is not monotone (multi-peak landscape)");
    if (L.theta_bar > L.theta_M && !monotone_on(L.theta_M, L.theta_bar, false))
        throw UnsupportedLandscapeError(
            "phi_landscape: descent [theta_M, theta_bar] is not monotone (multi-peak landscape)");
    return L;
}

std::pair<double, double> climb_pair(const PhiLandscape& L, double level,
                                     const SolveOptions& opts) {
    if (!(level > L.phi_m && level < L.phi_M))
        throw std::invalid_argument("climb_pair: level must lie strictly inside (phi_m, phi_M)");
    auto phi_at = [&](double th) { return tm::phi(L.R, th, L.lambda, L.p, opts.quad); };
    roots::RootOptions ro;
    ro.width_tol = 1e-14;
    const double left =
        roots::bisect([&](double th) { return phi_at(th) - level; }, L.theta_m, L.theta_M, ro);
    const double right =
        roots::bisect([&](double th) { return phi_at(th) - level; }, L.theta_M, L.theta_bar, ro);
    return {left, right};
}

MatchingSolution solve_matching(double lambda, double p, double R, double epsilon,
                                const SolveOptions& opts) {
    const double sq = std::sqrt(lambda);
    if (!(lambda > 0.25 * kPiSq && lambda < kPiSq))
        throw std::invalid_argument(
            "solve_matching: lambda must lie in (pi^2/4, pi^2), got " + std::to_string(lambda));
    // admissibility of the guard band: pi/2 + 2 eps < sqrt(lambda) < pi - 2 eps
    const double eps_adm = 0.5 * std::min(sq - 0.5 * kPi, kPi - sq);
    const PhiLandscape L = phi_landscape(R, lambda, p, std::min(epsilon, 0.9 * eps_adm), opts);
    if (L.epsilon >= eps_adm)
        throw SolverError("solve_matching: R too small for lambda = " + std::to_string(lambda) +
                          ": landscape needs epsilon = " + std::to_string(L.epsilon) +
                          " >= admissible " + std::to_string(eps_adm));

    const double g_lo = L.theta_m + L.theta_bar + L.phi_m;
    const double g_hi = 2.0 * L.theta_M + L.phi_M;
    if (!(g_lo < sq))
        throw SolverError("solve_matching: R too small for lambda: lower bracket g(0+) = " +
                          std::to_string(g_lo) + " >= sqrt(lambda) = " + std::to_string(sq));
    if (!(g_hi > sq))
        throw SolverError("solve_matching: R too small for lambda: upper bracket g(1-) = " +
                          std::to_string(g_hi) + " <= sqrt(lambda)");

    auto level_of = [&](double s) { return L.phi_m + s * (L.phi_M - L.phi_m); };
    auto g_of = [&](double s, double* th0 = nullptr, double* th1 = nullptr) {
        const auto [l, r] = climb_pair(L, level_of(s), opts);
        if (th0) *th0 = l;
        if (th1) *th1 = r;
        return l + r + level_of(s) - sq;
    };

    double lo = 1e-12, hi = 1.0 - 1e-12;
    double glo = g_of(lo);
    if (glo >= 0.0) throw SolverError("solve_matching: bracket lost at s -> 0");
    for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double gm = g_of(mid);
        if (std::abs(gm) < 1e-12) { lo = hi = mid; break; }
        if ((gm > 0.0) == (glo > 0.0)) { lo = mid; glo = gm; }
        else hi = mid;
    }
    MatchingSolution m;
    m.lambda = lambda; m.p = p; m.R = R;
    m.s_hat = 0.5 * (lo + hi);
    g_of(m.s_hat, &m.theta0, &m.theta1);
    const double phi0 = tm::phi(R, m.theta0, lambda, p, opts.quad);
    const double phi1 = tm::phi(R, m.theta1, lambda, p, opts.quad);
    m.h = 1.0 - phi0 / sq;
    if (!(m.h > 0.0 && m.h < 1.0))
        throw SolverError("solve_matching: selected window width h = " + std::to_string(m.h) +
                          " is outside (0,1)");
    m.angle_residual = std::abs(m.theta0 + m.theta1 - m.h * sq);
    m.level_residual = std::max(std::abs(phi0 - (1.0 - m.h) * sq),
                                std::abs(phi1 - (1.0 - m.h) * sq));
    return m;
}

PositiveSolution matching_to_solution(const MatchingSolution& m, const SolveOptions& opts) {
    const ProblemParams params(m.lambda, m.p, m.h);
    const double sq = std::sqrt(m.lambda);
    const double u_t = m.R * std::cos(m.theta0);
    const double v_t = sq * m.R * std::sin(m.theta0);

    // slope at the axis through the conserved nonlinear energy, with the
    // backward flow as a consistency check that the flight time is (1-h)/2
    const double E = energy_nonlinear(u_t, v_t, m.lambda, m.p);
    const double v0 = std::sqrt(2.0 * E);
    sh::FlowConfig lean = opts.flow;
    lean.dense_output = false;
    const sh::FlowResult back = sh::nonlinear_flow({params.x_left(), u_t, v_t}, params.x_left(),
                                                   m.lambda, m.p, lean,
                                                   sh::Direction::Backward);
    if (std::abs(back.end.u) > 1e-4 * m.R)
        throw SolverError("matching_to_solution: backward flow misses the v-axis by u = " +
                          std::to_string(back.end.u));

    sh::ShootResult sr = sh::shoot(v0, params, opts.flow);
    PositiveSolution& sol = sr.solution;
    if (!sr.positive)
        throw SolverError("matching_to_solution: reconstructed trajectory is not positive");
    if (sol.shoot_residual > 1e-6 * std::max(1.0, m.R))
        throw SolverError("matching_to_solution: shoot residual " +
                          std::to_string(sol.shoot_residual) + " exceeds tolerance");
    if (!(sol.x_max > params.x_left() && sol.x_max < params.x_right()))
        throw SolverError("matching_to_solution: maximum at x = " + std::to_string(sol.x_max) +
                          " is not inside the linear window");
    sol.fixed_point_residual = sh::fixed_point_residual(sol);
    return sol;
}

PositiveSolution reflect(const PositiveSolution& sol) {
    PositiveSolution out(sol.params);
    out.r_max = sol.r_max;
    out.x_max = 1.0 - sol.x_max;
    out.shoot_residual = sol.shoot_residual;
    out.fixed_point_residual = sol.fixed_point_residual;
    out.energy_drift = sol.energy_drift;
    switch (sol.symmetry) {
        case Symmetry::Symmetric: out.symmetry = Symmetry::Symmetric; break;
        case Symmetry::AsymmetricLeft: out.symmetry = Symmetry::AsymmetricRight; break;
        case Symmetry::AsymmetricRight: out.symmetry = Symmetry::AsymmetricLeft; break;
    }
    for (int k = 0; k < 3; ++k) {
        const TrajectoryArc& src = sol.arcs[2 - k];
        TrajectoryArc& dst = out.arcs[k];
        dst.regime = src.regime;
        dst.x_start = 1.0 - src.x_end;
        dst.x_end = 1.0 - src.x_start;
        dst.samples.reserve(src.samples.size());
        for (auto it = src.samples.rbegin(); it != src.samples.rend(); ++it)
            dst.samples.push_back({1.0 - it->x, it->u, -it->v});
    }
    out.v0 = out.arcs[0].samples.empty() ? sol.v0 : out.arcs[0].samples.front().v;
    return out;
}

QuarterHalfAmplitudes section4_amplitudes(double lambda, double p, double h,
                                          const SolveOptions& opts) {
    if (!(lambda < 0.0)) throw std::invalid_argument("section4_amplitudes: lambda must be < 0");
    if (!(h > 0.0 && h < 1.0))
        throw std::invalid_argument("section4_amplitudes: h must lie in (0,1)");
    QuarterHalfAmplitudes out;
    out.u1 = invert_time_N_full_negative(lambda, p, 0.5 * (1.0 - h), opts, 0.0);
    out.u0 = invert_time_N_full_negative(lambda, p, 0.25 * (1.0 - h), opts, 0.0);
    out.v0 = std::sqrt(2.0 * energy_nonlinear(out.u0, 0.0, lambda, p));
    out.v1 = std::sqrt(2.0 * energy_nonlinear(out.u1, 0.0, lambda, p));
    return out;
}

}  // namespace mnlab::solvers
