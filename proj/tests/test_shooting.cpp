#include <doctest.h>

#include <cmath>
#include <vector>

#include "mnlab/core.hpp"
#include "mnlab/shooting.hpp"
#include "mnlab/timemaps.hpp"

using namespace mnlab;
namespace sh = mnlab::shooting;
namespace tmap = mnlab::timemaps;

TEST_SUITE("shooting") {

TEST_CASE("equilibrium of the nonlinear system is fixed") {
    const double omega = tmap::equilibrium(-1.0, 3.0);
    const auto r = sh::nonlinear_flow({0.0, omega, 0.0}, 0.7, -1.0, 3.0);
    CHECK(std::abs(r.end.u - omega) < 1e-9);
    CHECK(std::abs(r.end.v) < 1e-9);
}

TEST_CASE("full nonlinear dip returns to the axis with reversed slope") {
    const double lambda = -1.0, p = 3.0, u0 = 3.0;
    const double v0 = std::sqrt(lambda * u0 * u0 + 2.0 / (p + 1.0) * std::pow(u0, p + 1.0));
    const double T = tmap::time_N_full(lambda, p, u0);
    const auto r = sh::nonlinear_flow({0.0, 0.0, v0}, 2.0 * T, lambda, p);
    CHECK(std::abs(r.end.u) < 1e-7);
    CHECK(std::abs(r.end.v + v0) < 1e-7);
    CHECK(r.energy_drift < 1e-9);
}

TEST_CASE("reversibility") {
    const auto fwd = sh::nonlinear_flow({0.0, 1.2, 0.7}, 0.45, -2.0, 3.0);
    const auto back =
        sh::nonlinear_flow(fwd.end, 0.45, -2.0, 3.0, {}, sh::Direction::Backward);
    CHECK(std::abs(back.end.u - 1.2) < 1e-9);
    CHECK(std::abs(back.end.v - 0.7) < 1e-9);
}

TEST_CASE("linear flow closed forms") {
    // half rotation at lambda = pi^2
    const auto half = sh::linear_flow({0.0, 0.0, 2.5}, 1.0, kPiSq);
    CHECK(std::abs(half.u) < 1e-13);
    CHECK(half.v == doctest::Approx(-2.5).epsilon(1e-13));

    // lambda = 0: equilibria on the u-axis
    const auto still = sh::linear_flow({0.0, 1.7, 0.0}, 0.9, 0.0);
    CHECK(still.u == 1.7);
    CHECK(still.v == 0.0);

    // lambda < 0: the unstable line is invariant and scales exponentially
    const auto wu = sh::linear_flow({0.0, 1.3, 1.3}, 0.6, -1.0);
    CHECK(wu.u == doctest::Approx(1.3 * std::exp(0.6)).epsilon(1e-13));
    CHECK(wu.v == doctest::Approx(1.3 * std::exp(0.6)).epsilon(1e-13));
}

TEST_CASE("clockwise rotation at rate sqrt(lambda) in the rescaled plane") {
    const double lambda = 5.0, sq = std::sqrt(lambda);
    sh::FlowConfig cfg;
    const auto arc = sh::linear_flow_arc({0.0, 1.0, 0.3}, 0.4, lambda, cfg);
    const auto angle = [&](const PhaseState& s) { return std::atan2(s.v / sq, s.u); };
    const double th0 = angle(arc.samples.front());
    for (std::size_t i = 1; i < arc.samples.size(); i += 97) {
        const auto& s = arc.samples[i];
        double expect = th0 - sq * (s.x - arc.samples.front().x);
        while (expect <= -kPi) expect += 2.0 * kPi;
        CHECK(angle(s) == doctest::Approx(expect).epsilon(1e-10));
    }
}

TEST_CASE("shoot composes the three flows") {
    const ProblemParams params(-1.0, 3.0, 0.5);
    const double v0 = 7.0;
    const auto res = sh::shoot(v0, params);

    sh::FlowConfig lean;
    lean.dense_output = false;
    const auto f1 = sh::nonlinear_flow({0.0, 0.0, v0}, params.x_left(), params.lambda, params.p, lean);
    const auto mid = sh::linear_flow(f1.end, params.h, params.lambda);
    const auto f3 = sh::nonlinear_flow(mid, 1.0 - params.x_right(), params.lambda, params.p, lean);
    CHECK(std::abs(res.terminal.u - f3.end.u) < 1e-10);
    CHECK(std::abs(res.terminal.v - f3.end.v) < 1e-10);

    // arcs cover [0,1] with exact interface endpoints
    CHECK(res.solution.arcs[0].samples.front().x == 0.0);
    CHECK(res.solution.arcs[0].samples.back().x == params.x_left());
    CHECK(res.solution.arcs[1].samples.back().x == params.x_right());
    CHECK(res.solution.arcs[2].samples.back().x == 1.0);
}

TEST_CASE("early zero crossing is an event, not an error") {
    // enormous slope: the first nonlinear arch completes well before x_left
    const ProblemParams params(0.0, 3.0, 0.1);
    const double v0 = 4000.0;
    const auto res = sh::shoot(v0, params);
    CHECK_FALSE(res.positive);
    CHECK(res.first_zero_x > 0.0);
    CHECK(res.first_zero_x < params.x_left());
    // the crossing sits at twice the half-period of the matching amplitude
    const double u0 = std::pow((params.p + 1.0) * v0 * v0 / 2.0, 1.0 / (params.p + 1.0));
    CHECK(res.first_zero_x ==
          doctest::Approx(2.0 * tmap::time_N_full(0.0, params.p, u0)).epsilon(1e-6));
}

TEST_CASE("green operator on analytic data") {
    const std::size_t n = 2001;
    std::vector<double> x(n), f(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = double(i) / double(n - 1);
        f[i] = kPiSq * std::sin(kPi * x[i]);
    }
    const auto u = sh::green_apply(x, f);
    CHECK(u.front() == 0.0);
    CHECK(std::abs(u.back()) < 1e-12);
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(u[i] - std::sin(kPi * x[i])));
    CHECK(err < 1e-8);

    std::vector<double> zero(n, 0.0), one(n, 1.0);
    for (double v : sh::green_apply(x, zero)) CHECK(v == 0.0);
    const auto q = sh::green_apply(x, one);
    double err2 = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        err2 = std::max(err2, std::abs(q[i] - 0.5 * x[i] * (1.0 - x[i])));
    CHECK(err2 < 1e-12);
}

TEST_CASE("fixed-point residual separates solutions from impostors") {
    // zero function has zero defect
    PositiveSolution zero{ProblemParams(0.0, 3.0, 0.5)};
    for (int k = 0; k < 3; ++k) {
        auto& arc = zero.arcs[k];
        arc.regime = k == 1 ? Regime::Linear : Regime::Nonlinear;
        arc.x_start = k == 0 ? 0.0 : (k == 1 ? 0.25 : 0.75);
        arc.x_end = k == 0 ? 0.25 : (k == 1 ? 0.75 : 1.0);
        for (int i = 0; i <= 100; ++i) {
            const double x = arc.x_start + (arc.x_end - arc.x_start) * i / 100.0;
            arc.samples.push_back({x, 0.0, 0.0});
        }
    }
    CHECK(sh::fixed_point_residual(zero) == 0.0);
}

}  // TEST_SUITE
