#include <doctest.h>

#include <cmath>

#include "mnlab/core.hpp"
#include "mnlab/timemaps.hpp"
#include "oracle.hpp"

using namespace mnlab;
namespace tmap = mnlab::timemaps;

TEST_SUITE("timemaps") {

TEST_CASE("homoclinic crossing and equilibrium") {
    CHECK(tmap::homoclinic_crossing(-2.0, 3.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(tmap::homoclinic_crossing(-1.0, 3.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
    for (double p : {2.0, 3.0, 4.0})
        CHECK(tmap::homoclinic_crossing(-2.0 / (p + 1.0), p) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(tmap::homoclinic_crossing(0.0, 3.0), std::invalid_argument);

    CHECK(tmap::equilibrium(-1.0, 3.0) == doctest::Approx(1.0));
    CHECK(tmap::equilibrium(-4.0, 3.0) == doctest::Approx(2.0));
    CHECK(tmap::equilibrium(-1.0, 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(tmap::equilibrium(0.5, 3.0), std::invalid_argument);
    for (double lambda : {-0.3, -1.0, -9.0})
        CHECK(tmap::equilibrium(lambda, 3.0) < tmap::homoclinic_crossing(lambda, 3.0));
}

TEST_CASE("full time map: scaling, small-amplitude limit, homoclinic blow-up") {
    // lambda = 0 homogeneity: T(0, 4 u0) / T(0, u0) = 4^{-(p-1)/2}
    const double r = tmap::time_N_full(0.0, 3.0, 4.0) / tmap::time_N_full(0.0, 3.0, 1.0);
    CHECK(r == doctest::Approx(0.25).epsilon(1e-11));

    CHECK(tmap::time_N_full(1.0, 3.0, 1e-8) ==
          doctest::Approx(0.5 * kPi).epsilon(1e-4 / (0.5 * kPi)));

    const double u_ho = tmap::homoclinic_crossing(-1.0, 3.0);
    CHECK(tmap::time_N_full(-1.0, 3.0, u_ho * (1.0 + 1e-9)) > 10.0);
    CHECK_THROWS_AS(tmap::time_N_full(-1.0, 3.0, u_ho * 0.999), std::invalid_argument);

    double prev = tmap::time_N_full(-1.0, 3.0, 1.5);
    for (double u0 : {2.0, 3.0, 5.0, 9.0}) {
        const double cur = tmap::time_N_full(-1.0, 3.0, u0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("partial time map against the RK oracle") {
    CHECK(tmap::time_N_partial(-1.0, 3.0, 3.0, 0.0) ==
          doctest::Approx(tmap::time_N_full(-1.0, 3.0, 3.0)).epsilon(1e-13));
    CHECK(tmap::time_N_partial(-1.0, 3.0, 3.0, 3.0 * (1.0 - 1e-9)) < 1e-4);
    CHECK_THROWS_AS(tmap::time_N_partial(-1.0, 3.0, 3.0, 3.0), std::invalid_argument);

    // flow (N) from (3, 0) forward until u = 1 and compare the elapsed time
    const auto path = oracle::rk4_nonlinear_path(3.0, 0.0, -1.0, 3.0, 0.0, 1.0, 400000);
    const double t_cross =
        oracle::first_crossing(path, [](double u, double) { return u - 1.0; });
    CHECK(std::abs(tmap::time_N_partial(-1.0, 3.0, 3.0, 1.0) - t_cross) < 1e-8);
}

TEST_CASE("axis-to-cone time map") {
    CHECK(tmap::time_N_from_axis(-1.0, 3.0, 1.0) > tmap::time_N_from_axis(-1.0, 3.0, 2.0));
    CHECK(tmap::time_N_from_axis(-1.0, 3.0, 1e4) < 0.05);
    CHECK_THROWS_AS(tmap::time_N_from_axis(1.0, 3.0, 1.0), std::invalid_argument);

    // orbit through the unstable cone at u_omega = 1: departs the v-axis at
    // v_+ = sqrt(2/(p+1)); stop at the cone v = sqrt(-lambda) u
    const double v_plus = std::sqrt(2.0 / 4.0);
    const auto path = oracle::rk4_nonlinear_path(0.0, v_plus, -1.0, 3.0, 0.0, 2.0, 400000);
    const double t_cone =
        oracle::first_crossing(path, [](double u, double v) { return v - u; });
    CHECK(std::abs(tmap::time_N_from_axis(-1.0, 3.0, 1.0) - t_cone) < 1e-8);
}

TEST_CASE("unstable-to-axis decomposition") {
    const auto d = tmap::time_N_unstable_to_axis(-1.0, 3.0, 2.0);
    const double total = tmap::time_N_full(-1.0, 3.0, 2.0);
    const double via_cone = tmap::time_N_from_axis(-1.0, 3.0, d.u_omega) + d.time;
    CHECK(std::abs(total - via_cone) < 1e-9);

    double prev_ratio = 0.0;
    for (double u_plus : {2.0, 3.0, 5.0}) {
        const auto dd = tmap::time_N_unstable_to_axis(-1.0, 3.0, u_plus);
        const double ratio = dd.u_omega / u_plus;
        CHECK(ratio > prev_ratio);
        prev_ratio = ratio;
    }

    const double u_ho = tmap::homoclinic_crossing(-1.0, 3.0);
    const auto near = tmap::time_N_unstable_to_axis(-1.0, 3.0, u_ho * (1.0 + 1e-12));
    CHECK(near.u_omega / (u_ho * (1.0 + 1e-12)) < 1e-2);
    CHECK_THROWS_AS(tmap::time_N_unstable_to_axis(-1.0, 3.0, u_ho * 0.5), std::invalid_argument);
}

TEST_CASE("hyperbolic linear times: closed form vs quadrature") {
    CHECK(tmap::time_L_hyperbolic(-1.0, 1.0, std::cosh(1.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(tmap::time_L_hyperbolic(-4.0, 1.0, std::cosh(2.0)) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(tmap::time_L_hyperbolic(-1.0, 1.0, 1.0 + 1e-12) < 1e-5);
    CHECK_THROWS_AS(tmap::time_L_hyperbolic(-1.0, 1.0, 0.9), std::invalid_argument);

    const double triples[][3] = {{-1.0, 1.0, 2.0}, {-4.0, 0.5, 3.1}, {-0.3, 2.0, 2.6}};
    for (const auto& t : triples) {
        const double closed = tmap::time_L_hyperbolic(t[0], t[1], t[2]);
        const double quad = tmap::time_L_hyperbolic_quadrature(t[0], t[1], t[2]);
        CHECK(std::abs(closed - quad) < 1e-10);
    }
}

TEST_CASE("linear time to the axis") {
    CHECK(tmap::time_L_to_axis(-1.0, 0.0, -1.0) == 0.0);
    CHECK(tmap::time_L_to_axis(-1.0, std::sinh(1.0), -1.0) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(tmap::time_L_to_axis(-1.0, 1.0, 1.0), std::invalid_argument);
    CHECK(std::abs(tmap::time_L_to_axis(-1.0, 2.0, -1.0) -
                   tmap::time_L_to_axis_quadrature(-1.0, 2.0, -1.0)) < 1e-10);
}

TEST_CASE("cone slope") {
    double prev = 1e300;
    for (double h : {0.2, 0.5, 0.8}) {
        const double m = tmap::cone_slope(-1.0, h);
        CHECK(m < prev);
        prev = m;
        // numerically inverted definition agrees with the coth closed form
        CHECK(m == doctest::Approx(std::sqrt(1.0) / std::tanh(std::sqrt(1.0) * h)).epsilon(1e-10));
    }
    CHECK(tmap::cone_slope(-1.0, 0.9999) == doctest::Approx(1.0 / std::tanh(0.9999)).epsilon(1e-9));
    CHECK(tmap::cone_slope(-1.0, 0.05) > 10.0);
    CHECK_THROWS_AS(tmap::cone_slope(1.0, 0.5), std::invalid_argument);
}

TEST_CASE("linear gate ratio") {
    const double C = tmap::linear_gate_ratio(-1.0, 0.6);
    CHECK(C > 1.0);
    CHECK(std::abs(tmap::time_L_hyperbolic(-1.0, 1.0, C) - 0.3) < 1e-10);
    CHECK(tmap::linear_gate_ratio(-1.0, 1e-6) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(tmap::linear_gate_ratio(-1.0, 1e-6) > 1.0);
    CHECK(tmap::linear_gate_ratio(-4.0, 0.9999) == doctest::Approx(std::cosh(0.9999)).epsilon(1e-10));
}

TEST_CASE("phi: limits, bound, rescaling duality") {
    CHECK(tmap::phi(1e-10, 0.3, 1.0, 3.0) == doctest::Approx(kPi - 0.6).epsilon(1e-4));
    CHECK(tmap::phi(123.0, 0.5 * kPi, 6.0, 3.0) == 0.0);

    // frozen anchors (independent high-precision references)
    CHECK(tmap::phi(300.0, 0.0, 6.0, 3.0) == doctest::Approx(0.0302754424145986).epsilon(1e-10));
    CHECK(tmap::phi(300.0, 0.03, 6.0, 3.0) == doctest::Approx(0.0302850647038839).epsilon(1e-10));
    CHECK(tmap::phi(60.0, 0.0, 6.0, 3.0) == doctest::Approx(0.1512011177021586).epsilon(1e-10));
    CHECK(tmap::phi(60.0, 0.05, 6.0, 3.0) == doctest::Approx(0.1512225979219397).epsilon(1e-10));

    for (double R : {0.5, 5.0, 50.0})
        for (double th : {0.0, 0.4, 1.0, 1.4})
            CHECK(tmap::phi(R, th, 6.0, 3.0) < kPi - 2.0 * th);

    double prev = 1e300;
    for (double R : {1.0, 10.0, 100.0, 1000.0}) {
        const double v = tmap::phi(R, 0.7, 6.0, 3.0);
        CHECK(v < prev);
        prev = v;
    }

    for (double R : {2.0, 30.0, 300.0})
        for (double th : {0.1, 0.8, 1.3}) {
            const double lhs = tmap::phi(R, th, 6.0, 3.0);
            const double rhs = 2.0 * std::sqrt(6.0) * tmap::s_nonlinear(6.0, 3.0, R, th);
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, lhs));
        }
}

TEST_CASE("phi derivative") {
    CHECK(tmap::phi_dtheta(20.0, 0.5 * kPi, 6.0, 3.0) == -2.0);
    CHECK(tmap::phi_dtheta(300.0, 0.5 * kPi, 6.0, 3.0) == -2.0);
    CHECK_THROWS_AS(tmap::phi_dtheta(20.0, 0.0, 6.0, 3.0), std::invalid_argument);
    CHECK_THROWS_AS(tmap::phi_dtheta(20.0, 1e-7, 6.0, 3.0), std::invalid_argument);

    // central finite difference of phi
    const double R = 20.0, th = 0.7, step = 1e-5;
    const double fd =
        (tmap::phi(R, th + step, 6.0, 3.0) - tmap::phi(R, th - step, 6.0, 3.0)) / (2.0 * step);
    const double an = tmap::phi_dtheta(R, th, 6.0, 3.0);
    CHECK(std::abs(fd - an) < 1e-5 * std::abs(an));

    for (double th2 : {0.3, 0.7, 1.2})
        CHECK(tmap::phi_dtheta(300.0, th2, 6.0, 3.0) > 0.0);
}

TEST_CASE("asymptotic profiles") {
    const double R = 1e6, th = 0.5;
    const double exact = tmap::phi(R, th, 6.0, 3.0);
    const double asym = tmap::phi_asymptotic(R, th, 6.0, 3.0);
    CHECK(std::abs(exact - asym) / exact < 0.01);

    // pure power law for p = 3
    const double r4 = tmap::phi_asymptotic(4.0 * 100.0, 0.3, 6.0, 3.0) /
                      tmap::phi_asymptotic(100.0, 0.3, 6.0, 3.0);
    CHECK(r4 == doctest::Approx(0.25).epsilon(1e-13));

    for (double t : {0.2, 0.8, 1.4})
        CHECK(tmap::phi_dtheta_asymptotic(50.0, t, 6.0, 3.0) > 0.0);

    // the derivative profile matches the true derivative at large R, which
    // pins its normalization
    const double d_exact = tmap::phi_dtheta(R, th, 6.0, 3.0);
    const double d_asym = tmap::phi_dtheta_asymptotic(R, th, 6.0, 3.0);
    CHECK(std::abs(d_exact - d_asym) / std::abs(d_exact) < 0.01);
}

}  // TEST_SUITE
