#include <doctest.h>

#include <cmath>

#include "fraclab/flap.hpp"

using namespace fraclab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("constants are annihilated") {
    const RadialFunction one = power_function(0.0);
    for (const DimPair d : {DimPair{1, 0.25}, DimPair{3, 0.5}}) {
        for (double r : {0.5, 1.0, 2.0}) {
            CHECK(std::abs(frac_lap_radial(d, one, r, 1e-9)) <= 1e-9);
        }
    }
}

TEST_CASE("power identity against the closed-form multiplier") {
    struct Case {
        DimPair d;
        double tau, r;
    };
    const Case cases[] = {
        {{3, 0.5}, -1.0, 1.0},  {{3, 0.5}, -0.4, 0.5}, {{3, 0.5}, -2.2, 2.0},
        {{1, 0.25}, -0.3, 1.0}, {{1, 0.25}, 0.2, 0.7}, {{3, 0.75}, -1.7, 1.3},
    };
    for (const auto& c : cases) {
        const RadialFunction v = power_function(c.tau);
        const double expect =
            cs_tau_closed(c.d, c.tau) * std::pow(c.r, c.tau - 2.0 * c.d.s);
        const double tol = 1e-7 * std::max(1.0, std::abs(expect));
        const double got = frac_lap_radial(c.d, v, c.r, tol);
        CHECK(std::abs(got - expect) <= 1e-5 * std::max(std::abs(expect), 1e-3));
    }
}

TEST_CASE("U_p solves its Emden equation") {
    const ProblemParams le{{3, 0.5}, 4.0, -1};
    const RadialFunction up = u_p_function(le);
    for (double r : {0.5, 1.0, 2.0}) {
        const double scale = std::pow(up(r), le.p);
        const double tol = 1e-6 * scale;
        const double res = emden_residual(le, up, r, tol);
        CHECK(std::abs(res) <= 10.0 * tol);
    }
    // homogeneity mismatch: for eps=-1, 2 U_p leaves residual (2 - 2^p) U_p^p
    RadialFunction up2 = up;
    up2.evaluate = [&up](double r) { return 2.0 * up(r); };
    up2.deriv1 = [&up](double r) { return 2.0 * up.deriv1(r); };
    up2.deriv2 = [&up](double r) { return 2.0 * up.deriv2(r); };
    const double r0 = 1.0;
    const double expect = (2.0 - std::pow(2.0, le.p)) * std::pow(up(r0), le.p);
    const double got = emden_residual(le, up2, r0, 1e-8);
    CHECK(got == doctest::Approx(expect).epsilon(1e-5));
}

TEST_CASE("linearity of the principal-value integral") {
    const DimPair d{3, 0.5};
    const RadialFunction u = power_function(-0.7);
    const RadialFunction v = power_function(-1.5);
    const double a = 2.0, b = -0.6, r = 0.9;
    RadialFunction combo;
    combo.evaluate = [&](double rr) { return a * u(rr) + b * v(rr); };
    combo.deriv1 = [&](double rr) { return a * u.deriv1(rr) + b * v.deriv1(rr); };
    combo.deriv2 = [&](double rr) { return a * u.deriv2(rr) + b * v.deriv2(rr); };
    combo.tau_origin = -1.5;
    combo.tau_infty = -0.7;
    const double tol = 1e-8;
    const double lhs = frac_lap_radial(d, combo, r, tol);
    const double rhs =
        a * frac_lap_radial(d, u, r, tol) + b * frac_lap_radial(d, v, r, tol);
    CHECK(std::abs(lhs - rhs) <= 2e-6 * std::max(1.0, std::abs(rhs)));
}

TEST_CASE("scaling covariance") {
    // v_l(r) := v(l r)  =>  (-Delta)^s v_l (r) = l^{2s} ((-Delta)^s v)(l r)
    const DimPair d{1, 0.4};
    const double ell = 1.8, r = 0.75;
    RadialFunction v;
    v.evaluate = [](double rr) { return 1.0 / (1.0 + rr * rr); };
    v.tau_origin = 0.0;
    v.tau_infty = -2.0;
    RadialFunction vl;
    vl.evaluate = [&v, ell](double rr) { return v(ell * rr); };
    vl.tau_origin = 0.0;
    vl.tau_infty = -2.0;
    const double lhs = frac_lap_radial(d, vl, r, 1e-9);
    const double rhs =
        std::pow(ell, 2.0 * d.s) * frac_lap_radial(d, v, ell * r, 1e-9);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("declared exponents outside the integrability class are rejected") {
    const DimPair d{3, 0.5};
    RadialFunction bad = power_function(-3.0);
    CHECK_THROWS_AS((void)frac_lap_radial(d, bad, 1.0, 1e-6), std::domain_error);
    RadialFunction bad2 = power_function(1.5);  // tau_infty >= 2s
    CHECK_THROWS_AS((void)frac_lap_radial(d, bad2, 1.0, 1e-6), std::domain_error);
}

TEST_CASE("Serrin-critical log powers") {
    const DimPair d{3, 0.5};
    const double m0 = -(d.N - 2.0 * d.s) / (2.0 * d.s);  // = -2 here
    CHECK(m0 == doctest::Approx(-2.0));

    const double scale2 = std::pow(1e-2, -3.0) * std::pow(-std::log(1e-2), m0 - 1.0);
    const auto r2 = frac_lap_log(d, m0, 1e-2, 1e-5 * std::abs(scale2));
    CHECK(r2.i_m > 0.0);  // I_m > 0 for m < 0
    CHECK(r2.j_m < 0.0);
    CHECK(r2.leading >= 0.0);  // sign of the leading term near the origin

    const double scale3 = std::pow(1e-3, -3.0) * std::pow(-std::log(1e-3), m0 - 1.0);
    const auto r3 = frac_lap_log(d, m0, 1e-3, 1e-5 * std::abs(scale3));
    const double err2 = std::abs(r2.value / r2.leading - 1.0);
    const double err3 = std::abs(r3.value / r3.leading - 1.0);
    CHECK(err3 < err2);  // the expansion sharpens toward the origin
    CHECK(err3 < 0.5);

    CHECK_THROWS_AS((void)frac_lap_log(d, 0.0, 1e-3, 1e-6), std::domain_error);
    CHECK_THROWS_AS((void)frac_lap_log(d, -1.0, 0.5, 1e-6), std::domain_error);
}
