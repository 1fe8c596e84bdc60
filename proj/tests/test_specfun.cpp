#include <doctest.h>

#include <cmath>
#include <random>

#include "fraclab/specfun.hpp"

using namespace fraclab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent high-precision Gamma table (mpmath, 30 digits); the oracle the
// Lanczos kernel is checked against.
struct TableEntry {
    double x, gamma;
};
constexpr TableEntry kGammaTable[] = {
    {0.125, 7.5339415987976119047},  {0.25, 3.6256099082219083119},
    {0.3, 2.9915689876875906283},    {0.375, 2.3704361844166009086},
    {0.5, 1.7724538509055160273},    {0.75, 1.2254167024651776451},
    {0.8, 1.1642297137253033736},    {1.25, 0.90640247705547707798},
    {1.5, 0.88622692545275801365},   {1.75, 0.91906252684888323385},
    {2.75, 1.6083594219855456592},   {5.5, 52.342777784553520181},
    {10.25, 639232.59877957679428},  {25.75, 6.9109472975524995228e24},
};

double table_gamma(double x) {
    for (const auto& e : kGammaTable)
        if (e.x == x) return e.gamma;
    REQUIRE(false);
    return 0.0;
}

}  // namespace

TEST_CASE("gamma kernel against the high-precision table") {
    for (const auto& e : kGammaTable) {
        const auto g = gamma_kernel(e.x);
        CHECK(std::abs(g.gamma - e.gamma) <= 1e-13 * e.gamma);
        CHECK(std::abs(g.gamma * g.recip_gamma - 1.0) <= 1e-14);
    }
}

TEST_CASE("gamma kernel poles and trivial values") {
    CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(recip_gamma_fn(0.0) == 0.0);
    CHECK(recip_gamma_fn(-1.0) == 0.0);
    CHECK(recip_gamma_fn(-7.0) == 0.0);
    CHECK(std::isinf(gamma_fn(0.0)));
    CHECK(std::isinf(gamma_fn(-3.0)));
    // negative non-integer arguments through reflection
    CHECK(gamma_fn(-0.5) == doctest::Approx(-2.0 * std::sqrt(kPi)).epsilon(1e-13));
}

TEST_CASE("gamma reflection identity on (0,1)") {
    std::mt19937 rng(12345);
    std::uniform_real_distribution<double> u(0.01, 0.99);
    for (int i = 0; i < 200; ++i) {
        const double x = u(rng);
        const double lhs = gamma_fn(x) * gamma_fn(1.0 - x) * sin_pi(x) / kPi;
        CHECK(std::abs(lhs - 1.0) <= 1e-12);
    }
}

TEST_CASE("sin_pi has exact integer zeros") {
    CHECK(sin_pi(0.0) == 0.0);
    CHECK(sin_pi(17.0) == 0.0);
    CHECK(sin_pi(-3.0) == 0.0);
    CHECK(sin_pi(0.5) == 1.0);
    CHECK(sin_pi(1.5) == -1.0);
}

TEST_CASE("c_frac against the printed formula evaluated with the table") {
    // (N=1, s=1/2): 2 * pi^{-1/2} * Gamma(1) / Gamma(1/2) = 2/pi
    CHECK(c_frac({1, 0.5}) ==
          doctest::Approx(2.0 / std::sqrt(kPi) / table_gamma(0.5)).epsilon(1e-13));
    // (N=3, s=1/2): 2 * pi^{-3/2} * Gamma(2) / Gamma(1/2)
    const double expect3 = 2.0 * std::pow(kPi, -1.5) / table_gamma(0.5);
    CHECK(c_frac({3, 0.5}) == doctest::Approx(expect3).epsilon(1e-13));
    CHECK(c_frac({3, 0.5}) == doctest::Approx(0.20264236728467554289).epsilon(1e-13));
    CHECK(c_frac({2, 0.75}) == doctest::Approx(0.22822283958740312390).epsilon(1e-13));
    // s -> 1^- : Gamma(1-s) -> infinity forces the limit 0, continuously
    CHECK(c_frac({3, 0.999}) < c_frac({3, 0.99}));
    CHECK(c_frac({3, 0.9999}) < 1e-3);
    CHECK(c_frac_normalized({3, 0.5}) == 0.5 * c_frac({3, 0.5}));
}

TEST_CASE("C_s closed form: exact zeros and frozen values") {
    const DimPair d{3, 0.5};
    CHECK(cs_tau_closed(d, 0.0) == 0.0);
    CHECK(cs_tau_closed(d, 2.0 * d.s - d.N) == 0.0);
    CHECK(cs_tau_closed(d, -1.0) ==
          doctest::Approx(2.0 / kPi).epsilon(1e-14));
    CHECK(cs_tau_closed(d, -0.4) ==
          doctest::Approx(0.43592551680321653154).epsilon(1e-13));
    CHECK(cs_tau_closed({1, 0.25}, -0.3) ==
          doctest::Approx(0.13497120861315797288).epsilon(1e-13));
    CHECK(cs_tau_closed({2, 0.75}, 0.9) ==
          doctest::Approx(-1.6075196098955418084).epsilon(1e-13));
    CHECK_THROWS_AS((void)cs_tau_closed(d, 1.5), std::domain_error);
    CHECK_THROWS_AS((void)cs_tau_closed(d, -3.0), std::domain_error);
}

TEST_CASE("C_s symmetry, concavity and maximum") {
    std::mt19937 rng(777);
    const DimPair dims[] = {{1, 0.25}, {2, 0.5}, {3, 0.5}, {3, 0.75}, {2, 0.9}};
    for (const auto& d : dims) {
        const double lo = -double(d.N), hi = 2.0 * d.s;
        std::uniform_real_distribution<double> u(lo + 0.05, hi - 0.05);
        const double mid = 0.5 * (2.0 * d.s - d.N);
        const double maxval = cs_tau_closed(d, mid);
        CHECK(maxval == doctest::Approx(-mu_zero(d)).epsilon(1e-12));
        for (int i = 0; i < 100; ++i) {
            const double t = u(rng);
            const double mirrored = 2.0 * d.s - d.N - t;
            const double a = cs_tau_closed(d, t);
            const double b = cs_tau_closed(d, mirrored);
            CHECK(std::abs(a - b) <= 1e-10 * std::max(1.0, std::abs(a)));
            CHECK(a <= maxval + 1e-12);
            // midpoint concavity
            const double t2 = u(rng);
            const double m = 0.5 * (t + t2);
            CHECK(cs_tau_closed(d, m) >=
                  0.5 * (a + cs_tau_closed(d, t2)) - 1e-10);
        }
    }
}

TEST_CASE("C_s integral representation agrees with the closed form") {
    // tau = 0: the integrand vanishes identically
    CHECK(cs_tau_integral({1, 0.25}, 0.0, 1e-8) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(std::abs(cs_tau_integral({3, 0.5}, -1.0, 1e-8) - 2.0 / kPi) <=
          1e-6 * (2.0 / kPi));
    const DimPair d2{2, 0.75};
    const double closed = cs_tau_closed(d2, 0.5);
    CHECK(std::abs(cs_tau_integral(d2, 0.5, 1e-8) - closed) <=
          1e-6 * std::max(std::abs(closed), 1e-3));
    CHECK_THROWS_AS((void)cs_tau_integral({4, 0.5}, -1.0, 1e-6), std::domain_error);
}

TEST_CASE("mu_zero values and maximizer identity") {
    CHECK(mu_zero({3, 0.5}) == doctest::Approx(-2.0 / kPi).epsilon(1e-13));
    CHECK(mu_zero({1, 0.25}) ==
          doctest::Approx(-0.13999967745248263087).epsilon(1e-13));
    CHECK(mu_zero({2, 0.75}) ==
          doctest::Approx(-0.059166573711041089316).epsilon(1e-13));
    for (const DimPair d : {DimPair{1, 0.3}, DimPair{2, 0.6}, DimPair{3, 0.8}}) {
        const double mid = 0.5 * (2.0 * d.s - d.N);
        CHECK(mu_zero(d) == doctest::Approx(-cs_tau_closed(d, mid)).epsilon(1e-13));
    }
}

TEST_CASE("Hardy exponents tau_pm") {
    const DimPair d{3, 0.5};
    SUBCASE("mu = 0 gives the C_s zeros") {
        const auto h = tau_pm(d, 0.0);
        CHECK(std::abs(h.tau_minus - (2.0 * d.s - d.N)) <= 1e-10);
        CHECK(std::abs(h.tau_plus) <= 1e-10);
    }
    SUBCASE("mu = mu0 collapses to the midpoint") {
        const auto h = tau_pm(d, mu_zero(d));
        CHECK(h.tau_minus == h.tau_plus);
        CHECK(h.tau_plus == doctest::Approx(0.5 * (2.0 * d.s - d.N)));
    }
    SUBCASE("substitution residual and the sum identity") {
        for (double mu : {mu_zero(d) / 2.0, 0.0, 0.3, 1.0}) {
            const auto h = tau_pm(d, mu);
            CHECK(h.tau_minus + h.tau_plus == 2.0 * d.s - d.N);  // exact
            CHECK(std::abs(cs_tau_closed(d, h.tau_plus) + mu) <= 1e-10);
            CHECK(std::abs(cs_tau_closed(d, h.tau_minus) + mu) <= 1e-10);
            CHECK(h.tau_minus <= 0.5 * (2.0 * d.s - d.N) + 1e-15);
            CHECK(h.tau_plus >= 0.5 * (2.0 * d.s - d.N) - 1e-15);
        }
    }
    SUBCASE("mu below mu0 is rejected") {
        CHECK_THROWS_AS((void)tau_pm(d, mu_zero(d) - 0.01), std::domain_error);
    }
}

TEST_CASE("C_s derivatives at zero") {
    for (const DimPair d : {DimPair{3, 0.5}, DimPair{1, 0.25}, DimPair{2, 0.75}}) {
        const auto [c1, c2] = cs_derivs_at_zero(d);
        CHECK(c1 < 0.0);
        CHECK(c2 < 0.0);
        CHECK(std::abs(c1 - cs_deriv0_analytic(d)) <= 1e-8 * std::abs(c1));
    }
    // analytic limits against the independent table values
    CHECK(cs_deriv0_analytic({3, 0.5}) == doctest::Approx(-kPi / 2).epsilon(1e-13));
    CHECK(cs_deriv0_analytic({1, 0.25}) ==
          doctest::Approx(-1.2533141373155002512).epsilon(1e-13));
    CHECK(cs_deriv0_analytic({2, 0.75}) ==
          doctest::Approx(-0.47798879748612499536).epsilon(1e-13));
}

TEST_CASE("extension matching constant") {
    CHECK(cs_matching_constant(0.5) == doctest::Approx(1.0).epsilon(1e-14));
    // 2^{1/2} Gamma(3/4)/Gamma(1/4) via the independent table
    CHECK(cs_matching_constant(0.25) ==
          doctest::Approx(std::sqrt(2.0) * table_gamma(0.75) / table_gamma(0.25))
              .epsilon(1e-13));
}

TEST_CASE("DimPair validation") {
    CHECK_THROWS_AS((DimPair{1, 0.9}.validate_strict()), std::domain_error);
    CHECK_THROWS_AS((DimPair{2, 1.5}.validate_basic()), std::domain_error);
    CHECK_THROWS_AS((DimPair{0, 0.5}.validate_basic()), std::domain_error);
    CHECK_NOTHROW((DimPair{1, 0.5}.validate_basic()));  // admissible for quadrature use
    CHECK_THROWS_AS((DimPair{1, 0.5}.validate_strict()), std::domain_error);
}
