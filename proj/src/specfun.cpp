#include "fraclab/specfun.hpp"

#include <cmath>
#include <limits>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).
// Relative accuracy ~1e-15 on the positive axis.
constexpr double kLanczosG = 7.0;
constexpr double kLanczos[9] = {
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
};

// Gamma(x) for x >= 0.5.
double gamma_positive(double x) {
    double acc = kLanczos[0];
    for (int k = 1; k < 9; ++k) acc += kLanczos[k] / (x - 1.0 + k);
    const double t = x - 0.5 + kLanczosG;
    return std::sqrt(2.0 * kPi) * std::pow(t, x - 0.5) * std::exp(-t) * acc;
}

bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

}  // namespace

double sin_pi(double x) {
    // Reduce to |r| <= 0.5 about the nearest integer; zeros are exact.
    const double n = std::round(x);
    const double r = x - n;
    if (r == 0.0) return 0.0;
    const double s = std::sin(kPi * r);
    return (std::fmod(std::abs(n), 2.0) == 1.0) ? -s : s;
}

GammaPair gamma_kernel(double x) {
    if (is_nonpositive_integer(x)) {
        return {std::numeric_limits<double>::infinity(), 0.0};
    }
    if (x >= 0.5) {
        const double g = gamma_positive(x);
        return {g, 1.0 / g};
    }
    // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1-x)),
    // 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi  (entire in x).
    const double s = sin_pi(x);
    const double g1mx = gamma_positive(1.0 - x);
    return {kPi / (s * g1mx), s * g1mx / kPi};
}

double gamma_fn(double x) { return gamma_kernel(x).gamma; }
double recip_gamma_fn(double x) { return gamma_kernel(x).recip_gamma; }

void DimPair::validate_basic() const {
    if (N < 1) throw std::domain_error("DimPair: N must be >= 1");
    if (!(s > 0.0 && s < 1.0)) throw std::domain_error("DimPair: s must be in (0,1)");
}

void DimPair::validate_strict() const {
    validate_basic();
    if (!(N > 2.0 * s)) throw std::domain_error("DimPair: N > 2s required");
}

double c_frac(const DimPair& d) {
    d.validate_basic();
    return std::pow(2.0, 2.0 * d.s) * std::pow(kPi, -0.5 * d.N) *
           gamma_fn(0.5 * (d.N + 2.0 * d.s)) * recip_gamma_fn(1.0 - d.s);
}

double c_frac_normalized(const DimPair& d) { return d.s * c_frac(d); }

double cs_matching_constant(double s) {
    if (!(s > 0.0 && s < 1.0))
        throw std::domain_error("cs_matching_constant: s in (0,1)");
    return std::pow(2.0, 1.0 - 2.0 * s) * gamma_fn(1.0 - s) * recip_gamma_fn(s);
}

double cs_tau_closed(const DimPair& d, double tau) {
    d.validate_basic();
    if (!(tau > -double(d.N) && tau < 2.0 * d.s))
        throw std::domain_error("cs_tau_closed: tau outside (-N, 2s)");
    const double g1 = gamma_fn(0.5 * (d.N + tau));
    const double g2 = gamma_fn(0.5 * (2.0 * d.s - tau));
    const double r1 = recip_gamma_fn(-0.5 * tau);
    const double r2 = recip_gamma_fn(0.5 * (d.N - 2.0 * d.s + tau));
    return std::pow(2.0, 2.0 * d.s) * (g1 * g2) * (r1 * r2);
}

double mu_zero(const DimPair& d) {
    d.validate_strict();
    const double q = gamma_fn(0.25 * (d.N + 2.0 * d.s)) *
                     recip_gamma_fn(0.25 * (d.N - 2.0 * d.s));
    return -std::pow(2.0, 2.0 * d.s) * q * q;
}

HardyData tau_pm(const DimPair& d, double mu) {
    d.validate_strict();
    const double mu0 = mu_zero(d);
    if (mu < mu0 - 1e-12 * std::abs(mu0))
        throw std::domain_error("tau_pm: mu < mu_zero");

    const double mid = 0.5 * (2.0 * d.s - d.N);
    HardyData h;
    h.mu = mu;
    h.mu0 = mu0;

    // f(tau) = C_s(tau) + mu decreases from -mu0+mu >= 0 to -inf on [mid, 2s).
    auto f = [&](double tau) { return cs_tau_closed(d, tau) + mu; };
    if (f(mid) <= 0.0) {
        h.tau_plus = mid;
        h.tau_minus = mid;
        return h;
    }
    double lo = mid;
    double hi = 2.0 * d.s;
    // bring the right end inside the domain with f(hi) < 0
    for (int k = 1; k < 80; ++k) {
        hi = 2.0 * d.s - (2.0 * d.s - mid) * std::pow(2.0, -k);
        if (f(hi) < 0.0) break;
        lo = hi;
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-13; ++it) {
        const double m = 0.5 * (lo + hi);
        (f(m) > 0.0 ? lo : hi) = m;
    }
    h.tau_plus = 0.5 * (lo + hi);
    h.tau_minus = (2.0 * d.s - d.N) - h.tau_plus;  // sum identity exact
    return h;
}

std::pair<double, double> cs_derivs_at_zero(const DimPair& d) {
    d.validate_strict();
    const double range = std::min(double(d.N), 2.0 * d.s);
    const double h0 = std::min(0.15, range / 8.0);
    auto f = [&](double t) { return cs_tau_closed(d, t); };

    // Richardson on central differences, error series in h^2.
    constexpr int kLevels = 5;
    double d1[kLevels], d2[kLevels];
    for (int k = 0; k < kLevels; ++k) {
        const double h = h0 * std::pow(0.5, k);
        d1[k] = (f(h) - f(-h)) / (2.0 * h);
        d2[k] = (f(h) + f(-h)) / (h * h);  // C_s(0) = 0 exactly
    }
    auto extrap = [](double* v) {
        for (int lev = 1; lev < kLevels; ++lev) {
            const double fac = std::pow(4.0, lev);
            for (int k = kLevels - 1; k >= lev; --k)
                v[k] = (fac * v[k] - v[k - 1]) / (fac - 1.0);
        }
        return v[kLevels - 1];
    };
    return {extrap(d1), extrap(d2)};
}

double cs_deriv0_analytic(const DimPair& d) {
    d.validate_strict();
    return -std::pow(2.0, 2.0 * d.s - 1.0) * gamma_fn(0.5 * d.N) *
           gamma_fn(d.s) * recip_gamma_fn(0.5 * (d.N - 2.0 * d.s));
}

double cs_tau_integral(const DimPair& d, double tau, double tol) {
    d.validate_basic();
    if (d.N > 3) throw std::domain_error("cs_tau_integral: N in {1,2,3} only");
    if (!(tau > -double(d.N) && tau < 2.0 * d.s))
        throw std::domain_error("cs_tau_integral: tau outside (-N, 2s)");

    const double s = d.s;
    const int N = d.N;
    const double omega = sphere_measure(N);
    const double c = c_frac_normalized(d);

    // value = -c * int_0^inf rho^{-1-2s} (APA(rho) - omega) drho,
    // APA(rho) = int_{S^{N-1}} |e1 - rho sigma|^tau dS(sigma).
    const double rho_c = 0.01;

    // |z| -> 0: spherical average expands in even powers of rho.
    const double t = 0.5 * tau;
    const double A2 = t + 2.0 * t * (t - 1.0) / N;
    const double A4 = 0.5 * t * (t - 1.0) + 2.0 * t * (t - 1.0) * (t - 2.0) / N +
                      2.0 * t * (t - 1.0) * (t - 2.0) * (t - 3.0) / (N * (N + 2.0));
    const double near0 = omega * (A2 * std::pow(rho_c, 2.0 - 2.0 * s) / (2.0 - 2.0 * s) +
                                  A4 * std::pow(rho_c, 4.0 - 2.0 * s) / (4.0 - 2.0 * s));

    auto g = [&](double rho) {
        return std::pow(rho, -1.0 - 2.0 * s) *
               (angular_power_average(d, rho, tau) - omega);
    };

    // rough magnitude for the absolute tolerance
    const double scale = std::max(1.0, omega * (1.0 / (2.0 * s) + 1.0));
    const double atol = tol * scale / 6.0;

    const double sing = std::min(0.0, tau + N - 1.0);  // APA blow-up rate at rho=1
    Integrand mid{g, 0.0, sing};
    const double part1 = adaptive_integrate(mid, rho_c, 1.0, atol);
    Integrand mid2{g, sing, 0.0};
    const double part2 = adaptive_integrate(mid2, 1.0, 2.0, atol);

    // tail via u = 1/rho
    auto gu = [&](double u) { return g(1.0 / u) / (u * u); };
    Integrand tail{gu, 2.0 * s - 1.0 - std::max(tau, 0.0), 0.0};
    const double part3 = adaptive_integrate(tail, 0.0, 0.5, atol);

    return -c * (near0 + part1 + part2 + part3);
}

}  // namespace fraclab
