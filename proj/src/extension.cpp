#include "fraclab/extension.hpp"

#include <cmath>
#include <vector>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// integral of v(rho) rho^{N-1} K(x, rho, z) drho over (0, infinity) with
// K either the Poisson angular kernel or its z-derivative
double radial_convolution(const DimPair& d, const RadialFunction& v,
                          double x, double z, bool dz, double tol) {
    auto K = [&](double rho) {
        const double k = dz ? poisson_angular_dz(d, x, rho, z)
                            : poisson_angular(d, x, rho, z);
        return v(rho) * std::pow(rho, d.N - 1.0) * k;
    };

    // breakpoints: origin behavior, the kernel peak near rho = x (width z),
    // the cutoff kink, then the compactified tail
    std::vector<double> breaks;
    breaks.push_back(0.0);
    if (x - 2.0 * z > 0.0) breaks.push_back(x - 2.0 * z);
    if (x + 2.0 * z > breaks.back()) breaks.push_back(x + 2.0 * z);
    double cap = std::max({4.0 * (x + z), 4.0, v.cutoff ? *v.cutoff : 0.0});
    if (v.cutoff && *v.cutoff > breaks.back() && *v.cutoff < cap)
        breaks.push_back(*v.cutoff);
    breaks.push_back(cap);

    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        Integrand g{K, 0.0, 0.0};
        if (i == 0 && v.tau_origin < 0.0)
            g.left_exponent = v.tau_origin + d.N - 1.0;
        total += adaptive_integrate(g, breaks[i], breaks[i + 1], tol);
    }
    if (!v.cutoff || *v.cutoff > cap) {
        auto Ku = [&](double u) { return K(1.0 / u) / (u * u); };
        const double lexp = 2.0 * d.s - 1.0 - std::max(v.tau_infty, 0.0) +
                            (dz ? 1.0 : 0.0);
        Integrand tail{Ku, std::abs(lexp) < 1e-12 ? 0.0 : lexp, 0.0};
        total += adaptive_integrate(tail, 0.0, 1.0 / cap, tol);
    }
    return total;
}

}  // namespace

double poisson_constant_printed(const DimPair& d) {
    d.validate_strict();
    return 0.25 * std::pow(kPi, 0.5 * (d.N + 2.0 - 2.0 * d.s)) *
           gamma_fn(0.5 * (d.N - 2.0 * d.s));
}

double poisson_kernel(const DimPair& d, double x_norm, double z) {
    if (!(z > 0.0)) throw std::domain_error("poisson_kernel: z > 0 required");
    return poisson_constant_printed(d) * std::pow(z, 2.0 * d.s) *
           std::pow(x_norm * x_norm + z * z, -0.5 * (d.N + 2.0 * d.s));
}

double kernel_mass(const DimPair& d) {
    d.validate_strict();
    const double C = poisson_constant_printed(d);
    const double omega = sphere_measure(d.N);
    auto f = [&](double rho) {
        return std::pow(rho, d.N - 1.0) *
               std::pow(rho * rho + 1.0, -0.5 * (d.N + 2.0 * d.s));
    };
    const double radial =
        integrate_to_infinity(f, 0.0, -1.0 - 2.0 * d.s, 1e-12);
    return C * omega * radial;
}

double extend_radial(const DimPair& d, const RadialFunction& v, double x_norm,
                     double z, bool normalized, double tol) {
    d.validate_strict();
    if (!(z > 0.0)) throw std::domain_error("extend_radial: z > 0 required");
    if (!(v.tau_infty < 2.0 * d.s) || !(v.tau_origin > -double(d.N)))
        throw std::domain_error("extend_radial: trace outside L^1(mu_s)");
    const double C = poisson_constant_printed(d);
    double u = C * std::pow(z, 2.0 * d.s) *
               radial_convolution(d, v, x_norm, z, false, tol);
    if (normalized) u /= kernel_mass(d);
    return u;
}

double extend_radial_dz(const DimPair& d, const RadialFunction& v,
                        double x_norm, double z, double tol) {
    d.validate_strict();
    if (!(z > 0.0)) throw std::domain_error("extend_radial_dz: z > 0 required");
    const double C = poisson_constant_printed(d);
    const double I = radial_convolution(d, v, x_norm, z, false, tol);
    const double Iz = radial_convolution(d, v, x_norm, z, true, tol);
    return C * (2.0 * d.s * std::pow(z, 2.0 * d.s - 1.0) * I +
                std::pow(z, 2.0 * d.s) * Iz);
}

double conormal_derivative(const DimPair& d, const RadialFunction& v,
                           double x_norm, double z0) {
    d.validate_strict();
    if (!(x_norm > 0.0))
        throw std::domain_error("conormal_derivative: x > 0 required");
    if (z0 <= 0.0) z0 = 0.25 * x_norm;
    const double M = kernel_mass(d);

    constexpr int kLadder = 9;
    double g[kLadder];
    for (int k = 0; k < kLadder; ++k) {
        const double z = z0 * std::pow(0.5, k);
        const double uz = extend_radial_dz(d, v, x_norm, z, 1e-12) / M;
        g[k] = -std::pow(z, 1.0 - 2.0 * d.s) * uz;
    }
    // eliminate the known correction powers in turn
    const double expo[3] = {2.0 - 2.0 * d.s, 2.0, 4.0 - 2.0 * d.s};
    int len = kLadder;
    for (int e = 0; e < 3; ++e) {
        const double f = std::pow(0.5, expo[e]);
        for (int k = 0; k + 1 < len; ++k) g[k] = (g[k + 1] - f * g[k]) / (1.0 - f);
        --len;
    }
    // the weighted limit of the normalized extension carries the matching
    // constant kappa_s in front of (-Delta)^s
    return g[len - 1] / cs_matching_constant(d.s);
}

double harmonic_residual(const DimPair& d,
                         const std::function<double(double, double)>& u,
                         double x_norm, double z, double h) {
    if (!(z > 2.0 * h) || !(x_norm > 2.0 * h))
        throw std::domain_error("harmonic_residual: need z, x > 2h");
    const double uc = u(x_norm, z);
    const double uzp = u(x_norm, z + h), uzm = u(x_norm, z - h);
    const double uxp = u(x_norm + h, z), uxm = u(x_norm - h, z);
    const double uzz = (uzp - 2.0 * uc + uzm) / (h * h);
    const double uz = (uzp - uzm) / (2.0 * h);
    const double uxx = (uxp - 2.0 * uc + uxm) / (h * h);
    const double ux = (uxp - uxm) / (2.0 * h);
    return uzz + (1.0 - 2.0 * d.s) / z * uz + uxx + (d.N - 1.0) / x_norm * ux;
}

}  // namespace fraclab
