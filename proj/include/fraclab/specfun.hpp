// Gamma machinery and the Hardy-multiplier function C_s:
// closed Gamma-quotient form, radial integral representation,
// derivatives at the origin, and the exponent pair tau_-/tau_+.
#pragma once

#include <stdexcept>
#include <utility>

namespace fraclab {

/// Spatial dimension N and fractional order s of the operator (-Delta)^s.
struct DimPair {
    int N = 1;
    double s = 0.5;

    /// Basic sanity: N >= 1, s in (0,1). Throws std::domain_error otherwise.
    void validate_basic() const;
    /// Full admissibility N > 2s, needed whenever Gamma((N-2s)/2) or the
    /// Serrin exponent enters. Throws std::domain_error otherwise.
    void validate_strict() const;
    bool strict_ok() const { return N > 2.0 * s; }
};

/// Exponent pair for the Hardy operator (-Delta)^s + mu |x|^{-2s}.
struct HardyData {
    double mu = 0.0;
    double mu0 = 0.0;
    double tau_minus = 0.0;
    double tau_plus = 0.0;
};

struct GammaPair {
    double gamma;        // +infinity at nonpositive integers
    double recip_gamma;  // entire; exactly 0 at nonpositive integers
};

/// Gamma and its entire reciprocal at x. No precondition on x.
GammaPair gamma_kernel(double x);

double gamma_fn(double x);        // convenience: gamma_kernel(x).gamma
double recip_gamma_fn(double x);  // convenience: gamma_kernel(x).recip_gamma

/// sin(pi*x) with exact zeros at integer x.
double sin_pi(double x);

/// Normalization constant of (-Delta)^s:
/// 2^{2s} pi^{-N/2} Gamma((N+2s)/2) / Gamma(1-s).
double c_frac(const DimPair& d);

/// The constant that actually normalizes the singular integral so that
/// (-Delta)^s |x|^tau = C_s(tau) |x|^{tau-2s}; equals s * c_frac(d)
/// (the |Gamma(-s)| = Gamma(1-s)/s convention). Used by every
/// integral-representation evaluator; both values are reported.
double c_frac_normalized(const DimPair& d);

/// kappa_s = 2^{1-2s} Gamma(1-s)/Gamma(s): the constant matching the
/// weighted conormal limit of the mass-normalized extension to (-Delta)^s,
///   -lim z^{1-2s} u_z = kappa_s (-Delta)^s v.
/// Equals 1 exactly at s = 1/2. Enters every conormal-type boundary
/// coupling on the half-space and the half-sphere.
double cs_matching_constant(double s);

/// Multiplier in (-Delta)^s |x|^tau = C_s(tau) |x|^{tau-2s}, Gamma-quotient
/// form. Denominator factors go through the reciprocal Gamma so the zeros at
/// tau = 0 and tau = 2s-N are exact. Requires tau in (-N, 2s).
double cs_tau_closed(const DimPair& d, double tau);

/// Same quantity through the radial reduction of the defining integral.
/// Supported for N in {1,2,3}; the |z|->0 cancellation is handled by a
/// series expansion of the spherical average. `tol` is a relative target.
double cs_tau_integral(const DimPair& d, double tau, double tol = 1e-8);

/// Critical Hardy coupling mu_0 = -2^{2s} Gamma^2((N+2s)/4) / Gamma^2((N-2s)/4).
double mu_zero(const DimPair& d);

/// Solves C_s(tau) + mu = 0 on both monotone branches. tau_+ by bisection on
/// [(2s-N)/2, 2s); tau_- = 2s-N - tau_+ so the sum identity is exact.
/// Requires mu >= mu_zero(d).
HardyData tau_pm(const DimPair& d, double mu);

/// (C_s'(0), C_s''(0)) by Richardson-extrapolated central differences of the
/// closed form. Both are negative.
std::pair<double, double> cs_derivs_at_zero(const DimPair& d);

/// Analytic limit of C_s'(0) (from Gamma(-tau/2) ~ -2/tau in the closed
/// form); used as an independent cross-check of the finite differences.
double cs_deriv0_analytic(const DimPair& d);

}  // namespace fraclab
