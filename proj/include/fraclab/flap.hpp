// Direct evaluation of (-Delta)^s on radial functions of R^N through the
// principal-value integral, reduced to one dimension by the angular kernels.
#pragma once

#include <functional>
#include <optional>

#include "fraclab/params.hpp"
#include "fraclab/quadrature.hpp"
#include "fraclab/specfun.hpp"

namespace fraclab {

/// Radial function r > 0 -> v(r) with declared power behavior at the origin
/// (|v| <~ r^{tau_origin}) and at infinity (|v| <~ r^{tau_infty}).
/// Convergence of the singular integral needs tau_origin > -N and
/// tau_infty < 2s. Derivative hooks are optional; finite differences are
/// used when they are absent. `cutoff` marks exact vanishing beyond a radius.
struct RadialFunction {
    std::function<double(double)> evaluate;
    std::function<double(double)> deriv1;
    std::function<double(double)> deriv2;
    double tau_origin = 0.0;
    double tau_infty = -1.0;
    std::optional<double> cutoff;

    double operator()(double r) const { return evaluate(r); }
};

/// v(r) = r^tau with analytic derivatives.
RadialFunction power_function(double tau);

/// v = min(r^tau, cap), truncated to zero beyond `cutoff` when given.
RadialFunction capped_power_function(double tau, double cap,
                                     std::optional<double> cutoff = {});

/// v identically `value` inside the cutoff radius, zero outside.
RadialFunction constant_function(double value, double cutoff);

/// U_p(r) = c_p r^{-2s/(p-1)} for the admissible regime of pp.
RadialFunction u_p_function(const ProblemParams& pp);

/// The Serrin-critical log-power test function w_m = |x|^{2s-N} nu_m with
/// nu_m = (-ln r)^m inside e^{-2}, smoothly cut to zero by e^{-1}.
RadialFunction log_power_function(const DimPair& d, double m);

/// (-Delta)^s v (r): normalized principal-value integral with second-order
/// Taylor subtraction on the panel (r/2, 3r/2) and compactified far field.
/// `tol` is the absolute error target of the quadratures.
double frac_lap_radial(const DimPair& d, const RadialFunction& v, double r,
                       double tol);

/// frac_lap_radial + eps * sign(v) |v|^p at r.
double emden_residual(const ProblemParams& pp, const RadialFunction& v,
                      double r, double tol);

struct LogLapResult {
    double value;    // (-Delta)^s w_m at r
    double leading;  // I_m r^{-N} L^{m-1} + J_m r^{-N} L^{m-2}, L = -ln r
    double i_m;      // C_s'(0) m
    double j_m;      // C_s''(0) m(m-1)/2
};

/// Evaluates (-Delta)^s w_m at r in (0, e^{-2}) together with the predicted
/// leading behavior; value/leading -> 1 as r -> 0.
LogLapResult frac_lap_log(const DimPair& d, double m, double r, double tol);

}  // namespace fraclab
