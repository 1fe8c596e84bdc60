#include "fraclab/params.hpp"

#include <cmath>
#include <limits>

namespace fraclab {

void ProblemParams::validate() const {
    d.validate_strict();
    if (!(p > 1.0)) throw std::domain_error("ProblemParams: p > 1 required");
    if (eps != 1 && eps != -1)
        throw std::domain_error("ProblemParams: eps must be +1 or -1");
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::TrivialOnly: return "TrivialOnly";
        case Regime::UniqueProfileEF: return "UniqueProfileEF";
        case Regime::UniqueProfileLE: return "UniqueProfileLE";
        case Regime::SerrinCritical: return "SerrinCritical";
        case Regime::SobolevCritical: return "SobolevCritical";
    }
    return "?";
}

CriticalExponents critical_exponents(const ProblemParams& pp) {
    pp.validate();
    const double N = pp.d.N, s = pp.d.s, p = pp.p;
    CriticalExponents ce;
    ce.p_weak = 1.0 + 2.0 * s / N;
    ce.p_serrin = N / (N - 2.0 * s);
    ce.p_sobolev = (N + 2.0 * s) / (N - 2.0 * s);

    // Q(X) = X^2 + (2s-N)X + 1 - N; X* is its positive root.
    const double xstar = 0.5 * ((N - 2.0 * s) +
                                std::sqrt((2.0 * s - N) * (2.0 * s - N) - 4.0 * (1.0 - N)));
    ce.p_star_Q = 1.0 + 2.0 * s / xstar;
    const double surd = std::sqrt(N * N + 4.0 * (N - s) + 4.0 * s * s - 4.0);
    ce.p_star_printed = (N + 2.0 * s + surd) / (N - 2.0 * s + surd);

    const double X = 2.0 * s / (p - 1.0);
    ce.lambda = X * (X + 2.0 * s - N);
    ce.theta = N - 2.0 * s * (p + 1.0) / (p - 1.0);
    ce.tau_p = -2.0 * s / (p - 1.0);
    return ce;
}

Regime regime(const ProblemParams& pp) {
    pp.validate();
    const CriticalExponents ce = critical_exponents(pp);
    // boundary cases only when p hits a critical value bit-exactly
    if (pp.p == ce.p_serrin) return Regime::SerrinCritical;
    if (pp.p == ce.p_sobolev) return Regime::SobolevCritical;
    if (pp.eps == +1) {
        return (pp.p > ce.p_weak && pp.p < ce.p_serrin) ? Regime::UniqueProfileEF
                                                        : Regime::TrivialOnly;
    }
    return (pp.p > ce.p_serrin) ? Regime::UniqueProfileLE : Regime::TrivialOnly;
}

bool c_p_defined(const ProblemParams& pp) {
    const Regime r = regime(pp);
    return r == Regime::UniqueProfileEF || r == Regime::UniqueProfileLE;
}

double c_p(const ProblemParams& pp) {
    if (!c_p_defined(pp))
        throw regime_error("c_p: no positive self-similar profile in this regime");
    const CriticalExponents ce = critical_exponents(pp);
    const double base = -pp.eps * cs_tau_closed(pp.d, ce.tau_p);
    if (!(base > 0.0))
        throw regime_error("c_p: -eps*C_s(tau_p) not positive");
    return std::pow(base, 1.0 / (pp.p - 1.0));
}

double c_p_printed_base(const ProblemParams& pp) {
    pp.validate();
    const CriticalExponents ce = critical_exponents(pp);
    const double cs = cs_tau_closed(pp.d, ce.tau_p);
    // printed table: +C_s on the Emden-Fowler range, -C_s on Lane-Emden
    if (pp.p > ce.p_weak && pp.p < ce.p_serrin) return cs;
    if (pp.p > ce.p_serrin) return -cs;
    return std::numeric_limits<double>::quiet_NaN();
}

double c_p_printed(const ProblemParams& pp) {
    const double base = c_p_printed_base(pp);
    if (!(base > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return std::pow(base, 1.0 / (pp.p - 1.0));
}

double u_p_eval(const ProblemParams& pp, double r) {
    if (!(r > 0.0)) throw std::domain_error("u_p_eval: r > 0 required");
    return c_p(pp) * std::pow(r, -2.0 * pp.d.s / (pp.p - 1.0));
}

}  // namespace fraclab
