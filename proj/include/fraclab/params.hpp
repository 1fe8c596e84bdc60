// Problem-parameter algebra: critical exponents, Lambda/Theta, the
// self-similar constant c_p, and the regime classifier of the positive
// solution set.
#pragma once

#include <stdexcept>
#include <string>

#include "fraclab/specfun.hpp"

namespace fraclab {

struct regime_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// (N, s, p, eps): eps = +1 absorption (Emden-Fowler), -1 source (Lane-Emden).
struct ProblemParams {
    DimPair d;
    double p = 2.0;
    int eps = +1;

    void validate() const;  // N > 2s, p > 1, eps in {+1,-1}
};

struct CriticalExponents {
    double p_weak;          // 1 + 2s/N
    double p_serrin;        // N/(N-2s)
    double p_sobolev;       // (N+2s)/(N-2s)
    double p_star_Q;        // 1 + 2s/X*, X* positive root of X^2+(2s-N)X+1-N
    double p_star_printed;  // the surd expression as printed
    double lambda;          // X(X+2s-N), X = 2s/(p-1)
    double theta;           // N - 2s(p+1)/(p-1)
    double tau_p;           // -2s/(p-1)
};

enum class Regime {
    TrivialOnly,
    UniqueProfileEF,  // eps=+1, p_weak < p < p_serrin
    UniqueProfileLE,  // eps=-1, p > p_serrin
    SerrinCritical,
    SobolevCritical,
};

std::string regime_name(Regime r);

CriticalExponents critical_exponents(const ProblemParams& pp);

Regime regime(const ProblemParams& pp);

/// True when the unique positive self-similar profile exists, i.e.
/// -eps * C_s(tau_p) > 0.
bool c_p_defined(const ProblemParams& pp);

/// c_p = (-eps * C_s(tau_p))^{1/(p-1)}, the constant of U_p = c_p |x|^{tau_p}.
/// Throws regime_error outside the admissible regime (including the Serrin
/// boundary where C_s(tau_p) = 0).
double c_p(const ProblemParams& pp);

/// The sign base eps-branch assigns in the printed table; its (p-1)-th root
/// is NaN whenever the base is negative. Reported, never used downstream.
double c_p_printed_base(const ProblemParams& pp);
double c_p_printed(const ProblemParams& pp);

/// U_p(r) = c_p r^{-2s/(p-1)} for r > 0.
double u_p_eval(const ProblemParams& pp, double r);

}  // namespace fraclab
