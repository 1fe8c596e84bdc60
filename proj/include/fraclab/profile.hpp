// Self-similar profiles on the half-sphere: the linear Picard operator of
// the reduced boundary-value problem, its fixed point, the weighted conormal
// derivative at the equator, and the shooting construction that selects the
// self-similar amplitude.
#pragma once

#include <vector>

#include "fraclab/params.hpp"

namespace fraclab {

struct consistency_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct convergence_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Gridded profile omega(phi) on (0, pi/2]. For lambda < 0 the profile
/// increases in phi, for lambda > 0 it decreases; omega(pi/2) = a.
struct Profile {
    ProblemParams pp;
    std::vector<double> grid;    // interior nodes, last one = pi/2
    std::vector<double> values;  // omega at the nodes
    double omega0 = 0.0;         // boundary value omega(0+), extrapolated
    double conormal0 = 0.0;      // d omega / d phi^s (0)
    double a = 1.0;              // omega(pi/2)
    bool serrin_critical = false;
    int iterations = 0;
    double disc_estimate = 0.0;  // |omega0(K) - omega0(K/2)|

    /// Piecewise-cubic evaluation; below the first node the boundary
    /// expansion omega0 + g phi^{2s} is used.
    double eval(double phi) const;
};

/// Chebyshev-type grid clustered toward phi = 0 (n nodes, last at pi/2).
std::vector<double> profile_grid(int n);

/// One application of the double-integral operator
///   T[w](phi) = a - Lambda int_phi^{pi/2} (sin)^{2s-1}(cos)^{1-N}
///                      int_sigma^{pi/2} w (sin)^{1-2s}(cos)^{N-1} dtheta dsigma
/// on the profile's own grid.
Profile picard_T(const ProblemParams& pp, const Profile& w);

/// Fixed point of T normalized to omega(pi/2) = 1 (sup-norm Cauchy stop).
/// Lambda = 0 returns the constant profile flagged serrin_critical.
Profile solve_profile_unit(const ProblemParams& pp, double tol = 1e-10,
                           int grid_n = 400);

/// d omega / d phi^s (0) computed from the weighted integral identity, and
/// cross-checked against the direct weighted limit of the gridded values;
/// disagreement beyond 1e-6 relative raises consistency_error.
double conormal_at_zero(const ProblemParams& pp, const Profile& w);

/// F(a) = a (conormal1 + eps a^{p-1} omega1(0)^p) with the sign convention
/// of the two regimes (eps = +1 increasing in a, eps = -1 decreasing).
double shooting_value(const ProblemParams& pp, const Profile& unit_profile,
                      double a);

struct SelfSimilarResult {
    double a_root = 0.0;
    Profile prof;
    double c_p_reference = 0.0;  // Gamma-formula value
    double cross_check_rel_error = 0.0;
};

/// Bisection on a -> F(a)/a over a dyadically expanded bracket; returns the
/// selected profile, whose boundary value must reproduce the Gamma-formula
/// constant c_p.
SelfSimilarResult solve_selfsimilar(const ProblemParams& pp, double tol = 1e-10,
                                    int grid_n = 400);

}  // namespace fraclab
