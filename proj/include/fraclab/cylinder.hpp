// The log-polar view: w(t, phi) on a finite cylinder solving
//   w_tt + Theta w_t + Lambda w + A_s[w] = 0,
//   conormal(w) + kappa_s eps |w|^{p-1} w = 0 at phi = 0,
//   w_phi = 0 at phi = pi/2,
// as a two-point boundary-value problem in t (damped Newton on the sparse
// discretization), plus the energy functional and its damping identity.
#pragma once

#include <vector>

#include "fraclab/profile.hpp"

namespace fraclab {

/// Finite-volume discretization of the phi-direction: node 0 carries the
/// boundary value w(t,0); a geometric layer (ratio 0.75) resolves the
/// phi^{2s} edge; the bulk is uniform up to pi/2.
struct CylinderProblem {
    ProblemParams pp;
    double t0 = 0.0, t1 = 4.0;
    std::vector<double> t;        // uniform nodes, size nt+1
    std::vector<double> phi;      // phi[0] = 0, phi.back() = pi/2
    // iface_k[0] holds the g-functional's y0 coefficient (with mass_g1/g2
    // below); iface_k[j>=1] are midpoint-rho flux coefficients K_{j+1/2}
    std::vector<double> iface_k;
    std::vector<double> mass;     // cell masses of the weighted measure, size J+1
    double mass_g1 = 0.0, mass_g2 = 0.0;  // g-functional coefficients
    double corr_half = 1.0;  // smooth factor of the expansion flux at phi_{1/2}
    double theta = 0.0, lambda = 0.0;
    double boundary_coupling = 0.0;  // kappa_s * eps

    int nslices() const { return int(t.size()); }
    int nphi() const { return int(phi.size()); }
};

/// Builds the discretization. Rejects |Theta| < 1e-8 (Sobolev-critical p:
/// the damping identity degenerates there).
CylinderProblem assemble_system(const ProblemParams& pp, double t0, double t1,
                                int nt, int nphi);

/// Discrete A_s applied to one phi-slice (rows j = 1..J); row 0 is the
/// boundary condition's slot and is returned as 0.
std::vector<double> as_apply(const CylinderProblem& pr,
                             const std::vector<double>& y);

/// Discrete weighted conormal -2s (y1 - y0)/phi_1^{2s} of a slice.
double discrete_conormal(const CylinderProblem& pr, const std::vector<double>& y);

/// Interior + boundary residual of a t-independent slice (steady check).
std::vector<double> steady_residual(const CylinderProblem& pr,
                                    const std::vector<double>& y);

/// Damped Newton for the t-independent system, seeded from a profile.
std::vector<double> steady_state(const CylinderProblem& pr,
                                 const Profile& seed, double tol = 1e-11);

/// Samples a profile (scaled by `factor`) onto the cylinder phi-grid.
std::vector<double> slice_from_profile(const CylinderProblem& pr,
                                       const Profile& prof, double factor);

struct CylinderSolution {
    ProblemParams pp;
    std::vector<double> t;
    std::vector<double> phi;
    std::vector<std::vector<double>> w;  // w[i][j], i over t, j over phi
    std::vector<double> energy_trace;
    double newton_residual = 0.0;   // final max residual
    double initial_residual = 0.0;  // residual of the initial guess
    int iterations = 0;
};

/// Two-point boundary-value solve with Dirichlet slices at t0 and t1.
/// The initial guess defaults to linear interpolation of the data.
CylinderSolution newton_solve(const CylinderProblem& pr,
                              const std::vector<double>& data0,
                              const std::vector<double>& data1,
                              const std::vector<std::vector<double>>* guess = nullptr,
                              double tol = 1e-9);

/// Energy of slice i: (1/2) int (|w_phi|^2 - Lambda w^2 - w_t^2) dmu_s
/// + (coupling/(p+1)) |w(t,0)|^{p+1}, per unit boundary sphere measure.
double energy(const CylinderProblem& pr, const CylinderSolution& sol, int i);

/// max over interior t of |dI/dt - Theta int w_t^2 dmu_s|, normalized.
double energy_identity_residual(const CylinderProblem& pr,
                                const CylinderSolution& sol);

struct LimitReport {
    std::vector<double> dist_zero;   // sup-distance of each slice to 0
    std::vector<double> dist_plus;   // ... to +omega_root
    std::vector<double> dist_minus;  // ... to -omega_root
    int nearest_at_start = 0;        // 0 -> zero, +1 -> +omega, -1 -> -omega
    bool monotone_near_start = false;
    double end_distance = 0.0;       // distance of the probe slice near t0
};

/// Distances of every slice to the candidate limits {0, +omega_root,
/// -omega_root}; the probe slice sits one unit inside the t0 end.
LimitReport limit_diagnostics(const CylinderProblem& pr,
                              const CylinderSolution& sol,
                              const Profile& omega_root);

}  // namespace fraclab
