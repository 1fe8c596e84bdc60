#include "fraclab/cylinder.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double rho_weight(const DimPair& d, double phi) {
    return std::pow(std::sin(phi), 1.0 - 2.0 * d.s) *
           std::pow(std::cos(phi), d.N - 1.0);
}

double gauss8_integral(const std::function<double(double)>& f, double a, double b) {
    static const GaussRule gl = gauss_legendre(8);
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double acc = 0.0;
    for (int j = 0; j < 8; ++j) acc += gl.w[j] * h * f(c + h * gl.x[j]);
    return acc;
}

// Dense LU with partial pivoting, row-major n x n.
struct DenseLU {
    int n = 0;
    std::vector<double> a;
    std::vector<int> piv;

    void factor(std::vector<double> m, int dim) {
        n = dim;
        a = std::move(m);
        piv.resize(n);
        for (int c = 0; c < n; ++c) {
            int p = c;
            for (int r = c + 1; r < n; ++r)
                if (std::abs(a[r * n + c]) > std::abs(a[p * n + c])) p = r;
            piv[c] = p;
            if (p != c)
                for (int k = 0; k < n; ++k) std::swap(a[c * n + k], a[p * n + k]);
            const double d = a[c * n + c];
            if (d == 0.0) throw convergence_error("cylinder: singular Jacobian block");
            for (int r = c + 1; r < n; ++r) {
                const double f = a[r * n + c] / d;
                a[r * n + c] = f;
                for (int k = c + 1; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            }
        }
    }

    void solve_inplace(double* x) const {
        for (int c = 0; c < n; ++c) {
            if (piv[c] != c) std::swap(x[c], x[piv[c]]);
            for (int r = c + 1; r < n; ++r) x[r] -= a[r * n + c] * x[c];
        }
        for (int r = n - 1; r >= 0; --r) {
            for (int k = r + 1; k < n; ++k) x[r] -= a[r * n + k] * x[k];
            x[r] /= a[r * n + r];
        }
    }

    // X := A^{-1} X for a row-major n x m block
    void solve_matrix(std::vector<double>& X, int m) const {
        std::vector<double> col(n);
        for (int j = 0; j < m; ++j) {
            for (int r = 0; r < n; ++r) col[r] = X[r * m + j];
            solve_inplace(col.data());
            for (int r = 0; r < n; ++r) X[r * m + j] = col[r];
        }
    }
};

// coefficients of the boundary expansion w ~ w0 + g phi^{2s} + c2 phi^2
// fitted on nodes {0, 1, 2}: g = sum_i coef[i] w_i (two-node Richardson).
void g_coefficients(double s, double p1, double p2, double out[3]) {
    const double a1 = std::pow(p1, 2.0 * s), a2 = std::pow(p2, 2.0 * s);
    const double b1 = p1 * p1, b2 = p2 * p2;
    const double det = a1 * b2 - a2 * b1;
    out[1] = b2 / det;
    out[2] = -b1 / det;
    out[0] = -(out[1] + out[2]);
}

double slice_g(const CylinderProblem& pr, const std::vector<double>& y);

// nonlinear boundary row: -2s g + coupling |y0|^{p-1} y0
double bc_residual(const CylinderProblem& pr, const std::vector<double>& y) {
    const double s = pr.pp.d.s;
    const double nl = (y[0] == 0.0)
                          ? 0.0
                          : std::copysign(std::pow(std::abs(y[0]), pr.pp.p), y[0]);
    return -2.0 * s * slice_g(pr, y) + pr.boundary_coupling * nl;
}

}  // namespace

// g-extraction as a linear functional of the slice (file-local storage lives
// in the problem's gcoef array).
namespace {
double slice_g(const CylinderProblem& pr, const std::vector<double>& y) {
    return pr.iface_k[0] * y[0] + pr.mass_g1 * y[1] + pr.mass_g2 * y[2];
}
}  // namespace

CylinderProblem assemble_system(const ProblemParams& pp, double t0, double t1,
                                int nt, int nphi) {
    pp.validate();
    if (!(t1 > t0)) throw std::domain_error("assemble_system: need t1 > t0");
    if (nt < 8 || nphi < 24)
        throw std::domain_error("assemble_system: need nt >= 8, nphi >= 24");
    const CriticalExponents ce = critical_exponents(pp);
    if (std::abs(ce.theta) < 1e-8)
        throw regime_error(
            "assemble_system: Sobolev-critical p, the damping identity degenerates");

    CylinderProblem pr;
    pr.pp = pp;
    pr.t0 = t0;
    pr.t1 = t1;
    pr.theta = ce.theta;
    pr.lambda = ce.lambda;
    pr.boundary_coupling = pp.eps * cs_matching_constant(pp.d.s);

    pr.t.resize(nt + 1);
    for (int i = 0; i <= nt; ++i) pr.t[i] = t0 + (t1 - t0) * i / nt;

    // phi grid from the smooth spacing profile h(phi) = hb phi/(phi + phi_c):
    // geometric toward the equator, uniform in the bulk, with no junction
    // kink (kinks cost the finite-volume scheme a local order). hb is
    // calibrated so that nphi-1 marched nodes reach the target depth.
    {
        const double phi_c = 0.05;
        const double depth = 1e-4;
        auto march = [&](double hb, std::vector<double>* out) {
            double f = kPi / 2.0;
            int count = 1;
            if (out) out->push_back(f);
            while (f > depth && count < 4 * nphi) {
                f -= hb * f / (f + phi_c);
                ++count;
                if (out) out->push_back(f);
            }
            return count;
        };
        double lo = 1e-4, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (march(mid, nullptr) > nphi - 1 ? lo : hi) = mid;
        }
        std::vector<double> nodes;
        march(0.5 * (lo + hi), &nodes);
        while (int(nodes.size()) > nphi - 1) nodes.pop_back();
        pr.phi.assign(1, 0.0);
        for (auto it = nodes.rbegin(); it != nodes.rend(); ++it)
            pr.phi.push_back(*it);
        pr.phi.back() = kPi / 2.0;
    }

    const int J = pr.nphi() - 1;
    const DimPair& d = pp.d;

    // boundary g-functional coefficients (stored in iface_k[0], mass_g1/2)
    double gc[3];
    g_coefficients(d.s, pr.phi[1], pr.phi[2], gc);
    pr.iface_k.assign(J, 0.0);
    pr.iface_k[0] = gc[0];
    pr.mass_g1 = gc[1];
    pr.mass_g2 = gc[2];

    // midpoint-rho flux coefficients elsewhere
    for (int j = 1; j < J; ++j) {
        const double a = pr.phi[j], b = pr.phi[j + 1];
        pr.iface_k[j] = rho_weight(d, 0.5 * (a + b)) / (b - a);
    }

    // the smooth correction of the expansion flux at phi_{1/2}
    {
        const double fm = 0.5 * pr.phi[1];
        pr.corr_half = std::pow(std::sin(fm) / fm, 1.0 - 2.0 * d.s) *
                       std::pow(std::cos(fm), d.N - 1.0);
    }

    // cell masses of the weighted measure
    pr.mass.assign(J + 1, 0.0);
    auto rho = [&](double f) { return rho_weight(d, f); };
    {
        const double hi = 0.5 * (pr.phi[0] + pr.phi[1]);
        const GaussRule gj = gauss_jacobi(8, 0.0, 1.0 - 2.0 * d.s);
        const double sc = std::pow(0.5 * hi, 2.0 - 2.0 * d.s);
        for (int q = 0; q < 8; ++q) {
            const double f = 0.5 * hi * (1.0 + gj.x[q]);
            pr.mass[0] += gj.w[q] * sc *
                          std::pow(std::sin(f) / f, 1.0 - 2.0 * d.s) *
                          std::pow(std::cos(f), d.N - 1.0);
        }
    }
    for (int j = 1; j <= J; ++j) {
        const double lo = 0.5 * (pr.phi[j - 1] + pr.phi[j]);
        const double hi = (j == J) ? kPi / 2.0 : 0.5 * (pr.phi[j] + pr.phi[j + 1]);
        pr.mass[j] = gauss8_integral(rho, lo, hi);
    }
    return pr;
}

std::vector<double> as_apply(const CylinderProblem& pr,
                             const std::vector<double>& y) {
    const int J = pr.nphi() - 1;
    const double s = pr.pp.d.s;
    std::vector<double> out(J + 1, 0.0);
    for (int j = 1; j <= J; ++j) {
        const double f_hi = (j == J) ? 0.0 : pr.iface_k[j] * (y[j + 1] - y[j]);
        const double f_lo = (j == 1)
                                ? 2.0 * s * slice_g(pr, y) * pr.corr_half
                                : pr.iface_k[j - 1] * (y[j] - y[j - 1]);
        out[j] = (f_hi - f_lo) / pr.mass[j];
    }
    return out;
}

double discrete_conormal(const CylinderProblem& pr, const std::vector<double>& y) {
    return -2.0 * pr.pp.d.s * slice_g(pr, y);
}

std::vector<double> steady_residual(const CylinderProblem& pr,
                                    const std::vector<double>& y) {
    std::vector<double> res = as_apply(pr, y);
    const int J = pr.nphi() - 1;
    for (int j = 1; j <= J; ++j) res[j] += pr.lambda * y[j];
    res[0] = bc_residual(pr, y);
    return res;
}

namespace {

// spatial Jacobian block (shared by the steady solver and the Newton blocks)
void build_spatial_jacobian(const CylinderProblem& pr, double y0,
                            std::vector<double>& Jm) {
    const int n = pr.nphi();
    const int J = n - 1;
    const double s = pr.pp.d.s;
    std::fill(Jm.begin(), Jm.end(), 0.0);

    // boundary row
    Jm[0] = -2.0 * s * pr.iface_k[0] +
            pr.boundary_coupling * pr.pp.p * std::pow(std::abs(y0), pr.pp.p - 1.0);
    Jm[1] = -2.0 * s * pr.mass_g1;
    Jm[2] = -2.0 * s * pr.mass_g2;

    // row 1: (K_{3/2}(y2 - y1) - 2s g corr) / m_1 + lambda y_1
    {
        const double f = 2.0 * s * pr.corr_half / pr.mass[1];
        Jm[n + 0] = -f * pr.iface_k[0];
        Jm[n + 1] = -f * pr.mass_g1 - pr.iface_k[1] / pr.mass[1] + pr.lambda;
        Jm[n + 2] = -f * pr.mass_g2 + pr.iface_k[1] / pr.mass[1];
    }
    for (int j = 2; j <= J; ++j) {
        const double klo = pr.iface_k[j - 1];
        const double khi = (j == J) ? 0.0 : pr.iface_k[j];
        Jm[j * n + j - 1] = klo / pr.mass[j];
        Jm[j * n + j] = -(klo + khi) / pr.mass[j] + pr.lambda;
        if (j < J) Jm[j * n + j + 1] = khi / pr.mass[j];
    }
}

}  // namespace

std::vector<double> slice_from_profile(const CylinderProblem& pr,
                                       const Profile& prof, double factor) {
    std::vector<double> y(pr.nphi());
    y[0] = factor * prof.omega0;
    for (int j = 1; j < pr.nphi(); ++j) y[j] = factor * prof.eval(pr.phi[j]);
    return y;
}

std::vector<double> steady_state(const CylinderProblem& pr, const Profile& seed,
                                 double tol) {
    const int n = pr.nphi();
    std::vector<double> y = slice_from_profile(pr, seed, 1.0);
    std::vector<double> Jm(std::size_t(n) * n);

    for (int it = 0; it < 50; ++it) {
        std::vector<double> res = steady_residual(pr, y);
        double rmax = 0.0;
        for (double v : res) rmax = std::max(rmax, std::abs(v));
        if (rmax < tol) return y;
        build_spatial_jacobian(pr, y[0], Jm);
        DenseLU lu;
        lu.factor(Jm, n);
        lu.solve_inplace(res.data());
        for (int j = 0; j < n; ++j) y[j] -= res[j];
    }
    throw convergence_error("steady_state: Newton budget exhausted");
}

CylinderSolution newton_solve(const CylinderProblem& pr,
                              const std::vector<double>& data0,
                              const std::vector<double>& data1,
                              const std::vector<std::vector<double>>* guess,
                              double tol) {
    const int n = pr.nphi();
    const int J = n - 1;
    const int M = pr.nslices() - 1;
    const double ht = pr.t[1] - pr.t[0];
    if (int(data0.size()) != n || int(data1.size()) != n)
        throw std::domain_error("newton_solve: data size mismatch");

    CylinderSolution sol;
    sol.pp = pr.pp;
    sol.t = pr.t;
    sol.phi = pr.phi;
    sol.w.assign(M + 1, std::vector<double>(n, 0.0));
    sol.w[0] = data0;
    sol.w[M] = data1;
    if (guess) {
        sol.w = *guess;
        sol.w[0] = data0;
        sol.w[M] = data1;
    } else {
        for (int i = 1; i < M; ++i) {
            const double th = double(i) / M;
            for (int j = 0; j <= J; ++j)
                sol.w[i][j] = (1.0 - th) * data0[j] + th * data1[j];
        }
    }

    const double cplus = 1.0 / (ht * ht) + pr.theta / (2.0 * ht);
    const double cminus = 1.0 / (ht * ht) - pr.theta / (2.0 * ht);

    auto residual = [&](const std::vector<std::vector<double>>& w,
                        std::vector<std::vector<double>>& res) {
        double rmax = 0.0;
        for (int i = 1; i < M; ++i) {
            std::vector<double> spatial = steady_residual(pr, w[i]);
            for (int j = 1; j <= J; ++j) {
                const double wtt =
                    (w[i + 1][j] - 2.0 * w[i][j] + w[i - 1][j]) / (ht * ht);
                const double wt = (w[i + 1][j] - w[i - 1][j]) / (2.0 * ht);
                res[i][j] = wtt + pr.theta * wt + spatial[j];
                rmax = std::max(rmax, std::abs(res[i][j]));
            }
            res[i][0] = spatial[0];
            rmax = std::max(rmax, std::abs(res[i][0]));
        }
        return rmax;
    };

    std::vector<std::vector<double>> res(M + 1, std::vector<double>(n, 0.0));
    double rmax = residual(sol.w, res);
    sol.initial_residual = rmax;

    for (int it = 0; it < 50 && rmax >= tol; ++it) {
        std::vector<std::vector<double>> C(M);  // D^{-1} U blocks
        std::vector<std::vector<double>> G(M, std::vector<double>(n, 0.0));
        std::vector<double> D(std::size_t(n) * n);

        DenseLU lu;
        for (int i = 1; i < M; ++i) {
            build_spatial_jacobian(pr, sol.w[i][0], D);
            for (int j = 1; j <= J; ++j) D[j * n + j] += -2.0 / (ht * ht);
            std::vector<double> rhs(n);
            for (int j = 0; j < n; ++j) rhs[j] = -res[i][j];
            if (i > 1) {
                for (int j = 1; j <= J; ++j) {
                    rhs[j] -= cminus * G[i - 1][j];
                    for (int k = 0; k < n; ++k)
                        D[j * n + k] -= cminus * C[i - 1][j * n + k];
                }
            }
            lu.factor(std::move(D), n);
            D.assign(std::size_t(n) * n, 0.0);
            if (i < M - 1) {
                std::vector<double> U(std::size_t(n) * n, 0.0);
                for (int j = 1; j <= J; ++j) U[j * n + j] = cplus;
                lu.solve_matrix(U, n);
                C[i] = std::move(U);
            }
            lu.solve_inplace(rhs.data());
            G[i] = std::move(rhs);
        }
        std::vector<std::vector<double>> dw(M + 1, std::vector<double>(n, 0.0));
        for (int i = M - 1; i >= 1; --i) {
            dw[i] = G[i];
            if (i < M - 1)
                for (int j = 0; j < n; ++j) {
                    double acc = 0.0;
                    for (int k = 0; k < n; ++k) acc += C[i][j * n + k] * dw[i + 1][k];
                    dw[i][j] -= acc;
                }
        }

        double step = 1.0;
        bool accepted = false;
        std::vector<std::vector<double>> trial = sol.w;
        for (int ls = 0; ls < 30; ++ls) {
            for (int i = 1; i < M; ++i)
                for (int j = 0; j < n; ++j)
                    trial[i][j] = sol.w[i][j] + step * dw[i][j];
            const double rnew = residual(trial, res);
            if (rnew < rmax * (1.0 - 1e-4 * step) || rnew < tol) {
                sol.w = trial;
                rmax = rnew;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        sol.iterations = it + 1;
        if (!accepted) {
            rmax = residual(sol.w, res);
            break;
        }
    }
    if (rmax >= tol && rmax > 1e3 * tol)
        throw convergence_error("newton_solve: residual did not converge");
    sol.newton_residual = rmax;

    sol.energy_trace.resize(M + 1);
    CylinderSolution tmp = sol;
    for (int i = 0; i <= M; ++i) sol.energy_trace[i] = energy(pr, tmp, i);
    return sol;
}

double energy(const CylinderProblem& pr, const CylinderSolution& sol, int i) {
    const int J = pr.nphi() - 1;
    const int M = int(sol.t.size()) - 1;
    const double ht = pr.t[1] - pr.t[0];
    const double s = pr.pp.d.s;
    const std::vector<double>& y = sol.w[i];

    // gradient part: the first cell carries the boundary expansion exactly,
    //   int_0^{phi_1} rho w_phi^2 = 2s g^2 phi_1^{2s}
    const double g = slice_g(pr, y);
    double grad = 2.0 * s * g * g * std::pow(pr.phi[1], 2.0 * s);
    for (int j = 1; j < J; ++j) {
        const double dw = y[j + 1] - y[j];
        grad += pr.iface_k[j] * dw * dw;
    }
    double mass2 = 0.0, kin = 0.0;
    for (int j = 0; j <= J; ++j) {
        mass2 += pr.mass[j] * y[j] * y[j];
        double wt;
        if (i == 0)
            wt = (sol.w[1][j] - sol.w[0][j]) / ht;
        else if (i == M)
            wt = (sol.w[M][j] - sol.w[M - 1][j]) / ht;
        else
            wt = (sol.w[i + 1][j] - sol.w[i - 1][j]) / (2.0 * ht);
        kin += pr.mass[j] * wt * wt;
    }
    const double bterm = pr.boundary_coupling / (pr.pp.p + 1.0) *
                         std::pow(std::abs(y[0]), pr.pp.p + 1.0);
    return 0.5 * (grad - pr.lambda * mass2 - kin) + bterm;
}

double energy_identity_residual(const CylinderProblem& pr,
                                const CylinderSolution& sol) {
    const int M = int(sol.t.size()) - 1;
    const int J = pr.nphi() - 1;
    const double ht = pr.t[1] - pr.t[0];
    double worst = 0.0, scale = 0.0;
    for (int i = 1; i < M; ++i) {
        const double dIdt =
            (sol.energy_trace[i + 1] - sol.energy_trace[i - 1]) / (2.0 * ht);
        double damp = 0.0;
        for (int j = 0; j <= J; ++j) {
            const double wt = (sol.w[i + 1][j] - sol.w[i - 1][j]) / (2.0 * ht);
            damp += pr.mass[j] * wt * wt;
        }
        damp *= pr.theta;
        worst = std::max(worst, std::abs(dIdt - damp));
        scale = std::max({scale, std::abs(sol.energy_trace[i]), std::abs(damp)});
    }
    return worst / std::max(scale, 1e-300);
}

LimitReport limit_diagnostics(const CylinderProblem& pr,
                              const CylinderSolution& sol,
                              const Profile& omega_root) {
    const int M = int(sol.t.size()) - 1;
    const std::vector<double> target = slice_from_profile(pr, omega_root, 1.0);
    LimitReport rep;
    auto dist = [&](const std::vector<double>& y, double sign_target) {
        double dmax = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j)
            dmax = std::max(dmax, std::abs(y[j] - sign_target * target[j]));
        return dmax;
    };
    for (int i = 0; i <= M; ++i) {
        rep.dist_zero.push_back(dist(sol.w[i], 0.0));
        rep.dist_plus.push_back(dist(sol.w[i], 1.0));
        rep.dist_minus.push_back(dist(sol.w[i], -1.0));
    }
    int probe = 0;
    while (probe < M && sol.t[probe] < pr.t0 + 1.0) ++probe;
    const double dz = rep.dist_zero[probe], dp = rep.dist_plus[probe],
                 dm = rep.dist_minus[probe];
    rep.nearest_at_start = (dz <= dp && dz <= dm) ? 0 : (dp <= dm ? +1 : -1);
    rep.end_distance = std::min({dz, dp, dm});
    rep.monotone_near_start = true;
    auto& track = (rep.nearest_at_start == 0)
                      ? rep.dist_zero
                      : (rep.nearest_at_start > 0 ? rep.dist_plus : rep.dist_minus);
    for (int i = probe; i + 1 <= std::min(M, probe + M / 4); ++i)
        if (track[i + 1] > track[i] + 1e-12) rep.monotone_near_start = false;
    return rep;
}

}  // namespace fraclab
