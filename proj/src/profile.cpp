#include "fraclab/profile.hpp"

#include <algorithm>
#include <cmath>

#include "fraclab/quadrature.hpp"

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

double measure_weight(const DimPair& d, double phi) {
    return std::pow(std::sin(phi), 1.0 - 2.0 * d.s) *
           std::pow(std::cos(phi), d.N - 1.0);
}

double outer_weight(const DimPair& d, double phi) {
    return std::pow(std::sin(phi), 2.0 * d.s - 1.0) *
           std::pow(std::cos(phi), 1.0 - double(d.N));
}

// 4-point Lagrange interpolation coefficients of the grid values at x.
struct Stencil {
    int base;  // first of four node indices
    double c[4];
};

Stencil lagrange4(const std::vector<double>& g, double x) {
    const int n = int(g.size());
    int j = int(std::upper_bound(g.begin(), g.end(), x) - g.begin()) - 1;
    j = std::clamp(j, 0, n - 2);
    int base = std::clamp(j - 1, 0, n - 4);
    Stencil st;
    st.base = base;
    for (int a = 0; a < 4; ++a) {
        double c = 1.0;
        for (int b = 0; b < 4; ++b) {
            if (a == b) continue;
            c *= (x - g[base + b]) / (g[base + a] - g[base + b]);
        }
        st.c[a] = c;
    }
    return st;
}

// Dense linear-functional rows for the nested double integral: row i maps
// grid values to  int_{phi_i}^{pi/2} W(sigma) int_sigma^{pi/2} w rho  dsigma.
class ProfileOperator {
  public:
    ProfileOperator(const ProblemParams& pp, std::vector<double> grid)
        : pp_(pp), grid_(std::move(grid)), n_(int(grid_.size())) {
        assemble();
    }

    const std::vector<double>& grid() const { return grid_; }

    // T[w] = a - Lambda * (Q w)
    std::vector<double> apply_T(const std::vector<double>& w, double a,
                                double lambda) const {
        std::vector<double> out(n_);
        for (int i = 0; i < n_; ++i) {
            double acc = 0.0;
            const double* row = Q_.data() + std::size_t(i) * n_;
            for (int j = 0; j < n_; ++j) acc += row[j] * w[j];
            out[i] = a - lambda * acc;
        }
        return out;
    }

    // int_{phi_0}^{pi/2} w rho dphi
    double mass_integral(const std::vector<double>& w) const {
        double acc = 0.0;
        for (int j = 0; j < n_; ++j) acc += M0_[j] * w[j];
        return acc;
    }

    // moments of the sliver (0, phi_0): I0 = int rho, I1 = int phi^{2s} rho
    double sliver_I0() const { return sliver_I0_; }
    double sliver_I1() const { return sliver_I1_; }

  private:
    void assemble() {
        const DimPair& d = pp_.d;
        const GaussRule g8 = gauss_legendre(8);
        const GaussRule g6 = gauss_legendre(6);

        // panel integrals of w rho -> cumulative M vectors
        std::vector<std::vector<double>> M(n_, std::vector<double>(n_, 0.0));
        for (int p = n_ - 2; p >= 0; --p) {
            M[p] = M[p + 1];
            const double a = grid_[p], b = grid_[p + 1];
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            for (int q = 0; q < 8; ++q) {
                const double th = c + h * g8.x[q];
                const double wq = g8.w[q] * h * measure_weight(d, th);
                const Stencil st = lagrange4(grid_, th);
                for (int t = 0; t < 4; ++t) M[p][st.base + t] += wq * st.c[t];
            }
        }
        M0_ = M[0];

        // outer accumulation
        Q_.assign(std::size_t(n_) * n_, 0.0);
        std::vector<double> O(n_, 0.0);  // running row, top-down
        for (int i = n_ - 2; i >= 0; --i) {
            const double a = grid_[i], b = grid_[i + 1];
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);
            for (int q = 0; q < 8; ++q) {
                const double sg = c + h * g8.x[q];
                const double wq = g8.w[q] * h * outer_weight(d, sg);
                // M(sigma_q) = M[i+1] + int_{sigma_q}^{b} w rho
                for (int j = 0; j < n_; ++j) O[j] += wq * M[i + 1][j];
                const double mc = 0.5 * (sg + b), mh = 0.5 * (b - sg);
                for (int m = 0; m < 6; ++m) {
                    const double th = mc + mh * g6.x[m];
                    const double wm = g6.w[m] * mh * measure_weight(d, th) * wq;
                    const Stencil st = lagrange4(grid_, th);
                    for (int t = 0; t < 4; ++t) O[st.base + t] += wm * st.c[t];
                }
            }
            double* row = Q_.data() + std::size_t(i) * n_;
            for (int j = 0; j < n_; ++j) row[j] = O[j];
        }

        // sliver moments below the first node:
        //   I0 = int_0^{phi_0} rho,  I1 = int_0^{phi_0} phi^{2s} rho.
        // I0 carries the phi^{1-2s} endpoint factor (Gauss-Jacobi); the I1
        // integrand phi^{2s} rho = phi * smooth is plain-Gauss material.
        {
            const double pm = grid_[0];
            const GaussRule gj = gauss_jacobi(12, 0.0, 1.0 - 2.0 * d.s);
            sliver_I0_ = 0.0;
            const double sc0 = std::pow(0.5 * pm, 2.0 - 2.0 * d.s);
            for (int q = 0; q < 12; ++q) {
                const double phi = 0.5 * pm * (1.0 + gj.x[q]);
                sliver_I0_ += gj.w[q] * sc0 *
                              std::pow(std::sin(phi) / phi, 1.0 - 2.0 * d.s) *
                              std::pow(std::cos(phi), d.N - 1.0);
            }
            const GaussRule gl = gauss_legendre(12);
            sliver_I1_ = 0.0;
            for (int q = 0; q < 12; ++q) {
                const double phi = 0.5 * pm * (1.0 + gl.x[q]);
                sliver_I1_ += gl.w[q] * 0.5 * pm * std::pow(phi, 2.0 * d.s) *
                              measure_weight(d, phi);
            }
        }
    }

    ProblemParams pp_;
    std::vector<double> grid_;
    int n_;
    std::vector<double> Q_;   // n x n dense rows
    std::vector<double> M0_;  // mass-integral coefficients
    double sliver_I0_ = 0.0, sliver_I1_ = 0.0;
};

// boundary fit omega(phi) ~ w0 + g phi^{2s} + c2 phi^2 + c3 phi^{2+2s}
struct BoundaryFit {
    double w0, g;
};

BoundaryFit boundary_fit(const DimPair& d, const std::vector<double>& grid,
                         const std::vector<double>& vals) {
    const int n = int(grid.size());
    int i0 = 0;
    while (i0 < n - 8 && grid[i0] < 1e-3) ++i0;
    const int idx[4] = {i0, i0 + int(0.3 * i0) + 1, i0 + int(0.7 * i0) + 2,
                        2 * i0 + 3};
    double A[4][5];
    for (int r = 0; r < 4; ++r) {
        const double phi = grid[std::min(idx[r], n - 1)];
        const double val = vals[std::min(idx[r], n - 1)];
        A[r][0] = 1.0;
        A[r][1] = std::pow(phi, 2.0 * d.s);
        A[r][2] = phi * phi;
        A[r][3] = std::pow(phi, 2.0 + 2.0 * d.s);
        A[r][4] = val;
    }
    // Gaussian elimination with partial pivoting on the 4x4 system
    for (int c = 0; c < 4; ++c) {
        int piv = c;
        for (int r = c + 1; r < 4; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        for (int k = 0; k < 5; ++k) std::swap(A[c][k], A[piv][k]);
        for (int r = c + 1; r < 4; ++r) {
            const double f = A[r][c] / A[c][c];
            for (int k = c; k < 5; ++k) A[r][k] -= f * A[c][k];
        }
    }
    double sol[4];
    for (int r = 3; r >= 0; --r) {
        double acc = A[r][4];
        for (int k = r + 1; k < 4; ++k) acc -= A[r][k] * sol[k];
        sol[r] = acc / A[r][r];
    }
    return {sol[0], sol[1]};
}

Profile solve_on_grid(const ProblemParams& pp, double tol, int grid_n,
                      int* iterations_out) {
    const CriticalExponents ce = critical_exponents(pp);
    Profile prof;
    prof.pp = pp;
    prof.grid = profile_grid(grid_n);
    prof.a = 1.0;

    if (std::abs(ce.lambda) < 1e-14) {
        prof.values.assign(prof.grid.size(), 1.0);
        prof.omega0 = 1.0;
        prof.conormal0 = 0.0;
        prof.serrin_critical = true;
        if (iterations_out) *iterations_out = 0;
        return prof;
    }

    const ProfileOperator op(pp, prof.grid);
    std::vector<double> w(prof.grid.size(), 1.0);
    int it = 0;
    for (; it < 200; ++it) {
        std::vector<double> next = op.apply_T(w, 1.0, ce.lambda);
        double diff = 0.0;
        for (std::size_t j = 0; j < w.size(); ++j)
            diff = std::max(diff, std::abs(next[j] - w[j]));
        w.swap(next);
        if (diff < tol) break;
    }
    if (it >= 200)
        throw convergence_error("solve_profile_unit: Picard budget exhausted");
    if (iterations_out) *iterations_out = it + 1;

    prof.values = w;
    const BoundaryFit fit = boundary_fit(pp.d, prof.grid, prof.values);
    prof.omega0 = fit.w0;

    // conormal route 1: the weighted integral identity
    const double mass = op.mass_integral(w) + fit.w0 * op.sliver_I0() +
                        fit.g * op.sliver_I1();
    const double route1 = -ce.lambda * mass;
    // route 2: weighted limit of the gridded values
    const double route2 = -2.0 * pp.d.s * fit.g;
    if (std::abs(route1 - route2) >
        1e-6 * std::max({std::abs(route1), std::abs(route2), 1e-8}))
        throw consistency_error("conormal_at_zero: integral and limit routes disagree");
    prof.conormal0 = route1;
    return prof;
}

}  // namespace

std::vector<double> profile_grid(int n) {
    if (n < 16) throw std::domain_error("profile_grid: n >= 16 required");
    std::vector<double> g(n);
    for (int j = 1; j <= n; ++j) {
        const double t = std::sin(0.5 * kPi * j / n);
        g[j - 1] = 0.5 * kPi * t * t;
    }
    g[n - 1] = 0.5 * kPi;
    return g;
}

double Profile::eval(double phi) const {
    if (phi >= grid.back()) return values.back();
    if (phi <= grid.front()) {
        const double g = -conormal0 / (2.0 * pp.d.s);
        return omega0 + g * std::pow(phi, 2.0 * pp.d.s);
    }
    const Stencil st = lagrange4(grid, phi);
    // near the equator omega varies like phi^{2s}; interpolate in that
    // variable there, in phi elsewhere
    const int k_switch = std::min<int>(16, int(grid.size()) - 4);
    if (phi <= grid[k_switch]) {
        const double ts = 2.0 * pp.d.s;
        const double x = std::pow(phi, ts);
        double acc = 0.0;
        for (int a = 0; a < 4; ++a) {
            double c = 1.0;
            const double xa = std::pow(grid[st.base + a], ts);
            for (int b = 0; b < 4; ++b) {
                if (a == b) continue;
                c *= (x - std::pow(grid[st.base + b], ts)) /
                     (xa - std::pow(grid[st.base + b], ts));
            }
            acc += c * values[st.base + a];
        }
        return acc;
    }
    double acc = 0.0;
    for (int t = 0; t < 4; ++t) acc += st.c[t] * values[st.base + t];
    return acc;
}

Profile picard_T(const ProblemParams& pp, const Profile& w) {
    const CriticalExponents ce = critical_exponents(pp);
    const ProfileOperator op(pp, w.grid);
    Profile out = w;
    out.values = op.apply_T(w.values, w.a, ce.lambda);
    return out;
}

Profile solve_profile_unit(const ProblemParams& pp, double tol, int grid_n) {
    pp.validate();
    int iters = 0;
    Profile prof = solve_on_grid(pp, tol, grid_n, &iters);
    prof.iterations = iters;
    if (!prof.serrin_critical) {
        Profile coarse = solve_on_grid(pp, tol, grid_n / 2, nullptr);
        prof.disc_estimate = std::abs(prof.omega0 - coarse.omega0);
    }
    return prof;
}

double conormal_at_zero(const ProblemParams& pp, const Profile& w) {
    if (w.serrin_critical) return 0.0;
    const CriticalExponents ce = critical_exponents(pp);
    const ProfileOperator op(pp, w.grid);
    const BoundaryFit fit = boundary_fit(pp.d, w.grid, w.values);
    const double mass = op.mass_integral(w.values) + fit.w0 * op.sliver_I0() +
                        fit.g * op.sliver_I1();
    const double route1 = -ce.lambda * mass;
    const double route2 = -2.0 * pp.d.s * fit.g;
    if (std::abs(route1 - route2) >
        1e-6 * std::max({std::abs(route1), std::abs(route2), 1e-8}))
        throw consistency_error("conormal_at_zero: integral and limit routes disagree");
    return route1;
}

double shooting_value(const ProblemParams& pp, const Profile& unit_profile,
                      double a) {
    if (!(a > 0.0)) throw std::domain_error("shooting_value: a > 0 required");
    const Regime rg = regime(pp);
    if (rg != Regime::UniqueProfileEF && rg != Regime::UniqueProfileLE)
        throw regime_error("shooting_value: no positive self-similar branch");
    const double con = unit_profile.conormal0;
    const double w0p = std::pow(unit_profile.omega0, pp.p);
    // boundary coupling: the conormal limit carries the matching constant
    // kappa_s in front of (-Delta)^s, hence in front of the nonlinearity
    const double beta = pp.eps * cs_matching_constant(pp.d.s);
    return a * (con + beta * std::pow(a, pp.p - 1.0) * w0p);
}

SelfSimilarResult solve_selfsimilar(const ProblemParams& pp, double tol,
                                    int grid_n) {
    pp.validate();
    const Regime rg = regime(pp);
    if (rg != Regime::UniqueProfileEF && rg != Regime::UniqueProfileLE)
        throw regime_error("solve_selfsimilar: regime admits no positive profile");

    Profile unit = solve_profile_unit(pp, tol, grid_n);

    // F(a)/a = conormal1 + kappa_s eps a^{p-1} omega1(0)^p is monotone in a
    const double beta = pp.eps * cs_matching_constant(pp.d.s);
    auto h = [&](double a) {
        return unit.conormal0 +
               beta * std::pow(a, pp.p - 1.0) * std::pow(unit.omega0, pp.p);
    };
    double lo = std::pow(2.0, -20), hi = std::pow(2.0, 20);
    double flo = h(lo), fhi = h(hi);
    for (int k = 0; k < 40 && flo * fhi > 0.0; ++k) {
        lo *= 0.5;
        hi *= 2.0;
        flo = h(lo);
        fhi = h(hi);
    }
    if (flo * fhi > 0.0)
        throw convergence_error("solve_selfsimilar: shooting bracket not found");
    for (int it = 0; it < 400 && (hi - lo) > 1e-14 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        ((h(mid) < 0.0) == (flo < 0.0) ? lo : hi) = mid;
    }
    SelfSimilarResult out;
    out.a_root = 0.5 * (lo + hi);

    out.prof = unit;
    out.prof.a = out.a_root;
    for (double& v : out.prof.values) v *= out.a_root;
    out.prof.omega0 = unit.omega0 * out.a_root;
    out.prof.conormal0 = unit.conormal0 * out.a_root;
    out.prof.disc_estimate = unit.disc_estimate * out.a_root;

    out.c_p_reference = c_p(pp);
    out.cross_check_rel_error =
        std::abs(out.prof.omega0 - out.c_p_reference) / out.c_p_reference;
    if (out.cross_check_rel_error > 0.05)
        throw consistency_error(
            "solve_selfsimilar: boundary value far from the Gamma-formula c_p");
    return out;
}

}  // namespace fraclab
