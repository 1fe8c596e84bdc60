#include "fraclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace fraclab {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

// Gauss-Kronrod (G7, K15) on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resg = 0.0, resk = 0.0;
    const double f0 = f(c);
    resk += kWgk[7] * f0;
    resg += kWg[3] * f0;
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double v = f(c - x) + f(c + x);
        resk += kWgk[j] * v;
        if (j % 2 == 1) resg += kWg[(j - 1) / 2] * v;
    }
    const double integral = resk * h;
    const double err = std::abs((resk - resg) * h);
    return {integral, err};
}

struct Piece {
    double err;
    double val;
    double a, b;
    bool operator<(const Piece& o) const { return err < o.err; }
};

double adaptive_core(const std::function<double(double)>& f, double a, double b,
                     double tol) {
    if (a == b) return 0.0;
    std::priority_queue<Piece> heap;
    // seed with 8 panels so localized features are found
    double total = 0.0, toterr = 0.0;
    const int seed = 8;
    for (int i = 0; i < seed; ++i) {
        const double x0 = a + (b - a) * i / seed;
        const double x1 = a + (b - a) * (i + 1) / seed;
        auto r = gk15(f, x0, x1);
        heap.push({r.error, r.integral, x0, x1});
        total += r.integral;
        toterr += r.error;
    }
    int panels = seed;
    const int budget = 4000;
    while (toterr > std::max(tol, 1e-14 * std::abs(total)) && panels < budget) {
        Piece p = heap.top();
        heap.pop();
        total -= p.val;
        toterr -= p.err;
        const double m = 0.5 * (p.a + p.b);
        if (m <= p.a || m >= p.b) {  // interval exhausted at machine precision
            total += p.val;
            continue;
        }
        auto r1 = gk15(f, p.a, m);
        auto r2 = gk15(f, m, p.b);
        heap.push({r1.error, r1.integral, p.a, m});
        heap.push({r2.error, r2.integral, m, p.b});
        total += r1.integral + r2.integral;
        toterr += r1.error + r2.error;
        ++panels;
    }
    if (toterr > 10.0 * std::max(tol, 1e-9 * std::abs(total)))
        throw quadrature_error("adaptive_integrate: panel budget exhausted");
    return total;
}

}  // namespace

double adaptive_integrate(const Integrand& fi, double a, double b, double tol) {
    if (!(b > a)) {
        if (a == b) return 0.0;
        return -adaptive_integrate(Integrand{fi.f, fi.right_exponent, fi.left_exponent},
                                   b, a, tol);
    }
    for (double e : {fi.left_exponent, fi.right_exponent})
        if (e <= -1.0) throw std::domain_error("adaptive_integrate: exponent <= -1");

    const bool lsing = std::abs(fi.left_exponent) > 1e-12;
    const bool rsing = std::abs(fi.right_exponent) > 1e-12;
    if (!lsing && !rsing) return adaptive_core(fi.f, a, b, tol);

    const double m = 0.5 * (a + b);
    double result = 0.0;
    if (lsing) {
        // x = a + u^gamma with gamma = 1/(1+alpha) flattens f ~ (x-a)^alpha
        const double gamma = 1.0 / (1.0 + fi.left_exponent);
        auto g = [&, gamma](double u) {
            const double x = a + std::pow(u, gamma);
            return fi.f(x) * gamma * std::pow(u, gamma - 1.0);
        };
        result += adaptive_core(g, 0.0, std::pow(m - a, 1.0 / gamma), tol * 0.5);
    } else {
        result += adaptive_core(fi.f, a, m, tol * 0.5);
    }
    if (rsing) {
        const double gamma = 1.0 / (1.0 + fi.right_exponent);
        auto g = [&, gamma](double u) {
            const double x = b - std::pow(u, gamma);
            return fi.f(x) * gamma * std::pow(u, gamma - 1.0);
        };
        result += adaptive_core(g, 0.0, std::pow(b - m, 1.0 / gamma), tol * 0.5);
    } else {
        result += adaptive_core(fi.f, m, b, tol * 0.5);
    }
    return result;
}

double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol) {
    return adaptive_integrate(Integrand{f, 0.0, 0.0}, a, b, tol);
}

double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double tail_exponent, double tol) {
    if (!(tail_exponent < -1.0))
        throw std::domain_error("integrate_to_infinity: tail exponent must be < -1");
    const double cap = std::max(2.0 * std::abs(a), 2.0);
    double result = adaptive_core(f, a, cap, 0.5 * tol);
    auto g = [&](double u) { return f(1.0 / u) / (u * u); };
    Integrand tail{g, -tail_exponent - 2.0, 0.0};
    result += adaptive_integrate(tail, 0.0, 1.0 / cap, 0.5 * tol);
    return result;
}

double sphere_measure(int N) {
    if (N == 1) return 2.0;
    return 2.0 * std::pow(kPi, 0.5 * N) * recip_gamma_fn(0.5 * N);
}

namespace {

// Golub-Welsch: eigenvalues of the symmetric tridiagonal recurrence matrix
// give the nodes, squared first eigenvector components give the weights.
// QL with implicit shifts, carrying only the first row of the eigenvectors.
void golub_welsch(std::vector<double>& diag, std::vector<double>& off,
                  double mu0, GaussRule& out) {
    const int n = int(diag.size());
    std::vector<double> z(n, 0.0);
    z[0] = 1.0;
    off.push_back(0.0);
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::abs(diag[m]) + std::abs(diag[m + 1]);
                if (std::abs(off[m]) <= 1e-16 * dd) break;
            }
            if (m != l) {
                if (iter++ == 60) throw quadrature_error("golub_welsch: no convergence");
                double g = (diag[l + 1] - diag[l]) / (2.0 * off[l]);
                double r = std::hypot(g, 1.0);
                g = diag[m] - diag[l] + off[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                for (int i = m - 1; i >= l; --i) {
                    double f = s * off[i];
                    const double b = c * off[i];
                    r = std::hypot(f, g);
                    off[i + 1] = r;
                    if (r == 0.0) {
                        diag[i + 1] -= p;
                        off[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = diag[i + 1] - p;
                    r = (diag[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    diag[i + 1] = g + p;
                    g = c * r - b;
                    f = z[i + 1];
                    z[i + 1] = s * z[i] + c * f;
                    z[i] = c * z[i] - s * f;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                diag[l] -= p;
                off[l] = g;
                off[m] = 0.0;
            }
        } while (m != l);
    }
    // sort by node
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return diag[a] < diag[b]; });
    out.x.resize(n);
    out.w.resize(n);
    for (int i = 0; i < n; ++i) {
        out.x[i] = diag[idx[i]];
        out.w[i] = mu0 * z[idx[i]] * z[idx[i]];
    }
}

}  // namespace

GaussRule gauss_jacobi(int n, double alpha, double beta) {
    if (n < 1 || alpha <= -1.0 || beta <= -1.0)
        throw std::domain_error("gauss_jacobi: bad parameters");
    std::vector<double> diag(n), off;
    const double ab = alpha + beta;
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double q = 2.0 * k + ab;
        diag[k] = (beta * beta - alpha * alpha) / (q * (q + 2.0));
    }
    for (int k = 1; k < n; ++k) {
        const double q = 2.0 * k + ab;
        const double b2 = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) /
                          (q * q * (q + 1.0) * (q - 1.0));
        off.push_back(std::sqrt(b2));
    }
    // mu0 = int_{-1}^{1} (1-x)^alpha (1+x)^beta dx = 2^{a+b+1} B(a+1, b+1)
    const double mu0 = std::pow(2.0, ab + 1.0) * gamma_fn(alpha + 1.0) *
                       gamma_fn(beta + 1.0) * recip_gamma_fn(ab + 2.0);
    GaussRule out;
    golub_welsch(diag, off, mu0, out);
    return out;
}

GaussRule gauss_legendre(int n) { return gauss_jacobi(n, 0.0, 0.0); }

double hemisphere_mass_exact(const DimPair& d) {
    d.validate_basic();
    return 0.5 * gamma_fn(1.0 - d.s) * gamma_fn(0.5 * d.N) *
           recip_gamma_fn(1.0 - d.s + 0.5 * d.N);
}

WeightedRule hemisphere_rule(const DimPair& d, int n) {
    d.validate_basic();
    if (n < 8) throw std::domain_error("hemisphere_rule: n >= 8 required");

    WeightedRule rule;
    rule.d = d;
    rule.degree = 2 * n - 1;

    const double s = d.s;
    const int N = d.N;

    // Left half (0, pi/4]: one Gauss-Jacobi panel carrying phi^{1-2s}.
    // The smooth remainder (sin phi / phi)^{1-2s} (cos phi)^{N-1} rides in
    // the stored weight.
    {
        const double c = kPi / 4.0;
        const GaussRule gj = gauss_jacobi(n, 0.0, 1.0 - 2.0 * s);
        const double scale = std::pow(0.5 * c, 2.0 - 2.0 * s);
        for (int i = 0; i < n; ++i) {
            const double phi = 0.5 * c * (1.0 + gj.x[i]);
            const double smooth = std::pow(std::sin(phi) / phi, 1.0 - 2.0 * s) *
                                  std::pow(std::cos(phi), N - 1.0);
            rule.nodes.push_back(phi);
            rule.weights.push_back(gj.w[i] * scale * smooth);
        }
        ++rule.panels;
    }

    // Right half [pi/4, pi/2): composite Gauss-Legendre; the weight is
    // analytic there ((cos phi)^{N-1} is a polynomial zero, not a kink).
    {
        const GaussRule gl = gauss_legendre(8);
        const int panels = std::max(1, n / 8);
        auto weight = [&](double phi) {
            return std::pow(std::sin(phi), 1.0 - 2.0 * s) *
                   std::pow(std::cos(phi), N - 1.0);
        };
        for (int ip = 0; ip < panels; ++ip) {
            const double a = kPi / 4.0 + (kPi / 4.0) * ip / panels;
            const double b = kPi / 4.0 + (kPi / 4.0) * (ip + 1) / panels;
            const double mid = 0.5 * (a + b), h = 0.5 * (b - a);
            for (int j = 0; j < 8; ++j) {
                const double phi = mid + h * gl.x[j];
                rule.nodes.push_back(phi);
                rule.weights.push_back(gl.w[j] * h * weight(phi));
            }
            ++rule.panels;
        }
    }
    return rule;
}

double WeightedRule::total_mass() const {
    double m = 0.0;
    for (double w : weights) m += w;
    return m;
}

namespace {

// int_{-1}^{1} (A - B c)^q dc for A > |B| >= 0, with the q = -1 log case and
// a series branch when B/A is tiny.
double segment_power_integral(double A, double B, double q) {
    if (B < 1e-9 * A) {
        // (A - Bc)^q averaged over c in (-1,1): 2 A^q (1 + O((B/A)^2))
        const double r = B / A;
        return 2.0 * std::pow(A, q) * (1.0 + q * (q - 1.0) * r * r / 6.0);
    }
    if (std::abs(q + 1.0) < 1e-12) {
        return std::log((A + B) / (A - B)) / B;
    }
    return (std::pow(A + B, q + 1.0) - std::pow(A - B, q + 1.0)) / (B * (q + 1.0));
}

}  // namespace

double angular_kernel(const DimPair& d, double r, double rho) {
    d.validate_basic();
    if (!(r > 0.0) || !(rho > 0.0))
        throw std::domain_error("angular_kernel: radii must be positive");
    if (r == rho) throw std::domain_error("angular_kernel: r == rho singularity");
    const double s = d.s;
    const double q = -0.5 * (d.N + 2.0 * s);
    switch (d.N) {
        case 1:
            return std::pow(std::abs(r - rho), -1.0 - 2.0 * s) +
                   std::pow(r + rho, -1.0 - 2.0 * s);
        case 3:
            return 2.0 * kPi *
                   segment_power_integral(r * r + rho * rho, 2.0 * r * rho, q);
        case 2: {
            auto f = [&](double th) {
                return 2.0 * std::pow(r * r + rho * rho - 2.0 * r * rho * std::cos(th), q);
            };
            const double scale = std::pow(std::abs(r - rho), 2.0 * q);
            return adaptive_integrate(f, 0.0, kPi, 1e-11 * std::max(1.0, scale));
        }
        default:
            throw std::domain_error("angular_kernel: N in {1,2,3} only");
    }
}

double poisson_angular(const DimPair& d, double r, double rho, double z) {
    d.validate_basic();
    const double q = -0.5 * (d.N + 2.0 * d.s);
    const double z2 = z * z;
    switch (d.N) {
        case 1:
            return std::pow((r - rho) * (r - rho) + z2, q) +
                   std::pow((r + rho) * (r + rho) + z2, q);
        case 3:
            return 2.0 * kPi *
                   segment_power_integral(r * r + rho * rho + z2, 2.0 * r * rho, q);
        case 2: {
            auto f = [&](double th) {
                return 2.0 * std::pow(
                           r * r + rho * rho + z2 - 2.0 * r * rho * std::cos(th), q);
            };
            const double scale = std::pow((r - rho) * (r - rho) + z2, q);
            return adaptive_integrate(f, 0.0, kPi, 1e-11 * std::max(1.0, scale));
        }
        default:
            throw std::domain_error("poisson_angular: N in {1,2,3} only");
    }
}

double poisson_angular_dz(const DimPair& d, double r, double rho, double z) {
    d.validate_basic();
    const double q = -0.5 * (d.N + 2.0 * d.s);
    const double z2 = z * z;
    switch (d.N) {
        case 1:
            return 2.0 * q * z *
                   (std::pow((r - rho) * (r - rho) + z2, q - 1.0) +
                    std::pow((r + rho) * (r + rho) + z2, q - 1.0));
        case 3:
            return 2.0 * kPi * 2.0 * q * z *
                   segment_power_integral(r * r + rho * rho + z2, 2.0 * r * rho,
                                          q - 1.0);
        case 2: {
            auto f = [&](double th) {
                return 4.0 * q * z *
                       std::pow(r * r + rho * rho + z2 - 2.0 * r * rho * std::cos(th),
                                q - 1.0);
            };
            const double scale =
                std::abs(2.0 * q * z) * std::pow((r - rho) * (r - rho) + z2, q - 1.0);
            return adaptive_integrate(f, 0.0, kPi, 1e-11 * std::max(1.0, scale));
        }
        default:
            throw std::domain_error("poisson_angular_dz: N in {1,2,3} only");
    }
}

double angular_power_average(const DimPair& d, double rho, double tau) {
    d.validate_basic();
    if (!(rho > 0.0)) throw std::domain_error("angular_power_average: rho > 0");
    switch (d.N) {
        case 1:
            return std::pow(std::abs(1.0 - rho), tau) + std::pow(1.0 + rho, tau);
        case 3:
            return 2.0 * kPi *
                   segment_power_integral(1.0 + rho * rho, 2.0 * rho, 0.5 * tau);
        case 2: {
            auto f = [&](double th) {
                return 2.0 * std::pow(1.0 + rho * rho - 2.0 * rho * std::cos(th),
                                      0.5 * tau);
            };
            const double scale = std::max(1.0, std::pow(std::abs(1.0 - rho), tau));
            return adaptive_integrate(f, 0.0, kPi, 1e-11 * scale);
        }
        default:
            throw std::domain_error("angular_power_average: N in {1,2,3} only");
    }
}

}  // namespace fraclab
