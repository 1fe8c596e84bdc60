// Numerical integration: adaptive Gauss-Kronrod on finite intervals with
// endpoint-singularity regularization, the weighted hemisphere rule for
// the measure (sin phi)^{1-2s} (cos phi)^{N-1} d phi, and the angular
// reduction kernels for radial integrals of (-Delta)^s and the Poisson
// kernel.
#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "fraclab/specfun.hpp"

namespace fraclab {

struct quadrature_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Integrand on (a,b) with optional power-law endpoint behavior
/// f ~ (x-a)^{left_exponent} resp. (b-x)^{right_exponent}. An exponent of 0
/// means "regular". Exponents must be > -1.
struct Integrand {
    std::function<double(double)> f;
    double left_exponent = 0.0;
    double right_exponent = 0.0;
};

/// Adaptive integration of f over (a,b) to absolute-or-relative target tol.
/// Endpoint singularities declared in the Integrand are removed by the
/// substitution x = a + u^{1/(1+alpha)} before adapting. Throws
/// quadrature_error when the panel budget is exhausted.
double adaptive_integrate(const Integrand& f, double a, double b, double tol);

/// Convenience overload for regular integrands.
double adaptive_integrate(const std::function<double(double)>& f, double a,
                          double b, double tol);

/// Semi-infinite integral over (a, infinity): the tail (cap, infinity) is
/// compactified by x -> 1/x. `tail_exponent` declares f ~ x^{tail_exponent}
/// at infinity (must be < -1).
double integrate_to_infinity(const std::function<double(double)>& f, double a,
                             double tail_exponent, double tol);

/// Nodes/weights for f -> int_0^{pi/2} f(phi) lambda_s(phi) (cos phi)^{N-1} dphi
/// with lambda_s(phi) = (sin phi)^{1-2s}.
struct WeightedRule {
    std::vector<double> nodes;    // interior phi values
    std::vector<double> weights;  // positive, measure factor included
    DimPair d;
    int panels = 0;
    int degree = 0;

    double total_mass() const;

    template <class F>
    double apply(F&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

/// Gauss rule on [-1,1] with weight (1-x)^alpha (1+x)^beta, via
/// Golub-Welsch on the Jacobi recurrence. alpha, beta > -1.
struct GaussRule {
    std::vector<double> x;
    std::vector<double> w;
};
GaussRule gauss_jacobi(int n, double alpha, double beta);
GaussRule gauss_legendre(int n);

/// Rule for the weighted hemisphere measure: a Gauss-Jacobi panel carrying
/// the phi^{1-2s} endpoint factor on [0, pi/4], composite Gauss-Legendre on
/// [pi/4, pi/2]. `n` >= 8 controls the node count per half.
WeightedRule hemisphere_rule(const DimPair& d, int n);

/// Closed-form mass of the weighted hemisphere measure,
/// one half of B(1-s, N/2); used as the rule's exactness target.
double hemisphere_mass_exact(const DimPair& d);

/// Spherical average  int_{S^{N-1}} |r e1 - rho sigma|^{-(N+2s)} dS(sigma)
/// reducing (-Delta)^s to a radial integral. N in {1,2,3}; r != rho.
double angular_kernel(const DimPair& d, double r, double rho);

/// Same average with the kernel offset by z^2:
/// int_{S^{N-1}} (|r e1 - rho sigma|^2 + z^2)^{-(N+2s)/2} dS(sigma).
/// Regular for z > 0; equals angular_kernel at z = 0.
double poisson_angular(const DimPair& d, double r, double rho, double z);

/// d/dz of poisson_angular (analytic kernel derivative, quadrature for N=2).
double poisson_angular_dz(const DimPair& d, double r, double rho, double z);

/// Spherical average  int_{S^{N-1}} |e1 - rho sigma|^tau dS(sigma)  used by
/// the integral representation of C_s. N in {1,2,3}.
double angular_power_average(const DimPair& d, double rho, double tau);

/// Surface measure of S^{N-1} (two points for N=1).
double sphere_measure(int N);

}  // namespace fraclab
