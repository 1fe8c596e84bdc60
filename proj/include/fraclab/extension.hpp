// Caffarelli-Silvestre lifting of radial traces: Poisson kernel, extension
// values and their z-derivative, the weighted conormal limit recovering
// (-Delta)^s, and the degenerate-harmonicity residual.
#pragma once

#include <functional>

#include "fraclab/flap.hpp"

namespace fraclab {

/// The paper's kernel constant (1/4) pi^{(N+2-2s)/2} Gamma((N-2s)/2),
/// preserved verbatim; it does not normalize the kernel mass.
double poisson_constant_printed(const DimPair& d);

/// P_s(x, z) = C z^{2s} (|x|^2 + z^2)^{-(N+2s)/2} with the printed constant.
double poisson_kernel(const DimPair& d, double x_norm, double z);

/// int_{R^N} P_s(y, 1) dy by radial quadrature; mass-normalization audits
/// and every trace-sensitive operation divide by this.
double kernel_mass(const DimPair& d);

/// Convolution u(x,z) = (P_s * v)(x,z) over R^N via the angular reduction;
/// with `normalized` the value is divided by kernel_mass so u -> v at z -> 0.
double extend_radial(const DimPair& d, const RadialFunction& v, double x_norm,
                     double z, bool normalized = true, double tol = 1e-10);

/// Analytic d/dz of the (unnormalized) extension.
double extend_radial_dz(const DimPair& d, const RadialFunction& v,
                        double x_norm, double z, double tol = 1e-10);

/// -lim_{z->0} z^{1-2s} d_z u for the mass-normalized extension, by a
/// halving ladder with Richardson elimination of the z^{2-2s}, z^2, z^{4-2s}
/// corrections. Reproduces frac_lap_radial.
double conormal_derivative(const DimPair& d, const RadialFunction& v,
                           double x_norm, double z0 = 0.0);

/// Centered second-order stencil for u_zz + ((1-2s)/z) u_z + u_xx +
/// ((N-1)/x) u_x on any evaluator; O(h^2) for degenerate-harmonic u.
double harmonic_residual(const DimPair& d,
                         const std::function<double(double, double)>& u,
                         double x_norm, double z, double h);

}  // namespace fraclab
