#pragma once

// Order-zero Hankel transform H f(r) = 2 pi int_0^inf f(rho) J0(2 pi r rho) rho d rho,
// the radial form of the 2D Fourier transform, and the transform-domain
// identities satisfied by circle impulses.

#include <span>
#include <utility>
#include <vector>

#include "circconv/core.hpp"
#include "circconv/special.hpp"

namespace circconv {

struct HankelResult {
    std::vector<double> r_values;
    std::vector<double> values;
    int node_count = 0;
};

/// Integration variable the rule's nodes are expressed in.
enum class RadialVariable {
    Radius,
    /// u = rho^2, so rho d rho = du / 2. Profiles singular like
    /// 1/sqrt((rho^2 - a^2)(b^2 - rho^2)) become exactly Chebyshev-weighted.
    RadiusSquared,
};

/// Quadrature approximation of H profile(r). The rule's weight function is
/// divided out of the integrand, so a ChebyshevSingular rule absorbs
/// inverse square-root endpoint behavior of the profile.
/// Throws std::invalid_argument if the rule interval misses the support.
double hankel_transform(const RadialProfile& profile, double r, const QuadratureRule& rule,
                        RadialVariable variable = RadialVariable::Radius);

HankelResult hankel_sweep(const RadialProfile& profile, std::span<const double> r_values,
                          const QuadratureRule& rule,
                          RadialVariable variable = RadialVariable::Radius);

/// 2 pi R J0(2 pi r R), the transform of the impulse on |x| = R.
double hankel_of_circle(double radius, double r);

/// Transform of the closed-form convolution density, computed in u = rho^2
/// where the endpoint singularities become the Chebyshev weight:
/// 4 pi r1 r2 * sum_k (pi/n) J0(2 pi r sqrt(u_k)).
double hankel_of_conv(const ConvKernel& k, double r, int n);

/// (2 pi)^2 r1 r2 J0(2 pi r1 r) J0(2 pi r2 r): the product of the two
/// circle transforms.
double hankel_of_conv_product(const ConvKernel& k, double r);

struct NeumannCheck {
    double lhs;
    double rhs;
};

/// lhs: (1/2pi) int_0^{2pi} J0(2 pi r psi(theta)) d theta by n-point trapezoid.
/// rhs: J0(2 pi r1 r) J0(2 pi r2 r).
NeumannCheck neumann_product_check(double r1, double r2, double r, int n);

}  // namespace circconv
