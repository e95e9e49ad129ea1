#include "circconv/hankel.hpp"

#include <cmath>
#include <stdexcept>

namespace circconv {

double hankel_transform(const RadialProfile& profile, double r, const QuadratureRule& rule,
                        RadialVariable variable) {
    const bool squared = variable == RadialVariable::RadiusSquared;
    if (squared && rule.a() < 0.0)
        throw std::invalid_argument("hankel_transform: rule in rho^2 must start at u >= 0");
    const double rho_lo = squared ? std::sqrt(rule.a()) : rule.a();
    const double rho_hi = squared ? std::sqrt(rule.b()) : rule.b();
    if (rho_hi <= profile.support.lo || rho_lo >= profile.support.hi)
        throw std::invalid_argument("hankel_transform: rule interval misses the profile support");

    const double k = kTwoPi * r;
    if (squared) {
        return kPi * rule.apply([&](double u) {
            const double rho = std::sqrt(u);
            return profile(rho) * bessel_j0(k * rho) * rule.inverse_weight(u);
        });
    }
    return kTwoPi * rule.apply([&](double rho) {
        return profile(rho) * bessel_j0(k * rho) * rho * rule.inverse_weight(rho);
    });
}

HankelResult hankel_sweep(const RadialProfile& profile, std::span<const double> r_values,
                          const QuadratureRule& rule, RadialVariable variable) {
    HankelResult out;
    out.node_count = static_cast<int>(rule.size());
    out.r_values.assign(r_values.begin(), r_values.end());
    out.values.reserve(r_values.size());
    for (double r : r_values) out.values.push_back(hankel_transform(profile, r, rule, variable));
    return out;
}

double hankel_of_circle(double radius, double r) {
    if (!(radius > 0.0)) throw std::invalid_argument("hankel_of_circle: radius must be > 0");
    return kTwoPi * radius * bessel_j0(kTwoPi * r * radius);
}

double hankel_of_conv(const ConvKernel& k, double r, int n) {
    const auto [d, s] = support_interval(k);
    const auto rule = chebyshev_singular_rule(d * d, s * s, n);
    // 2 pi int f rho d rho with rho d rho = du/2 and f = 4 r1 r2 w(u).
    const double scale = 4.0 * kPi * k.r1() * k.r2();
    const double freq = kTwoPi * r;
    return scale * rule.apply([&](double u) { return bessel_j0(freq * std::sqrt(u)); });
}

double hankel_of_conv_product(const ConvKernel& k, double r) {
    return kTwoPi * kTwoPi * k.r1() * k.r2() * bessel_j0(kTwoPi * k.r1() * r) *
           bessel_j0(kTwoPi * k.r2() * r);
}

NeumannCheck neumann_product_check(double r1, double r2, double r, int n) {
    const double freq = kTwoPi * r;
    const double lhs =
        periodic_trapezoid([&](double theta) { return bessel_j0(psi(theta, r1, r2) * freq); }, n) /
        kTwoPi;
    const double rhs = bessel_j0(freq * r1) * bessel_j0(freq * r2);
    return {lhs, rhs};
}

}  // namespace circconv
