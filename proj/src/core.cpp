#include "circconv/core.hpp"

#include <stdexcept>
#include <string>

#include "circconv/special.hpp"

namespace circconv {

namespace {

void require_nonnegative_rho(double rho) {
    if (!(rho >= 0.0)) throw std::domain_error("rho must be >= 0, got " + std::to_string(rho));
}

void require_positive_radius(double r, const char* name) {
    if (!(r > 0.0) || !std::isfinite(r))
        throw std::invalid_argument(std::string(name) + " must be a finite positive radius, got " +
                                    std::to_string(r));
}

// (rho^2 - d^2)(s^2 - rho^2) in factored form.
double support_product(double rho, double d, double s) {
    return (rho - d) * (rho + d) * ((s - rho) * (s + rho));
}

}  // namespace

Circle::Circle(Vec2 center, double radius) : center_(center), radius_(radius) {
    require_positive_radius(radius, "radius");
    if (!std::isfinite(center.x) || !std::isfinite(center.y))
        throw std::invalid_argument("circle center must be finite");
}

ConvKernel::ConvKernel(double r1, double r2, Vec2 center_sum)
    : r1_(r1), r2_(r2), center_sum_(center_sum) {
    require_positive_radius(r1, "r1");
    require_positive_radius(r2, "r2");
}

ConvKernel::ConvKernel(const Circle& c1, const Circle& c2)
    : ConvKernel(c1.radius(), c2.radius(), c1.center() + c2.center()) {}

std::string_view to_string(SupportClass c) {
    switch (c) {
        case SupportClass::Origin: return "Origin";
        case SupportClass::BelowSupport: return "BelowSupport";
        case SupportClass::LowerEndpoint: return "LowerEndpoint";
        case SupportClass::Interior: return "Interior";
        case SupportClass::UpperEndpoint: return "UpperEndpoint";
        case SupportClass::AboveSupport: return "AboveSupport";
    }
    return "?";
}

double RadialProfile::operator()(double rho) const {
    if (rho < support.lo || rho > support.hi) return 0.0;
    return evaluator(rho);
}

Interval support_interval(const ConvKernel& k) {
    return {std::abs(k.r1() - k.r2()), k.r1() + k.r2()};
}

SupportClass classify(const ConvKernel& k, double rho) {
    require_nonnegative_rho(rho);
    const auto [lo, hi] = support_interval(k);
    if (rho == 0.0) return SupportClass::Origin;
    if (rho < lo) return SupportClass::BelowSupport;
    if (rho == lo) return SupportClass::LowerEndpoint;
    if (rho < hi) return SupportClass::Interior;
    if (rho == hi) return SupportClass::UpperEndpoint;
    return SupportClass::AboveSupport;
}

double eval_conv(const ConvKernel& k, double rho) {
    const auto [lo, hi] = support_interval(k);
    switch (classify(k, rho)) {
        case SupportClass::Interior:
            return 4.0 * k.r1() * k.r2() / std::sqrt(support_product(rho, lo, hi));
        case SupportClass::LowerEndpoint:
        case SupportClass::UpperEndpoint:
            return kInf;
        case SupportClass::Origin:
            // Diverges like 1/rho when the radii coincide.
            return lo == 0.0 ? kInf : 0.0;
        case SupportClass::BelowSupport:
        case SupportClass::AboveSupport:
            return 0.0;
    }
    return 0.0;
}

double eval_conv_2d(const ConvKernel& k, Vec2 x) {
    return eval_conv(k, norm(x - k.center_sum()));
}

RadialProfile conv_profile(const ConvKernel& k) {
    const auto support = support_interval(k);
    return RadialProfile{support, [k](double rho) { return eval_conv(k, rho); }, k.center_sum()};
}

double psi(double theta, double r1, double r2) {
    const double d = r1 - r2;
    const double s = std::sin(0.5 * theta);
    return std::sqrt(d * d + 4.0 * r1 * r2 * s * s);
}

double phi(double rho, double theta, const ConvKernel& k) {
    return rho - psi(theta, k.r1(), k.r2());
}

double phi_prime(double theta, const ConvKernel& k) {
    const double p = psi(theta, k.r1(), k.r2());
    if (p == 0.0 || (k.r1() == k.r2() && std::fmod(theta, kTwoPi) == 0.0))
        return std::numeric_limits<double>::quiet_NaN();
    return -k.r1() * k.r2() * std::sin(theta) / p;
}

RootEvaluation conv_via_roots_detail(const ConvKernel& k, double rho, double tol) {
    if (classify(k, rho) != SupportClass::Interior)
        throw std::domain_error("conv_via_roots: rho = " + std::to_string(rho) +
                                " is not in the open support annulus");
    if (!(tol > 0.0)) throw std::invalid_argument("conv_via_roots: tol must be > 0");

    // psi is strictly increasing on (0, pi), so phi is strictly decreasing.
    constexpr double kGuard = 1e-12;
    double lo = kGuard;
    double hi = kPi - kGuard;
    if (phi(rho, lo, k) <= 0.0) {
        hi = lo;
    } else if (phi(rho, hi, k) >= 0.0) {
        lo = hi;
    }
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (phi(rho, mid, k) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double theta1 = 0.5 * (lo + hi);
    const double theta2 = kTwoPi - theta1;
    const double weight =
        1.0 / std::abs(phi_prime(theta1, k)) + 1.0 / std::abs(phi_prime(theta2, k));
    return {theta1, theta2, k.r1() * k.r2() / rho * weight};
}

double total_mass(const ConvKernel& k, int n) {
    const auto [d, s] = support_interval(k);
    const auto rule = chebyshev_singular_rule(d * d, s * s, n);
    // int f(rho) 2 pi rho d rho = pi int f(sqrt u) du; the Chebyshev weight
    // 1/sqrt((u - d^2)(s^2 - u)) is divided back out in the same factored
    // form the density uses.
    return kPi * rule.apply([&](double u) {
        const double rho = std::sqrt(u);
        return eval_conv(k, rho) * std::sqrt(support_product(rho, d, s));
    });
}

}  // namespace circconv
