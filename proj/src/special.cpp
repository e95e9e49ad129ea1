#include "circconv/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace circconv {

namespace {

// Both branches stay below ~1e-12 absolute error at the switch point; the
// asymptotic expansion's smallest term is still ~2e-8 at x = 8.
constexpr double kSeriesLimit = 12.0;
constexpr double kTermFloor = 1e-17;

// sum_k (-1)^k (x^2/4)^k / (k!)^2
double j0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < kTermFloor) break;
    }
    return sum;
}

// Hankel expansion J0(x) ~ sqrt(2/(pi x)) (P cos(x - pi/4) - Q sin(x - pi/4)),
// P = 1 - a_2/x^2 + a_4/x^4 - ..., Q = -a_1/x + a_3/x^3 - ...,
// a_m = prod_{j<=m} (2j-1)^2 / (m! 8^m). Summed up to the smallest term.
double j0_asymptotic(double x) {
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;
    for (int m = 1; m < 100; ++m) {
        const double odd = 2.0 * m - 1.0;
        const double next = term * odd * odd / (8.0 * m * x);
        if (next >= term) break;
        term = next;
        const double sign = ((m / 2) % 2 == 0) ? 1.0 : -1.0;
        if (m % 2 == 0)
            p += sign * term;
        else
            q -= sign * term;
        if (term < kTermFloor) break;
    }
    const double c = std::cos(x);
    const double s = std::sin(x);
    // cos(x - pi/4) = (c + s)/sqrt2, sin(x - pi/4) = (s - c)/sqrt2
    return (p * (c + s) - q * (s - c)) / std::sqrt(std::numbers::pi * x);
}

}  // namespace

double bessel_j0(double x) {
    const double ax = std::abs(x);
    return ax <= kSeriesLimit ? j0_series(ax) : j0_asymptotic(ax);
}

QuadratureRule::QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double a,
                               double b, WeightKind kind)
    : nodes_(std::move(nodes)), weights_(std::move(weights)), a_(a), b_(b), kind_(kind) {
    if (nodes_.empty() || nodes_.size() != weights_.size())
        throw std::invalid_argument("quadrature rule needs matching, non-empty nodes and weights");
    if (!(a_ < b_)) throw std::invalid_argument("quadrature interval must satisfy a < b");
}

double QuadratureRule::inverse_weight(double x) const {
    switch (kind_) {
        case WeightKind::ChebyshevSingular: return std::sqrt((x - a_) * (b_ - x));
        case WeightKind::PeriodicTrapezoid: return 1.0;
    }
    return 1.0;
}

QuadratureRule chebyshev_singular_rule(double a, double b, int n) {
    if (!(a < b)) throw std::invalid_argument("chebyshev_singular_rule: need a < b");
    if (n < 1) throw std::invalid_argument("chebyshev_singular_rule: need n >= 1");
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    std::vector<double> nodes(static_cast<std::size_t>(n));
    for (int k = 1; k <= n; ++k)
        nodes[k - 1] = mid + half * std::cos((2.0 * k - 1.0) * std::numbers::pi / (2.0 * n));
    std::vector<double> weights(static_cast<std::size_t>(n), std::numbers::pi / n);
    return QuadratureRule(std::move(nodes), std::move(weights), a, b,
                          WeightKind::ChebyshevSingular);
}

QuadratureRule periodic_trapezoid_rule(int n) {
    if (n < 1) throw std::invalid_argument("periodic_trapezoid_rule: need n >= 1");
    const double h = 2.0 * std::numbers::pi / n;
    std::vector<double> nodes(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) nodes[j] = h * j;
    std::vector<double> weights(static_cast<std::size_t>(n), h);
    return QuadratureRule(std::move(nodes), std::move(weights), 0.0, 2.0 * std::numbers::pi,
                          WeightKind::PeriodicTrapezoid);
}

double periodic_trapezoid(const std::function<double(double)>& f, int n) {
    if (n < 1) throw std::invalid_argument("periodic_trapezoid: need n >= 1");
    const double h = 2.0 * std::numbers::pi / n;
    double sum = 0.0;
    for (int j = 0; j < n; ++j) sum += f(h * j);
    return h * sum;
}

}  // namespace circconv
