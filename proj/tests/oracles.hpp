#pragma once

// Reference computations used only by the tests. Nothing here calls into the
// library's evaluation paths.

#include <cmath>
#include <cstdint>

namespace circconv::testing {

/// J0 as the first `terms` terms of its power series, in long double.
inline long double j0_partial_sum(long double x, int terms) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < terms; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return sum;
}

/// Reliable for |x| <= ~15; beyond that cancellation between terms of size
/// e^|x| eats the long double precision.
inline long double j0_oracle(long double x) { return j0_partial_sum(x, 80); }

/// J0(x) = (1/2pi) int_0^{2pi} cos(x sin t) dt by an n-point trapezoid, which
/// converges geometrically once n exceeds |x| by a margin. Good to ~1e-15
/// for |x| <= 50 at n = 512.
inline long double j0_integral(long double x, int n = 512) {
    long double s = 0.0L;
    for (int j = 0; j < n; ++j)
        s += std::cos(x * std::sin(2.0L * 3.14159265358979323846264L * j / n));
    return s / n;
}

/// Magnitude of series term k: (x^2/4)^k / (k!)^2.
inline long double j0_series_term(long double x, int k) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    for (int j = 1; j <= k; ++j) term *= q / (static_cast<long double>(j) * j);
    return term;
}

/// Root of the series oracle in [lo, hi] by bisection (sign change assumed).
inline double j0_oracle_zero(double lo, double hi) {
    long double a = lo;
    long double b = hi;
    const bool rising = j0_oracle(a) < 0.0L;
    while (b - a > 1e-17L) {
        const long double mid = 0.5L * (a + b);
        if (mid <= a || mid >= b) break;
        if ((j0_oracle(mid) < 0.0L) == rising)
            a = mid;
        else
            b = mid;
    }
    return static_cast<double>(0.5L * (a + b));
}

inline double binomial(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

/// int_a^b u^m / sqrt((u-a)(b-u)) du, analytically. With u = c + h cos t the
/// integral is int_0^pi (c + h cos t)^m dt, and int_0^pi cos^j t dt is
/// pi C(j, j/2) / 2^j for even j, 0 for odd j.
inline double chebyshev_moment(double a, double b, int m) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double sum = 0.0;
    for (int j = 0; j <= m; j += 2)
        sum += binomial(m, j) * std::pow(c, m - j) * std::pow(h, j) * binomial(j, j / 2) /
               std::pow(2.0, j);
    return 3.14159265358979323846 * sum;
}

}  // namespace circconv::testing
