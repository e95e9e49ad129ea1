#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <random>

#include "circconv/core.hpp"
#include "circconv/special.hpp"
#include "oracles.hpp"

using namespace circconv;
namespace oracle = circconv::testing;

TEST_SUITE("special") {

TEST_CASE("j0 values") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(1.0) - 0.76519768655796655145) < 1e-12);
    // Tabulated zeros.
    for (double z : {2.4048255576957727686, 5.5200781102863106496, 8.653727912911012217,
                     11.791534439014281614, 14.930917708487785948})
        CHECK(std::abs(bessel_j0(z)) < 1e-11);
    // The oracle series locates the first zero on its own.
    const double z1 = oracle::j0_oracle_zero(2.0, 3.0);
    CHECK(std::abs(z1 - 2.404825557695773) < 1e-14);
    CHECK(std::abs(bessel_j0(z1)) < 1e-9);
}

TEST_CASE("j0 is even") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> x(0.0, 60.0);
    for (int t = 0; t < 500; ++t) {
        const double v = x(gen);
        CHECK(bessel_j0(v) == bessel_j0(-v));
    }
}

TEST_CASE("j0 agrees with the long double series on |x| <= 8") {
    double worst = 0.0;
    for (int i = 0; i <= 1600; ++i) {
        const double x = 8.0 * i / 1600.0;
        worst = std::max(worst,
                         std::abs(bessel_j0(x) - static_cast<double>(oracle::j0_oracle(x))));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("j0 agrees with its integral representation past the series range") {
    double worst = 0.0;
    for (int i = 0; i <= 500; ++i) {
        const double x = 50.0 * i / 500.0;
        worst = std::max(worst, std::abs(bessel_j0(x) - static_cast<double>(oracle::j0_integral(x))));
    }
    CHECK(worst < 1e-10);
    // The two oracles agree where both apply.
    for (double x : {0.5, 3.0, 7.5, 12.0})
        CHECK(std::abs(oracle::j0_integral(x) - oracle::j0_oracle(x)) < 1e-16L);
}

TEST_CASE("series truncation error is bounded by the first omitted term") {
    for (int i = 1; i <= 80; ++i) {
        const double x = 8.0 * i / 80.0;
        const long double full = oracle::j0_oracle(x);
        // Terms decrease in magnitude from k > x/2 on, where the bound applies.
        // Below ~1e-16 the comparison hits long double rounding instead.
        for (int k = static_cast<int>(std::ceil(x / 2.0)) + 1;
             k < 40 && oracle::j0_series_term(x, k) > 1e-16L; ++k) {
            const long double err = std::abs(oracle::j0_partial_sum(x, k) - full);
            CHECK(err <= oracle::j0_series_term(x, k) * (1.0L + 1e-12L));
        }
    }
}

TEST_CASE("chebyshev rule structure") {
    const auto one = chebyshev_singular_rule(1.0, 25.0, 1);
    REQUIRE(one.size() == 1);
    CHECK(std::abs(one.nodes()[0] - 13.0) < 1e-14);
    CHECK(one.weights()[0] == doctest::Approx(kPi));

    const auto r = chebyshev_singular_rule(1.0, 25.0, 50);
    for (std::size_t k = 0; k < r.size(); ++k) {
        CHECK(r.nodes()[k] > 1.0);
        CHECK(r.nodes()[k] < 25.0);
        CHECK(r.weights()[k] == doctest::Approx(kPi / 50.0));
    }
    CHECK(r.apply([](double) { return 1.0; }) == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(r.apply([](double u) { return u; }) == doctest::Approx(13.0 * kPi).epsilon(1e-14));
    CHECK(r.inverse_weight(13.0) == doctest::Approx(12.0));

    CHECK_THROWS_AS(chebyshev_singular_rule(2.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(chebyshev_singular_rule(1.0, 1.0, 4), std::invalid_argument);
    CHECK_THROWS_AS(chebyshev_singular_rule(0.0, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(QuadratureRule({1.0}, {}, 0.0, 1.0, WeightKind::ChebyshevSingular),
                    std::invalid_argument);
}

TEST_CASE("chebyshev rule is exact below degree 2n") {
    for (int n : {1, 2, 3, 5, 8}) {
        const auto r = chebyshev_singular_rule(0.5, 3.0, n);
        for (int m = 0; m < 2 * n; ++m) {
            const double got = r.apply([m](double u) { return std::pow(u, m); });
            const double want = oracle::chebyshev_moment(0.5, 3.0, m);
            CHECK(std::abs(got - want) <= 1e-13 * std::abs(want));
        }
    }
    // Degree 2n is not integrated exactly.
    const auto r = chebyshev_singular_rule(0.5, 3.0, 2);
    const double got = r.apply([](double u) { return std::pow(u, 4); });
    CHECK(std::abs(got - oracle::chebyshev_moment(0.5, 3.0, 4)) > 1e-6);
}

TEST_CASE("periodic trapezoid") {
    CHECK(periodic_trapezoid([](double) { return 1.0; }, 1) == doctest::Approx(kTwoPi));
    CHECK(std::abs(periodic_trapezoid([](double t) { return std::cos(t); }, 2)) < 1e-15);
    CHECK(periodic_trapezoid([](double t) { return std::cos(t) * std::cos(t); }, 3) ==
          doctest::Approx(kPi).epsilon(1e-15));

    // Trigonometric polynomials of degree < n integrate exactly.
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int n : {4, 9, 16}) {
        std::vector<double> a(n), b(n);
        for (int j = 0; j < n; ++j) a[j] = coef(gen), b[j] = coef(gen);
        auto f = [&](double t) {
            double s = a[0];
            for (int j = 1; j < n; ++j) s += a[j] * std::cos(j * t) + b[j] * std::sin(j * t);
            return s;
        };
        CHECK(std::abs(periodic_trapezoid(f, n) - kTwoPi * a[0]) < 1e-13);
    }

    const auto rule = periodic_trapezoid_rule(8);
    CHECK(rule.size() == 8);
    CHECK(rule.nodes()[0] == 0.0);
    CHECK(rule.inverse_weight(1.0) == 1.0);
    CHECK(rule.kind() == WeightKind::PeriodicTrapezoid);
}

}  // TEST_SUITE
