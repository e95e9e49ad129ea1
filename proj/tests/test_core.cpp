#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <cstring>
#include <random>

#include "circconv/core.hpp"
#include "circconv/oracle.hpp"

using namespace circconv;

namespace {
constexpr double kFourOverRootThree = 2.309401076758503058;
constexpr double kFourPiSq = 39.478417604357434475;
constexpr double kTwentyFourPiSq = 236.87050562614460685;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_SUITE("core") {

TEST_CASE("circle and kernel construction") {
    CHECK_THROWS_AS(Circle(0.0), std::invalid_argument);
    CHECK_THROWS_AS(Circle(-1.0), std::invalid_argument);
    CHECK_THROWS_AS(Circle(Vec2{kInf, 0.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(ConvKernel(1.0, std::nan("")), std::invalid_argument);

    const ConvKernel k(Circle({1.0, 0.0}, 2.0), Circle({0.0, 2.0}, 3.0));
    CHECK(k.r1() == 2.0);
    CHECK(k.r2() == 3.0);
    CHECK(k.center_sum() == Vec2{1.0, 2.0});

    const Circle c({1.0, -1.0}, 2.0);
    CHECK(c.shifted({1.0, 1.0}).center() == Vec2{2.0, 0.0});
    CHECK(norm(c.point(0.7) - c.center()) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("support interval") {
    const auto s = support_interval(ConvKernel(2.0, 3.0));
    CHECK(s.lo == 1.0);
    CHECK(s.hi == 5.0);
    const auto e = support_interval(ConvKernel(1.0, 1.0));
    CHECK(e.lo == 0.0);
    CHECK(e.hi == 2.0);
}

TEST_CASE("classify partitions the half line") {
    const ConvKernel k(2.0, 3.0);
    CHECK(classify(k, 0.0) == SupportClass::Origin);
    CHECK(classify(k, 0.5) == SupportClass::BelowSupport);
    CHECK(classify(k, 1.0) == SupportClass::LowerEndpoint);
    CHECK(classify(k, 3.0) == SupportClass::Interior);
    CHECK(classify(k, 5.0) == SupportClass::UpperEndpoint);
    CHECK(classify(k, 5.5) == SupportClass::AboveSupport);
    CHECK(classify(k, std::nextafter(5.0, 6.0)) == SupportClass::AboveSupport);
    CHECK(classify(k, std::nextafter(1.0, 0.0)) == SupportClass::BelowSupport);

    const ConvKernel eq(1.0, 1.0);
    CHECK(classify(eq, 0.0) == SupportClass::Origin);
    CHECK(classify(eq, 1e-300) == SupportClass::Interior);

    CHECK_THROWS_AS(classify(k, -1.0), std::domain_error);
    CHECK_THROWS_AS(classify(k, std::nan("")), std::domain_error);
    CHECK(to_string(SupportClass::Interior) == "Interior");
}

TEST_CASE("closed form examples") {
    const ConvKernel k(2.0, 3.0);
    CHECK(eval_conv(k, 0.5) == 0.0);
    CHECK(eval_conv(k, 6.0) == 0.0);
    CHECK(rel(eval_conv(k, std::sqrt(13.0)), 2.0) < 1e-12);
    CHECK(eval_conv(k, 5.0) == kInf);
    CHECK(eval_conv(k, 1.0) == kInf);
    CHECK(eval_conv(k, 0.0) == 0.0);

    const ConvKernel eq(1.0, 1.0);
    CHECK(rel(eval_conv(eq, 1.0), kFourOverRootThree) < 1e-12);
    CHECK(eval_conv(eq, 0.0) == kInf);
    CHECK(eval_conv(eq, 2.0) == kInf);
    // Near the origin with equal radii the density behaves like 2R/rho.
    CHECK(rel(eval_conv(eq, 1e-8) * 1e-8, 2.0) < 1e-12);
}

TEST_CASE("closed form agrees with a Monte Carlo bin centered at rho = 1") {
    // Independent of the formula: sample sums of circle points directly.
    const auto h = mc_conv_histogram(Circle(1.0), Circle(1.0), 2'000'000, 1, 99,
                                     HistogramRange{0.99, 1.01});
    // Bin average of the closed form over the thin annulus equals the value at
    // its center to about 1e-4.
    CHECK(rel(h.density(0), kFourOverRootThree) < 0.04);
}

TEST_CASE("two dimensional evaluation") {
    const ConvKernel k(2.0, 3.0);
    CHECK(rel(eval_conv_2d(k, {2.0, 3.0}), 2.0) < 1e-12);
    CHECK(eval_conv_2d(k, {5.0, 0.0}) == kInf);

    const ConvKernel shifted(Circle({1.0, 0.0}, 1.0), Circle({0.0, 2.0}, 1.0));
    CHECK(rel(eval_conv_2d(shifted, {2.0, 2.0}), kFourOverRootThree) < 1e-12);
    CHECK(eval_conv_2d(shifted, {1.0, 2.0}) == kInf);

    const auto p = conv_profile(k);
    CHECK(p(0.5) == 0.0);
    CHECK(p(std::sqrt(13.0)) == eval_conv(k, std::sqrt(13.0)));
    CHECK(p.support.lo == 1.0);
    CHECK(p.support.hi == 5.0);
}

TEST_CASE("shift covariance is exact") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> radius(0.1, 5.0), coord(-4.0, 4.0);
    for (int t = 0; t < 500; ++t) {
        const double r1 = radius(gen), r2 = radius(gen);
        const Vec2 b1{coord(gen), coord(gen)}, b2{coord(gen), coord(gen)};
        const Vec2 x{coord(gen), coord(gen)};
        const ConvKernel moved(Circle(b1, r1), Circle(b2, r2));
        const ConvKernel home(r1, r2);
        const double a = eval_conv_2d(moved, x);
        const double b = eval_conv_2d(home, x - (b1 + b2));
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}

TEST_CASE("symmetry in the radii is bitwise") {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> radius(0.1, 5.0), unit01(0.0, 1.0);
    for (int t = 0; t < 1000; ++t) {
        const double r1 = radius(gen), r2 = radius(gen);
        const double rho = unit01(gen) * 1.2 * (r1 + r2);
        const double a = eval_conv(ConvKernel(r1, r2), rho);
        const double b = eval_conv(ConvKernel(r2, r1), rho);
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
    }
}

TEST_CASE("interior minimum equals 2 at rho^2 = R1^2 + R2^2") {
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> radius(0.1, 5.0);
    for (int t = 0; t < 200; ++t) {
        const double r1 = radius(gen), r2 = radius(gen);
        if (std::abs(r1 - r2) < 1e-3) continue;
        const ConvKernel k(r1, r2);
        const double rho = std::sqrt(r1 * r1 + r2 * r2);
        CHECK(std::abs(eval_conv(k, rho) - 2.0) < 1e-12);
        const double d = std::abs(r1 - r2), s = r1 + r2;
        for (double f : {0.01, 0.1, 0.5}) {
            const double lo = rho - f * (rho - d);
            const double hi = rho + f * (s - rho);
            CHECK(eval_conv(k, lo) > 2.0);
            CHECK(eval_conv(k, hi) > 2.0);
        }
    }
}

TEST_CASE("psi examples and properties") {
    CHECK(psi(0.0, 2.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(psi(kPi, 2.0, 3.0) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(psi(kPi / 2.0, 2.0, 3.0) == doctest::Approx(std::sqrt(13.0)).epsilon(1e-15));
    CHECK(psi(0.0, 1.0, 1.0) == 0.0);

    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> radius(0.1, 5.0), angle(0.0, kPi);
    for (int t = 0; t < 500; ++t) {
        const double r1 = radius(gen), r2 = radius(gen), th = angle(gen);
        const double v = psi(th, r1, r2);
        CHECK(v >= std::abs(r1 - r2) - 1e-12);
        CHECK(v <= r1 + r2 + 1e-12);
        CHECK(std::abs(psi(-th, r1, r2) - v) <= 1e-14 * (r1 + r2));
        CHECK(std::abs(psi(th + kTwoPi, r1, r2) - v) <= 1e-12 * (r1 + r2));
        // Law of cosines in long double.
        const long double lc = std::sqrt(static_cast<long double>(r1) * r1 +
                                         static_cast<long double>(r2) * r2 -
                                         2.0L * r1 * r2 * std::cos(static_cast<long double>(th)));
        CHECK(std::abs(v - static_cast<double>(lc)) <= 1e-12 * (r1 + r2));
    }
    // Strictly increasing on [0, pi].
    double prev = psi(0.0, 2.0, 3.0);
    for (int i = 1; i <= 1000; ++i) {
        const double v = psi(kPi * i / 1000.0, 2.0, 3.0);
        CHECK(v > prev);
        prev = v;
    }
}

TEST_CASE("phi and its derivative") {
    const ConvKernel k(1.0, 1.0);
    CHECK(std::abs(phi(1.0, kPi / 3.0, k)) < 1e-15);
    CHECK(std::abs(phi_prime(kPi / 2.0, ConvKernel(2.0, 3.0)) - (-6.0 / std::sqrt(13.0))) <
          1e-15);
    CHECK(std::abs(phi_prime(kPi / 2.0, k) - (-0.7071067811865475244)) < 1e-15);
    CHECK(std::isnan(phi_prime(0.0, k)));
    CHECK(std::isnan(phi_prime(kTwoPi, k)));
    CHECK(phi_prime(0.0, ConvKernel(2.0, 3.0)) == 0.0);

    // Central difference of phi.
    const ConvKernel g(1.3, 2.1);
    for (double th : {0.3, 1.0, 2.0, 3.0, 4.5}) {
        const double h = 1e-6;
        const double fd = (phi(2.0, th + h, g) - phi(2.0, th - h, g)) / (2.0 * h);
        CHECK(std::abs(fd - phi_prime(th, g)) < 1e-8);
    }
}

TEST_CASE("root route examples") {
    const auto r = conv_via_roots_detail(ConvKernel(1.0, 1.0), 1.0, 1e-13);
    CHECK(std::abs(r.theta1 - kPi / 3.0) < 1e-12);
    CHECK(std::abs(r.theta2 - 5.0 * kPi / 3.0) < 1e-12);
    CHECK(rel(r.value, kFourOverRootThree) < 1e-9);
    CHECK(rel(conv_via_roots(ConvKernel(2.0, 3.0), std::sqrt(13.0), 1e-13), 2.0) < 1e-9);

    CHECK_THROWS_AS(conv_via_roots(ConvKernel(2.0, 3.0), 5.0, 1e-13), std::domain_error);
    CHECK_THROWS_AS(conv_via_roots(ConvKernel(2.0, 3.0), 0.5, 1e-13), std::domain_error);
    CHECK_THROWS_AS(conv_via_roots(ConvKernel(1.0, 1.0), 0.0, 1e-13), std::domain_error);
    CHECK_THROWS_AS(conv_via_roots(ConvKernel(2.0, 3.0), 3.0, 0.0), std::invalid_argument);
}

TEST_CASE("root route agrees with the closed form") {
    std::mt19937_64 gen(19);
    std::uniform_real_distribution<double> radius(0.1, 5.0), frac(0.01, 0.99);
    double worst = 0.0;
    for (int t = 0; t < 2000; ++t) {
        const double r1 = radius(gen), r2 = radius(gen);
        const ConvKernel k(r1, r2);
        const auto s = support_interval(k);
        const double rho = s.lo + frac(gen) * (s.hi - s.lo);
        worst = std::max(worst, rel(conv_via_roots(k, rho, 1e-13), eval_conv(k, rho)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("total mass") {
    CHECK(rel(total_mass(ConvKernel(1.0, 1.0), 64), kFourPiSq) < 1e-12);
    CHECK(rel(total_mass(ConvKernel(2.0, 3.0), 64), kTwentyFourPiSq) < 1e-12);
    // The weighted integrand is constant, so even one node is exact.
    CHECK(rel(total_mass(ConvKernel(2.0, 3.0), 1), kTwentyFourPiSq) < 1e-12);

    std::mt19937_64 gen(23);
    std::uniform_real_distribution<double> radius(0.1, 5.0);
    for (int t = 0; t < 100; ++t) {
        const double r1 = radius(gen), r2 = radius(gen);
        for (int n : {2, 7, 256}) {
            const double expected = 4.0 * kPi * kPi * r1 * r2;
            CHECK(rel(total_mass(ConvKernel(r1, r2), n), expected) < 1e-12);
        }
    }
}

TEST_CASE("radial profile wrapper") {
    RadialProfile p{{1.0, 2.0}, [](double) { return 3.0; }, {1.0, 1.0}};
    CHECK(p(0.5) == 0.0);
    CHECK(p(1.5) == 3.0);
    CHECK(p(2.5) == 0.0);
    CHECK(p.at({2.5, 1.0}) == 3.0);
    CHECK(p.at({0.0, 0.0}) == 3.0);
    CHECK(p.at({4.0, 1.0}) == 0.0);
}

}  // TEST_SUITE
