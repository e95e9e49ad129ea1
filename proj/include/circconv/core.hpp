#pragma once

// Circle geometry and the closed-form density of the convolution of two
// circle impulses, plus an independent evaluation route through the zeros
// of rho - psi(theta).

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string_view>
#include <utility>

namespace circconv {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;
};

inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Unit vector at angle theta.
inline Vec2 unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// The circle |x - center| = radius. Throws std::invalid_argument unless
/// radius > 0 and the center is finite.
class Circle {
public:
    Circle(Vec2 center, double radius);
    explicit Circle(double radius) : Circle(Vec2{}, radius) {}

    Vec2 center() const { return center_; }
    double radius() const { return radius_; }

    /// Point at angle theta, measured about the center.
    Vec2 point(double theta) const { return center_ + radius_ * unit(theta); }

    /// The same circle shifted by b (the pullback by x -> x - b).
    Circle shifted(Vec2 b) const { return Circle(center_ + b, radius_); }

private:
    Vec2 center_;
    double radius_;
};

/// Everything needed to evaluate delta_{C1} * delta_{C2}: both radii and
/// the point b1 + b2 about which the result is radial.
class ConvKernel {
public:
    ConvKernel(double r1, double r2, Vec2 center_sum = {});
    ConvKernel(const Circle& c1, const Circle& c2);

    double r1() const { return r1_; }
    double r2() const { return r2_; }
    Vec2 center_sum() const { return center_sum_; }

private:
    double r1_;
    double r2_;
    Vec2 center_sum_;
};

enum class SupportClass {
    Origin,
    BelowSupport,
    LowerEndpoint,
    Interior,
    UpperEndpoint,
    AboveSupport,
};

std::string_view to_string(SupportClass c);

struct Interval {
    double lo;
    double hi;
};

/// A function radial about `center`, presented through its profile.
/// The evaluator is only consulted inside [support.lo, support.hi]; outside
/// the profile is zero. support.hi may be +inf.
struct RadialProfile {
    Interval support;
    std::function<double(double)> evaluator;
    Vec2 center{};

    double operator()(double rho) const;
    double at(Vec2 x) const { return (*this)(norm(x - center)); }
};

/// (|r1 - r2|, r1 + r2).
Interval support_interval(const ConvKernel& k);

/// Partition cell of rho >= 0. Endpoints compare with exact equality.
/// Origin takes precedence over LowerEndpoint when r1 == r2.
SupportClass classify(const ConvKernel& k, double rho);

/// Closed-form density 4 r1 r2 / sqrt((rho^2 - (r1-r2)^2)((r1+r2)^2 - rho^2))
/// on the open annulus, 0 off the support and +inf on the singular circles.
double eval_conv(const ConvKernel& k, double rho);

/// eval_conv at |x - (b1 + b2)|.
double eval_conv_2d(const ConvKernel& k, Vec2 x);

/// The closed form as a RadialProfile about b1 + b2.
RadialProfile conv_profile(const ConvKernel& k);

/// Law-of-cosines distance sqrt(r1^2 + r2^2 - 2 r1 r2 cos theta), evaluated
/// as sqrt((r1 - r2)^2 + 4 r1 r2 sin^2(theta/2)) to avoid cancellation.
double psi(double theta, double r1, double r2);

double phi(double rho, double theta, const ConvKernel& k);

/// -r1 r2 sin(theta) / psi(theta). NaN where psi vanishes (r1 == r2 and
/// theta a multiple of 2 pi).
double phi_prime(double theta, const ConvKernel& k);

struct RootEvaluation {
    double theta1;
    double theta2;
    double value;
};

/// Evaluates the density as (r1 r2 / rho) * sum 1/|phi'(theta_n)| over the
/// two zeros of phi on (0, 2 pi). The first zero is found by bisection on
/// [1e-12, pi - 1e-12]; the second is 2 pi - theta1.
/// Throws std::domain_error unless classify(k, rho) == Interior.
RootEvaluation conv_via_roots_detail(const ConvKernel& k, double rho, double tol);

inline double conv_via_roots(const ConvKernel& k, double rho, double tol) {
    return conv_via_roots_detail(k, rho, tol).value;
}

/// Integral of eval_conv over the plane via a Chebyshev-weight rule in
/// u = rho^2. Should equal 4 pi^2 r1 r2.
double total_mass(const ConvKernel& k, int n);

}  // namespace circconv
