#pragma once

#include <functional>
#include <vector>

namespace circconv {

/// Bessel function of the first kind, order zero.
/// Power series for |x| <= 12, Hankel asymptotic expansion (summed to its
/// smallest term) beyond. Absolute error below 1e-11 everywhere.
double bessel_j0(double x);

enum class WeightKind {
    /// Integrates f(u) / sqrt((u - a)(b - u)) over (a, b).
    ChebyshevSingular,
    /// Integrates a 2 pi-periodic f over [0, 2 pi).
    PeriodicTrapezoid,
};

/// Nodes and weights for one weight function on one interval. Immutable
/// after construction; apply() may be called concurrently.
class QuadratureRule {
public:
    QuadratureRule(std::vector<double> nodes, std::vector<double> weights, double a, double b,
                   WeightKind kind);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double a() const { return a_; }
    double b() const { return b_; }
    WeightKind kind() const { return kind_; }
    std::size_t size() const { return nodes_.size(); }

    /// sum_k w_k f(x_k).
    template <class F>
    double apply(F&& f) const {
        double sum = 0.0;
        for (std::size_t k = 0; k < nodes_.size(); ++k) sum += weights_[k] * f(nodes_[k]);
        return sum;
    }

    /// Reciprocal of the weight function at x, so that apply() of
    /// g(x) * inverse_weight(x) approximates the plain integral of g.
    double inverse_weight(double x) const;

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
    double a_;
    double b_;
    WeightKind kind_;
};

/// Gauss-Chebyshev (first kind) rule mapped to (a, b): nodes
/// (a+b)/2 + (b-a)/2 cos((2k-1) pi / 2n), weights pi/n.
/// Throws std::invalid_argument if a >= b or n == 0.
QuadratureRule chebyshev_singular_rule(double a, double b, int n);

/// Uniform n-point rule on [0, 2 pi), weights 2 pi / n.
QuadratureRule periodic_trapezoid_rule(int n);

/// (2 pi / n) sum_{j<n} f(2 pi j / n).
double periodic_trapezoid(const std::function<double(double)>& f, int n);

}  // namespace circconv
