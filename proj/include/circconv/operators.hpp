#pragma once

// Ring measures f * delta_C, their pairing with test functions, and
// convolution of a field with a circle impulse.

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "circconv/core.hpp"

namespace circconv {

/// Row-major samples on the lattice origin + (i * spacing, j * spacing),
/// i < nx (x index, fastest), j < ny.
struct SampledGrid {
    Vec2 origin;
    double spacing = 0.0;
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::vector<double> values;

    Vec2 position(std::size_t i, std::size_t j) const {
        return {origin.x + static_cast<double>(i) * spacing,
                origin.y + static_cast<double>(j) * spacing};
    }
    double& at(std::size_t i, std::size_t j) { return values[j * nx + i]; }
    double at(std::size_t i, std::size_t j) const { return values[j * nx + i]; }

    bool contains(Vec2 p) const;

    /// Bilinear interpolation. Throws std::out_of_range outside the lattice.
    double interpolate(Vec2 p) const;
};

/// A scalar field on the plane. Always evaluable; optionally backed by a
/// sampled grid, in which case evaluation interpolates bilinearly.
class Field2D {
public:
    explicit Field2D(std::function<double(Vec2)> evaluator);
    /// Throws std::invalid_argument on non-positive spacing, size mismatch
    /// or non-finite values.
    explicit Field2D(SampledGrid grid);

    double operator()(Vec2 x) const { return evaluator_(x); }
    const std::optional<SampledGrid>& grid() const { return grid_; }

private:
    std::function<double(Vec2)> evaluator_;
    std::optional<SampledGrid> grid_;
};

/// density(theta) * delta_C, with density taken against arclength
/// ds = R d theta. density must be 2 pi-periodic.
struct RingMeasure {
    Circle circle;
    std::function<double(double)> density;

    /// int_0^{2pi} density(theta) R d theta with an n-point trapezoid.
    double total_mass(int n) const;
};

/// delta_C itself: unit density.
RingMeasure circle_impulse(const Circle& c);

/// <m, phi> = int_0^{2pi} density(theta) phi(center + R e(theta)) R d theta.
double pair_with_test(const RingMeasure& m, const Field2D& phi, int n);

/// f delta_C = f_C delta_C: the density is f read off the circle, so it is
/// constant (and equal to the profile at R) when f is radial about the center.
RingMeasure restrict_to_circle(const Field2D& f, const Circle& c);

/// (f * delta_C)(x) = int_0^{2pi} f(x - b + R e(theta)) R d theta for the
/// circle |y - b| = R. Carries the arclength weight: total weight 2 pi R.
double circle_average(const Field2D& f, const Circle& c, Vec2 x, int n);

/// circle_average divided by the circumference: the arithmetic mean of f
/// over the circle.
double circle_mean(const Field2D& f, const Circle& c, Vec2 x, int n);

/// circle_average at every lattice point of a sampled field whose circle
/// stays inside the input lattice. The result lives on the input lattice
/// shifted by the circle center, restricted to those points. Off-lattice
/// circle points are read by bilinear interpolation.
/// Throws std::invalid_argument if f is not sampled or the circle does not
/// fit inside the grid anywhere.
Field2D circle_average_field(const Field2D& f, const Circle& c, int n);

}  // namespace circconv
