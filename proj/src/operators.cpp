#include "circconv/operators.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

#include "circconv/special.hpp"

namespace circconv {

namespace {

// Lattice coordinates within this many cells of the boundary count as inside.
constexpr double kEdgeSlack = 1e-9;

}  // namespace

bool SampledGrid::contains(Vec2 p) const {
    const double fx = (p.x - origin.x) / spacing;
    const double fy = (p.y - origin.y) / spacing;
    return fx >= -kEdgeSlack && fy >= -kEdgeSlack &&
           fx <= static_cast<double>(nx - 1) + kEdgeSlack &&
           fy <= static_cast<double>(ny - 1) + kEdgeSlack;
}

double SampledGrid::interpolate(Vec2 p) const {
    if (!contains(p)) throw std::out_of_range("SampledGrid::interpolate: point outside lattice");
    const double fx = std::clamp((p.x - origin.x) / spacing, 0.0, static_cast<double>(nx - 1));
    const double fy = std::clamp((p.y - origin.y) / spacing, 0.0, static_cast<double>(ny - 1));
    const auto i0 = std::min(static_cast<std::size_t>(fx), nx > 1 ? nx - 2 : 0);
    const auto j0 = std::min(static_cast<std::size_t>(fy), ny > 1 ? ny - 2 : 0);
    const std::size_t i1 = std::min(i0 + 1, nx - 1);
    const std::size_t j1 = std::min(j0 + 1, ny - 1);
    const double tx = fx - static_cast<double>(i0);
    const double ty = fy - static_cast<double>(j0);
    const double bottom = (1.0 - tx) * at(i0, j0) + tx * at(i1, j0);
    const double top = (1.0 - tx) * at(i0, j1) + tx * at(i1, j1);
    return (1.0 - ty) * bottom + ty * top;
}

Field2D::Field2D(std::function<double(Vec2)> evaluator) : evaluator_(std::move(evaluator)) {
    if (!evaluator_) throw std::invalid_argument("Field2D: empty evaluator");
}

Field2D::Field2D(SampledGrid grid) {
    if (!(grid.spacing > 0.0)) throw std::invalid_argument("Field2D: spacing must be > 0");
    if (grid.nx == 0 || grid.ny == 0 || grid.values.size() != grid.nx * grid.ny)
        throw std::invalid_argument("Field2D: grid size does not match nx * ny");
    for (double v : grid.values)
        if (!std::isfinite(v)) throw std::invalid_argument("Field2D: non-finite grid value");
    auto shared = std::make_shared<const SampledGrid>(grid);
    evaluator_ = [shared](Vec2 p) { return shared->interpolate(p); };
    grid_ = std::move(grid);
}

double RingMeasure::total_mass(int n) const {
    return circle.radius() * periodic_trapezoid(density, n);
}

RingMeasure circle_impulse(const Circle& c) {
    return {c, [](double) { return 1.0; }};
}

double pair_with_test(const RingMeasure& m, const Field2D& phi, int n) {
    const Circle& c = m.circle;
    return c.radius() *
           periodic_trapezoid([&](double t) { return m.density(t) * phi(c.point(t)); }, n);
}

RingMeasure restrict_to_circle(const Field2D& f, const Circle& c) {
    return {c, [f, c](double theta) { return f(c.point(theta)); }};
}

double circle_average(const Field2D& f, const Circle& c, Vec2 x, int n) {
    const Vec2 base = x - c.center();
    const double radius = c.radius();
    return radius *
           periodic_trapezoid([&](double t) { return f(base + radius * unit(t)); }, n);
}

double circle_mean(const Field2D& f, const Circle& c, Vec2 x, int n) {
    return circle_average(f, c, x, n) / (kTwoPi * c.radius());
}

Field2D circle_average_field(const Field2D& f, const Circle& c, int n) {
    if (!f.grid()) throw std::invalid_argument("circle_average_field: field is not sampled");
    if (n < 1) throw std::invalid_argument("circle_average_field: need n >= 1");
    const SampledGrid& in = *f.grid();
    const double radius = c.radius();
    const auto margin = static_cast<std::size_t>(std::ceil(radius / in.spacing - kEdgeSlack));
    if (in.nx <= 2 * margin || in.ny <= 2 * margin)
        throw std::invalid_argument("circle_average_field: circle of radius " +
                                    std::to_string(radius) + " extends beyond the grid");

    const std::size_t n_theta = static_cast<std::size_t>(n);
    std::vector<Vec2> offsets(n_theta);
    for (std::size_t j = 0; j < n_theta; ++j)
        offsets[j] = radius * unit(kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    const double weight = radius * kTwoPi / n;

    SampledGrid out;
    out.spacing = in.spacing;
    out.nx = in.nx - 2 * margin;
    out.ny = in.ny - 2 * margin;
    out.origin = in.position(margin, margin) + c.center();
    out.values.resize(out.nx * out.ny);
    for (std::size_t j = 0; j < out.ny; ++j) {
        for (std::size_t i = 0; i < out.nx; ++i) {
            const Vec2 p = in.position(i + margin, j + margin);
            double sum = 0.0;
            for (const Vec2& o : offsets) sum += in.interpolate(p + o);
            out.at(i, j) = weight * sum;
        }
    }
    return Field2D(std::move(out));
}

}  // namespace circconv
