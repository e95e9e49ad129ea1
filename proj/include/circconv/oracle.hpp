#pragma once

// Brute-force checks on the closed-form convolution density that never
// evaluate the closed form themselves: Monte Carlo sampling of the sum of
// two uniform circle points, and FFT convolution of Gaussian-mollified rings.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "circconv/core.hpp"

namespace circconv {

/// Philox4x32-10 counter-based generator. Output depends only on
/// (key, counter), so any partition of the counter space across workers
/// reproduces the same stream.
class Philox4x32 {
public:
    using Block = std::array<std::uint32_t, 4>;

    explicit Philox4x32(std::uint64_t seed)
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

    Block operator()(Block counter) const;

    /// Two independent uniforms in [0, 1) with 53-bit resolution for
    /// sample `index` of substream `stream`.
    std::array<double, 2> uniform_pair(std::uint64_t index, std::uint32_t stream = 0) const;

private:
    std::array<std::uint32_t, 2> key_;
};

struct RadialHistogram {
    std::vector<double> edges;
    std::vector<std::uint64_t> counts;
    std::uint64_t total_samples = 0;
    /// Total mass of the measure being sampled, 4 pi^2 r1 r2.
    double mass_scale = 0.0;
    std::uint64_t underflow = 0;
    std::uint64_t overflow = 0;
    double min_rho = 0.0;
    double max_rho = 0.0;

    std::size_t bins() const { return counts.size(); }
    double bin_center(std::size_t i) const { return 0.5 * (edges[i] + edges[i + 1]); }
    double bin_width(std::size_t i) const { return edges[i + 1] - edges[i]; }

    /// counts[i] / total * mass_scale / (annulus area of bin i): a planar
    /// density directly comparable with eval_conv.
    double density(std::size_t i) const;

    friend bool operator==(const RadialHistogram&, const RadialHistogram&) = default;
};

struct HistogramRange {
    double lo;
    double hi;
};

/// Histogram of rho = |p - (b1 + b2)| for p = b1 + R1 e(t1) + b2 + R2 e(t2),
/// t1, t2 uniform. Bins cover `range`, default [0, 1.1 (R1 + R2)].
/// rho is formed from the offset R1 e(t1) + R2 e(t2), so the histogram is
/// bitwise independent of the centers. Throws std::invalid_argument if
/// samples or bins is zero or the range is empty.
RadialHistogram mc_conv_histogram(const Circle& c1, const Circle& c2, std::uint64_t samples,
                                  std::size_t bins, std::uint64_t seed,
                                  std::optional<HistogramRange> range = std::nullopt);

/// Counts of the same samples by polar angle about b1 + b2 in `sectors`
/// equal sectors starting at angle -pi.
std::vector<std::uint64_t> mc_radiality_check(const Circle& c1, const Circle& c2,
                                              std::uint64_t samples, std::size_t sectors,
                                              std::uint64_t seed);

/// Square lattice of side `extent` centered on a chosen point.
struct GridSpec {
    double extent;
    double spacing;

    /// Number of samples per side, rounded up to even.
    std::size_t points() const;
};

struct MollifiedGrid {
    Vec2 center;
    double extent = 0.0;
    double spacing = 0.0;
    double epsilon = 0.0;
    std::size_t n = 0;
    /// Row-major, n x n. Sample (i, j) sits at center + ((i - n/2) h, (j - n/2) h).
    std::vector<double> values;

    Vec2 position(std::size_t i, std::size_t j) const;
    /// sum(values) * spacing^2.
    double mass() const;
};

/// Gaussian ring (2 pi)^{-1/2} / eps * exp(-(|x - b| - R)^2 / (2 eps^2)) sampled on
/// a grid centered at b. Unit mass across every normal slice, so the total
/// mass approximates 2 pi R.
/// Throws std::invalid_argument if eps < 2 spacing or the grid does not
/// cover the circle plus 5 eps.
MollifiedGrid build_mollified_ring(const Circle& c, GridSpec grid, double epsilon);

/// Circular FFT convolution of two rings on equal lattices, scaled to
/// approximate the continuous convolution. The result is centered at the
/// sum of the input centers. Throws std::invalid_argument on mismatched
/// lattices.
MollifiedGrid convolve_grids(const MollifiedGrid& a, const MollifiedGrid& b);

struct AnnularBin {
    double rho;    ///< mean radius of the samples in the annulus
    double value;  ///< mean value
    std::size_t samples;
};

/// Annular average of a grid about `about` in bins of width `bin_width`.
/// Empty bins are dropped.
std::vector<AnnularBin> annular_profile(const MollifiedGrid& g, Vec2 about, double bin_width);

/// Closed-form density smoothed along rho by a Gaussian of width sigma,
/// int f(s) N(rho - s; sigma) ds, computed in u = s^2 with an n-node
/// Chebyshev rule so the endpoint singularities are integrated exactly.
double smoothed_conv(const ConvKernel& k, double rho, double sigma, int n = 4096);

struct GridProfilePoint {
    double rho;
    double grid;
    double oracle;
    double rel_error;
};

struct GridConvReport {
    double max_rel_error = 0.0;
    double rho_at_max = 0.0;
    double mass = 0.0;
    double expected_mass = 0.0;
    double mass_rel_error = 0.0;
    /// Trimmed interior [|R1-R2| + 5 eps, R1+R2 - 5 eps].
    Interval trimmed{};
    std::vector<GridProfilePoint> profile;
};

/// Convolves two mollified rings, extracts the radial profile about b1 + b2
/// and compares it with the closed form smoothed by a Gaussian of width
/// sqrt(2) eps (the two ring widths in quadrature).
/// Throws std::invalid_argument if either ring fails its preconditions or
/// the convolution support (radius R1 + R2 + 10 eps) would wrap around.
GridConvReport grid_conv_check(const Circle& c1, const Circle& c2, GridSpec grid,
                               double epsilon);

/// The convolved grid alone, for callers that want the raw samples.
MollifiedGrid grid_convolution(const Circle& c1, const Circle& c2, GridSpec grid,
                               double epsilon);

}  // namespace circconv
