#include "circconv/oracle.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>

#include "circconv/special.hpp"

namespace circconv {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

// Samples per chunk. Chunk c always covers counters [c * kChunk, (c+1) * kChunk)
// whatever the worker count.
constexpr std::uint64_t kChunk = 1u << 16;

double to_unit(std::uint32_t hi, std::uint32_t lo) {
    const std::uint64_t bits = (static_cast<std::uint64_t>(hi) << 32) | lo;
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Runs body(acc, offset) for every sample, where offset = R1 e(t1) + R2 e(t2)
// is the sample's displacement from b1 + b2. Returns one accumulator per worker.
template <class Acc, class Factory, class Body>
std::vector<Acc> sample_offsets(const Circle& c1, const Circle& c2, std::uint64_t samples,
                                std::uint64_t seed, Factory make, Body body) {
    const Philox4x32 rng(seed);
    const double r1 = c1.radius();
    const double r2 = c2.radius();
    const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
    const auto workers = static_cast<std::uint64_t>(
        std::clamp<std::uint64_t>(std::thread::hardware_concurrency(), 1, std::max<std::uint64_t>(chunks, 1)));

    std::vector<Acc> accs;
    accs.reserve(workers);
    for (std::uint64_t w = 0; w < workers; ++w) accs.push_back(make());

    auto run = [&](std::uint64_t w) {
        Acc& acc = accs[w];
        for (std::uint64_t c = w; c < chunks; c += workers) {
            const std::uint64_t end = std::min(samples, (c + 1) * kChunk);
            for (std::uint64_t i = c * kChunk; i < end; ++i) {
                const auto [u1, u2] = rng.uniform_pair(i);
                const Vec2 offset = r1 * unit(kTwoPi * u1) + r2 * unit(kTwoPi * u2);
                body(acc, offset);
            }
        }
    };
    std::vector<std::thread> threads;
    for (std::uint64_t w = 1; w < workers; ++w) threads.emplace_back(run, w);
    run(0);
    for (auto& t : threads) t.join();
    return accs;
}

struct FftwDeleter {
    void operator()(void* p) const { fftw_free(p); }
};
using RealBuffer = std::unique_ptr<double[], FftwDeleter>;
using ComplexBuffer = std::unique_ptr<fftw_complex[], FftwDeleter>;

// FFTW planning is not thread-safe.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

void check_ring_fits(const Circle& c, GridSpec grid, double epsilon) {
    if (!(grid.spacing > 0.0) || !(grid.extent > grid.spacing))
        throw std::invalid_argument("grid needs spacing > 0 and extent > spacing");
    if (!(epsilon >= 2.0 * grid.spacing * (1.0 - 1e-12)))
        throw std::invalid_argument("mollifier width epsilon = " + std::to_string(epsilon) +
                                    " is below 2 * spacing = " + std::to_string(2.0 * grid.spacing));
    const std::size_t n = grid.points();
    const double reach = (static_cast<double>(n / 2) - 1.0) * grid.spacing;
    if (c.radius() + 5.0 * epsilon > reach)
        throw std::invalid_argument("grid of extent " + std::to_string(grid.extent) +
                                    " does not cover the ring of radius " +
                                    std::to_string(c.radius()) + " plus 5 epsilon");
}

}  // namespace

Philox4x32::Block Philox4x32::operator()(Block ctr) const {
    std::uint32_t k0 = key_[0];
    std::uint32_t k1 = key_[1];
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ k0, lo1, hi0 ^ ctr[3] ^ k1, lo0};
        k0 += kPhiloxW0;
        k1 += kPhiloxW1;
    }
    return ctr;
}

std::array<double, 2> Philox4x32::uniform_pair(std::uint64_t index, std::uint32_t stream) const {
    const Block out = (*this)({static_cast<std::uint32_t>(index),
                               static_cast<std::uint32_t>(index >> 32), stream, 0u});
    return {to_unit(out[0], out[1]), to_unit(out[2], out[3])};
}

double RadialHistogram::density(std::size_t i) const {
    const double lo = edges[i];
    const double hi = edges[i + 1];
    const double area = kPi * (hi * hi - lo * lo);
    return static_cast<double>(counts[i]) / static_cast<double>(total_samples) * mass_scale / area;
}

RadialHistogram mc_conv_histogram(const Circle& c1, const Circle& c2, std::uint64_t samples,
                                  std::size_t bins, std::uint64_t seed,
                                  std::optional<HistogramRange> range) {
    if (samples == 0) throw std::invalid_argument("mc_conv_histogram: samples must be >= 1");
    if (bins == 0) throw std::invalid_argument("mc_conv_histogram: bins must be >= 1");
    const double outer = c1.radius() + c2.radius();
    const HistogramRange r = range.value_or(HistogramRange{0.0, 1.1 * outer});
    if (!(r.lo >= 0.0 && r.lo < r.hi))
        throw std::invalid_argument("mc_conv_histogram: need 0 <= lo < hi");

    RadialHistogram h;
    h.edges.resize(bins + 1);
    const double width = (r.hi - r.lo) / static_cast<double>(bins);
    for (std::size_t i = 0; i <= bins; ++i) h.edges[i] = r.lo + width * static_cast<double>(i);
    h.edges[bins] = r.hi;
    h.total_samples = samples;
    h.mass_scale = kTwoPi * kTwoPi * c1.radius() * c2.radius();

    struct Acc {
        std::vector<std::uint64_t> counts;
        std::uint64_t under = 0;
        std::uint64_t over = 0;
        double min_rho = kInf;
        double max_rho = 0.0;
    };
    const double lo = r.lo;
    const double hi = r.hi;
    const double scale = static_cast<double>(bins) / (hi - lo);
    auto accs = sample_offsets<Acc>(
        c1, c2, samples, seed, [bins] { return Acc{std::vector<std::uint64_t>(bins, 0)}; },
        [&](Acc& acc, Vec2 offset) {
            const double rho = norm(offset);
            acc.min_rho = std::min(acc.min_rho, rho);
            acc.max_rho = std::max(acc.max_rho, rho);
            if (rho < lo) {
                ++acc.under;
            } else if (rho > hi) {
                ++acc.over;
            } else {
                const auto idx = std::min(static_cast<std::size_t>((rho - lo) * scale), bins - 1);
                ++acc.counts[idx];
            }
        });

    h.counts.assign(bins, 0);
    h.min_rho = kInf;
    for (const Acc& a : accs) {
        for (std::size_t i = 0; i < bins; ++i) h.counts[i] += a.counts[i];
        h.underflow += a.under;
        h.overflow += a.over;
        h.min_rho = std::min(h.min_rho, a.min_rho);
        h.max_rho = std::max(h.max_rho, a.max_rho);
    }
    return h;
}

std::vector<std::uint64_t> mc_radiality_check(const Circle& c1, const Circle& c2,
                                              std::uint64_t samples, std::size_t sectors,
                                              std::uint64_t seed) {
    if (sectors == 0) throw std::invalid_argument("mc_radiality_check: sectors must be >= 1");
    const double scale = static_cast<double>(sectors) / kTwoPi;
    auto accs = sample_offsets<std::vector<std::uint64_t>>(
        c1, c2, samples, seed, [sectors] { return std::vector<std::uint64_t>(sectors, 0); },
        [&](std::vector<std::uint64_t>& acc, Vec2 offset) {
            const double angle = std::atan2(offset.y, offset.x) + kPi;
            const auto idx = std::min(static_cast<std::size_t>(angle * scale), sectors - 1);
            ++acc[idx];
        });
    std::vector<std::uint64_t> counts(sectors, 0);
    for (const auto& a : accs)
        for (std::size_t i = 0; i < sectors; ++i) counts[i] += a[i];
    return counts;
}

std::size_t GridSpec::points() const {
    auto n = static_cast<std::size_t>(std::ceil(extent / spacing - 1e-9));
    return n + (n % 2);
}

Vec2 MollifiedGrid::position(std::size_t i, std::size_t j) const {
    const double half = static_cast<double>(n / 2);
    return {center.x + (static_cast<double>(i) - half) * spacing,
            center.y + (static_cast<double>(j) - half) * spacing};
}

double MollifiedGrid::mass() const {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum * spacing * spacing;
}

MollifiedGrid build_mollified_ring(const Circle& c, GridSpec grid, double epsilon) {
    check_ring_fits(c, grid, epsilon);
    MollifiedGrid g;
    g.center = c.center();
    g.extent = grid.extent;
    g.spacing = grid.spacing;
    g.epsilon = epsilon;
    g.n = grid.points();
    g.values.resize(g.n * g.n);
    const double peak = 1.0 / (std::sqrt(kTwoPi) * epsilon);
    const double inv_two_var = 1.0 / (2.0 * epsilon * epsilon);
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i < g.n; ++i) {
            const double dist = norm(g.position(i, j) - c.center()) - c.radius();
            g.values[j * g.n + i] = peak * std::exp(-dist * dist * inv_two_var);
        }
    }
    return g;
}

MollifiedGrid convolve_grids(const MollifiedGrid& a, const MollifiedGrid& b) {
    if (a.n != b.n || a.spacing != b.spacing)
        throw std::invalid_argument("convolve_grids: lattices differ");
    const std::size_t n = a.n;
    const std::size_t half_cols = n / 2 + 1;
    const int ni = static_cast<int>(n);

    RealBuffer real(fftw_alloc_real(n * n));
    ComplexBuffer spec_a(fftw_alloc_complex(n * half_cols));
    ComplexBuffer spec_b(fftw_alloc_complex(n * half_cols));
    fftw_plan forward;
    fftw_plan inverse;
    {
        std::lock_guard lock(fftw_planner_mutex());
        forward = fftw_plan_dft_r2c_2d(ni, ni, real.get(), spec_a.get(), FFTW_ESTIMATE);
        inverse = fftw_plan_dft_c2r_2d(ni, ni, spec_a.get(), real.get(), FFTW_ESTIMATE);
    }

    std::copy(a.values.begin(), a.values.end(), real.get());
    fftw_execute_dft_r2c(forward, real.get(), spec_a.get());
    std::copy(b.values.begin(), b.values.end(), real.get());
    fftw_execute_dft_r2c(forward, real.get(), spec_b.get());

    for (std::size_t k = 0; k < n * half_cols; ++k) {
        const double re = spec_a[k][0] * spec_b[k][0] - spec_a[k][1] * spec_b[k][1];
        const double im = spec_a[k][0] * spec_b[k][1] + spec_a[k][1] * spec_b[k][0];
        spec_a[k][0] = re;
        spec_a[k][1] = im;
    }
    fftw_execute_dft_c2r(inverse, spec_a.get(), real.get());
    {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(forward);
        fftw_destroy_plan(inverse);
    }

    MollifiedGrid out;
    out.center = a.center + b.center;
    out.extent = a.extent;
    out.spacing = a.spacing;
    out.epsilon = std::hypot(a.epsilon, b.epsilon);
    out.n = n;
    out.values.resize(n * n);
    // Inputs index i sits at (i - n/2) h, so raw output index k sits at k h
    // (mod n h); shifting by n/2 restores the centered layout. The c2r
    // transform is unnormalized.
    const double scale = a.spacing * a.spacing / static_cast<double>(n * n);
    const std::size_t half = n / 2;
    for (std::size_t j = 0; j < n; ++j) {
        const std::size_t src_j = (j + half) % n;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t src_i = (i + half) % n;
            out.values[j * n + i] = scale * real[src_j * n + src_i];
        }
    }
    return out;
}

std::vector<AnnularBin> annular_profile(const MollifiedGrid& g, Vec2 about, double bin_width) {
    if (!(bin_width > 0.0)) throw std::invalid_argument("annular_profile: bin_width must be > 0");
    std::vector<double> sum_rho;
    std::vector<double> sum_val;
    std::vector<std::size_t> count;
    for (std::size_t j = 0; j < g.n; ++j) {
        for (std::size_t i = 0; i < g.n; ++i) {
            const double rho = norm(g.position(i, j) - about);
            const auto bin = static_cast<std::size_t>(rho / bin_width);
            if (bin >= count.size()) {
                sum_rho.resize(bin + 1, 0.0);
                sum_val.resize(bin + 1, 0.0);
                count.resize(bin + 1, 0);
            }
            sum_rho[bin] += rho;
            sum_val[bin] += g.values[j * g.n + i];
            ++count[bin];
        }
    }
    std::vector<AnnularBin> out;
    for (std::size_t b = 0; b < count.size(); ++b) {
        if (count[b] == 0) continue;
        const auto c = static_cast<double>(count[b]);
        out.push_back({sum_rho[b] / c, sum_val[b] / c, count[b]});
    }
    return out;
}

double smoothed_conv(const ConvKernel& k, double rho, double sigma, int n) {
    if (!(sigma > 0.0)) throw std::invalid_argument("smoothed_conv: sigma must be > 0");
    const auto [d, s] = support_interval(k);
    const auto rule = chebyshev_singular_rule(d * d, s * s, n);
    const double norm_const = 1.0 / (std::sqrt(kTwoPi) * sigma);
    const double inv_two_var = 1.0 / (2.0 * sigma * sigma);
    // int f(s) N(rho - s) ds with s = sqrt(u), ds = du / (2 sqrt u); the
    // Chebyshev weight is divided back out of f in factored form.
    return rule.apply([&](double u) {
        const double t = std::sqrt(u);
        const double unweighted =
            eval_conv(k, t) * std::sqrt((t - d) * (t + d) * ((s - t) * (s + t)));
        const double gap = rho - t;
        return unweighted * norm_const * std::exp(-gap * gap * inv_two_var) / (2.0 * t);
    });
}

MollifiedGrid grid_convolution(const Circle& c1, const Circle& c2, GridSpec grid,
                               double epsilon) {
    check_ring_fits(c1, grid, epsilon);
    check_ring_fits(c2, grid, epsilon);
    const double reach = (static_cast<double>(grid.points() / 2) - 1.0) * grid.spacing;
    const double support = c1.radius() + c2.radius() + 10.0 * epsilon;
    if (support > reach)
        throw std::invalid_argument("convolution support radius " + std::to_string(support) +
                                    " is clipped by a grid of extent " +
                                    std::to_string(grid.extent));
    return convolve_grids(build_mollified_ring(c1, grid, epsilon),
                          build_mollified_ring(c2, grid, epsilon));
}

GridConvReport grid_conv_check(const Circle& c1, const Circle& c2, GridSpec grid,
                               double epsilon) {
    const MollifiedGrid conv = grid_convolution(c1, c2, grid, epsilon);
    const ConvKernel k(c1, c2);
    const auto [d, s] = support_interval(k);

    GridConvReport report;
    report.mass = conv.mass();
    report.expected_mass = kTwoPi * kTwoPi * k.r1() * k.r2();
    report.mass_rel_error = std::abs(report.mass - report.expected_mass) / report.expected_mass;
    report.trimmed = {d + 5.0 * epsilon, s - 5.0 * epsilon};

    const double sigma = std::sqrt(2.0) * epsilon;
    for (const AnnularBin& bin : annular_profile(conv, k.center_sum(), grid.spacing)) {
        if (bin.rho < report.trimmed.lo || bin.rho > report.trimmed.hi) continue;
        const double oracle = smoothed_conv(k, bin.rho, sigma);
        const double rel = std::abs(bin.value - oracle) / oracle;
        report.profile.push_back({bin.rho, bin.value, oracle, rel});
        if (rel > report.max_rel_error) {
            report.max_rel_error = rel;
            report.rho_at_max = bin.rho;
        }
    }
    return report;
}

}  // namespace circconv
