#include "circconv/checks.hpp"

#include <array>
#include <chrono>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "circconv/hankel.hpp"
#include "circconv/operators.hpp"
#include "circconv/special.hpp"

namespace circconv {

namespace {

std::string fmt(const char* format, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// J0 by its power series in long double, to many more terms than needed.
long double j0_series_oracle(long double x) {
    const long double q = 0.25L * x * x;
    long double term = 1.0L;
    long double sum = 1.0L;
    for (int k = 1; k < 120; ++k) {
        term *= -q / (static_cast<long double>(k) * k);
        sum += term;
    }
    return sum;
}

// J0(x) = (1/2pi) int_0^{2pi} cos(x sin t) dt. The integrand is periodic and
// entire, so the trapezoid rule converges geometrically once the node count
// exceeds |x|.
long double j0_integral_oracle(long double x) {
    constexpr int kNodes = 512;
    const long double h = 2.0L * 3.141592653589793238462643383279502884L / kNodes;
    long double sum = 0.0L;
    for (int j = 0; j < kNodes; ++j) sum += std::cos(x * std::sin(h * j));
    return sum / kNodes;
}

// First five positive zeros of J0, as tabulated.
constexpr std::array<double, 5> kPublishedJ0Zeros{
    2.404825557695773, 5.520078110286311, 8.653727912911012, 11.79153443901428,
    14.93091770848779};

double bisect_oracle_zero(double lo, double hi) {
    long double a = lo;
    long double b = hi;
    const bool rising = j0_integral_oracle(a) < 0.0L;
    for (int it = 0; it < 200 && b - a > 1e-16L; ++it) {
        const long double mid = 0.5L * (a + b);
        const bool below = j0_integral_oracle(mid) < 0.0L;
        if (below == rising)
            a = mid;
        else
            b = mid;
    }
    return static_cast<double>(0.5L * (a + b));
}

}  // namespace

bool CheckReport::all_pass() const {
    for (const auto& l : lines)
        if (!l.pass) return false;
    return true;
}

void CheckReport::add(std::string name, double measured, double tolerance, std::string detail) {
    lines.push_back({std::move(name), measured, tolerance, measured < tolerance, std::move(detail)});
}

void CheckReport::add_flag(std::string name, bool ok, double measured, double tolerance,
                           std::string detail) {
    lines.push_back({std::move(name), measured, tolerance, ok, std::move(detail)});
}

void CheckReport::append(const CheckReport& other) {
    lines.insert(lines.end(), other.lines.begin(), other.lines.end());
}

void print_report(std::ostream& os, const CheckReport& report) {
    for (const auto& l : report.lines) {
        os << (l.pass ? "PASS " : "FAIL ") << l.name << ": measured=" << fmt("%.6e", l.measured)
           << " tol=" << fmt("%.6e", l.tolerance);
        if (!l.detail.empty()) os << " " << l.detail;
        os << "\n";
    }
}

double UniformStream::next() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const auto [a, b] = rng_.uniform_pair(index_++, stream_);
    spare_ = b;
    has_spare_ = true;
    return a;
}

McCheckResult mc_check(const McCheckParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    const Circle c1(p.b1, p.r1);
    const Circle c2(p.b2, p.r2);
    const ConvKernel k(c1, c2);
    const auto [lo, hi] = support_interval(k);

    McCheckResult result;
    RadialHistogram& h = result.histogram;
    h = mc_conv_histogram(c1, c2, p.samples, p.bins, p.seed, HistogramRange{lo, hi});

    const double trim_lo = lo + p.trim * (hi - lo);
    const double trim_hi = hi - p.trim * (hi - lo);
    double worst = 0.0;
    double worst_rho = 0.0;
    std::size_t compared = 0;
    for (std::size_t i = 0; i < h.bins(); ++i) {
        const double rho = h.bin_center(i);
        if (rho < trim_lo || rho > trim_hi) continue;
        const double expected = eval_conv(k, rho);
        const double rel = std::abs(h.density(i) - expected) / expected;
        ++compared;
        if (rel > worst) {
            worst = rel;
            worst_rho = rho;
        }
    }
    CheckReport& r = result.report;
    r.add("mc density vs closed form (max relative error)", worst, p.density_tol,
          fmt("bins=%zu worst_rho=%.4f samples=%" PRIu64 " time=%.2fs", compared, worst_rho,
              p.samples, seconds_since(t0)));

    const double width = h.bin_width(0);
    r.add_flag("mc zero leakage below support", h.min_rho >= lo - width, h.min_rho, lo - width,
               "min_rho must be >= |R1-R2| - binwidth");
    r.add_flag("mc zero leakage above support", h.max_rho <= hi + width, h.max_rho, hi + width,
               "max_rho must be <= R1+R2 + binwidth");

    auto sector_line = [&](const char* name, const Circle& a, const Circle& b) {
        const auto counts = mc_radiality_check(a, b, p.samples, p.sectors, p.seed);
        const double mean = static_cast<double>(p.samples) / static_cast<double>(p.sectors);
        double dev = 0.0;
        for (auto c : counts) dev = std::max(dev, std::abs(static_cast<double>(c) - mean));
        const double bound = 4.0 * std::sqrt(mean);
        r.add_flag(name, dev <= bound, dev, bound,
                   fmt("sectors=%zu about (%g,%g)", p.sectors, a.center().x + b.center().x,
                       a.center().y + b.center().y));
        return counts;
    };
    const Circle o1(p.r1);
    const Circle o2(p.r2);
    const auto sectors_cfg = sector_line("mc radiality (configured centers)", c1, c2);
    const auto sectors_conc = sector_line("mc radiality (concentric)", o1, o2);

    const RadialHistogram concentric =
        mc_conv_histogram(o1, o2, p.samples, p.bins, p.seed, HistogramRange{lo, hi});
    const bool same = concentric == h && sectors_cfg == sectors_conc;
    r.add_flag("mc shift covariance (histograms bit-identical)", same, same ? 0.0 : 1.0, 0.0,
               fmt("b1+b2=(%g,%g)", k.center_sum().x, k.center_sum().y));
    return result;
}

CheckReport roots_check(const RootsCheckParams& p) {
    CheckReport r;
    UniformStream u(p.seed, 1);
    double worst = 0.0;
    std::size_t done = 0;
    while (done < p.triples) {
        const ConvKernel k(u.next(p.radius_lo, p.radius_hi), u.next(p.radius_lo, p.radius_hi));
        const auto [lo, hi] = support_interval(k);
        const double rho = lo + (hi - lo) * u.next();
        if (classify(k, rho) != SupportClass::Interior) continue;
        const double closed = eval_conv(k, rho);
        const double roots = conv_via_roots(k, rho, p.bisection_tol);
        worst = std::max(worst, std::abs(roots - closed) / closed);
        ++done;
    }
    r.add("roots route vs closed form (max relative error)", worst, p.rel_tol,
          fmt("triples=%zu radii=[%g,%g] tol=%g", p.triples, p.radius_lo, p.radius_hi,
              p.bisection_tol));

    UniformStream v(p.seed, 2);
    double worst_min = 0.0;
    std::size_t not_minimum = 0;
    for (std::size_t i = 0; i < p.minimum_pairs; ++i) {
        const ConvKernel k(v.next(p.radius_lo, p.radius_hi), v.next(p.radius_lo, p.radius_hi));
        const double rho = std::hypot(k.r1(), k.r2());
        const double value = eval_conv(k, rho);
        worst_min = std::max(worst_min, std::abs(value - 2.0));
        if (!(value < eval_conv(k, rho * (1.0 - p.perturbation)) &&
              value < eval_conv(k, rho * (1.0 + p.perturbation))))
            ++not_minimum;
    }
    r.add("interior minimum equals 2 at sqrt(R1^2+R2^2)", worst_min, p.minimum_tol,
          fmt("pairs=%zu", p.minimum_pairs));
    r.add_flag("interior minimum strictly below perturbed values", not_minimum == 0,
               static_cast<double>(not_minimum), 0.0,
               fmt("perturbation=+-%g%% pairs=%zu", 100.0 * p.perturbation, p.minimum_pairs));
    return r;
}

CheckReport hankel_check(const HankelCheckParams& p) {
    CheckReport r;
    for (const auto& [r1, r2] : p.radii) {
        const ConvKernel k(r1, r2);
        const double scale = kTwoPi * kTwoPi * r1 * r2;
        double worst = 0.0;
        double worst_square = 0.0;
        for (std::size_t i = 0; i < p.r_count; ++i) {
            const double freq = p.r_max * static_cast<double>(i) / static_cast<double>(p.r_count - 1);
            const double transform = hankel_of_conv(k, freq, p.nodes);
            worst = std::max(worst, std::abs(transform - hankel_of_conv_product(k, freq)));
            const double square = hankel_of_circle(r1, freq) * hankel_of_circle(r2, freq);
            worst_square = std::max(worst_square, std::abs(transform - square));
        }
        r.add(fmt("transform of convolution = product of J0 factors (R1=%g,R2=%g)", r1, r2),
              worst / scale, p.rel_tol,
              fmt("n=%d r in [0,%g] x %zu, relative to (2pi)^2 R1 R2", p.nodes, p.r_max, p.r_count));
        r.add(fmt("transform of convolution = product of circle transforms (R1=%g,R2=%g)", r1, r2),
              worst_square / scale, p.rel_tol);
    }

    const auto t0 = std::chrono::steady_clock::now();
    const auto rule = chebyshev_singular_rule(0.0, p.gaussian_cutoff, p.gaussian_nodes);
    const RadialProfile gaussian{{0.0, p.gaussian_cutoff},
                                 [](double rho) { return std::exp(-kPi * rho * rho); }};
    const RadialProfile once{{0.0, p.gaussian_cutoff},
                             [&](double freq) { return hankel_transform(gaussian, freq, rule); }};
    double worst_once = 0.0;
    double worst_twice = 0.0;
    for (int i = 0; i <= 30; ++i) {
        const double x = p.gaussian_r_max * i / 30.0;
        worst_once = std::max(worst_once, std::abs(once(x) - gaussian(x)));
        worst_twice = std::max(worst_twice, std::abs(hankel_transform(once, x, rule) - gaussian(x)));
    }
    r.add("Gaussian is a transform fixed point", worst_once, p.gaussian_tol,
          fmt("n=%d cutoff=%g", p.gaussian_nodes, p.gaussian_cutoff));
    r.add("transform is its own inverse (Gaussian round trip)", worst_twice, p.gaussian_tol,
          fmt("r in [0,%g] time=%.2fs", p.gaussian_r_max, seconds_since(t0)));

    double worst_series = 0.0;
    for (int i = 0; i <= 8000; ++i) {
        const double x = i * 1e-3;
        const double oracle = static_cast<double>(j0_series_oracle(x));
        worst_series = std::max({worst_series, std::abs(bessel_j0(x) - oracle),
                                 std::abs(bessel_j0(-x) - oracle)});
    }
    r.add("bessel_j0 vs long power series, |x| <= 8", worst_series, p.bessel_tol);

    double worst_integral = 0.0;
    for (int i = 0; i <= 5000; ++i) {
        const double x = i * 1e-2;
        worst_integral = std::max(
            worst_integral, std::abs(bessel_j0(x) - static_cast<double>(j0_integral_oracle(x))));
    }
    r.add("bessel_j0 vs integral representation, |x| <= 50", worst_integral, p.bessel_tol);

    double worst_zero = 0.0;
    double worst_location = 0.0;
    for (double z : kPublishedJ0Zeros) {
        const double located = bisect_oracle_zero(z - 1e-3, z + 1e-3);
        worst_location = std::max(worst_location, std::abs(located - z));
        worst_zero = std::max(worst_zero, std::abs(bessel_j0(located)));
    }
    r.add("bessel_j0 at the first five zeros", worst_zero, p.bessel_tol,
          fmt("oracle zeros within %.1e of tabulated values", worst_location));
    return r;
}

CheckReport neumann_check(const NeumannCheckParams& p) {
    CheckReport r;
    double worst = 0.0;
    std::size_t cases = 0;
    const auto steps = static_cast<int>(std::round(p.r_max / p.r_step));
    for (double r1 : p.radii) {
        for (double r2 : p.radii) {
            for (int i = 0; i <= steps; ++i) {
                const double freq = i * p.r_step;
                if (kTwoPi * freq * (r1 + r2) > p.argument_limit) continue;
                const auto c = neumann_product_check(r1, r2, freq, p.nodes);
                worst = std::max(worst, std::abs(c.lhs - c.rhs));
                ++cases;
            }
        }
    }
    r.add("angular average of J0(2 pi r psi) = J0(2 pi R1 r) J0(2 pi R2 r)", worst, p.tol,
          fmt("cases=%zu n=%d 2 pi r (R1+R2) <= %g", cases, p.nodes, p.argument_limit));
    return r;
}

CheckReport mass_check(const MassCheckParams& p) {
    CheckReport r;
    const ConvKernel k(p.r1, p.r2);
    const double mass = total_mass(k, p.nodes);
    const double expected = kTwoPi * kTwoPi * p.r1 * p.r2;
    r.add(fmt("total mass (R1=%g,R2=%g) = 4 pi^2 R1 R2", p.r1, p.r2),
          std::abs(mass - expected) / expected, p.single_tol,
          fmt("mass=%.10f expected=%.10f n=%d", mass, expected, p.nodes));

    UniformStream u(p.seed, 3);
    double worst = 0.0;
    for (std::size_t i = 0; i < p.random_pairs; ++i) {
        const ConvKernel kk(u.next(p.radius_lo, p.radius_hi), u.next(p.radius_lo, p.radius_hi));
        const double want = kTwoPi * kTwoPi * kk.r1() * kk.r2();
        worst = std::max(worst, std::abs(total_mass(kk, p.nodes) - want) / want);
    }
    r.add("total mass over random radii (max relative error)", worst, p.sweep_tol,
          fmt("pairs=%zu radii=[%g,%g] n=%d", p.random_pairs, p.radius_lo, p.radius_hi, p.nodes));
    return r;
}

GridCheckResult grid_check(const GridCheckParams& p) {
    const auto t0 = std::chrono::steady_clock::now();
    GridCheckResult out;
    out.grid = grid_conv_check(Circle(p.b1, p.r1), Circle(p.b2, p.r2),
                               GridSpec{p.extent, p.spacing}, p.epsilon);
    out.report.add("mollified grid convolution vs smoothed closed form (max relative error)",
                   out.grid.max_rel_error, p.profile_tol,
                   fmt("trimmed=[%.3f,%.3f] worst_rho=%.4f eps=%g h=%g extent=%g time=%.2fs",
                       out.grid.trimmed.lo, out.grid.trimmed.hi, out.grid.rho_at_max, p.epsilon,
                       p.spacing, p.extent, seconds_since(t0)));
    out.report.add("convolution grid mass = 4 pi^2 R1 R2 (relative error)", out.grid.mass_rel_error,
                   p.mass_tol, fmt("mass=%.6f expected=%.6f", out.grid.mass, out.grid.expected_mass));
    return out;
}

CheckReport operator_check(const OperatorCheckParams& p) {
    CheckReport r;
    const Circle c(p.center, p.radius);
    const double circumference = kTwoPi * p.radius;
    const std::array<Vec2, 4> probes{Vec2{0.0, 0.0}, Vec2{1.0, -2.0}, Vec2{0.3, 0.7},
                                     Vec2{-2.5, 1.5}};

    const Field2D one([](Vec2) { return 1.0; });
    const Field2D first([](Vec2 x) { return x.x; });
    const Field2D square([](Vec2 x) { return x.x * x.x + x.y * x.y; });
    double e_one = 0.0;
    double e_first = 0.0;
    double e_square = 0.0;
    for (Vec2 x : probes) {
        const Vec2 base = x - p.center;
        const double sq = base.x * base.x + base.y * base.y;
        e_one = std::max(e_one, std::abs(circle_average(one, c, x, p.nodes) - circumference));
        e_first = std::max(e_first,
                           std::abs(circle_average(first, c, x, p.nodes) - circumference * base.x));
        e_square = std::max(e_square, std::abs(circle_average(square, c, x, p.nodes) -
                                               circumference * (sq + p.radius * p.radius)));
    }
    r.add("f * delta_C for f = 1 equals 2 pi R", e_one, p.average_tol, fmt("n=%d", p.nodes));
    r.add("f * delta_C for f = x1 equals 2 pi R x1", e_first, p.average_tol, fmt("n=%d", p.nodes));
    r.add("f * delta_C for f = |x|^2 equals 2 pi R (|x|^2 + R^2)", e_square, p.average_tol,
          fmt("n=%d", p.nodes));

    const Field2D radial([&](Vec2 x) {
        const Vec2 d = x - p.center;
        return d.x * d.x + d.y * d.y;
    });
    const RingMeasure restricted = restrict_to_circle(radial, c);
    double e_restrict = 0.0;
    for (int i = 0; i < 1000; ++i)
        e_restrict = std::max(e_restrict,
                              std::abs(restricted.density(kTwoPi * i / 1000.0) - p.radius * p.radius));
    r.add("radial f restricted to C is constant f(R)", e_restrict, p.restrict_tol);

    UniformStream u(p.seed, 4);
    auto random_field = [&u] {
        const double a = u.next(1.5, 2.5);
        const double b = u.next(-1.0, 1.0);
        const double kx = u.next(-2.0, 2.0);
        const double ky = u.next(-2.0, 2.0);
        const double phase = u.next(0.0, kTwoPi);
        const double g = u.next(0.0, 1.0);
        const Vec2 q{u.next(-2.0, 2.0), u.next(-2.0, 2.0)};
        return Field2D([=](Vec2 x) {
            const Vec2 d = x - q;
            return a + b * std::sin(kx * x.x + ky * x.y + phase) +
                   g * std::exp(-(d.x * d.x + d.y * d.y));
        });
    };
    double e_pair = 0.0;
    for (std::size_t i = 0; i < p.random_pairs; ++i) {
        const Field2D f = random_field();
        const Field2D test = random_field();
        const double lhs = pair_with_test(restrict_to_circle(f, c), test, p.pairing_nodes);
        const double rhs = pair_with_test(circle_impulse(c),
                                          Field2D([&](Vec2 x) { return f(x) * test(x); }),
                                          p.pairing_nodes);
        e_pair = std::max(e_pair, std::abs(lhs - rhs) / std::abs(rhs));
    }
    r.add("<f delta_C, phi> = <delta_C, f phi> (max relative error)", e_pair, p.pairing_tol,
          fmt("pairs=%zu n=%d", p.random_pairs, p.pairing_nodes));
    return r;
}

}  // namespace circconv
