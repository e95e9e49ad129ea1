#include "circconv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>

#include "circconv/checks.hpp"

namespace circconv::cli {

namespace {

constexpr std::array kCommands{Command::Profile,      Command::Surface,     Command::McCheck,
                               Command::GridCheck,    Command::HankelCheck, Command::NeumannCheck,
                               Command::MassCheck,    Command::RootsCheck,  Command::CircleAverage};

constexpr std::size_t kMaxProfileRows = 10'000'000;
constexpr std::size_t kMaxSurfaceSide = 8192;

std::string number(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string vec_text(Vec2 v) { return number(v.x) + "," + number(v.y); }

Vec2 parse_vec(const std::string& text, const char* flag) {
    const auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ConfigError(std::string(flag) + ": expected x,y but got '" + text + "'");
    try {
        std::size_t used_x = 0;
        std::size_t used_y = 0;
        const std::string xs = text.substr(0, comma);
        const std::string ys = text.substr(comma + 1);
        const Vec2 v{std::stod(xs, &used_x), std::stod(ys, &used_y)};
        if (used_x != xs.size() || used_y != ys.size() || !std::isfinite(v.x) ||
            !std::isfinite(v.y))
            throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(std::string(flag) + ": expected two finite numbers x,y but got '" +
                          text + "'");
    }
}

void require(bool ok, const char* flag, const std::string& what) {
    if (!ok) throw ConfigError(std::string(flag) + " " + what);
}

double surface_extent(const RunConfig& c) {
    return c.extent > 0.0 ? c.extent : 2.0 * (c.r1 + c.r2) + 2.0;
}

std::size_t surface_side(const RunConfig& c) {
    return static_cast<std::size_t>(std::floor(surface_extent(c) / c.spacing + 1e-9)) + 1;
}

// Writes through a sibling temporary and renames, so the target either
// holds the complete artifact or is untouched.
void write_atomically(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".partial";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw ConfigError("--out: cannot open '" + path + "' for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        f.close();
        if (!f) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw ConfigError("--out: failed writing '" + path + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw ConfigError("--out: cannot move output into place at '" + path + "'");
    }
}

void emit(const RunConfig& config, const std::string& content, std::ostream& out) {
    if (config.output.empty())
        out << content;
    else
        write_atomically(config.output, content);
}

std::vector<double> profile_radii(const RunConfig& c) {
    const ConvKernel k(c.r1, c.r2);
    const auto [lo, hi] = support_interval(k);
    const double end = hi + 1.0;
    const auto steps = static_cast<std::size_t>(std::floor(end / c.spacing + 1e-9));
    std::vector<double> rho;
    rho.reserve(steps + 4);
    for (std::size_t i = 0; i <= steps; ++i) rho.push_back(static_cast<double>(i) * c.spacing);
    rho.push_back(lo);
    rho.push_back(hi);
    rho.push_back(std::hypot(c.r1, c.r2));
    std::sort(rho.begin(), rho.end());
    rho.erase(std::unique(rho.begin(), rho.end()), rho.end());
    return rho;
}

std::string histogram_csv(const RadialHistogram& h, const ConvKernel& k) {
    std::string s = "bin_lo,bin_hi,count,density,closed_form\n";
    for (std::size_t i = 0; i < h.bins(); ++i) {
        s += number(h.edges[i]) + "," + number(h.edges[i + 1]) + "," +
             std::to_string(h.counts[i]) + "," + number(h.density(i)) + "," +
             number(eval_conv(k, h.bin_center(i))) + "\n";
    }
    return s;
}

std::string grid_profile_csv(const GridConvReport& g) {
    std::string s = "rho,grid,oracle,rel_error\n";
    for (const auto& p : g.profile)
        s += number(p.rho) + "," + number(p.grid) + "," + number(p.oracle) + "," +
             number(p.rel_error) + "\n";
    return s;
}

}  // namespace

std::string_view command_name(Command c) {
    switch (c) {
        case Command::Profile: return "profile";
        case Command::Surface: return "surface";
        case Command::McCheck: return "mc-check";
        case Command::GridCheck: return "grid-check";
        case Command::HankelCheck: return "hankel-check";
        case Command::NeumannCheck: return "neumann-check";
        case Command::MassCheck: return "mass-check";
        case Command::RootsCheck: return "roots-check";
        case Command::CircleAverage: return "circle-average";
    }
    return "?";
}

RunConfig default_config(Command c) {
    RunConfig r;
    r.command = c;
    switch (c) {
        case Command::Profile:
            r.spacing = 0.01;
            break;
        case Command::Surface:
            r.spacing = 0.05;
            break;
        case Command::McCheck:
            r.samples = McCheckParams{}.samples;
            r.bins = McCheckParams{}.bins;
            r.seed = McCheckParams{}.seed;
            break;
        case Command::GridCheck:
            r.epsilon = GridCheckParams{}.epsilon;
            r.spacing = GridCheckParams{}.spacing;
            r.extent = GridCheckParams{}.extent;
            break;
        case Command::HankelCheck:
            r.nodes = HankelCheckParams{}.nodes;
            break;
        case Command::NeumannCheck:
            r.nodes = NeumannCheckParams{}.nodes;
            break;
        case Command::MassCheck:
            r.nodes = MassCheckParams{}.nodes;
            r.seed = MassCheckParams{}.seed;
            break;
        case Command::RootsCheck:
            r.samples = RootsCheckParams{}.triples;
            r.seed = RootsCheckParams{}.seed;
            break;
        case Command::CircleAverage:
            r.nodes = OperatorCheckParams{}.nodes;
            r.seed = OperatorCheckParams{}.seed;
            break;
    }
    return r;
}

RunConfig parse_args(const std::vector<std::string>& args, std::ostream& out, bool& proceed) {
    CLI::App app{"Convolution of circle impulses: closed form, profiles and validation checks",
                 "circconv"};
    app.require_subcommand(1);

    struct Slot {
        RunConfig config;
        std::string b1;
        std::string b2;
        std::string format = "csv";
        CLI::App* sub = nullptr;
    };
    std::map<Command, std::unique_ptr<Slot>> slots;

    for (Command c : kCommands) {
        auto slot = std::make_unique<Slot>();
        slot->config = default_config(c);
        RunConfig& cfg = slot->config;
        const std::string name(command_name(c));
        CLI::App* sub = nullptr;
        switch (c) {
            case Command::Profile: sub = app.add_subcommand(name, "Write the radial profile as CSV"); break;
            case Command::Surface: sub = app.add_subcommand(name, "Write the 2D surface as CSV or PGM"); break;
            case Command::McCheck: sub = app.add_subcommand(name, "Monte Carlo density, leakage, radiality and shift checks"); break;
            case Command::GridCheck: sub = app.add_subcommand(name, "FFT convolution of mollified rings vs smoothed closed form"); break;
            case Command::HankelCheck: sub = app.add_subcommand(name, "Transform identity, self-inverse round trip and J0 accuracy"); break;
            case Command::NeumannCheck: sub = app.add_subcommand(name, "Angular-average product formula for J0"); break;
            case Command::MassCheck: sub = app.add_subcommand(name, "Total mass 4 pi^2 R1 R2"); break;
            case Command::RootsCheck: sub = app.add_subcommand(name, "Closed form vs root-finding route, interior minimum"); break;
            case Command::CircleAverage: sub = app.add_subcommand(name, "Multiplication and convolution with a circle impulse"); break;
        }
        slot->sub = sub;

        sub->add_option("--r1", cfg.r1, "Radius of the first circle")->capture_default_str();
        if (c != Command::CircleAverage) {
            sub->add_option("--r2", cfg.r2, "Radius of the second circle")->capture_default_str();
            sub->add_option("--b2", slot->b2, "Center of the second circle as x,y");
        }
        sub->add_option("--b1", slot->b1, "Center of the first circle as x,y");

        switch (c) {
            case Command::Profile:
                sub->add_option("--spacing", cfg.spacing, "Step in rho")->capture_default_str();
                sub->add_option("--out", cfg.output, "Output file (default stdout)");
                break;
            case Command::Surface:
                sub->add_option("--spacing", cfg.spacing, "Lattice spacing")->capture_default_str();
                sub->add_option("--extent", cfg.extent, "Side of the sampled square (default 2(R1+R2)+2)");
                sub->add_option("--format", slot->format, "csv or pgm")->capture_default_str();
                sub->add_option("--out", cfg.output, "Output file (default stdout)");
                break;
            case Command::McCheck:
                sub->add_option("--samples", cfg.samples, "Monte Carlo samples")->capture_default_str();
                sub->add_option("--bins", cfg.bins, "Histogram bins over the support")->capture_default_str();
                sub->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
                sub->add_option("--out", cfg.output, "Histogram CSV output file");
                break;
            case Command::GridCheck:
                sub->add_option("--epsilon", cfg.epsilon, "Mollifier width")->capture_default_str();
                sub->add_option("--spacing", cfg.spacing, "Lattice spacing")->capture_default_str();
                sub->add_option("--extent", cfg.extent, "Side of the square lattice")->capture_default_str();
                sub->add_option("--out", cfg.output, "Radial profile CSV output file");
                break;
            case Command::HankelCheck:
            case Command::NeumannCheck:
                sub->add_option("--nodes", cfg.nodes, "Quadrature nodes")->capture_default_str();
                break;
            case Command::MassCheck:
            case Command::CircleAverage:
                sub->add_option("--nodes", cfg.nodes, "Quadrature nodes")->capture_default_str();
                sub->add_option("--seed", cfg.seed, "Seed for the random cases")->capture_default_str();
                break;
            case Command::RootsCheck:
                sub->add_option("--samples", cfg.samples, "Random interior triples")->capture_default_str();
                sub->add_option("--seed", cfg.seed, "Generator seed")->capture_default_str();
                break;
        }
        slots.emplace(c, std::move(slot));
    }

    std::vector<std::string> argv_storage{"circconv"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    proceed = true;
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        proceed = false;
        return {};
    } catch (const CLI::ParseError& e) {
        std::string msg = e.what();
        if (msg.empty()) msg = e.get_name();
        throw ConfigError(msg);
    }

    for (auto& [command, slot] : slots) {
        if (!slot->sub->parsed()) continue;
        RunConfig cfg = slot->config;
        if (!slot->b1.empty()) cfg.b1 = parse_vec(slot->b1, "--b1");
        if (!slot->b2.empty()) cfg.b2 = parse_vec(slot->b2, "--b2");
        if (slot->format == "csv")
            cfg.format = Format::Csv;
        else if (slot->format == "pgm")
            cfg.format = Format::Pgm;
        else
            throw ConfigError("--format must be csv or pgm, got '" + slot->format + "'");
        return cfg;
    }
    throw ConfigError("no command given");
}

void validate(const RunConfig& c) {
    const auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    require(positive(c.r1), "--r1", "must be a positive finite radius, got " + number(c.r1));
    require(positive(c.r2), "--r2", "must be a positive finite radius, got " + number(c.r2));
    switch (c.command) {
        case Command::Profile: {
            require(positive(c.spacing), "--spacing", "must be > 0");
            const double rows = (c.r1 + c.r2 + 1.0) / c.spacing;
            require(rows < static_cast<double>(kMaxProfileRows), "--spacing",
                    "is too small (more than 1e7 rows)");
            break;
        }
        case Command::Surface:
            require(positive(c.spacing), "--spacing", "must be > 0");
            require(c.extent == 0.0 || positive(c.extent), "--extent", "must be > 0");
            require(surface_side(c) <= kMaxSurfaceSide, "--spacing",
                    "gives more than " + std::to_string(kMaxSurfaceSide) + " samples per side");
            break;
        case Command::McCheck:
            require(c.samples >= 1, "--samples", "must be >= 1");
            require(c.bins >= 1, "--bins", "must be >= 1");
            break;
        case Command::GridCheck: {
            require(positive(c.spacing), "--spacing", "must be > 0");
            require(positive(c.epsilon), "--epsilon", "must be > 0");
            require(positive(c.extent), "--extent", "must be > 0");
            require(c.epsilon >= 2.0 * c.spacing * (1.0 - 1e-12), "--epsilon",
                    "must be at least 2 * spacing so the mollifier is resolved");
            const GridSpec g{c.extent, c.spacing};
            require(g.points() <= kMaxSurfaceSide, "--spacing", "gives too many lattice points");
            const double reach = (static_cast<double>(g.points() / 2) - 1.0) * c.spacing;
            require(c.r1 + c.r2 + 10.0 * c.epsilon <= reach, "--extent",
                    "is too small: the convolution support R1+R2+10*epsilon must fit in half the extent");
            break;
        }
        case Command::HankelCheck:
        case Command::NeumannCheck:
        case Command::MassCheck:
        case Command::CircleAverage:
            require(c.nodes >= 1, "--nodes", "must be >= 1");
            break;
        case Command::RootsCheck:
            require(c.samples >= 1, "--samples", "must be >= 1");
            break;
    }
}

std::string render_profile(const RunConfig& c) {
    const ConvKernel k(c.r1, c.r2);
    std::string s = "rho,value\n";
    for (double rho : profile_radii(c)) s += number(rho) + "," + number(eval_conv(k, rho)) + "\n";
    return s;
}

namespace {

template <class Row>
void for_each_surface_sample(const RunConfig& c, bool top_down, Row&& row) {
    const ConvKernel k(Circle(c.b1, c.r1), Circle(c.b2, c.r2));
    const Vec2 mid = k.center_sum();
    const double half = 0.5 * surface_extent(c);
    const std::size_t n = surface_side(c);
    for (std::size_t jj = 0; jj < n; ++jj) {
        const std::size_t j = top_down ? n - 1 - jj : jj;
        const double y = mid.y - half + static_cast<double>(j) * c.spacing;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = mid.x - half + static_cast<double>(i) * c.spacing;
            row(x, y, eval_conv_2d(k, {x, y}));
        }
    }
}

}  // namespace

std::string render_surface_csv(const RunConfig& c) {
    std::string s = "x,y,value\n";
    for_each_surface_sample(c, false, [&](double x, double y, double v) {
        s += number(x) + "," + number(y) + "," + number(v) + "\n";
    });
    return s;
}

std::string render_surface_pgm(const RunConfig& c) {
    const std::size_t n = surface_side(c);
    std::vector<double> values;
    values.reserve(n * n);
    for_each_surface_sample(c, true, [&](double, double, double v) { values.push_back(v); });

    std::vector<double> finite;
    for (double v : values)
        if (std::isfinite(v)) finite.push_back(v);
    double clip = 0.0;
    if (!finite.empty()) {
        const auto idx = static_cast<std::size_t>(std::floor(0.99 * static_cast<double>(finite.size() - 1)));
        std::nth_element(finite.begin(), finite.begin() + static_cast<std::ptrdiff_t>(idx), finite.end());
        clip = finite[idx];
    }

    std::ostringstream os;
    os << "P2\n# circconv surface r1=" << number(c.r1) << " r2=" << number(c.r2)
       << " b1=" << vec_text(c.b1) << " b2=" << vec_text(c.b2)
       << " extent=" << number(surface_extent(c)) << " spacing=" << number(c.spacing)
       << " clip99=" << number(clip) << "\n"
       << n << " " << n << "\n255\n";
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double v = values[j * n + i];
            long level = 0;
            if (!std::isfinite(v))
                level = 255;
            else if (clip > 0.0)
                level = std::lround(255.0 * std::min(v, clip) / clip);
            os << level << (i + 1 == n ? '\n' : ' ');
        }
    }
    return os.str();
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    (void)err;
    CheckReport report;
    switch (c.command) {
        case Command::Profile:
            emit(c, render_profile(c), out);
            return 0;
        case Command::Surface:
            emit(c, c.format == Format::Pgm ? render_surface_pgm(c) : render_surface_csv(c), out);
            return 0;
        case Command::McCheck: {
            McCheckParams p;
            p.r1 = c.r1;
            p.r2 = c.r2;
            p.b1 = c.b1;
            p.b2 = c.b2;
            p.samples = c.samples;
            p.bins = c.bins;
            p.seed = c.seed;
            const McCheckResult result = mc_check(p);
            report = result.report;
            if (!c.output.empty())
                write_atomically(c.output,
                                 histogram_csv(result.histogram, ConvKernel(c.r1, c.r2)));
            break;
        }
        case Command::GridCheck: {
            GridCheckParams p;
            p.r1 = c.r1;
            p.r2 = c.r2;
            p.b1 = c.b1;
            p.b2 = c.b2;
            p.epsilon = c.epsilon;
            p.spacing = c.spacing;
            p.extent = c.extent;
            const GridCheckResult result = grid_check(p);
            report = result.report;
            if (!c.output.empty()) write_atomically(c.output, grid_profile_csv(result.grid));
            break;
        }
        case Command::HankelCheck: {
            HankelCheckParams p;
            p.nodes = c.nodes;
            p.radii = {{c.r1, c.r2}};
            for (const auto& pair : HankelCheckParams{}.radii)
                if (pair != std::pair{c.r1, c.r2}) p.radii.push_back(pair);
            report = hankel_check(p);
            break;
        }
        case Command::NeumannCheck: {
            NeumannCheckParams p;
            p.nodes = c.nodes;
            for (double r : {c.r1, c.r2})
                if (std::find(p.radii.begin(), p.radii.end(), r) == p.radii.end())
                    p.radii.push_back(r);
            report = neumann_check(p);
            break;
        }
        case Command::MassCheck: {
            MassCheckParams p;
            p.r1 = c.r1;
            p.r2 = c.r2;
            p.nodes = c.nodes;
            p.seed = c.seed;
            report = mass_check(p);
            break;
        }
        case Command::RootsCheck: {
            RootsCheckParams p;
            p.triples = static_cast<std::size_t>(c.samples);
            p.seed = c.seed;
            report = roots_check(p);
            break;
        }
        case Command::CircleAverage: {
            OperatorCheckParams p;
            p.radius = c.r1;
            p.center = c.b1;
            p.nodes = c.nodes;
            p.seed = c.seed;
            report = operator_check(p);
            break;
        }
    }
    out << command_name(c.command) << " r1=" << number(c.r1) << " r2=" << number(c.r2) << "\n";
    print_report(out, report);
    return report.all_pass() ? 0 : 1;
}

int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    try {
        bool proceed = true;
        const RunConfig config = parse_args(args, out, proceed);
        if (!proceed) return 0;
        validate(config);
        return run(config, out, err);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace circconv::cli
