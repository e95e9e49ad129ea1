#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "circconv/core.hpp"

namespace circconv::cli {

enum class Command {
    Profile,
    Surface,
    McCheck,
    GridCheck,
    HankelCheck,
    NeumannCheck,
    MassCheck,
    RootsCheck,
    CircleAverage,
};

enum class Format { Csv, Pgm };

std::string_view command_name(Command c);

/// Fully resolved command line. Defaults depend on the command; see
/// default_config().
struct RunConfig {
    Command command = Command::Profile;
    double r1 = 2.0;
    double r2 = 3.0;
    Vec2 b1{};
    Vec2 b2{};
    std::uint64_t samples = 0;
    std::size_t bins = 0;
    int nodes = 0;
    double epsilon = 0.0;
    double spacing = 0.0;
    /// Side length of the square sampled by surface and grid-check; 0 picks
    /// 2 (R1 + R2) + 2 for surface.
    double extent = 0.0;
    std::uint64_t seed = 0;
    std::string output;
    Format format = Format::Csv;
};

RunConfig default_config(Command c);

/// Invalid flag values. The message always names the flag.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses argv-style arguments (without the program name). Throws
/// ConfigError. Returns false in `proceed` when help was printed to `out`.
RunConfig parse_args(const std::vector<std::string>& args, std::ostream& out, bool& proceed);

/// Throws ConfigError if any knob is out of range for the command.
void validate(const RunConfig& config);

/// `rho,value` rows over [0, R1 + R2 + 1] plus the support endpoints and
/// the interior minimum; `inf` on the singular circles.
std::string render_profile(const RunConfig& config);

/// `x,y,value` rows, x fastest, y ascending.
std::string render_surface_csv(const RunConfig& config);

/// ASCII PGM (P2), top row at the largest y. Values are clipped at the
/// 99th percentile of finite samples and mapped linearly to 0..255.
std::string render_surface_pgm(const RunConfig& config);

/// Executes a validated config. Returns 0 when every check passes (or the
/// artifact was written) and 1 on any failed check. Artifacts are written
/// whole or not at all.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse_args + validate + run, mapping configuration and I/O errors to
/// exit code 2.
int main_with_args(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace circconv::cli
