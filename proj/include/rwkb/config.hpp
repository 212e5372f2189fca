#pragma once

#include "rwkb/context.hpp"
#include "rwkb/potential.hpp"
#include "rwkb/quantize.hpp"

#include <istream>
#include <optional>
#include <string>
#include <string_view>

namespace rwkb {

enum class Command { spectrum, action_table, wavefunction, verify };
enum class OutputFormat { csv, json_lines };

std::string_view to_string(Command command);
std::string_view to_string(OutputFormat format);
/// Throw ConfigError for unknown names.
Command command_from_string(std::string_view name);
OutputFormat output_format_from_string(std::string_view name);

struct PotentialSpec {
    PotentialKind kind = PotentialKind::coulomb;
    double omega = 1e-3;
    double slope = 1e-3;
    /// Path of a two-column `r value` table for custom-table potentials.
    std::string table;
};

/// Everything that determines a run. Unset optional keys are omitted by
/// format_config; every other field is always written.
struct RunConfig {
    PhysicalContext context = hydrogen_context();
    Tolerances tolerances{};
    PotentialSpec potential{};

    Command command = Command::spectrum;
    LevelRange levels{0, 1, 0, 1};
    int maslov_m = 2;
    bool antiparticle = false;
    bool with_oracle = false;
    /// 0 picks the hardware concurrency; results do not depend on it.
    unsigned workers = 0;
    OutputFormat format = OutputFormat::csv;
    /// Empty writes to standard output.
    std::string output;

    // wavefunction and action-table
    int n_r = 0;
    int l = 0;
    std::size_t grid_size = 2001;
    std::optional<double> energy_min;
    std::optional<double> energy_max;
    int energy_points = 50;

    // verify
    double verify_tolerance = 1e-6;
};

/// Parses the sectioned `key = value` format written by format_config.
///
/// Lines starting with `#` or `;` are comments. Relative table paths are resolved
/// against `base_dir`. Errors carry the line and column of the offending token.
RunConfig parse_config(std::istream& in, const std::string& base_dir = ".");
RunConfig load_config(const std::string& path);

/// Range checks that do not depend on the input text. Throws ConfigError.
void validate(const RunConfig& config);

/// Writes every field, with numbers in shortest round-trip form.
std::string format_config(const RunConfig& config);

/// Builds the potential described by the config (loads tables).
RadialPotential make_potential(const RunConfig& config);

/// Shortest decimal string that reads back to the same double.
std::string format_number(double value);

} // namespace rwkb
