#include "rwkb/commands.hpp"

#include "rwkb/action.hpp"
#include "rwkb/error.hpp"
#include "rwkb/kinematics.hpp"
#include "rwkb/oracle.hpp"
#include "rwkb/wavefunction.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <tuple>
#include <variant>
#include <vector>

namespace rwkb {

namespace {

using Cell = std::variant<std::monostate, int, double, std::string>;

// Writes a fixed-column table as CSV or as one JSON object per row.
class TableWriter {
public:
    TableWriter(std::ostream& out, OutputFormat format, std::vector<std::string> columns)
        : out_(out), format_(format), columns_(std::move(columns))
    {
    }

    void note(const std::string& key, const Cell& value)
    {
        if (format_ == OutputFormat::csv) {
            out_ << "# " << key << " = " << text(value) << '\n';
        } else {
            nlohmann::ordered_json line;
            line[key] = json(value);
            out_ << line.dump() << '\n';
        }
    }

    void header()
    {
        if (format_ != OutputFormat::csv) {
            return;
        }
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            out_ << (i ? "," : "") << columns_[i];
        }
        out_ << '\n';
    }

    void row(const std::vector<Cell>& cells)
    {
        if (format_ == OutputFormat::csv) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out_ << (i ? "," : "") << text(cells[i]);
            }
            out_ << '\n';
            return;
        }
        nlohmann::ordered_json line;
        for (std::size_t i = 0; i < cells.size(); ++i) {
            line[columns_[i]] = json(cells[i]);
        }
        out_ << line.dump() << '\n';
    }

    void error(int n_r, int l, const std::string& message)
    {
        if (format_ == OutputFormat::csv) {
            out_ << "# error: n_r=" << n_r << ", l=" << l << ": " << message << '\n';
        } else {
            nlohmann::ordered_json line;
            line["n_r"] = n_r;
            line["l"] = l;
            line["error"] = message;
            out_ << line.dump() << '\n';
        }
    }

private:
    static std::string text(const Cell& cell)
    {
        if (const auto* v = std::get_if<int>(&cell)) {
            return std::to_string(*v);
        }
        if (const auto* v = std::get_if<double>(&cell)) {
            return format_number(*v);
        }
        if (const auto* v = std::get_if<std::string>(&cell)) {
            return *v;
        }
        return {};
    }

    static nlohmann::ordered_json json(const Cell& cell)
    {
        if (const auto* v = std::get_if<int>(&cell)) {
            return *v;
        }
        if (const auto* v = std::get_if<double>(&cell)) {
            return *v;
        }
        if (const auto* v = std::get_if<std::string>(&cell)) {
            return *v;
        }
        return nullptr;
    }

    std::ostream& out_;
    OutputFormat format_;
    std::vector<std::string> columns_;
};

ScanOptions scan_options(const RunConfig& config)
{
    ScanOptions options;
    options.tol = config.tolerances;
    options.maslov_m = config.maslov_m;
    options.include_antiparticle = config.antiparticle;
    options.workers = config.workers;
    return options;
}

Cell optional_cell(const std::optional<double>& v)
{
    return v ? Cell{*v} : Cell{};
}

struct OracleResult {
    std::optional<OracleSolution> solution;
    std::string message;
};

// One oracle solve per (n_r, l) of the range, in (n_r, l) order.
std::vector<OracleResult> solve_oracles(const RadialPotential& potential, const RunConfig& config)
{
    const LevelRange& r = config.levels;
    const int n_count = r.n_r_max - r.n_r_min + 1;
    const int l_count = r.l_max - r.l_min + 1;
    std::vector<OracleResult> results(static_cast<std::size_t>(n_count * l_count));
    parallel_for(results.size(), config.workers, [&](std::size_t i) {
        const int n_r = r.n_r_min + static_cast<int>(i) / l_count;
        const int l = r.l_min + static_cast<int>(i) % l_count;
        try {
            results[i].solution = solve_exact(potential, config.context, n_r, l);
        } catch (const std::exception& e) {
            results[i].message = std::string("oracle: ") + e.what();
        }
    });
    return results;
}

std::size_t oracle_index(const LevelRange& r, int n_r, int l)
{
    return static_cast<std::size_t>((n_r - r.n_r_min) * (r.l_max - r.l_min + 1) + (l - r.l_min));
}

} // namespace

int run_spectrum(const RunConfig& config, std::ostream& out)
{
    TableWriter table(out, config.format,
                      {"n_r", "l", "branch", "E_semiclassical", "E_closed_form", "E_oracle",
                       "residual"});
    table.header();
    if (config.levels.empty()) {
        return exit_success;
    }
    const RadialPotential potential = make_potential(config);
    const PhysicalContext& ctx = config.context;
    const SpectrumScan scan = scan_spectrum(potential, ctx, config.levels, scan_options(config));

    std::vector<OracleResult> oracles;
    if (config.with_oracle) {
        oracles = solve_oracles(potential, config);
    }
    std::vector<LevelFailure> failures = scan.failures;
    for (const SpectrumEntry& entry : scan.entries) {
        std::optional<double> closed;
        if (potential.kind() == PotentialKind::coulomb) {
            try {
                closed = coulomb_energy(ctx, entry.n_r, entry.l, entry.branch, entry.maslov_m);
            } catch (const Error&) {
            }
        }
        std::optional<double> exact;
        if (config.with_oracle) {
            const OracleResult& o = oracles[oracle_index(config.levels, entry.n_r, entry.l)];
            if (o.solution) {
                const double sign = entry.branch == Branch::particle ? 1.0 : -1.0;
                exact = sign * o.solution->energy;
            }
        }
        table.row({entry.n_r, entry.l,
                   std::string(entry.branch == Branch::particle ? "particle" : "antiparticle"),
                   entry.energy, optional_cell(closed), optional_cell(exact), entry.residual});
    }
    for (const OracleResult& o : oracles) {
        if (!o.solution) {
            const std::size_t i = static_cast<std::size_t>(&o - oracles.data());
            const int l_count = config.levels.l_max - config.levels.l_min + 1;
            failures.push_back({config.levels.n_r_min + static_cast<int>(i) / l_count,
                                config.levels.l_min + static_cast<int>(i) % l_count, o.message});
        }
    }
    std::stable_sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) {
        return std::tie(a.n_r, a.l) < std::tie(b.n_r, b.l);
    });
    for (const LevelFailure& f : failures) {
        table.error(f.n_r, f.l, f.message);
    }
    return failures.empty() ? exit_success : exit_numerical_failure;
}

int run_action_table(const RunConfig& config, std::ostream& out)
{
    if (!config.energy_min || !config.energy_max) {
        throw ConfigError("action-table needs energy_min and energy_max");
    }
    TableWriter table(out, config.format, {"E", "I_r_over_hbar", "status"});
    table.header();
    const RadialPotential potential = make_potential(config);
    const PhysicalContext& ctx = config.context;
    const double angular = angular_action(ctx, config.l);
    const auto count = static_cast<std::size_t>(config.energy_points);

    struct Row {
        double energy = 0.0;
        std::optional<double> action;
        std::string status = "ok";
        bool failed = false;
    };
    std::vector<Row> rows(count);
    parallel_for(count, config.workers, [&](std::size_t i) {
        Row& row = rows[i];
        const double t = count > 1 ? static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
        row.energy = i + 1 == count && count > 1
                         ? *config.energy_max
                         : *config.energy_min + t * (*config.energy_max - *config.energy_min);
        try {
            const ClassicalRegion region = find_classical_region(potential, ctx, row.energy, angular,
                                                                 config.tolerances);
            row.action = radial_action(potential, ctx, region, config.tolerances).in_hbar;
        } catch (const NoBoundRegionError& e) {
            row.status = std::string("unbound: ") + e.what();
        } catch (const DomainError& e) {
            row.status = std::string("unbound: ") + e.what();
        } catch (const std::exception& e) {
            row.status = std::string("error: ") + e.what();
            row.failed = true;
        }
    });

    bool failed = false;
    for (const Row& row : rows) {
        table.row({row.energy, optional_cell(row.action), row.status});
        failed = failed || row.failed;
    }
    return failed ? exit_numerical_failure : exit_success;
}

int run_wavefunction(const RunConfig& config, std::ostream& out)
{
    TableWriter table(out, config.format, {"r", "value", "amplitude", "phase"});
    const RadialPotential potential = make_potential(config);
    const PhysicalContext& ctx = config.context;
    const SpectrumEntry entry = solve_level(potential, ctx, {config.n_r, config.l, config.maslov_m},
                                            config.tolerances);
    const SemiclassicalSolution semi =
        build_wavefunction(potential, ctx, entry, config.grid_size, config.tolerances);
    table.note("n_r", entry.n_r);
    table.note("l", entry.l);
    table.note("E", entry.energy);
    table.header();
    for (std::size_t i = 0; i < semi.grid.size(); ++i) {
        table.row({semi.grid[i], semi.value[i], semi.amplitude[i], semi.phase[i]});
    }
    return exit_success;
}

int run_verify(const RunConfig& config, std::ostream& out)
{
    TableWriter table(out, config.format,
                      {"n_r", "l", "E_semiclassical", "E_oracle", "E_closed_form", "difference"});
    table.header();
    if (config.levels.empty()) {
        return exit_success;
    }
    const RadialPotential potential = make_potential(config);
    const PhysicalContext& ctx = config.context;
    ScanOptions options = scan_options(config);
    options.include_antiparticle = false;
    const SpectrumScan scan = scan_spectrum(potential, ctx, config.levels, options);
    const std::vector<OracleResult> oracles = solve_oracles(potential, config);

    std::vector<LevelFailure> failures = scan.failures;
    double worst = 0.0;
    std::vector<SpectrumEntry> entries = scan.entries;
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) {
        return std::tie(a.n_r, a.l) < std::tie(b.n_r, b.l);
    });
    for (const SpectrumEntry& entry : entries) {
        const OracleResult& o = oracles[oracle_index(config.levels, entry.n_r, entry.l)];
        if (!o.solution) {
            failures.push_back({entry.n_r, entry.l, o.message});
            continue;
        }
        std::optional<double> closed;
        if (potential.kind() == PotentialKind::coulomb) {
            try {
                closed = coulomb_energy(ctx, entry.n_r, entry.l, Branch::particle, entry.maslov_m);
            } catch (const Error&) {
            }
        }
        const double difference =
            std::abs(entry.kinetic - o.solution->kinetic) / ctx.rest_energy();
        worst = std::max(worst, difference);
        table.row({entry.n_r, entry.l, entry.energy, o.solution->energy, optional_cell(closed),
                   difference});
    }
    std::stable_sort(failures.begin(), failures.end(), [](const auto& a, const auto& b) {
        return std::tie(a.n_r, a.l) < std::tie(b.n_r, b.l);
    });
    for (const LevelFailure& f : failures) {
        table.error(f.n_r, f.l, f.message);
    }
    const bool pass = failures.empty() && worst <= config.verify_tolerance;
    table.note("max_difference", worst);
    table.note("tolerance", config.verify_tolerance);
    table.note("verdict", std::string(pass ? "PASS" : "FAIL"));
    return pass ? exit_success : exit_numerical_failure;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err)
{
    try {
        switch (config.command) {
        case Command::spectrum:
            return run_spectrum(config, out);
        case Command::action_table:
            return run_action_table(config, out);
        case Command::wavefunction:
            return run_wavefunction(config, out);
        case Command::verify:
            return run_verify(config, out);
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_numerical_failure;
    }
    return exit_config_error;
}

std::string column_help()
{
    return "Output columns (csv header order; json-lines uses the same keys):\n"
           "  spectrum:      n_r,l,branch,E_semiclassical,E_closed_form,E_oracle,residual\n"
           "                 E_closed_form only for coulomb, E_oracle only with --with-oracle;\n"
           "                 failed levels follow as '# error: n_r=.., l=..: message'\n"
           "  action-table:  E,I_r_over_hbar,status\n"
           "  wavefunction:  r,value,amplitude,phase after '# n_r', '# l', '# E' lines\n"
           "  verify:        n_r,l,E_semiclassical,E_oracle,E_closed_form,difference\n"
           "                 followed by max_difference, tolerance and verdict lines\n"
           "Energies use the energy unit of the context; residuals and actions are in units of hbar.\n"
           "Exit codes: 0 success, 2 config error, 3 numerical failure.";
}

} // namespace rwkb
