#include "rwkb/config.hpp"

#include "rwkb/error.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace rwkb {

namespace {

constexpr std::array command_names{"spectrum", "action-table", "wavefunction", "verify"};
constexpr std::array format_names{"csv", "json-lines"};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text)
{
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value)) {
        throw ConfigError("expected a finite number, got '" + std::string(text) + "'");
    }
    return value;
}

long parse_integer(std::string_view text)
{
    long value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError("expected an integer, got '" + std::string(text) + "'");
    }
    return value;
}

int parse_int(std::string_view text)
{
    const long value = parse_integer(text);
    if (value < -1'000'000 || value > 1'000'000) {
        throw ConfigError("integer out of range: " + std::string(text));
    }
    return static_cast<int>(value);
}

bool parse_bool(std::string_view text)
{
    if (text == "true") {
        return true;
    }
    if (text == "false") {
        return false;
    }
    throw ConfigError("expected true or false, got '" + std::string(text) + "'");
}

using Setter = std::function<void(RunConfig&, std::string_view)>;

const std::map<std::string, Setter, std::less<>>& setters()
{
    static const std::map<std::string, Setter, std::less<>> table{
        {"context.mass", [](RunConfig& c, std::string_view v) { c.context.mass = parse_double(v); }},
        {"context.c", [](RunConfig& c, std::string_view v) { c.context.c = parse_double(v); }},
        {"context.hbar", [](RunConfig& c, std::string_view v) { c.context.hbar = parse_double(v); }},
        {"context.coupling",
         [](RunConfig& c, std::string_view v) { c.context.coupling = parse_double(v); }},
        {"tolerances.quadrature_rel",
         [](RunConfig& c, std::string_view v) { c.tolerances.quadrature_rel = parse_double(v); }},
        {"tolerances.root_abs",
         [](RunConfig& c, std::string_view v) { c.tolerances.root_abs = parse_double(v); }},
        {"tolerances.bracket_expansion",
         [](RunConfig& c, std::string_view v) { c.tolerances.bracket_expansion = parse_double(v); }},
        {"potential.kind",
         [](RunConfig& c, std::string_view v) { c.potential.kind = potential_kind_from_string(v); }},
        {"potential.omega",
         [](RunConfig& c, std::string_view v) { c.potential.omega = parse_double(v); }},
        {"potential.slope",
         [](RunConfig& c, std::string_view v) { c.potential.slope = parse_double(v); }},
        {"potential.table", [](RunConfig& c, std::string_view v) { c.potential.table = v; }},
        {"run.command",
         [](RunConfig& c, std::string_view v) { c.command = command_from_string(v); }},
        {"run.n_r_min", [](RunConfig& c, std::string_view v) { c.levels.n_r_min = parse_int(v); }},
        {"run.n_r_max", [](RunConfig& c, std::string_view v) { c.levels.n_r_max = parse_int(v); }},
        {"run.l_min", [](RunConfig& c, std::string_view v) { c.levels.l_min = parse_int(v); }},
        {"run.l_max", [](RunConfig& c, std::string_view v) { c.levels.l_max = parse_int(v); }},
        {"run.maslov_m", [](RunConfig& c, std::string_view v) { c.maslov_m = parse_int(v); }},
        {"run.antiparticle",
         [](RunConfig& c, std::string_view v) { c.antiparticle = parse_bool(v); }},
        {"run.with_oracle", [](RunConfig& c, std::string_view v) { c.with_oracle = parse_bool(v); }},
        {"run.workers",
         [](RunConfig& c, std::string_view v) {
             const long n = parse_integer(v);
             if (n < 0 || n > 4096) {
                 throw ConfigError("workers must be in [0, 4096]");
             }
             c.workers = static_cast<unsigned>(n);
         }},
        {"run.format",
         [](RunConfig& c, std::string_view v) { c.format = output_format_from_string(v); }},
        {"run.output", [](RunConfig& c, std::string_view v) { c.output = v; }},
        {"run.n_r", [](RunConfig& c, std::string_view v) { c.n_r = parse_int(v); }},
        {"run.l", [](RunConfig& c, std::string_view v) { c.l = parse_int(v); }},
        {"run.grid_size",
         [](RunConfig& c, std::string_view v) {
             const long n = parse_integer(v);
             if (n < 16 || n > 10'000'000) {
                 throw ConfigError("grid_size must be in [16, 10000000]");
             }
             c.grid_size = static_cast<std::size_t>(n);
         }},
        {"run.energy_min", [](RunConfig& c, std::string_view v) { c.energy_min = parse_double(v); }},
        {"run.energy_max", [](RunConfig& c, std::string_view v) { c.energy_max = parse_double(v); }},
        {"run.energy_points",
         [](RunConfig& c, std::string_view v) { c.energy_points = parse_int(v); }},
        {"run.verify_tolerance",
         [](RunConfig& c, std::string_view v) { c.verify_tolerance = parse_double(v); }},
    };
    return table;
}

int column_of(std::string_view line, std::string_view part)
{
    return static_cast<int>(part.data() - line.data()) + 1;
}

} // namespace

std::string_view to_string(Command command)
{
    return command_names[static_cast<std::size_t>(command)];
}

std::string_view to_string(OutputFormat format)
{
    return format_names[static_cast<std::size_t>(format)];
}

Command command_from_string(std::string_view name)
{
    for (std::size_t i = 0; i < command_names.size(); ++i) {
        if (name == command_names[i]) {
            return static_cast<Command>(i);
        }
    }
    throw ConfigError("unknown command '" + std::string(name)
                      + "' (expected spectrum, action-table, wavefunction or verify)");
}

OutputFormat output_format_from_string(std::string_view name)
{
    for (std::size_t i = 0; i < format_names.size(); ++i) {
        if (name == format_names[i]) {
            return static_cast<OutputFormat>(i);
        }
    }
    throw ConfigError("unknown format '" + std::string(name) + "' (expected csv or json-lines)");
}

std::string format_number(double value)
{
    std::array<char, 32> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

RunConfig parse_config(std::istream& in, const std::string& base_dir)
{
    RunConfig config;
    std::string section;
    std::set<std::string, std::less<>> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r') {
            raw.pop_back();
        }
        const std::string_view line = raw;
        const std::string_view body = trim(line);
        if (body.empty() || body.front() == '#' || body.front() == ';') {
            continue;
        }
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ConfigError("missing ']' in section header", line_no,
                                  column_of(line, body) + static_cast<int>(body.size()));
            }
            const std::string_view name = trim(body.substr(1, body.size() - 2));
            if (name != "context" && name != "tolerances" && name != "potential"
                && name != "run") {
                throw ConfigError("unknown section '" + std::string(name) + "'", line_no,
                                  name.empty() ? column_of(line, body) + 1 : column_of(line, name));
            }
            section = name;
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("expected 'key = value'", line_no, column_of(line, body));
        }
        if (section.empty()) {
            throw ConfigError("key outside of a section", line_no, column_of(line, body));
        }
        const std::string_view key = trim(body.substr(0, eq));
        const std::string_view value = trim(body.substr(eq + 1));
        const int key_column = key.empty() ? column_of(line, body) : column_of(line, key);
        const int value_column =
            value.empty() ? column_of(line, body) + static_cast<int>(eq) + 1 : column_of(line, value);
        const std::string full = section + "." + std::string(key);
        const auto setter = setters().find(full);
        if (setter == setters().end()) {
            throw ConfigError("unknown key '" + std::string(key) + "' in [" + section + "]", line_no,
                              key_column);
        }
        if (!seen.insert(full).second) {
            throw ConfigError("duplicate key '" + std::string(key) + "'", line_no, key_column);
        }
        if (value.empty()) {
            throw ConfigError("missing value", line_no, value_column);
        }
        try {
            setter->second(config, value);
        } catch (const ConfigError& e) {
            throw ConfigError(e.what(), line_no, value_column);
        }
    }

    if (!config.potential.table.empty()) {
        std::filesystem::path path(config.potential.table);
        if (path.is_relative()) {
            path = std::filesystem::path(base_dir) / path;
        }
        config.potential.table = std::filesystem::weakly_canonical(path).string();
    }
    validate(config);
    return config;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file '" + path + "'");
    }
    const auto dir = std::filesystem::absolute(path).parent_path();
    return parse_config(in, dir.string());
}

void validate(const RunConfig& config)
{
    try {
        validate(config.context);
        validate(config.tolerances);
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    const LevelRange& r = config.levels;
    if (r.n_r_min < 0 || r.n_r_max < 0 || r.l_min < 0 || r.l_max < 0 || config.n_r < 0
        || config.l < 0) {
        throw ConfigError("quantum numbers must be non-negative");
    }
    if (config.maslov_m < 0) {
        throw ConfigError("maslov_m must be non-negative");
    }
    if (config.energy_points < 1) {
        throw ConfigError("energy_points must be at least 1");
    }
    if (!(config.verify_tolerance > 0.0)) {
        throw ConfigError("verify_tolerance must be positive");
    }
    if (config.potential.kind == PotentialKind::harmonic && !(config.potential.omega > 0.0)) {
        throw ConfigError("harmonic potential needs omega > 0");
    }
    if (config.potential.kind == PotentialKind::linear && !(config.potential.slope > 0.0)) {
        throw ConfigError("linear potential needs slope > 0");
    }
    if (config.potential.kind == PotentialKind::custom_table) {
        if (config.potential.table.empty()) {
            throw ConfigError("custom-table potential needs a table path");
        }
        if (!std::filesystem::is_regular_file(config.potential.table)) {
            throw ConfigError("potential table '" + config.potential.table + "' does not exist");
        }
    }
}

std::string format_config(const RunConfig& config)
{
    std::ostringstream out;
    auto num = [&](const char* key, double v) { out << key << " = " << format_number(v) << '\n'; };
    auto integer = [&](const char* key, long v) { out << key << " = " << v << '\n'; };
    auto flag = [&](const char* key, bool v) { out << key << " = " << (v ? "true" : "false") << '\n'; };

    out << "[context]\n";
    num("mass", config.context.mass);
    num("c", config.context.c);
    num("hbar", config.context.hbar);
    num("coupling", config.context.coupling);

    out << "\n[tolerances]\n";
    num("quadrature_rel", config.tolerances.quadrature_rel);
    num("root_abs", config.tolerances.root_abs);
    num("bracket_expansion", config.tolerances.bracket_expansion);

    out << "\n[potential]\n";
    out << "kind = " << to_string(config.potential.kind) << '\n';
    num("omega", config.potential.omega);
    num("slope", config.potential.slope);
    if (!config.potential.table.empty()) {
        out << "table = " << config.potential.table << '\n';
    }

    out << "\n[run]\n";
    out << "command = " << to_string(config.command) << '\n';
    integer("n_r_min", config.levels.n_r_min);
    integer("n_r_max", config.levels.n_r_max);
    integer("l_min", config.levels.l_min);
    integer("l_max", config.levels.l_max);
    integer("maslov_m", config.maslov_m);
    flag("antiparticle", config.antiparticle);
    flag("with_oracle", config.with_oracle);
    integer("workers", config.workers);
    out << "format = " << to_string(config.format) << '\n';
    if (!config.output.empty()) {
        out << "output = " << config.output << '\n';
    }
    integer("n_r", config.n_r);
    integer("l", config.l);
    integer("grid_size", static_cast<long>(config.grid_size));
    if (config.energy_min) {
        num("energy_min", *config.energy_min);
    }
    if (config.energy_max) {
        num("energy_max", *config.energy_max);
    }
    integer("energy_points", config.energy_points);
    num("verify_tolerance", config.verify_tolerance);
    return out.str();
}

RadialPotential make_potential(const RunConfig& config)
{
    switch (config.potential.kind) {
    case PotentialKind::coulomb:
        return RadialPotential::coulomb();
    case PotentialKind::harmonic:
        return RadialPotential::harmonic(config.potential.omega);
    case PotentialKind::linear:
        return RadialPotential::linear(config.potential.slope);
    case PotentialKind::custom_table:
        return load_potential_table(config.potential.table);
    }
    throw ConfigError("unknown potential kind");
}

} // namespace rwkb
