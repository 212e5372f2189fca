#include "doctest.h"

#include "rwkb/config.hpp"
#include "rwkb/error.hpp"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace rwkb;

namespace {

RunConfig parse(const std::string& text, const std::string& base = ".")
{
    std::istringstream in(text);
    return parse_config(in, base);
}

void expect_error_at(const std::string& text, int line, int column)
{
    try {
        parse(text);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CAPTURE(e.what());
        CHECK(e.line() == line);
        CHECK(e.column() == column);
    }
}

} // namespace

TEST_CASE("defaults")
{
    const RunConfig c = parse("");
    CHECK(c.command == Command::spectrum);
    CHECK(c.potential.kind == PotentialKind::coulomb);
    CHECK(c.context.coupling == doctest::Approx(1.0 / 137.035999));
    CHECK(c.format == OutputFormat::csv);
    CHECK(c.maslov_m == 2);
    CHECK_FALSE(c.energy_min.has_value());
}

TEST_CASE("full config")
{
    const RunConfig c = parse("# comment\n"
                              "[context]\n"
                              "mass = 2\n"
                              "  coupling=0.1  \n"
                              "; another comment\n"
                              "[tolerances]\n"
                              "root_abs = 1e-11\n"
                              "[potential]\n"
                              "kind = linear\n"
                              "slope = 0.25\n"
                              "[run]\n"
                              "command = action-table\n"
                              "n_r_max = 4\n"
                              "l_min = 1\n"
                              "l_max = 3\n"
                              "maslov_m = 0\n"
                              "with_oracle = true\n"
                              "format = json-lines\n"
                              "output = out.csv\n"
                              "energy_min = 1.5\n"
                              "energy_max = 2.5\n"
                              "energy_points = 7\n"
                              "verify_tolerance = 1e-3\n");
    CHECK(c.context.mass == 2.0);
    CHECK(c.context.coupling == 0.1);
    CHECK(c.tolerances.root_abs == 1e-11);
    CHECK(c.potential.kind == PotentialKind::linear);
    CHECK(c.potential.slope == 0.25);
    CHECK(c.command == Command::action_table);
    CHECK(c.levels.n_r_max == 4);
    CHECK(c.levels.l_min == 1);
    CHECK(c.levels.l_max == 3);
    CHECK(c.maslov_m == 0);
    CHECK(c.with_oracle);
    CHECK(c.format == OutputFormat::json_lines);
    CHECK(c.output == "out.csv");
    CHECK(*c.energy_min == 1.5);
    CHECK(*c.energy_max == 2.5);
    CHECK(c.energy_points == 7);
    CHECK(c.verify_tolerance == 1e-3);
}

TEST_CASE("errors carry line and column")
{
    expect_error_at("[context]\nmass = abc\n", 2, 8);
    expect_error_at("[context]\n  mas = 1\n", 2, 3);
    expect_error_at("[nowhere]\n", 1, 2);
    expect_error_at("mass = 1\n", 1, 1);
    expect_error_at("[run]\ncommand = plot\n", 2, 11);
    expect_error_at("[run]\nformat = xml\n", 2, 10);
    expect_error_at("[run]\nn_r_max = 1.5\n", 2, 11);
    expect_error_at("[run]\nwith_oracle = yes\n", 2, 15);
    expect_error_at("[context]\nmass = 1\nmass = 2\n", 3, 1);
    expect_error_at("[context]\nmass\n", 2, 1);
    expect_error_at("[context]\nmass =\n", 2, 7);
    expect_error_at("[context\n", 1, 9);
    expect_error_at("[potential]\nkind = yukawa\n", 2, 8);
    expect_error_at("[context]\nmass = inf\n", 2, 8);
}

TEST_CASE("semantic validation")
{
    CHECK_THROWS_AS(parse("[context]\nmass = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("[context]\ncoupling = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[tolerances]\nbracket_expansion = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run]\nn_r_max = -1\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run]\nenergy_points = 0\n"), ConfigError);
    CHECK_THROWS_AS(parse("[run]\ngrid_size = 4\n"), ConfigError);
    CHECK_THROWS_AS(parse("[potential]\nkind = custom-table\n"), ConfigError);
    CHECK_THROWS_AS(parse("[potential]\nkind = custom-table\ntable = /no/such/file\n"), ConfigError);
    CHECK_THROWS_AS(parse("[potential]\nkind = harmonic\nomega = 0\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/no/such/config.ini"), ConfigError);
}

TEST_CASE("relative table paths resolve against the config directory")
{
    const auto dir = std::filesystem::temp_directory_path() / "rwkb_config_test";
    std::filesystem::create_directories(dir);
    {
        std::ofstream table(dir / "well.txt");
        table << "1 1\n2 0\n3 0\n4 1\n";
        std::ofstream config(dir / "run.ini");
        config << "[potential]\nkind = custom-table\ntable = well.txt\n";
    }
    const RunConfig c = load_config((dir / "run.ini").string());
    CHECK(std::filesystem::path(c.potential.table).is_absolute());
    CHECK(std::filesystem::equivalent(c.potential.table, dir / "well.txt"));
    const RadialPotential p = make_potential(c);
    CHECK(p.kind() == PotentialKind::custom_table);
    CHECK(p.table_radii().size() == 4);
    std::filesystem::remove_all(dir);
}

TEST_CASE("format and parse round-trip")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        RunConfig c;
        c.context.mass = 0.1 + 10.0 * unit(rng);
        c.context.c = 0.5 + unit(rng);
        c.context.hbar = unit(rng) + 1e-3;
        c.context.coupling = 0.4 * unit(rng);
        c.tolerances.quadrature_rel = 1e-13 * (1.0 + unit(rng));
        c.tolerances.bracket_expansion = 1.0 + unit(rng);
        c.potential.kind = static_cast<PotentialKind>(trial % 3);
        c.potential.omega = unit(rng);
        c.potential.slope = unit(rng);
        c.command = static_cast<Command>(trial % 4);
        c.levels = {trial % 2, trial % 5, 0, trial % 3};
        c.maslov_m = trial % 3;
        c.with_oracle = trial % 2 == 0;
        c.antiparticle = trial % 3 == 0;
        c.workers = static_cast<unsigned>(trial % 4);
        c.format = static_cast<OutputFormat>(trial % 2);
        if (trial % 2) {
            c.energy_min = unit(rng);
            c.energy_max = 1.0 + unit(rng);
            c.output = "out_" + std::to_string(trial) + ".csv";
        }
        c.energy_points = 1 + trial;
        c.verify_tolerance = unit(rng) + 1e-9;

        const std::string text = format_config(c);
        const RunConfig back = parse(text);
        CHECK(format_config(back) == text);
        CHECK(back.context.mass == c.context.mass);
        CHECK(back.context.hbar == c.context.hbar);
        CHECK(back.tolerances.quadrature_rel == c.tolerances.quadrature_rel);
        CHECK(back.potential.omega == c.potential.omega);
        CHECK(back.energy_min == c.energy_min);
        CHECK(back.command == c.command);
        CHECK(back.format == c.format);
    }
}

TEST_CASE("shortest number formatting")
{
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1e-12) == "1e-12");
    const double x = 1.0 / 137.035999;
    CHECK(std::stod(format_number(x)) == x);
}

TEST_CASE("names")
{
    CHECK(command_from_string("wavefunction") == Command::wavefunction);
    CHECK(to_string(Command::action_table) == "action-table");
    CHECK(output_format_from_string("json-lines") == OutputFormat::json_lines);
    CHECK(to_string(OutputFormat::csv) == "csv");
    CHECK_THROWS_AS(command_from_string("Spectrum"), ConfigError);
    CHECK_THROWS_AS(output_format_from_string("tsv"), ConfigError);
}
