#include "rwkb/commands.hpp"
#include "rwkb/config.hpp"
#include "rwkb/error.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Relativistic semiclassical quantization of Klein-Gordon central potentials"};
    app.footer(rwkb::column_help());

    std::string config_path;
    std::string command;
    std::string output;
    std::string format;
    bool with_oracle = false;
    bool dump_config = false;
    app.add_option("--config", config_path, "Run configuration file (defaults apply without one)")
        ->check(CLI::ExistingFile);
    app.add_option("--command", command, "spectrum | action-table | wavefunction | verify");
    app.add_option("--output", output, "Output file (standard output if omitted)");
    app.add_option("--format", format, "csv | json-lines");
    app.add_flag("--with-oracle", with_oracle, "Add exact Numerov energies to the spectrum");
    app.add_flag("--dump-config", dump_config,
                 "Print the fully resolved configuration and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : rwkb::exit_config_error;
    }

    rwkb::RunConfig config;
    try {
        if (!config_path.empty()) {
            config = rwkb::load_config(config_path);
        }
        if (!command.empty()) {
            config.command = rwkb::command_from_string(command);
        }
        if (!format.empty()) {
            config.format = rwkb::output_format_from_string(format);
        }
        if (!output.empty()) {
            config.output = output;
        }
        if (with_oracle) {
            config.with_oracle = true;
        }
        rwkb::validate(config);
    } catch (const rwkb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return rwkb::exit_config_error;
    }

    if (dump_config) {
        std::cout << rwkb::format_config(config);
        return rwkb::exit_success;
    }

    if (config.output.empty()) {
        return rwkb::run_command(config, std::cout, std::cerr);
    }
    std::ofstream file(config.output);
    if (!file) {
        std::cerr << "config error: cannot open output '" << config.output << "'\n";
        return rwkb::exit_config_error;
    }
    return rwkb::run_command(config, file, std::cerr);
}
