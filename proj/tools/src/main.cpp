#include "dampedeb/cli.hpp"
#include "dampedeb/error.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace dampedeb;

    CLI::App app{"Compact finite-difference solver for damped beam and plate equations"};
    app.require_subcommand(1, 1);

    std::string config_path, out_dir, profile = "paper";
    for (const char* name : {"simulate", "temporal-study", "spatial-study", "energy-study", "validate-law"}) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "configuration file")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory (overrides [output] dir)");
        sub->add_option("--profile", profile, "paper or fast")->check(CLI::IsMember({"paper", "fast"}));
    }
    CLI11_PARSE(app, argc, argv);

    try {
        const auto command = cli::parse_command(app.get_subcommands().front()->get_name());
        auto config = cli::load_config(config_path, command, cli::parse_profile(profile));
        if (!out_dir.empty()) config.out_dir = out_dir;
        const auto result = cli::execute(config);
        for (const auto& path : result.artifacts) std::cout << "wrote " << path.string() << '\n';
        for (const auto& line : result.diagnostics) std::cerr << "damped-eb: " << line << '\n';
        return result.status;
    } catch (const ConfigError& e) {
        std::cerr << "damped-eb: " << config_path << ": " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "damped-eb: " << e.what() << '\n';
        return 1;
    }
}
