#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hyplen/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic length spectra on model Riemann surfaces"};
    app.require_subcommand(1);

    std::string config_path;
    hyplen::cli::CliOptions options;

    const std::vector<std::string> commands = {"length",  "shorten", "spectrum",
                                               "deform",  "certify", "compare"};
    const std::vector<std::string> blurbs = {
        "hyperbolic length of a curve on a model surface",
        "homotopy-constrained curve shortening (stable length)",
        "truncated translation-length spectrum of a Schottky representation",
        "deformation family: lambda(t) trace and endpoint spectrum comparison",
        "ping-pong discreteness certificate",
        "compare two persisted spectra",
    };
    for (size_t i = 0; i < commands.size(); ++i) {
        CLI::App* sub = app.add_subcommand(commands[i], blurbs[i]);
        sub->add_option("--config", config_path, "job configuration (JSON)")->required();
        sub->add_option("--out", options.out_dir, "output directory")
            ->capture_default_str();
        sub->add_option("--format", options.format, "spectrum file format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
        sub->add_option("--seed", options.seed,
                        "seed for the random conjugation in certificate preprocessing")
            ->capture_default_str();
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();
    return hyplen::cli::run_cli(command, config_path, options, std::cout, std::cerr);
}
