#include <cstdint>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pxlap/cli.hpp"

int main(int argc, char** argv) {
    CLI::App app{"variable-exponent Sobolev calculus and p(x)-Laplacian solver"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite;
    int trials = 0;
    std::uint64_t seed = 0;

    CLI::App* norm = app.add_subcommand("norm", "print the Luxemburg norm of f under p");
    norm->add_option("--config", config_path, "config file")->required();

    CLI::App* solve = app.add_subcommand("solve", "solve the Dirichlet problem");
    solve->add_option("--config", config_path, "config file")->required();
    solve->add_option("--out", out_path, "solution CSV path")->required();

    CLI::App* stability = app.add_subcommand("stability", "run an exponent schedule");
    stability->add_option("--config", config_path, "config file")->required();
    stability->add_option("--out", out_path, "report CSV path")->required();

    CLI::App* check = app.add_subcommand("check", "run a randomized inequality suite");
    check->add_option("--suite", suite, "holder | epsilon | norm-modular | convexity")
        ->required();
    check->add_option("--trials", trials, "number of trials")->required();
    check->add_option("--seed", seed, "RNG seed")->required();
    check->add_option("--out", out_path, "report CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    pxlap::RunConfig cfg;
    if (!config_path.empty()) {
        try {
            cfg = pxlap::parse_config_file(config_path);
        } catch (const std::exception& e) {
            std::cerr << "error: config: " << e.what() << '\n';
            return 1;
        }
    }
    cfg.suite = suite;
    cfg.trials = trials;
    cfg.seed = seed;
    cfg.out_path = out_path;

    pxlap::Command command = pxlap::Command::norm;
    if (solve->parsed()) command = pxlap::Command::solve;
    else if (stability->parsed()) command = pxlap::Command::stability;
    else if (check->parsed()) command = pxlap::Command::check;

    return pxlap::dispatch(command, cfg, std::cout, std::cerr);
}
