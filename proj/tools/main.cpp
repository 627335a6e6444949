#include <cstdint>
#include <iostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "svsim/cli/commands.hpp"

int main(int argc, char** argv) {
    CLI::App app{"gaze-aware terrain preloading simulator"};
    app.require_subcommand(1);

    std::string hf1_path;
    double alpha = 0.0;
    int max_children = 4;
    long long max_points = 289;
    CLI::App* build = app.add_subcommand("build-tree", "build the terrain tree over an HF1 file");
    build->add_option("hf1", hf1_path, "heightfield file")->required();
    build->add_option("--alpha", alpha, "vertical error tolerance (m)");
    build->add_option("--max-children", max_children, "children per split (2 or 4)");
    build->add_option("--max-points", max_points, "sample floor per node");

    std::vector<std::string> scenario_files;
    std::string config_path;
    std::string out_dir = "run";
    CLI::App* simulate = app.add_subcommand("simulate", "run scenarios and write a report");
    simulate->add_option("scenarios", scenario_files, "scenario files")->required();
    simulate->add_option("--config", config_path, "key = value config file");
    simulate->add_option("--out", out_dir, "output directory");

    std::uint64_t seed = 1;
    std::string preset = "standard";
    std::string scn_out;
    CLI::App* gen = app.add_subcommand("gen-scenario", "write a preset scenario file");
    gen->add_option("--seed", seed, "scenario seed");
    gen->add_option("--preset", preset, "standard, turny, or fatigue-heavy");
    gen->add_option("--out", scn_out, "output path (default <preset>-<seed>.scn)");

    std::string run_dir;
    CLI::App* report = app.add_subcommand("report", "summarize a run directory");
    report->add_option("run-dir", run_dir, "directory written by simulate")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (build->parsed())
            svsim::cli::cmd_build_tree(hf1_path, alpha, max_children, max_points, std::cout);
        else if (simulate->parsed())
            svsim::cli::cmd_simulate(scenario_files, config_path, out_dir, std::cout);
        else if (gen->parsed())
            svsim::cli::cmd_gen_scenario(seed, preset, scn_out, std::cout);
        else if (report->parsed())
            svsim::cli::cmd_report(run_dir, std::cout);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
