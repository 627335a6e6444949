#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace svsim::cli {

// Subcommand bodies shared by the binary and the test harness. All of them
// throw std::invalid_argument for semantic problems and std::runtime_error
// for I/O failures; the binary maps those to exit codes 1 and 2.

// Builds the terrain tree over an HF1 file and prints structure statistics.
void cmd_build_tree(const std::string& hf1_path, double alpha, int max_children,
                    long long max_points, std::ostream& out);

// Runs every scenario file through the simulator and writes the report into
// out_dir. An empty config_path uses the built-in defaults. The interest list
// persists across the scenarios in order; when the config names an interest
// file it is loaded first and written back afterwards.
void cmd_simulate(const std::vector<std::string>& scenario_files, const std::string& config_path,
                  const std::string& out_dir, std::ostream& out);

// Generates a preset scenario and writes its text form. An empty out_path
// derives "<preset>-<seed>.scn" in the working directory.
void cmd_gen_scenario(std::uint64_t seed, const std::string& preset, const std::string& out_path,
                      std::ostream& out);

// Prints the digest of a directory written by cmd_simulate.
void cmd_report(const std::string& run_dir, std::ostream& out);

}  // namespace svsim::cli
