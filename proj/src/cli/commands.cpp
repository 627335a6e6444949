#include "svsim/cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "svsim/gaze/interest.hpp"
#include "svsim/sim/config.hpp"
#include "svsim/sim/report.hpp"
#include "svsim/sim/run.hpp"
#include "svsim/sim/scenario.hpp"
#include "svsim/terrain/tree.hpp"

namespace svsim::cli {

namespace fs = std::filesystem;

void cmd_build_tree(const std::string& hf1_path, double alpha, int max_children,
                    long long max_points, std::ostream& out) {
    const terrain::HeightField field = terrain::load_hf1(hf1_path);
    const terrain::TerrainTree tree =
        terrain::build_tree(field, alpha, max_children, static_cast<int>(max_points));

    std::size_t leaves = 0;
    int max_level = 0;
    std::uint64_t total_bytes = 0;
    double max_leaf_error = 0.0;
    for (const terrain::TerrainNode* n : tree.all_nodes()) {
        max_level = std::max(max_level, n->level);
        total_bytes += n->data_size;
        if (n->leaf()) {
            ++leaves;
            max_leaf_error = std::max(max_leaf_error, n->error);
        }
    }
    out << "grid " << field.width() << "x" << field.height() << ", cell " << field.cell_size()
        << " m\n";
    out << "nodes " << tree.node_count() << " (" << leaves << " leaves), depth " << max_level
        << "\n";
    out << "alpha " << alpha << ", max leaf error " << max_leaf_error << "\n";
    out << "total payload " << total_bytes << " bytes\n";
}

void cmd_simulate(const std::vector<std::string>& scenario_files, const std::string& config_path,
                  const std::string& out_dir, std::ostream& out) {
    if (scenario_files.empty()) throw std::invalid_argument("no scenario files given");

    sim::SimConfig cfg;
    if (!config_path.empty()) cfg = sim::load_config(config_path);

    gaze::InterestList interests;
    interests.capacity = cfg.interest.capacity;
    if (!cfg.interest_list_path.empty() && fs::exists(cfg.interest_list_path))
        interests = gaze::load_interest_list(cfg.interest_list_path, cfg.interest.capacity);

    std::vector<sim::RunResult> runs;
    runs.reserve(scenario_files.size());
    for (const std::string& path : scenario_files) {
        const sim::Scenario sc = sim::load_scenario(path);
        const std::string base = fs::path(path).parent_path().string();
        runs.push_back(sim::run_scenario(sc, cfg, interests, base.empty() ? "." : base));
        interests = runs.back().interests;
        const sim::ScenarioResult& s = runs.back().summary;
        out << s.name << ": detected " << s.detected << "/" << s.total << ", alerts "
            << s.alerts_total << ", prediction " << s.bytes_prediction_total << " B, baseline "
            << s.bytes_baseline_total << " B\n";
    }

    sim::emit_report(runs, cfg, out_dir);
    if (!cfg.interest_list_path.empty())
        gaze::save_interest_list(interests, cfg.interest_list_path);
    out << "report written to " << out_dir << "\n";
}

void cmd_gen_scenario(std::uint64_t seed, const std::string& preset, const std::string& out_path,
                      std::ostream& out) {
    const sim::Scenario sc = sim::make_preset(preset, seed);
    std::string path = out_path;
    if (path.empty()) path = preset + "-" + std::to_string(seed) + ".scn";
    sim::save_scenario(sc, path);
    out << "wrote " << path << "\n";
}

void cmd_report(const std::string& run_dir, std::ostream& out) {
    out << sim::summarize_run_dir(run_dir);
}

}  // namespace svsim::cli
