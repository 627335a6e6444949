#include "svsim/sim/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace svsim::sim {
namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (char& c : out) {
        const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                        (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.';
        if (!ok) c = '_';
    }
    return out.empty() ? std::string("run") : out;
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

void write_metrics_csv(const RunResult& run, const fs::path& path) {
    std::ofstream out = open_out(path);
    out << "frame,bytes_prediction,bytes_baseline,nodes_loaded,fatigue_level,alerts\n";
    char line[160];
    for (const FrameMetrics& fm : run.frames) {
        std::snprintf(line, sizeof(line), "%d,%llu,%llu,%llu,%.6f,%d\n", fm.frame,
                      static_cast<unsigned long long>(fm.bytes_prediction),
                      static_cast<unsigned long long>(fm.bytes_baseline),
                      static_cast<unsigned long long>(fm.nodes_loaded), fm.fatigue_level,
                      fm.alerts);
        out << line;
    }
    if (!out) throw std::runtime_error("cannot write " + path.string());
}

json scenario_entry(const RunResult& run, const std::string& tag) {
    const Scenario& sc = run.scenario;
    const ScenarioResult& s = run.summary;
    json phases = json::array();
    for (const Phase& p : sc.phases)
        phases.push_back({{"kind", phase_kind_name(p.kind)}, {"duration", p.duration}});
    return json{
        {"name", s.name},
        {"seed", sc.seed},
        {"route_id", sc.route_id},
        {"duration", sc.duration},
        {"frame_rate", sc.frame_rate},
        {"phases", phases},
        {"frames", run.frames.size()},
        {"incidents", s.total},
        {"detected", s.detected},
        {"accuracy_percent", format_accuracy_percent(s.detected, s.total)},
        {"no_incidents", s.no_incidents},
        {"alerts_total", s.alerts_total},
        {"fatigue_alerts", s.fatigue_alerts},
        {"risk_spots", s.risk_spots},
        {"bytes_prediction_total", s.bytes_prediction_total},
        {"bytes_baseline_total", s.bytes_baseline_total},
        {"nodes_loaded_total", s.nodes_loaded_total},
        {"gaze_events", s.gaze_events},
        {"hits_remapped", s.hits_remapped},
        {"hits_dropped", s.hits_dropped},
        {"files",
         {{"metrics", "metrics_" + tag + ".csv"},
          {"alerts", "alerts_" + tag + ".csv"},
          {"interest", "interest_" + tag + ".txt"}}},
    };
}

}  // namespace

std::string format_accuracy_percent(int detected, int total) {
    const double pct = total == 0 ? 100.0 : 100.0 * detected / total;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", pct);
    return buf;
}

void emit_report(std::span<const RunResult> runs, const SimConfig& cfg,
                 const std::string& out_dir) {
    const fs::path dir(out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    {
        std::ofstream out = open_out(dir / "summary.csv");
        out << "scenario,detected,total,accuracy\n";
        for (const RunResult& run : runs) {
            out << run.summary.name << "," << run.summary.detected << "," << run.summary.total
                << "," << format_accuracy_percent(run.summary.detected, run.summary.total)
                << "\n";
        }
    }

    json manifest;
    manifest["bounds"] = {
        {"cruise_prediction_fraction_max", 0.5},
        {"note",
         "cumulative predictive transfers over the cruise phase are expected within this "
         "fraction of the full-resolution baseline; the bound reflects the coarse/fine "
         "resolution gap of the default preload.base_error"}};
    json cfg_json = json::object();
    for (const auto& [k, v] : config_echo(cfg)) cfg_json[k] = v;
    manifest["config"] = cfg_json;
    manifest["scenarios"] = json::array();

    for (const RunResult& run : runs) {
        const std::string tag = sanitize(run.summary.name);
        write_metrics_csv(run, dir / ("metrics_" + tag + ".csv"));
        fatigue::save_alerts(run.alerts, (dir / ("alerts_" + tag + ".csv")).string());
        gaze::save_interest_list(run.interests, (dir / ("interest_" + tag + ".txt")).string());
        manifest["scenarios"].push_back(scenario_entry(run, tag));
    }

    std::ofstream out = open_out(dir / "manifest.json");
    out << manifest.dump(2) << "\n";
    if (!out) throw std::runtime_error("cannot write " + (dir / "manifest.json").string());
}

std::string summarize_run_dir(const std::string& run_dir) {
    const fs::path dir(run_dir);
    std::ifstream in(dir / "manifest.json");
    if (!in) throw std::runtime_error("cannot read " + (dir / "manifest.json").string());
    json manifest;
    try {
        in >> manifest;
    } catch (const json::exception& e) {
        throw std::runtime_error("bad manifest in " + run_dir + ": " + e.what());
    }

    std::ostringstream out;
    out << "run: " << run_dir << "\n";
    for (const json& sc : manifest.at("scenarios")) {
        out << "\n" << sc.at("name").get<std::string>() << "\n";
        out << "  incidents detected " << sc.at("detected").get<int>() << "/"
            << sc.at("incidents").get<int>() << " (" << sc.at("accuracy_percent").get<std::string>()
            << "%)";
        if (sc.at("no_incidents").get<bool>()) out << " [no incidents scripted]";
        out << "\n";
        out << "  alerts " << sc.at("alerts_total").get<int>() << " (fatigue "
            << sc.at("fatigue_alerts").get<int>() << "), risk spots "
            << sc.at("risk_spots").get<int>() << "\n";

        const fs::path metrics = dir / sc.at("files").at("metrics").get<std::string>();
        std::ifstream mf(metrics);
        if (!mf) throw std::runtime_error("cannot read " + metrics.string());
        std::string line;
        std::getline(mf, line);  // header
        const double frame_rate = sc.at("frame_rate").get<double>();
        std::vector<double> bounds{0.0};
        std::vector<std::string> names;
        for (const json& p : sc.at("phases")) {
            names.push_back(p.at("kind").get<std::string>());
            bounds.push_back(bounds.back() + p.at("duration").get<double>());
        }
        std::vector<double> pred(names.size(), 0.0), base(names.size(), 0.0);
        std::vector<long> count(names.size(), 0);
        while (std::getline(mf, line)) {
            int frame = 0, alerts = 0;
            unsigned long long bp = 0, bb = 0, nl = 0;
            double level = 0.0;
            if (std::sscanf(line.c_str(), "%d,%llu,%llu,%llu,%lf,%d", &frame, &bp, &bb, &nl,
                            &level, &alerts) != 6)
                throw std::runtime_error("bad metrics row in " + metrics.string());
            const double t = frame / frame_rate;
            for (std::size_t k = 0; k < names.size(); ++k) {
                if (t >= bounds[k] && (t < bounds[k + 1] || k + 1 == names.size())) {
                    pred[k] += static_cast<double>(bp);
                    base[k] += static_cast<double>(bb);
                    ++count[k];
                    break;
                }
            }
        }
        out << "  mean transfer bytes/frame (prediction vs baseline)\n";
        for (std::size_t k = 0; k < names.size(); ++k) {
            char row[160];
            const double n = count[k] > 0 ? static_cast<double>(count[k]) : 1.0;
            std::snprintf(row, sizeof(row), "    %-8s %12.1f %12.1f\n", names[k].c_str(),
                          pred[k] / n, base[k] / n);
            out << row;
        }
    }
    return out.str();
}

}  // namespace svsim::sim
