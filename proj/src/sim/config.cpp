#include "svsim/sim/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace svsim::sim {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad numeric value for " + key + ": " + value);
    }
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// One registry drives parsing and echoing, so the two cannot drift apart.
struct Field {
    std::function<void(SimConfig&, const std::string&, const std::string&)> set;
    std::function<std::string(const SimConfig&)> get;
};

std::map<std::string, Field> field_registry() {
    std::map<std::string, Field> reg;
    auto num = [&](const std::string& key, auto accessor) {
        reg[key] = {[accessor](SimConfig& c, const std::string& k, const std::string& v) {
                        using T = std::remove_reference_t<decltype(*accessor(c))>;
                        *accessor(c) = static_cast<T>(parse_double(k, v));
                    },
                    [accessor](const SimConfig& c) {
                        return fmt(static_cast<double>(*accessor(const_cast<SimConfig&>(c))));
                    }};
    };
    auto deg = [&](const std::string& key, auto accessor) {
        reg[key] = {[accessor](SimConfig& c, const std::string& k, const std::string& v) {
                        *accessor(c) = deg_to_rad(parse_double(k, v));
                    },
                    [accessor](const SimConfig& c) {
                        return fmt(rad_to_deg(*accessor(const_cast<SimConfig&>(c))));
                    }};
    };

    num("tree.alpha", [](SimConfig& c) { return &c.tree_alpha; });
    num("tree.max_children", [](SimConfig& c) { return &c.tree_max_children; });
    num("tree.max_points", [](SimConfig& c) { return &c.tree_max_points; });
    num("tree.bytes_per_point", [](SimConfig& c) { return &c.size_model.bytes_per_point; });
    num("tree.header_bytes", [](SimConfig& c) { return &c.size_model.header_bytes; });
    num("tree.size_multiplier", [](SimConfig& c) { return &c.size_model.multiplier; });

    num("preload.d_gain", [](SimConfig& c) { return &c.preload.d_gain; });
    num("preload.delta_t", [](SimConfig& c) { return &c.preload.delta_t; });
    deg("preload.sigma0_deg", [](SimConfig& c) { return &c.preload.sigma0; });
    num("preload.eta_gain", [](SimConfig& c) { return &c.preload.eta_gain; });
    deg("preload.theta_min_deg", [](SimConfig& c) { return &c.preload.theta_min; });
    deg("preload.theta_max_deg", [](SimConfig& c) { return &c.preload.theta_max; });
    deg("preload.sigma_floor_deg", [](SimConfig& c) { return &c.preload.sigma_floor; });
    deg("preload.sigma_ceil_deg", [](SimConfig& c) { return &c.preload.sigma_ceil; });
    num("preload.base_error", [](SimConfig& c) { return &c.preload.base_error; });
    num("preload.fine_error", [](SimConfig& c) { return &c.preload.fine_error; });
    num("preload.max_bytes_per_frame",
        [](SimConfig& c) { return &c.preload.max_bytes_per_frame; });
    num("preload.evict_after_frames",
        [](SimConfig& c) { return &c.preload.evict_after_frames; });

    num("gaze.dispersion_max", [](SimConfig& c) { return &c.classify.dispersion_max; });
    num("gaze.min_fixation_s", [](SimConfig& c) { return &c.classify.min_fixation_s; });
    num("gaze.saccade_velocity", [](SimConfig& c) { return &c.classify.saccade_velocity; });

    num("interest.merge_radius", [](SimConfig& c) { return &c.interest.merge_radius; });
    num("interest.decay", [](SimConfig& c) { return &c.interest.decay; });
    num("interest.capacity", [](SimConfig& c) { return &c.interest.capacity; });
    num("interest.spot_radius", [](SimConfig& c) { return &c.interest.spot_radius; });

    deg("camera.fov_x_deg", [](SimConfig& c) { return &c.camera.fov_x; });
    deg("camera.fov_y_deg", [](SimConfig& c) { return &c.camera.fov_y; });
    deg("camera.pitch_down_deg", [](SimConfig& c) { return &c.camera.pitch_down; });

    num("fatigue.window_s", [](SimConfig& c) { return &c.fatigue.window_s; });
    num("fatigue.min_window_s", [](SimConfig& c) { return &c.fatigue.min_window_s; });
    num("fatigue.max_frame_gap_s", [](SimConfig& c) { return &c.fatigue.max_frame_gap_s; });
    num("fatigue.closure_threshold", [](SimConfig& c) { return &c.fatigue.closure_threshold; });
    num("fatigue.blink_min_s", [](SimConfig& c) { return &c.fatigue.blink_min_s; });
    num("fatigue.blink_max_s", [](SimConfig& c) { return &c.fatigue.blink_max_s; });
    num("fatigue.w_perclos", [](SimConfig& c) { return &c.fatigue.w_perclos; });
    num("fatigue.w_closure", [](SimConfig& c) { return &c.fatigue.w_closure; });
    num("fatigue.relocalize_after", [](SimConfig& c) { return &c.fatigue.relocalize_after; });
    num("fatigue.fatigue_threshold", [](SimConfig& c) { return &c.fatigue.fatigue_threshold; });
    num("fatigue.risk_threshold", [](SimConfig& c) { return &c.fatigue.risk_threshold; });
    num("fatigue.cooldown_s", [](SimConfig& c) { return &c.fatigue.cooldown_s; });

    num("risk.clearance", [](SimConfig& c) { return &c.risk.clearance; });
    num("risk.range_multiplier", [](SimConfig& c) { return &c.risk.range_multiplier; });
    num("risk.range_floor", [](SimConfig& c) { return &c.risk.range_floor; });
    num("risk.merge_radius", [](SimConfig& c) { return &c.risk.merge_radius; });
    num("risk.route_stride", [](SimConfig& c) { return &c.risk.route_stride; });

    num("sim.reaction_window_s", [](SimConfig& c) { return &c.reaction_window_s; });
    num("sim.clearance_ref", [](SimConfig& c) { return &c.clearance_ref; });
    reg["sim.suppress_alerts"] = {
        [](SimConfig& c, const std::string& k, const std::string& v) {
            c.suppress_alerts = parse_double(k, v) != 0.0;
        },
        [](const SimConfig& c) { return std::string(c.suppress_alerts ? "1" : "0"); }};
    reg["sim.interest_list"] = {
        [](SimConfig& c, const std::string&, const std::string& v) { c.interest_list_path = v; },
        [](const SimConfig& c) { return c.interest_list_path; }};
    return reg;
}

}  // namespace

void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value) {
    static const std::map<std::string, Field> reg = field_registry();
    const auto it = reg.find(key);
    if (it == reg.end()) throw std::invalid_argument("unknown config key: " + key);
    it->second.set(cfg, key, value);
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config: " + path);
    SimConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": expected key = value");
        }
        try {
            set_config_value(cfg, trim(text.substr(0, eq)), trim(text.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    return cfg;
}

std::map<std::string, std::string> config_echo(const SimConfig& cfg) {
    std::map<std::string, std::string> echo;
    for (const auto& [key, field] : field_registry()) echo[key] = field.get(cfg);
    return echo;
}

}  // namespace svsim::sim
