#include "svsim/fatigue/warning.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "svsim/preload/state.hpp"

namespace svsim::fatigue {

namespace {

struct Candidate {
    Vec2 location;
    double violation;
};

// True when sample (i, j) is at least as high as every existing neighbor.
bool local_maximum(const terrain::HeightField& field, int i, int j) {
    const double h = field.at(i, j);
    for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
            if (di == 0 && dj == 0) continue;
            const int ni = i + di, nj = j + dj;
            if (ni < 0 || nj < 0 || ni >= field.width() || nj >= field.height()) continue;
            if (field.at(ni, nj) > h) return false;
        }
    }
    return true;
}

}  // namespace

std::vector<RiskSpot> detect_risk_spots(const terrain::HeightField& field,
                                        std::span<const preload::AircraftState> route,
                                        const preload::PreloadConfig& preload_cfg,
                                        const RiskConfig& cfg) {
    if (route.empty()) throw std::invalid_argument("risk detection needs a route");
    if (cfg.route_stride <= 0) throw std::invalid_argument("route_stride must be positive");

    std::vector<Candidate> candidates;
    const Rect domain = field.domain();
    for (std::size_t k = 0; k < route.size(); k += static_cast<std::size_t>(cfg.route_stride)) {
        const preload::AircraftState& s = route[k];
        const double floor = s.altitude - cfg.clearance;
        const auto region = preload::compute_preload_region(s, preload_cfg);
        const auto tri = region.corners();
        const Rect box = region_to_domain(region).intersection(domain);
        if (!box.valid()) continue;

        const Vec2 org = field.origin();
        const int i0 = std::max(0, static_cast<int>(std::ceil((box.x_min - org.x) / field.cell_size())));
        const int i1 = std::min(field.width() - 1,
                                static_cast<int>(std::floor((box.x_max - org.x) / field.cell_size())));
        const int j0 = std::max(0, static_cast<int>(std::ceil((box.y_min - org.y) / field.cell_size())));
        const int j1 = std::min(field.height() - 1,
                                static_cast<int>(std::floor((box.y_max - org.y) / field.cell_size())));
        for (int j = j0; j <= j1; ++j) {
            for (int i = i0; i <= i1; ++i) {
                const double h = field.at(i, j);
                if (h <= floor) continue;
                const Vec2 p = field.sample_position(i, j);
                if (!point_in_triangle(p, tri[0], tri[1], tri[2])) continue;
                if (!local_maximum(field, i, j)) continue;
                candidates.push_back({p, h - floor});
            }
        }
    }

    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.violation != b.violation) return a.violation > b.violation;
        if (a.location.x != b.location.x) return a.location.x < b.location.x;
        return a.location.y < b.location.y;
    });

    std::vector<RiskSpot> spots;
    for (const Candidate& c : candidates) {
        bool taken = false;
        for (const RiskSpot& s : spots) {
            if (distance(s.location, c.location) <= cfg.merge_radius) {
                taken = true;
                break;
            }
        }
        if (taken) continue;
        spots.push_back({c.location, SpotKind::terrain, c.violation,
                         std::max(cfg.range_multiplier * c.violation, cfg.range_floor)});
    }
    return spots;
}

std::optional<AlertEvent> evaluate_warning(const FatigueState& fatigue,
                                           const preload::AircraftState& state,
                                           std::span<const RiskSpot> spots,
                                           double flight_risk, const FatigueConfig& cfg,
                                           WarningState& warnings) {
    if (state.timestamp - warnings.last_alert < cfg.cooldown_s) return std::nullopt;

    const RiskSpot* nearest = nullptr;
    double nearest_dist = 0.0;
    for (const RiskSpot& s : spots) {
        const double d = distance(state.position, s.location);
        if (d > s.warning_range) continue;
        if (!nearest || d < nearest_dist) {
            nearest = &s;
            nearest_dist = d;
        }
    }

    AlertEvent alert;
    if (nearest && fatigue.level > cfg.fatigue_threshold) {
        alert.cause = AlertCause::fatigue_near_risk;
        alert.spot = *nearest;
    } else if (flight_risk > cfg.risk_threshold) {
        alert.cause = AlertCause::flight_risk;
    } else {
        return std::nullopt;
    }
    alert.timestamp = state.timestamp;
    alert.fatigue_level = fatigue.level;
    warnings.last_alert = state.timestamp;
    return alert;
}

void save_alerts(std::span<const AlertEvent> alerts, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write alert log: " + path);
    out << "t,cause,level,spot_x,spot_y\n";
    char line[224];
    for (const AlertEvent& a : alerts) {
        const char* cause = a.cause == AlertCause::fatigue_near_risk ? "fatigue_near_risk"
                                                                     : "flight_risk";
        if (a.spot) {
            std::snprintf(line, sizeof(line), "%.3f,%s,%.6f,%.3f,%.3f\n", a.timestamp, cause,
                          a.fatigue_level, a.spot->location.x, a.spot->location.y);
        } else {
            std::snprintf(line, sizeof(line), "%.3f,%s,%.6f,,\n", a.timestamp, cause,
                          a.fatigue_level);
        }
        out << line;
    }
    if (!out) throw std::runtime_error("failed writing alert log: " + path);
}

}  // namespace svsim::fatigue
