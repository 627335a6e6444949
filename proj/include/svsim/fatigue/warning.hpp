#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "svsim/fatigue/fatigue.hpp"
#include "svsim/preload/state.hpp"
#include "svsim/terrain/heightfield.hpp"

namespace svsim::fatigue {

enum class SpotKind { terrain, obstacle };

struct RiskSpot {
    Vec2 location;
    SpotKind kind = SpotKind::terrain;
    double clearance_violation = 0.0;  // meters above the clearance floor
    double warning_range = 0.0;        // alarm arming radius
};

struct RiskConfig {
    double clearance = 500.0;         // required height margin over terrain
    double range_multiplier = 10.0;   // warning_range per meter of violation
    double range_floor = 1000.0;
    double merge_radius = 1500.0;     // spot deduplication distance
    int route_stride = 10;            // scan every nth route state
};

// Scans the forward preload region of (strided) route states for local
// elevation maxima rising above altitude - clearance. Candidates merge within
// merge_radius, keeping the largest violation; warning_range is
// max(range_multiplier * violation, range_floor).
std::vector<RiskSpot> detect_risk_spots(const terrain::HeightField& field,
                                        std::span<const preload::AircraftState> route,
                                        const preload::PreloadConfig& preload_cfg,
                                        const RiskConfig& cfg);

enum class AlertCause { fatigue_near_risk, flight_risk };

struct AlertEvent {
    double timestamp = 0.0;
    AlertCause cause = AlertCause::fatigue_near_risk;
    double fatigue_level = 0.0;
    std::optional<RiskSpot> spot;  // present for fatigue_near_risk
};

// Cooldown tracker threaded through evaluate_warning calls.
struct WarningState {
    double last_alert = -std::numeric_limits<double>::infinity();
};

// Fires fatigue_near_risk when the aircraft sits inside some spot's warning
// range while level exceeds fatigue_threshold (nearest spot attached);
// otherwise flight_risk when flight_risk exceeds risk_threshold. At most one
// alert per cooldown_s.
std::optional<AlertEvent> evaluate_warning(const FatigueState& fatigue,
                                           const preload::AircraftState& state,
                                           std::span<const RiskSpot> spots,
                                           double flight_risk, const FatigueConfig& cfg,
                                           WarningState& warnings);

// CSV log with header t,cause,level,spot_x,spot_y; spot columns stay empty
// for alerts without a spot.
void save_alerts(std::span<const AlertEvent> alerts, const std::string& path);

}  // namespace svsim::fatigue
