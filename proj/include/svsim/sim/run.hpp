#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svsim/fatigue/warning.hpp"
#include "svsim/gaze/interest.hpp"
#include "svsim/sim/config.hpp"
#include "svsim/sim/scenario.hpp"

namespace svsim::sim {

// One frame of the throughput comparison. bytes_prediction and bytes_baseline
// are the bytes each pipeline actually transfers this frame (cache misses);
// nodes_loaded counts the predictive pipeline's newly transferred nodes.
struct FrameMetrics {
    int frame = 0;
    std::uint64_t bytes_prediction = 0;
    std::uint64_t bytes_baseline = 0;
    std::uint64_t nodes_loaded = 0;
    double fatigue_level = 0.0;
    int alerts = 0;
};

struct ScenarioResult {
    std::string name;
    int detected = 0;  // incidents with an alert inside the reaction window
    int total = 0;     // scripted incidents
    double accuracy = 1.0;  // detected/total; 1.0 by convention when total = 0
    bool no_incidents = false;

    int alerts_total = 0;
    int fatigue_alerts = 0;  // alerts caused by fatigue near a risk spot

    std::uint64_t bytes_prediction_total = 0;
    std::uint64_t bytes_baseline_total = 0;
    std::uint64_t nodes_loaded_total = 0;

    int gaze_events = 0;
    int hits_remapped = 0;
    int hits_dropped = 0;
    int risk_spots = 0;
};

struct RunResult {
    Scenario scenario;
    ScenarioResult summary;
    std::vector<FrameMetrics> frames;
    std::vector<fatigue::AlertEvent> alerts;
    gaze::InterestList interests;  // input list updated with this trip's gaze
    std::vector<fatigue::RiskSpot> spots;
};

// Runs one scenario end to end: terrain and tree, flight trace, risk spots,
// synthetic gaze, classification and ground remap, then the frame loop that
// steps the predictive and full-resolution caches, the fatigue estimate, and
// the warning logic. interests_in stays fixed for the whole trip; the
// returned list carries the post-trip update. scenario_dir anchors a relative
// terrain file path.
RunResult run_scenario(const Scenario& sc, const SimConfig& cfg,
                       const gaze::InterestList& interests_in,
                       const std::string& scenario_dir = ".");

}  // namespace svsim::sim
