#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "svsim/fatigue/warning.hpp"
#include "svsim/gaze/classify.hpp"
#include "svsim/gaze/interest.hpp"
#include "svsim/gaze/remap.hpp"
#include "svsim/preload/state.hpp"
#include "svsim/terrain/tree.hpp"

namespace svsim::sim {

struct SimConfig {
    double tree_alpha = 0.0;
    int tree_max_children = 4;
    std::int64_t tree_max_points = 289;
    terrain::NodeSizeModel size_model;

    preload::PreloadConfig preload;
    gaze::ClassifyConfig classify;
    gaze::InterestConfig interest;
    gaze::CameraModel camera;
    fatigue::FatigueConfig fatigue;
    fatigue::RiskConfig risk;

    double reaction_window_s = 5.0;   // alert-to-incident matching half-width
    double clearance_ref = 500.0;     // flight risk normalization
    bool suppress_alerts = false;
    std::string interest_list_path;   // persisted interest list, optional
};

// Flat "key = value" file, # comments, dotted key prefixes per subsystem.
// Keys ending in _deg hold degrees and convert on load. Unknown keys are
// rejected.
SimConfig load_config(const std::string& path);

// Applies one key/value pair; load_config and tests share it.
void set_config_value(SimConfig& cfg, const std::string& key, const std::string& value);

// Every setting as ordered text key/value pairs, for the run manifest.
std::map<std::string, std::string> config_echo(const SimConfig& cfg);

}  // namespace svsim::sim
