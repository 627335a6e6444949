#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "svsim/terrain/heightfield.hpp"

namespace svsim::sim {

enum class PhaseKind { takeoff, cruise, landing };

struct Phase {
    PhaseKind kind = PhaseKind::cruise;
    double duration = 0.0;  // seconds
};

const char* phase_kind_name(PhaseKind k);

struct FatigueEpisode {
    double start = 0.0;
    double end = 0.0;
    double closure = 0.8;  // fraction of episode time with eyes closed
};

// Procedural terrain request: diamond-square over a (2^k + 1)^2 grid.
struct TerrainGen {
    int size = 257;
    double cell_size = 60.0;
    double base = 200.0;       // elevation offset
    double amplitude = 600.0;  // initial corner displacement scale
    double roughness = 0.55;   // per-level displacement decay
    std::uint64_t seed = 1;
};

struct Scenario {
    std::string name;  // output row label; defaults to the file stem
    std::uint64_t seed = 1;
    double duration = 0.0;
    double frame_rate = 10.0;
    std::string route_id = "trip";
    std::vector<Phase> phases;

    std::string terrain_path;  // HF1 file; empty means generate
    TerrainGen terrain_gen;
    bool generate_terrain = true;

    Vec2 start;
    std::vector<Vec2> waypoints;
    double initial_altitude = 0.0;
    double final_altitude = 0.0;
    double cruise_altitude = 0.0;
    double cruise_speed = 90.0;
    double max_turn_rate = deg_to_rad(4.0);  // radians/second

    std::vector<FatigueEpisode> fatigue_script;
    std::vector<double> incident_script;  // timestamps

    int frame_count() const { return static_cast<int>(duration * frame_rate + 0.5); }
    // Inclusive start time of each phase plus the trailing end time.
    std::vector<double> phase_boundaries() const;
};

// Rejects scenarios whose pieces disagree: phases must sum to duration,
// scripts must stay inside [0, duration], kinematics must be positive.
void validate_scenario(const Scenario& sc);

// Line-oriented scenario text: "key value..." per line, # comments.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& sc, const std::string& path);
std::string scenario_to_text(const Scenario& sc);

// Deterministic fractal terrain for the generate_terrain scenarios.
terrain::HeightField generate_terrain(const TerrainGen& gen);

// Resolves the scenario's terrain source: loads terrain_path (relative paths
// against base_dir) or synthesizes the requested grid.
terrain::HeightField scenario_terrain(const Scenario& sc, const std::string& base_dir);

// Built-in scenario families; seed shapes terrain, route, and scripts.
Scenario make_preset(const std::string& preset, std::uint64_t seed);

}  // namespace svsim::sim
