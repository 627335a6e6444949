#pragma once

#include <span>
#include <string>
#include <vector>

#include "svsim/geometry.hpp"

namespace svsim::gaze {

// One eye-tracker sample. screen is in normalized display coordinates,
// u rightward and v downward, both in [0,1]. eye_open is the openness
// fraction; valid is false when the tracker lost the eyes.
struct GazeSample {
    double timestamp = 0.0;
    Vec2 screen;
    double eye_open = 1.0;
    bool valid = true;
};

enum class GazeKind { fixation, saccade, pursuit };

struct GazeEvent {
    GazeKind kind = GazeKind::fixation;
    double start = 0.0;
    double end = 0.0;
    Vec2 centroid;
    double dispersion = 0.0;  // (max_u - min_u) + (max_v - min_v) over the span

    double duration() const { return end - start; }
};

struct ClassifyConfig {
    double dispersion_max = 0.02;   // fixation dispersion ceiling, normalized units
    double min_fixation_s = 0.10;
    double saccade_velocity = 1.0;  // normalized units per second
};

// Dispersion-threshold classification. Runs of valid samples are scanned for
// fixations (dispersion within dispersion_max for at least min_fixation_s);
// each stretch between fixations becomes one connector event, a saccade when
// its peak sample-to-sample velocity reaches saccade_velocity and a pursuit
// otherwise. Invalid samples break continuity; events partition the valid
// runs except single-sample leftovers, which span no time.
std::vector<GazeEvent> classify_gaze(std::span<const GazeSample> trace,
                                     const ClassifyConfig& cfg);

// CSV trace with header t,u,v,eye_open,valid. Timestamps must be strictly
// increasing.
std::vector<GazeSample> load_gz1(const std::string& path);
void save_gz1(std::span<const GazeSample> trace, const std::string& path);

}  // namespace svsim::gaze
