#pragma once

#include <span>
#include <vector>

#include "svsim/gaze/classify.hpp"
#include "svsim/gaze/interest.hpp"
#include "svsim/preload/state.hpp"
#include "svsim/terrain/heightfield.hpp"

namespace svsim::gaze {

// Pinhole display camera. The optical axis follows the aircraft velocity
// direction tilted down by pitch_down; screen u maps to the horizontal field
// of view, v (downward) to the vertical one.
struct CameraModel {
    double fov_x = deg_to_rad(60.0);
    double fov_y = deg_to_rad(45.0);
    double pitch_down = deg_to_rad(20.0);
};

struct RemapStats {
    int events_in = 0;   // fixations and pursuits considered
    int remapped = 0;
    int dropped = 0;     // ray left the terrain without a hit
};

// Casts each fixation/pursuit centroid through the camera at the aircraft
// state interpolated to the event midpoint and intersects the ray with the
// heightfield (march plus bisection). Hits carry the event duration as
// attention; rays that exit the terrain or point above it are dropped and
// counted. Saccades are skipped entirely.
std::vector<GroundHit> remap_gaze_to_terrain(std::span<const GazeEvent> events,
                                             std::span<const preload::AircraftState> flight,
                                             const CameraModel& cam,
                                             const terrain::HeightField& field,
                                             RemapStats* stats = nullptr);

// Aircraft state linearly interpolated at time t; headings blend along the
// shorter arc. t must lie within the trace's time range.
preload::AircraftState interpolate_state(std::span<const preload::AircraftState> flight,
                                         double t);

}  // namespace svsim::gaze
