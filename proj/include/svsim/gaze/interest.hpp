#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "svsim/geometry.hpp"

namespace svsim::gaze {

// Terrain location that accumulated pilot attention; priority is seconds of
// gaze time, decayed per trip.
struct InterestSpot {
    Vec2 location;
    double priority = 0.0;
    double radius = 0.0;
    std::string trip_id;
    std::uint64_t last_updated = 0;
};

// Bounded list ordered by non-increasing priority.
struct InterestList {
    std::vector<InterestSpot> spots;
    std::size_t capacity = 16;

    bool sorted() const {
        for (std::size_t k = 1; k < spots.size(); ++k)
            if (spots[k].priority > spots[k - 1].priority) return false;
        return true;
    }
};

struct GroundHit {
    Vec2 point;
    double attention = 0.0;  // seconds
};

struct InterestConfig {
    double merge_radius = 500.0;   // meters, hit clustering and spot merging
    double decay = 0.8;            // priority factor applied to existing spots per trip
    std::size_t capacity = 16;     // top-N kept after update
    double spot_radius = 750.0;    // radius for newly created spots
    std::uint64_t stamp = 0;       // trip/frame counter recorded on touched spots
};

// One per-trip update: cluster hits, decay and merge into the previous list,
// insert new spots, sort by priority and keep the top N.
InterestList update_interest_list(const InterestList& prev, std::span<const GroundHit> hits,
                                  const std::string& trip_id, const InterestConfig& cfg);

// Plain-text table "x,y,priority,radius,trip_id", one spot per line.
void save_interest_list(const InterestList& list, const std::string& path);
InterestList load_interest_list(const std::string& path, std::size_t capacity = 16);

}  // namespace svsim::gaze
