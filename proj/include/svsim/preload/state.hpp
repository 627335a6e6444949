#pragma once

#include <array>
#include <cstdint>

#include "svsim/geometry.hpp"

namespace svsim::preload {

// Aircraft state at one frame. Heading is a compass angle (radians, 0 = +y,
// increasing toward +x); theta is the angle between the view direction and
// the downward vertical, so theta = pi/2 means level flight.
struct AircraftState {
    Vec2 position;          // ground-plane position (m)
    double altitude = 0.0;  // height above terrain datum (m)
    double speed = 0.0;     // m/s
    double heading = 0.0;   // radians
    double theta = kPi / 2.0;  // view inclination from vertical (radians)
    double turn_rate = 0.0;    // d(heading)/dt, radians/second, signed
    double bank = 0.0;         // bank angle (radians), positive = right wing down
    double timestamp = 0.0;    // seconds
};

struct PreloadConfig {
    double d_gain = 0.35;        // scales look-ahead depth
    double delta_t = 5.0;        // anticipation horizon (s)
    double sigma0 = deg_to_rad(30.0);   // nominal half-angle of view wedge
    double eta_gain = 1.0;       // scales turn-induced wedge asymmetry
    double theta_min = deg_to_rad(5.0);   // clamp for depth term
    double theta_max = deg_to_rad(85.0);
    double sigma_floor = deg_to_rad(1.0);
    double sigma_ceil = deg_to_rad(89.5);
    double base_error = 40.0;    // vertical-error tolerance outside interest spots (m)
    double fine_error = 0.0;     // tolerance inside interest spots (m)
    std::uint64_t max_bytes_per_frame = 0;  // 0 = unlimited
    int evict_after_frames = 120;
};

// Forward-looking triangular region: apex at the aircraft, far edge at
// distance d, wedge half-angles sigma_l (left of track) and sigma_r (right).
struct PreloadRegion {
    Vec2 apex;
    double heading = 0.0;
    double depth = 0.0;    // d (m)
    double sigma_l = 0.0;  // radians
    double sigma_r = 0.0;
    double area = 0.0;     // d^2 (tan sigma_l + tan sigma_r) / 2

    Vec2 far_center() const { return apex + heading_forward(heading) * depth; }
    Vec2 far_left() const { return far_center() + heading_left(heading) * (depth * std::tan(sigma_l)); }
    Vec2 far_right() const { return far_center() + heading_right(heading) * (depth * std::tan(sigma_r)); }
    std::array<Vec2, 3> corners() const { return {apex, far_left(), far_right()}; }
    Rect bounds() const {
        auto c = corners();
        return bounding_rect(c.data(), 3);
    }
};

// Depth: d = d_gain * tan(theta_c) * (h + v * delta_t * cos(theta)) with
// theta_c the clamped inclination; the cos term uses the raw theta.
// Half-angles: sigma_l = sigma0 + eta_gain * turn_rate * sin(bank) and
// sigma_r the mirror image, both clamped to [sigma_floor, sigma_ceil], so a
// turn widens the wedge toward its inside.
PreloadRegion compute_preload_region(const AircraftState& state, const PreloadConfig& cfg);

// Axis-aligned bounding box of the region's three corners.
Rect region_to_domain(const PreloadRegion& region);

}  // namespace svsim::preload
