#include "svsim/gaze/remap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace svsim::gaze {

namespace {

struct Vec3 {
    double x, y, z;

    Vec3 operator+(Vec3 o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
};

Vec3 normalize(Vec3 v) {
    const double n = std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z);
    return {v.x / n, v.y / n, v.z / n};
}

// Camera basis from the aircraft state: forward along the heading pitched
// down by (theta - pi/2) + cam.pitch_down, right in the ground plane, up
// completing the right-handed frame.
Vec3 view_ray(const preload::AircraftState& s, const CameraModel& cam, Vec2 screen) {
    const double pitch = (s.theta - kPi / 2.0) + cam.pitch_down;
    const double ch = std::cos(s.heading), sh = std::sin(s.heading);
    const double cp = std::cos(pitch), sp = std::sin(pitch);
    const Vec3 fwd{sh * cp, ch * cp, -sp};
    const Vec3 right{ch, -sh, 0.0};
    const Vec3 up{sh * sp, ch * sp, cp};  // right x fwd

    const double xc = std::tan(cam.fov_x / 2.0) * (2.0 * screen.x - 1.0);
    const double yc = std::tan(cam.fov_y / 2.0) * (1.0 - 2.0 * screen.y);
    return normalize(fwd + right * xc + up * yc);
}

bool cast_ray(const terrain::HeightField& field, Vec3 origin, Vec3 dir, Vec2* hit) {
    const Rect domain = field.domain();
    const double step = field.cell_size();
    const double max_elev = field.max_elevation();

    auto height_above = [&](double t) {
        const Vec3 p = origin + dir * t;
        return p.z - field.elevation_at({p.x, p.y});
    };

    if (!domain.contains({origin.x, origin.y})) return false;
    if (height_above(0.0) <= 0.0) return false;  // starting under the surface

    double t = 0.0;
    while (true) {
        const double t_next = t + step;
        const Vec3 p = origin + dir * t_next;
        if (!domain.contains({p.x, p.y})) return false;
        if (p.z > max_elev && dir.z >= 0.0) return false;  // climbing above all terrain
        if (height_above(t_next) <= 0.0) {
            double lo = t, hi = t_next;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (height_above(mid) > 0.0 ? lo : hi) = mid;
            }
            const Vec3 h = origin + dir * (0.5 * (lo + hi));
            *hit = {h.x, h.y};
            return true;
        }
        t = t_next;
    }
}

}  // namespace

preload::AircraftState interpolate_state(std::span<const preload::AircraftState> flight,
                                         double t) {
    if (flight.empty()) throw std::invalid_argument("empty flight trace");
    if (t < flight.front().timestamp || t > flight.back().timestamp) {
        throw std::invalid_argument("time outside flight trace");
    }
    auto it = std::lower_bound(flight.begin(), flight.end(), t,
                               [](const preload::AircraftState& s, double v) {
                                   return s.timestamp < v;
                               });
    if (it == flight.begin()) return flight.front();
    const preload::AircraftState& b = *it;
    const preload::AircraftState& a = *(it - 1);
    const double span = b.timestamp - a.timestamp;
    const double w = span > 0.0 ? (t - a.timestamp) / span : 0.0;

    preload::AircraftState s;
    s.position = a.position + (b.position - a.position) * w;
    s.altitude = a.altitude + (b.altitude - a.altitude) * w;
    s.speed = a.speed + (b.speed - a.speed) * w;
    s.heading = a.heading + wrap_pi(b.heading - a.heading) * w;
    s.theta = a.theta + (b.theta - a.theta) * w;
    s.turn_rate = a.turn_rate + (b.turn_rate - a.turn_rate) * w;
    s.bank = a.bank + (b.bank - a.bank) * w;
    s.timestamp = t;
    return s;
}

std::vector<GroundHit> remap_gaze_to_terrain(std::span<const GazeEvent> events,
                                             std::span<const preload::AircraftState> flight,
                                             const CameraModel& cam,
                                             const terrain::HeightField& field,
                                             RemapStats* stats) {
    if (flight.empty()) throw std::invalid_argument("empty flight trace");
    std::vector<GroundHit> hits;
    for (const GazeEvent& ev : events) {
        if (ev.kind == GazeKind::saccade) continue;
        if (stats) ++stats->events_in;

        // The eye trace may outlast the flight log by a fraction of a frame;
        // events past either end use the nearest recorded state.
        const double mid = std::clamp(0.5 * (ev.start + ev.end),
                                      flight.front().timestamp,
                                      flight.back().timestamp);
        const preload::AircraftState s = interpolate_state(flight, mid);
        const Vec3 dir = view_ray(s, cam, ev.centroid);
        const Vec3 origin{s.position.x, s.position.y, s.altitude};
        Vec2 hit;
        if (cast_ray(field, origin, dir, &hit)) {
            hits.push_back({hit, ev.duration()});
            if (stats) ++stats->remapped;
        } else if (stats) {
            ++stats->dropped;
        }
    }
    return hits;
}

}  // namespace svsim::gaze
