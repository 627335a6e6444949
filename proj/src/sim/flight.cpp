#include "svsim/sim/flight.hpp"

#include <cmath>

namespace svsim::sim {

namespace {

constexpr double kGravity = 9.80665;

struct PhaseProfile {
    PhaseKind kind;
    double t0, t1;
    double alt0, alt1;
    double speed0, speed1;
};

// Altitude and ground-speed keyframes per phase. Takeoff climbs from the
// entry altitude to cruise, landing descends to the final altitude, cruise
// holds; ground speed ramps up through takeoff and bleeds off in landing.
std::vector<PhaseProfile> build_profiles(const Scenario& sc) {
    std::vector<PhaseProfile> out;
    double t = 0.0;
    double alt = sc.initial_altitude;
    for (const Phase& p : sc.phases) {
        PhaseProfile prof;
        prof.kind = p.kind;
        prof.t0 = t;
        prof.t1 = t + p.duration;
        prof.alt0 = alt;
        switch (p.kind) {
            case PhaseKind::takeoff:
                prof.alt1 = sc.cruise_altitude;
                prof.speed0 = 0.75 * sc.cruise_speed;
                prof.speed1 = sc.cruise_speed;
                break;
            case PhaseKind::cruise:
                prof.alt0 = sc.cruise_altitude;
                prof.alt1 = sc.cruise_altitude;
                prof.speed0 = sc.cruise_speed;
                prof.speed1 = sc.cruise_speed;
                break;
            case PhaseKind::landing:
                prof.alt1 = sc.final_altitude;
                prof.speed0 = sc.cruise_speed;
                prof.speed1 = 0.85 * sc.cruise_speed;
                break;
        }
        alt = prof.alt1;
        t = prof.t1;
        out.push_back(prof);
    }
    return out;
}

}  // namespace

int phase_at(const Scenario& sc, double t) {
    const auto bounds = sc.phase_boundaries();
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (t < bounds[i + 1]) return static_cast<int>(i);
    }
    return static_cast<int>(sc.phases.size()) - 1;
}

std::vector<preload::AircraftState> generate_flight(const Scenario& sc) {
    validate_scenario(sc);
    const auto profiles = build_profiles(sc);
    const double dt = 1.0 / sc.frame_rate;
    const int n = sc.frame_count();

    Vec2 pos = sc.start;
    std::size_t wp = 0;
    double heading = 0.0;
    {
        const Vec2 d = sc.waypoints[0] - pos;
        heading = std::atan2(d.x, d.y);
    }

    std::vector<preload::AircraftState> trace;
    trace.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double t = k * dt;
        const PhaseProfile& prof = profiles[static_cast<std::size_t>(phase_at(sc, t))];
        const double w = (t - prof.t0) / (prof.t1 - prof.t0);
        const double alt = prof.alt0 + (prof.alt1 - prof.alt0) * w;
        const double v_ground = prof.speed0 + (prof.speed1 - prof.speed0) * w;
        const double climb = prof.alt1 == prof.alt0
                                 ? 0.0
                                 : (prof.alt1 - prof.alt0) / (prof.t1 - prof.t0);

        const double capture = std::max(250.0, 3.0 * v_ground);
        while (wp < sc.waypoints.size() && distance(pos, sc.waypoints[wp]) <= capture) ++wp;
        double desired = heading;
        if (wp < sc.waypoints.size()) {
            const Vec2 d = sc.waypoints[wp] - pos;
            desired = std::atan2(d.x, d.y);
        }
        const double max_step = sc.max_turn_rate * dt;
        const double dpsi = std::clamp(wrap_pi(desired - heading), -max_step, max_step);
        const double rate = dpsi / dt;

        preload::AircraftState s;
        s.position = pos;
        s.altitude = alt;
        s.speed = std::hypot(v_ground, climb);
        s.heading = heading;
        s.theta = std::atan2(v_ground, climb);
        s.turn_rate = rate;
        s.bank = std::atan2(v_ground * rate, kGravity);
        s.timestamp = t;
        trace.push_back(s);

        heading = wrap_pi(heading + dpsi);
        pos = pos + heading_forward(heading) * (v_ground * dt);
    }
    return trace;
}

}  // namespace svsim::sim
