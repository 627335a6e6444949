#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "svsim/fatigue/warning.hpp"
#include "svsim/rng.hpp"
#include "svsim/sim/flight.hpp"
#include "svsim/sim/scenario.hpp"

namespace svsim::sim {
namespace {

Vec2 bearing_step(Vec2 from, double bearing, double dist) {
    return {from.x + std::sin(bearing) * dist, from.y + std::cos(bearing) * dist};
}

// Highest grid sample within `radius` of `center`; -inf when the disc misses
// the grid entirely.
double area_max_elevation(const terrain::HeightField& field, Vec2 center, double radius) {
    const Vec2 org = field.origin();
    const double cs = field.cell_size();
    const int i0 = std::max(0, static_cast<int>(std::floor((center.x - radius - org.x) / cs)));
    const int i1 = std::min(field.width() - 1,
                            static_cast<int>(std::ceil((center.x + radius - org.x) / cs)));
    const int j0 = std::max(0, static_cast<int>(std::floor((center.y - radius - org.y) / cs)));
    const int j1 = std::min(field.height() - 1,
                            static_cast<int>(std::ceil((center.y + radius - org.y) / cs)));
    double best = -std::numeric_limits<double>::infinity();
    for (int j = j0; j <= j1; ++j) {
        for (int i = i0; i <= i1; ++i) {
            const Vec2 p = field.sample_position(i, j);
            if ((p - center).norm() <= radius) best = std::max(best, field.at(i, j));
        }
    }
    return best;
}

// Max elevation near the trace between t_lo and t_hi, sampled every 10 frames.
double corridor_max_elevation(const terrain::HeightField& field,
                              const std::vector<preload::AircraftState>& flight, double t_lo,
                              double t_hi, double radius) {
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < flight.size(); k += 10) {
        const auto& st = flight[k];
        if (st.timestamp < t_lo || st.timestamp > t_hi) continue;
        best = std::max(best, area_max_elevation(field, st.position, radius));
    }
    return best;
}

Scenario make_standard(std::uint64_t seed) {
    Scenario sc;
    sc.seed = seed;
    sc.name = "standard-" + std::to_string(seed);
    sc.route_id = sc.name;
    sc.duration = 340.0;
    sc.frame_rate = 10.0;
    sc.phases = {{PhaseKind::takeoff, 60.0}, {PhaseKind::cruise, 240.0}, {PhaseKind::landing, 40.0}};
    sc.cruise_speed = 72.0;
    sc.max_turn_rate = deg_to_rad(4.0);
    sc.terrain_gen = {1025, 30.0, 200.0, 500.0, 0.62, mix_seed(seed, 7)};
    sc.generate_terrain = true;

    // Route shape: departure turn late in the climb, one gentle bend
    // mid-cruise, and a sharp turn onto final right as the descent begins.
    // That concentrates fresh-terrain sweeps in the first and last phases;
    // the leg lengths put the last waypoint capture at the top of descent.
    Rng r(mix_seed(seed, 3));
    auto jit = [&](double s) { return r.uniform(-s, s); };
    const Vec2 s0{3200.0 + jit(300.0), 2600.0 + jit(300.0)};
    const double b1 = deg_to_rad(20.0 + jit(6.0));
    const Vec2 w1 = bearing_step(s0, b1, 3000.0);
    const double b2 = b1 + deg_to_rad(50.0 + jit(5.0));
    const Vec2 w2 = bearing_step(w1, b2, 9200.0);
    const double b3 = b2 - deg_to_rad(12.0 + jit(3.0));
    const Vec2 w3 = bearing_step(w2, b3, 9100.0);
    const double b4 = b3 + deg_to_rad(130.0 + jit(6.0));
    const Vec2 w4 = bearing_step(w3, b4, 2000.0);
    sc.start = s0;
    sc.waypoints = {w1, w2, w3, w4};

    sc.cruise_altitude = 3000.0;
    sc.initial_altitude = 2700.0;
    const terrain::HeightField field = generate_terrain(sc.terrain_gen);
    sc.final_altitude = std::max(450.0, area_max_elevation(field, w4, 1500.0) + 150.0);

    validate_scenario(sc);
    return sc;
}

Scenario make_turny(std::uint64_t seed) {
    Scenario sc;
    sc.seed = seed;
    sc.name = "turny-" + std::to_string(seed);
    sc.route_id = sc.name;
    sc.duration = 300.0;
    sc.frame_rate = 10.0;
    sc.phases = {{PhaseKind::takeoff, 50.0}, {PhaseKind::cruise, 200.0}, {PhaseKind::landing, 50.0}};
    sc.cruise_speed = 85.0;
    sc.max_turn_rate = deg_to_rad(4.0);
    sc.terrain_gen = {513, 60.0, 180.0, 260.0, 0.52, mix_seed(seed, 9)};
    sc.generate_terrain = true;

    Rng r(mix_seed(seed, 3));
    auto jit = [&](double s) { return r.uniform(-s, s); };
    const double bends[4] = {55.0, -65.0, 45.0, -50.0};
    const double legs[4] = {4600.0, 5000.0, 4600.0, 4200.0};
    Vec2 at{2800.0 + jit(300.0), 2800.0 + jit(300.0)};
    sc.start = at;
    double bearing = deg_to_rad(35.0 + jit(6.0));
    at = bearing_step(at, bearing, 3400.0);
    sc.waypoints.push_back(at);
    for (int k = 0; k < 4; ++k) {
        bearing += deg_to_rad(bends[k] + jit(8.0));
        at = bearing_step(at, bearing, legs[k] + jit(450.0));
        at.x = std::clamp(at.x, 1800.0, 28900.0);
        at.y = std::clamp(at.y, 1800.0, 28900.0);
        sc.waypoints.push_back(at);
    }
    bearing += deg_to_rad(90.0 + jit(10.0));
    at = bearing_step(at, bearing, 2600.0);
    at.x = std::clamp(at.x, 1800.0, 28900.0);
    at.y = std::clamp(at.y, 1800.0, 28900.0);
    sc.waypoints.push_back(at);

    sc.cruise_altitude = 2600.0;
    sc.initial_altitude = 2300.0;
    const terrain::HeightField field = generate_terrain(sc.terrain_gen);
    sc.final_altitude =
        std::max(380.0, area_max_elevation(field, sc.waypoints.back(), 1500.0) + 150.0);

    validate_scenario(sc);
    return sc;
}

// Over-terrain pass with scripted deep-closure episodes. Construction runs in
// two passes: a provisional flight fixes the ground track, the track picks the
// cruise altitude (corridor peak + 300 m, so the peak violates the default
// 500 m clearance by 200 m and becomes a risk spot with a 2 km warning
// range), and incidents land where the track stays inside a warning range
// with margin while an episode keeps the fatigue level high.
Scenario make_fatigue_heavy(std::uint64_t seed) {
    Scenario sc;
    sc.seed = seed;
    sc.name = "fatigue-heavy-" + std::to_string(seed);
    sc.route_id = sc.name;
    sc.duration = 240.0;
    sc.frame_rate = 10.0;
    sc.phases = {{PhaseKind::takeoff, 40.0}, {PhaseKind::cruise, 160.0}, {PhaseKind::landing, 40.0}};
    sc.cruise_speed = 70.0;
    sc.max_turn_rate = deg_to_rad(4.0);
    sc.terrain_gen = {257, 60.0, 200.0, 500.0, 0.55, mix_seed(seed, 7)};
    sc.generate_terrain = true;

    const terrain::HeightField field = generate_terrain(sc.terrain_gen);

    Rng r(mix_seed(seed, 3));
    auto jit = [&](double s) { return r.uniform(-s, s); };

    // Start in the flattest of a few candidate pads so the initial climb
    // clears local terrain comfortably.
    Vec2 start{0, 0};
    double start_guard = std::numeric_limits<double>::infinity();
    for (int k = 0; k < 12; ++k) {
        const Vec2 c{r.uniform(1900.0, 5200.0), r.uniform(1900.0, 5200.0)};
        const double g = area_max_elevation(field, c, 1800.0);
        if (g < start_guard) {
            start_guard = g;
            start = c;
        }
    }
    sc.start = start;
    const double b1 = deg_to_rad(40.0 + jit(10.0));
    Vec2 w1 = bearing_step(start, b1, 6200.0 + jit(400.0));
    const double b2 = b1 + deg_to_rad(14.0 + jit(6.0));
    Vec2 w2 = bearing_step(w1, b2, 7400.0);
    for (Vec2* w : {&w1, &w2}) {
        w->x = std::clamp(w->x, 1100.0, 14260.0);
        w->y = std::clamp(w->y, 1100.0, 14260.0);
    }
    sc.waypoints = {w1, w2};

    // Provisional altitudes; the ground track does not depend on them.
    sc.cruise_altitude = 900.0;
    sc.initial_altitude = 700.0;
    sc.final_altitude = 500.0;
    const std::vector<preload::AircraftState> track = generate_flight(sc);

    const double peak = corridor_max_elevation(field, track, 45.0, 195.0, 1200.0);
    sc.cruise_altitude = peak + 300.0;
    const double climb_guard =
        corridor_max_elevation(field, track, 0.0, 48.0, 900.0) + 100.0;
    sc.initial_altitude = std::max(sc.cruise_altitude - 250.0, climb_guard);
    if (sc.initial_altitude > sc.cruise_altitude - 100.0)
        sc.cruise_altitude = sc.initial_altitude + 100.0;
    const double final_guard =
        corridor_max_elevation(field, track, 196.0, sc.duration, 900.0) + 130.0;
    sc.final_altitude = std::min(final_guard, sc.cruise_altitude - 80.0);

    const std::vector<preload::AircraftState> flight = generate_flight(sc);
    const std::vector<fatigue::RiskSpot> spots =
        detect_risk_spots(field, flight, preload::PreloadConfig{}, fatigue::RiskConfig{});

    // Frames where some spot is comfortably in warning range; incidents need
    // the range condition to hold from 8 s before to 6 s after, and an episode
    // reaching 30 s back so the fatigue level is already high.
    std::vector<std::pair<double, double>> windows;
    double open = -1.0;
    for (const auto& st : flight) {
        bool gated = false;
        for (const auto& sp : spots) {
            if ((st.position - sp.location).norm() <= 0.9 * sp.warning_range) {
                gated = true;
                break;
            }
        }
        if (gated && open < 0.0) open = st.timestamp;
        if (!gated && open >= 0.0) {
            windows.emplace_back(open, st.timestamp);
            open = -1.0;
        }
    }
    if (open >= 0.0) windows.emplace_back(open, flight.back().timestamp);

    double best_lo = 0.0, best_hi = 0.0;
    for (const auto& [lo, hi] : windows) {
        const double a = std::max(lo, 52.0);
        const double b = std::min(hi, 196.0);
        if (b - a > best_hi - best_lo) {
            best_lo = a;
            best_hi = b;
        }
    }
    if (best_hi - best_lo >= 26.0) {
        const double t1 = best_lo + 8.0;
        const double t2 = std::min(t1 + 12.0, best_hi - 6.0);
        sc.incident_script = {t1, t2};
        sc.fatigue_script = {{t1 - 30.0, std::min(t2 + 15.0, 198.0), 0.85}};
    } else if (best_hi - best_lo >= 15.0) {
        const double t1 = best_lo + 8.0;
        sc.incident_script = {t1};
        sc.fatigue_script = {{t1 - 30.0, std::min(t1 + 15.0, 198.0), 0.85}};
    } else {
        sc.fatigue_script = {{90.0, 150.0, 0.85}};
    }

    validate_scenario(sc);
    return sc;
}

}  // namespace

Scenario make_preset(const std::string& preset, std::uint64_t seed) {
    if (preset == "standard") return make_standard(seed);
    if (preset == "turny") return make_turny(seed);
    if (preset == "fatigue-heavy") return make_fatigue_heavy(seed);
    throw std::invalid_argument("unknown preset '" + preset +
                                "' (expected standard, turny, or fatigue-heavy)");
}

}  // namespace svsim::sim
