#include "svsim/sim/gaze_gen.hpp"

#include <algorithm>
#include <cmath>

#include "svsim/gaze/remap.hpp"
#include "svsim/rng.hpp"

namespace svsim::sim {

namespace {

constexpr double kSampleRate = 100.0;

// Screen projection of a ground point, or nullopt when it falls outside the
// camera frustum.
std::optional<Vec2> project_to_screen(const preload::AircraftState& s,
                                      const gaze::CameraModel& cam,
                                      const terrain::HeightField& field, Vec2 ground) {
    const double pitch = (s.theta - kPi / 2.0) + cam.pitch_down;
    const double ch = std::cos(s.heading), sh = std::sin(s.heading);
    const double cp = std::cos(pitch), sp = std::sin(pitch);

    const double dx = ground.x - s.position.x;
    const double dy = ground.y - s.position.y;
    const double dz = field.elevation_at(ground) - s.altitude;

    // Components along forward / right / up of the camera frame.
    const double f = dx * (sh * cp) + dy * (ch * cp) + dz * (-sp);
    const double r = dx * ch + dy * (-sh);
    const double u3 = dx * (sh * sp) + dy * (ch * sp) + dz * cp;
    if (f <= 1.0) return std::nullopt;

    const double xc = r / f / std::tan(cam.fov_x / 2.0);
    const double yc = u3 / f / std::tan(cam.fov_y / 2.0);
    const Vec2 screen{(xc + 1.0) / 2.0, (1.0 - yc) / 2.0};
    if (screen.x < 0.04 || screen.x > 0.96 || screen.y < 0.04 || screen.y > 0.96) {
        return std::nullopt;
    }
    return screen;
}

struct ClosureScript {
    const Scenario* sc;

    // Eyes-closed flag at time t: scripted square wave inside episodes,
    // nothing outside (natural blinks are layered separately).
    bool closed(double t) const {
        for (const FatigueEpisode& e : sc->fatigue_script) {
            if (t < e.start || t >= e.end) continue;
            const double phase = std::fmod(t - e.start, 2.0);
            return phase < 2.0 * e.closure;
        }
        return false;
    }
    bool inside_episode(double t, double margin) const {
        for (const FatigueEpisode& e : sc->fatigue_script) {
            if (t >= e.start - margin && t <= e.end + margin) return true;
        }
        return false;
    }
};

}  // namespace

GazeGenResult generate_gaze(const Scenario& sc,
                            std::span<const preload::AircraftState> flight,
                            const gaze::InterestList& interests,
                            std::span<const fatigue::RiskSpot> spots,
                            const gaze::CameraModel& cam,
                            const terrain::HeightField& field) {
    Rng rng(mix_seed(sc.seed, 21));
    const int total = static_cast<int>(sc.duration * kSampleRate + 0.5);
    const ClosureScript closure{&sc};

    std::vector<Vec2> targets;
    for (const auto& spot : interests.spots) targets.push_back(spot.location);
    for (const auto& spot : spots) targets.push_back(spot.location);

    GazeGenResult out;
    out.samples.resize(static_cast<std::size_t>(total));

    // Gaze path: alternating dwell segments joined by short scripted saccades.
    Vec2 anchor{0.5, 0.55};
    int i = 0;
    while (i < total) {
        const double t = i / kSampleRate;
        const auto state = gaze::interpolate_state(flight, std::min(t, flight.back().timestamp));

        // Pick the next dwell anchor: ahead of the aircraft or a known spot.
        Vec2 next{0.5 + rng.uniform(-0.06, 0.06), 0.55 + rng.uniform(-0.06, 0.06)};
        if (!targets.empty() && rng.uniform() < 0.45) {
            const Vec2 ground = targets[rng.uniform_int(targets.size())];
            if (auto s = project_to_screen(state, cam, field, ground)) next = *s;
        }
        if (distance(next, anchor) < 0.08) {
            next.x = std::clamp(next.x + (next.x < 0.5 ? 0.12 : -0.12), 0.02, 0.98);
        }

        // Saccade to the new anchor (skipped at the trace start).
        if (i > 0) {
            const int len = 2 + static_cast<int>(rng.uniform_int(3));
            const int end = std::min(i + len, total);
            for (int k = i; k < end; ++k) {
                const double w = static_cast<double>(k - i + 1) / (end - i);
                out.samples[static_cast<std::size_t>(k)].screen =
                    anchor + (next - anchor) * w;
            }
            if (end > i) {
                out.truth.push_back({gaze::GazeKind::saccade, i / kSampleRate,
                                     (end - 1) / kSampleRate});
            }
            i = end;
            if (i >= total) break;
        }
        anchor = next;

        const bool turning = std::abs(state.turn_rate) > 0.5 * sc.max_turn_rate;
        if (turning && rng.uniform() < 0.6) {
            // Pursuit sweep: constant drift fast enough to defeat the
            // fixation dispersion window but well below saccade speed.
            const int len = 40 + static_cast<int>(rng.uniform_int(41));
            const int end = std::min(i + len, total);
            const double speed = rng.uniform(0.3, 0.6);
            const double dir = rng.uniform() < 0.5 ? -1.0 : 1.0;
            Vec2 drift{dir * speed, rng.uniform(-0.1, 0.1)};
            for (int k = i; k < end; ++k) {
                const double dt = (k - i) / kSampleRate;
                Vec2 p = anchor + drift * dt;
                p.x = std::clamp(p.x, 0.02, 0.98);
                p.y = std::clamp(p.y, 0.02, 0.98);
                out.samples[static_cast<std::size_t>(k)].screen = p;
            }
            if (end - i >= 2) {
                out.truth.push_back({gaze::GazeKind::pursuit, i / kSampleRate,
                                     (end - 1) / kSampleRate});
            }
            anchor = anchor + drift * ((end - 1 - i) / kSampleRate);
            anchor.x = std::clamp(anchor.x, 0.02, 0.98);
            anchor.y = std::clamp(anchor.y, 0.02, 0.98);
            i = end;
            continue;
        }

        // Fixation dwell with bounded jitter, so dispersion stays under the
        // classifier threshold.
        const int len = 50 + static_cast<int>(rng.uniform_int(91));
        const int end = std::min(i + len, total);
        for (int k = i; k < end; ++k) {
            const Vec2 jitter{std::clamp(rng.normal() * 0.0012, -0.004, 0.004),
                              std::clamp(rng.normal() * 0.0012, -0.004, 0.004)};
            out.samples[static_cast<std::size_t>(k)].screen = anchor + jitter;
        }
        if (end - i >= 2) {
            out.truth.push_back({gaze::GazeKind::fixation, i / kSampleRate,
                                 (end - 1) / kSampleRate});
        }
        i = end;
    }

    // Rare tracker dropouts, kept clear of closure episodes so scripted
    // fatigue is never erased by a relocalization.
    std::vector<char> dropout(static_cast<std::size_t>(total), 0);
    {
        int k = 2000 + static_cast<int>(rng.uniform_int(2000));
        while (k < total) {
            const int len = 30 + static_cast<int>(rng.uniform_int(21));
            if (!closure.inside_episode(k / kSampleRate, 40.0) &&
                !closure.inside_episode((k + len) / kSampleRate, 40.0)) {
                for (int j = k; j < std::min(k + len, total); ++j) {
                    dropout[static_cast<std::size_t>(j)] = 1;
                }
            }
            k += 9000 + static_cast<int>(rng.uniform_int(3000));
        }
    }

    for (int k = 0; k < total; ++k) {
        gaze::GazeSample& s = out.samples[static_cast<std::size_t>(k)];
        const double t = k / kSampleRate;
        s.timestamp = t;
        s.eye_open = closure.closed(t) ? 0.0 : 1.0;
        s.valid = !dropout[static_cast<std::size_t>(k)];
        s.screen.x = std::clamp(s.screen.x, 0.0, 1.0);
        s.screen.y = std::clamp(s.screen.y, 0.0, 1.0);
    }
    return out;
}

}  // namespace svsim::sim
