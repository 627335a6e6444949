#include "svsim/sim/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "svsim/rng.hpp"

namespace svsim::sim {

const char* phase_kind_name(PhaseKind k) {
    switch (k) {
        case PhaseKind::takeoff: return "takeoff";
        case PhaseKind::cruise: return "cruise";
        case PhaseKind::landing: return "landing";
    }
    return "cruise";
}

namespace {

PhaseKind parse_phase(const std::string& s) {
    if (s == "takeoff") return PhaseKind::takeoff;
    if (s == "cruise") return PhaseKind::cruise;
    if (s == "landing") return PhaseKind::landing;
    throw std::invalid_argument("unknown phase kind: " + s);
}

bool power_of_two_plus_one(int n) {
    const int m = n - 1;
    return m >= 2 && (m & (m - 1)) == 0;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::vector<double> Scenario::phase_boundaries() const {
    std::vector<double> bounds{0.0};
    for (const Phase& p : phases) bounds.push_back(bounds.back() + p.duration);
    return bounds;
}

void validate_scenario(const Scenario& sc) {
    if (sc.duration <= 0) throw std::invalid_argument("scenario duration must be positive");
    if (sc.frame_rate <= 0) throw std::invalid_argument("frame_rate must be positive");
    if (sc.phases.empty()) throw std::invalid_argument("scenario needs at least one phase");
    double sum = 0.0;
    for (const Phase& p : sc.phases) {
        if (p.duration <= 0) throw std::invalid_argument("phase durations must be positive");
        sum += p.duration;
    }
    if (std::abs(sum - sc.duration) > 1e-6) {
        throw std::invalid_argument("phase durations must sum to the scenario duration");
    }
    for (const FatigueEpisode& e : sc.fatigue_script) {
        if (!(e.start >= 0 && e.start < e.end && e.end <= sc.duration)) {
            throw std::invalid_argument("fatigue episode outside [0, duration]");
        }
        if (e.closure < 0 || e.closure > 1) {
            throw std::invalid_argument("episode closure must be in [0, 1]");
        }
    }
    for (double t : sc.incident_script) {
        if (t < 0 || t > sc.duration) {
            throw std::invalid_argument("incident timestamp outside [0, duration]");
        }
    }
    if (sc.waypoints.empty()) throw std::invalid_argument("scenario needs at least one waypoint");
    if (sc.cruise_speed <= 0) throw std::invalid_argument("cruise_speed must be positive");
    if (sc.max_turn_rate <= 0) throw std::invalid_argument("max_turn_rate must be positive");
    if (sc.cruise_altitude <= 0) throw std::invalid_argument("cruise_altitude must be positive");
    if (sc.initial_altitude < 0 || sc.final_altitude < 0) {
        throw std::invalid_argument("altitudes must be non-negative");
    }
    if (sc.generate_terrain) {
        const TerrainGen& g = sc.terrain_gen;
        if (!power_of_two_plus_one(g.size)) {
            throw std::invalid_argument("generated terrain size must be a power of two plus one");
        }
        if (g.cell_size <= 0) throw std::invalid_argument("terrain cell size must be positive");
        if (g.amplitude < 0) throw std::invalid_argument("terrain amplitude must be non-negative");
        if (g.roughness <= 0 || g.roughness > 1) {
            throw std::invalid_argument("terrain roughness must be in (0, 1]");
        }
    } else if (sc.terrain_path.empty()) {
        throw std::invalid_argument("scenario needs a terrain source");
    }
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open scenario: " + path);

    Scenario sc;
    sc.generate_terrain = false;
    bool terrain_seen = false;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;

        auto want = [&](auto&... vals) {
            if (!((ls >> vals) && ...)) {
                throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                            ": malformed " + key + " line");
            }
        };

        if (key == "name") {
            want(sc.name);
        } else if (key == "seed") {
            want(sc.seed);
        } else if (key == "duration") {
            want(sc.duration);
        } else if (key == "frame_rate") {
            want(sc.frame_rate);
        } else if (key == "route_id") {
            want(sc.route_id);
        } else if (key == "phase") {
            std::string kind;
            double dur;
            want(kind, dur);
            sc.phases.push_back({parse_phase(kind), dur});
        } else if (key == "terrain") {
            std::string mode;
            want(mode);
            if (mode == "generate") {
                TerrainGen g;
                if (!(ls >> g.size >> g.cell_size >> g.base >> g.amplitude >> g.roughness >>
                      g.seed)) {
                    throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                                ": malformed terrain generate line");
                }
                sc.terrain_gen = g;
                sc.generate_terrain = true;
            } else if (mode == "file") {
                want(sc.terrain_path);
                sc.generate_terrain = false;
            } else {
                throw std::invalid_argument("unknown terrain mode: " + mode);
            }
            terrain_seen = true;
        } else if (key == "start") {
            want(sc.start.x, sc.start.y);
        } else if (key == "waypoint") {
            Vec2 w;
            want(w.x, w.y);
            sc.waypoints.push_back(w);
        } else if (key == "initial_altitude") {
            want(sc.initial_altitude);
        } else if (key == "final_altitude") {
            want(sc.final_altitude);
        } else if (key == "cruise_altitude") {
            want(sc.cruise_altitude);
        } else if (key == "cruise_speed") {
            want(sc.cruise_speed);
        } else if (key == "max_turn_rate_deg") {
            double deg;
            want(deg);
            sc.max_turn_rate = deg_to_rad(deg);
        } else if (key == "episode") {
            FatigueEpisode e;
            want(e.start, e.end, e.closure);
            sc.fatigue_script.push_back(e);
        } else if (key == "incident") {
            double t;
            want(t);
            sc.incident_script.push_back(t);
        } else {
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": unknown scenario key: " + key);
        }
    }
    if (!terrain_seen) throw std::invalid_argument("scenario needs a terrain line: " + path);
    if (sc.name.empty()) sc.name = std::filesystem::path(path).stem().string();
    validate_scenario(sc);
    return sc;
}

std::string scenario_to_text(const Scenario& sc) {
    std::ostringstream out;
    out << "# flight scenario\n";
    if (!sc.name.empty()) out << "name " << sc.name << "\n";
    out << "seed " << sc.seed << "\n";
    out << "duration " << fmt(sc.duration) << "\n";
    out << "frame_rate " << fmt(sc.frame_rate) << "\n";
    out << "route_id " << sc.route_id << "\n";
    for (const Phase& p : sc.phases) {
        out << "phase " << phase_kind_name(p.kind) << " " << fmt(p.duration) << "\n";
    }
    if (sc.generate_terrain) {
        const TerrainGen& g = sc.terrain_gen;
        out << "terrain generate " << g.size << " " << fmt(g.cell_size) << " " << fmt(g.base)
            << " " << fmt(g.amplitude) << " " << fmt(g.roughness) << " " << g.seed << "\n";
    } else {
        out << "terrain file " << sc.terrain_path << "\n";
    }
    out << "start " << fmt(sc.start.x) << " " << fmt(sc.start.y) << "\n";
    for (const Vec2& w : sc.waypoints) {
        out << "waypoint " << fmt(w.x) << " " << fmt(w.y) << "\n";
    }
    out << "initial_altitude " << fmt(sc.initial_altitude) << "\n";
    out << "final_altitude " << fmt(sc.final_altitude) << "\n";
    out << "cruise_altitude " << fmt(sc.cruise_altitude) << "\n";
    out << "cruise_speed " << fmt(sc.cruise_speed) << "\n";
    out << "max_turn_rate_deg " << fmt(rad_to_deg(sc.max_turn_rate)) << "\n";
    for (const FatigueEpisode& e : sc.fatigue_script) {
        out << "episode " << fmt(e.start) << " " << fmt(e.end) << " " << fmt(e.closure) << "\n";
    }
    for (double t : sc.incident_script) out << "incident " << fmt(t) << "\n";
    return out.str();
}

void save_scenario(const Scenario& sc, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write scenario: " + path);
    out << scenario_to_text(sc);
    if (!out) throw std::runtime_error("failed writing scenario: " + path);
}

terrain::HeightField generate_terrain(const TerrainGen& gen) {
    if (!power_of_two_plus_one(gen.size)) {
        throw std::invalid_argument("generated terrain size must be a power of two plus one");
    }
    const int n = gen.size;
    std::vector<double> h(static_cast<std::size_t>(n) * n, 0.0);
    auto at = [&](int i, int j) -> double& { return h[static_cast<std::size_t>(j) * n + i]; };

    Rng rng(gen.seed);
    double scale = gen.amplitude * 0.5;
    at(0, 0) = rng.uniform(-scale, scale);
    at(n - 1, 0) = rng.uniform(-scale, scale);
    at(0, n - 1) = rng.uniform(-scale, scale);
    at(n - 1, n - 1) = rng.uniform(-scale, scale);

    for (int step = n - 1; step > 1; step /= 2) {
        const int half = step / 2;
        // Diamond: square centers from their four corners.
        for (int j = half; j < n; j += step) {
            for (int i = half; i < n; i += step) {
                const double avg = (at(i - half, j - half) + at(i + half, j - half) +
                                    at(i - half, j + half) + at(i + half, j + half)) / 4.0;
                at(i, j) = avg + rng.uniform(-scale, scale);
            }
        }
        // Square: edge midpoints from their available axial neighbors.
        for (int j = 0; j < n; j += half) {
            const int offset = (j / half) % 2 == 0 ? half : 0;
            for (int i = offset; i < n; i += step) {
                double sum = 0.0;
                int cnt = 0;
                if (i - half >= 0) { sum += at(i - half, j); ++cnt; }
                if (i + half < n) { sum += at(i + half, j); ++cnt; }
                if (j - half >= 0) { sum += at(i, j - half); ++cnt; }
                if (j + half < n) { sum += at(i, j + half); ++cnt; }
                at(i, j) = sum / cnt + rng.uniform(-scale, scale);
            }
        }
        scale *= gen.roughness;
    }

    std::vector<float> cells(h.size());
    for (std::size_t k = 0; k < h.size(); ++k) {
        cells[k] = static_cast<float>(gen.base + h[k]);
    }
    return terrain::HeightField(n, n, gen.cell_size, {0.0, 0.0}, std::move(cells));
}

terrain::HeightField scenario_terrain(const Scenario& sc, const std::string& base_dir) {
    if (sc.generate_terrain) return generate_terrain(sc.terrain_gen);
    std::filesystem::path p(sc.terrain_path);
    if (p.is_relative() && !base_dir.empty()) p = std::filesystem::path(base_dir) / p;
    return terrain::load_hf1(p.string());
}

}  // namespace svsim::sim
