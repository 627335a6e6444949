#include "svsim/gaze/classify.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace svsim::gaze {

namespace {

struct Extent {
    double u_min, u_max, v_min, v_max;

    explicit Extent(Vec2 p) : u_min(p.x), u_max(p.x), v_min(p.y), v_max(p.y) {}
    void add(Vec2 p) {
        u_min = std::min(u_min, p.x);
        u_max = std::max(u_max, p.x);
        v_min = std::min(v_min, p.y);
        v_max = std::max(v_max, p.y);
    }
    double dispersion() const { return (u_max - u_min) + (v_max - v_min); }
};

GazeEvent make_event(std::span<const GazeSample> trace, std::size_t lo, std::size_t hi,
                     GazeKind kind) {
    GazeEvent ev;
    ev.kind = kind;
    ev.start = trace[lo].timestamp;
    ev.end = trace[hi].timestamp;
    Extent ext(trace[lo].screen);
    Vec2 sum = trace[lo].screen;
    for (std::size_t k = lo + 1; k <= hi; ++k) {
        ext.add(trace[k].screen);
        sum = sum + trace[k].screen;
    }
    ev.centroid = sum * (1.0 / static_cast<double>(hi - lo + 1));
    ev.dispersion = ext.dispersion();
    return ev;
}

GazeKind connector_kind(std::span<const GazeSample> trace, std::size_t lo, std::size_t hi,
                        const ClassifyConfig& cfg) {
    double peak = 0.0;
    for (std::size_t k = lo; k < hi; ++k) {
        const double dt = trace[k + 1].timestamp - trace[k].timestamp;
        if (dt <= 0.0) continue;
        peak = std::max(peak, distance(trace[k + 1].screen, trace[k].screen) / dt);
    }
    return peak >= cfg.saccade_velocity ? GazeKind::saccade : GazeKind::pursuit;
}

void classify_run(std::span<const GazeSample> trace, std::size_t lo, std::size_t hi,
                  const ClassifyConfig& cfg, std::vector<GazeEvent>& out) {
    std::vector<std::pair<std::size_t, std::size_t>> fixations;
    std::size_t start = lo;
    while (start <= hi) {
        std::size_t end = start;
        Extent ext(trace[start].screen);
        while (end < hi) {
            Extent grown = ext;
            grown.add(trace[end + 1].screen);
            if (grown.dispersion() > cfg.dispersion_max) break;
            ext = grown;
            ++end;
        }
        if (trace[end].timestamp - trace[start].timestamp >= cfg.min_fixation_s) {
            fixations.emplace_back(start, end);
            start = end + 1;
        } else {
            ++start;
        }
    }

    std::size_t cursor = lo;
    for (const auto& [fa, fb] : fixations) {
        if (fa > cursor) {
            out.push_back(make_event(trace, cursor, fa, connector_kind(trace, cursor, fa, cfg)));
        }
        out.push_back(make_event(trace, fa, fb, GazeKind::fixation));
        cursor = fb;
    }
    if (fixations.empty()) {
        if (hi > lo) out.push_back(make_event(trace, lo, hi, connector_kind(trace, lo, hi, cfg)));
    } else if (cursor < hi) {
        out.push_back(make_event(trace, cursor, hi, connector_kind(trace, cursor, hi, cfg)));
    }
}

}  // namespace

std::vector<GazeEvent> classify_gaze(std::span<const GazeSample> trace,
                                     const ClassifyConfig& cfg) {
    if (cfg.dispersion_max <= 0 || cfg.min_fixation_s <= 0 || cfg.saccade_velocity <= 0) {
        throw std::invalid_argument("classification thresholds must be positive");
    }
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i].timestamp <= trace[i - 1].timestamp) {
            throw std::invalid_argument("gaze timestamps must be strictly increasing");
        }
    }

    std::vector<GazeEvent> events;
    std::size_t i = 0;
    while (i < trace.size()) {
        if (!trace[i].valid) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < trace.size() && trace[j + 1].valid) ++j;
        classify_run(trace, i, j, cfg, events);
        i = j + 1;
    }
    return events;
}

std::vector<GazeSample> load_gz1(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open gaze trace: " + path);
    std::vector<GazeSample> trace;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty gaze trace: " + path);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        GazeSample s;
        double valid_flag = 1.0;
        double* fields[5] = {&s.timestamp, &s.screen.x, &s.screen.y, &s.eye_open, &valid_flag};
        for (double* f : fields) {
            if (!std::getline(ls, tok, ',')) {
                throw std::runtime_error("malformed gaze trace line in " + path + ": " + line);
            }
            try {
                *f = std::stod(tok);
            } catch (const std::exception&) {
                throw std::runtime_error("malformed gaze trace line in " + path + ": " + line);
            }
        }
        s.valid = valid_flag != 0.0;
        if (!trace.empty() && s.timestamp <= trace.back().timestamp) {
            throw std::invalid_argument("gaze timestamps must be strictly increasing: " + path);
        }
        trace.push_back(s);
    }
    return trace;
}

void save_gz1(std::span<const GazeSample> trace, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write gaze trace: " + path);
    out << "t,u,v,eye_open,valid\n";
    char line[160];
    for (const GazeSample& s : trace) {
        std::snprintf(line, sizeof(line), "%.4f,%.6f,%.6f,%.4f,%d\n", s.timestamp, s.screen.x,
                      s.screen.y, s.eye_open, s.valid ? 1 : 0);
        out << line;
    }
    if (!out) throw std::runtime_error("failed writing gaze trace: " + path);
}

}  // namespace svsim::gaze
