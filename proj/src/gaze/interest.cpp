#include "svsim/gaze/interest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace svsim::gaze {

namespace {

struct Candidate {
    Vec2 centroid;
    double attention = 0.0;
};

// Greedy clustering in input order; each candidate keeps the attention-weighted
// centroid of its merged hits.
std::vector<Candidate> cluster_hits(std::span<const GroundHit> hits, double merge_radius) {
    std::vector<Candidate> out;
    for (const GroundHit& h : hits) {
        if (h.attention <= 0.0) continue;
        Candidate* home = nullptr;
        for (Candidate& c : out) {
            if (distance(c.centroid, h.point) <= merge_radius) {
                home = &c;
                break;
            }
        }
        if (home) {
            const double total = home->attention + h.attention;
            home->centroid = (home->centroid * home->attention + h.point * h.attention) * (1.0 / total);
            home->attention = total;
        } else {
            out.push_back({h.point, h.attention});
        }
    }
    return out;
}

void sort_by_priority(std::vector<InterestSpot>& spots) {
    std::stable_sort(spots.begin(), spots.end(), [](const InterestSpot& a, const InterestSpot& b) {
        if (a.priority != b.priority) return a.priority > b.priority;
        if (a.location.x != b.location.x) return a.location.x < b.location.x;
        return a.location.y < b.location.y;
    });
}

}  // namespace

InterestList update_interest_list(const InterestList& prev, std::span<const GroundHit> hits,
                                  const std::string& trip_id, const InterestConfig& cfg) {
    InterestList next;
    next.capacity = cfg.capacity;
    next.spots = prev.spots;
    for (InterestSpot& s : next.spots) s.priority *= cfg.decay;

    // The working set may exceed capacity until the final truncation.
    for (const Candidate& c : cluster_hits(hits, cfg.merge_radius)) {
        InterestSpot* home = nullptr;
        for (InterestSpot& s : next.spots) {
            if (distance(s.location, c.centroid) <= cfg.merge_radius) {
                home = &s;
                break;
            }
        }
        if (home) {
            home->priority += c.attention;
            home->last_updated = cfg.stamp;
            home->trip_id = trip_id;
        } else {
            next.spots.push_back({c.centroid, c.attention, cfg.spot_radius, trip_id, cfg.stamp});
        }
    }

    sort_by_priority(next.spots);
    if (next.spots.size() > next.capacity) next.spots.resize(next.capacity);
    return next;
}

void save_interest_list(const InterestList& list, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write interest list: " + path);
    out << "x,y,priority,radius,trip_id\n";
    char line[256];
    for (const InterestSpot& s : list.spots) {
        std::snprintf(line, sizeof(line), "%.3f,%.3f,%.6f,%.3f,%s\n", s.location.x, s.location.y,
                      s.priority, s.radius, s.trip_id.c_str());
        out << line;
    }
    if (!out) throw std::runtime_error("failed writing interest list: " + path);
}

InterestList load_interest_list(const std::string& path, std::size_t capacity) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open interest list: " + path);
    InterestList list;
    list.capacity = capacity;
    std::string line;
    if (!std::getline(in, line)) return list;  // empty file: empty list
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string tok;
        InterestSpot s;
        try {
            if (!std::getline(ls, tok, ',')) continue;
            s.location.x = std::stod(tok);
            if (!std::getline(ls, tok, ',')) continue;
            s.location.y = std::stod(tok);
            if (!std::getline(ls, tok, ',')) continue;
            s.priority = std::stod(tok);
            if (!std::getline(ls, tok, ',')) continue;
            s.radius = std::stod(tok);
        } catch (const std::exception&) {
            throw std::runtime_error("malformed interest list line in " + path + ": " + line);
        }
        std::getline(ls, s.trip_id, ',');
        list.spots.push_back(std::move(s));
    }
    sort_by_priority(list.spots);
    if (list.spots.size() > list.capacity) list.spots.resize(list.capacity);
    return list;
}

}  // namespace svsim::gaze
