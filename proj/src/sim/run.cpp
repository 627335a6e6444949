#include "svsim/sim/run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "svsim/fatigue/fatigue.hpp"
#include "svsim/gaze/classify.hpp"
#include "svsim/gaze/remap.hpp"
#include "svsim/preload/select.hpp"
#include "svsim/sim/flight.hpp"
#include "svsim/sim/gaze_gen.hpp"
#include "svsim/terrain/tree.hpp"

namespace svsim::sim {
namespace {

// Max terrain height sampled along the ground track of the view direction,
// out to the preload depth. Steps at grid resolution; samples outside the
// grid are ignored.
double max_elevation_ahead(const terrain::HeightField& field, const preload::AircraftState& st,
                           double depth) {
    const Rect dom = field.domain();
    const Vec2 fwd = heading_forward(st.heading);
    const double step = field.cell_size();
    double best = -std::numeric_limits<double>::infinity();
    for (double s = 0.0; s <= depth; s += step) {
        const Vec2 p = st.position + fwd * s;
        if (!dom.contains(p)) continue;
        best = std::max(best, field.elevation_at(p));
    }
    return best;
}

std::uint64_t next_interest_stamp(const gaze::InterestList& list) {
    std::uint64_t best = 0;
    for (const auto& sp : list.spots) best = std::max(best, sp.last_updated);
    return best + 1;
}

}  // namespace

RunResult run_scenario(const Scenario& sc, const SimConfig& cfg,
                       const gaze::InterestList& interests_in, const std::string& scenario_dir) {
    validate_scenario(sc);

    RunResult run;
    run.scenario = sc;
    run.summary.name = sc.name;

    const terrain::HeightField field = scenario_terrain(sc, scenario_dir);
    const terrain::TerrainTree tree = build_tree(
        field, cfg.tree_alpha, cfg.tree_max_children, static_cast<int>(cfg.tree_max_points),
        cfg.size_model);

    const std::vector<preload::AircraftState> flight = generate_flight(sc);
    run.spots = fatigue::detect_risk_spots(field, flight, cfg.preload, cfg.risk);
    run.summary.risk_spots = static_cast<int>(run.spots.size());

    const GazeGenResult gaze = generate_gaze(sc, flight, interests_in, run.spots, cfg.camera, field);
    const std::vector<gaze::GazeEvent> events = gaze::classify_gaze(gaze.samples, cfg.classify);
    gaze::RemapStats remap_stats;
    const std::vector<gaze::GroundHit> hits =
        gaze::remap_gaze_to_terrain(events, flight, cfg.camera, field, &remap_stats);
    run.summary.gaze_events = static_cast<int>(events.size());
    run.summary.hits_remapped = remap_stats.remapped;
    run.summary.hits_dropped = remap_stats.dropped;

    const std::vector<fatigue::EyeFrame> eye_frames = fatigue::decimate(gaze.samples);
    std::size_t eye_next = 0;
    fatigue::FatigueState fat;
    fatigue::WarningState warnings;

    preload::PreloadCache pred_cache(cfg.preload.evict_after_frames);
    preload::PreloadCache base_cache(cfg.preload.evict_after_frames);

    run.frames.reserve(flight.size());
    for (std::size_t f = 0; f < flight.size(); ++f) {
        const preload::AircraftState& st = flight[f];
        const preload::PreloadRegion region = preload::compute_preload_region(st, cfg.preload);

        const preload::Selection sel = preload::select_preload_set(tree, region, interests_in,
                                                                   cfg.preload);
        const auto merged = sel.merged();
        pred_cache.step(merged);
        const auto base_nodes = preload::baseline_select(tree, region);
        base_cache.step(base_nodes);

        while (eye_next < eye_frames.size() &&
               eye_frames[eye_next].timestamp <= st.timestamp + 1e-9) {
            fat = fatigue::update_fatigue(fat, eye_frames[eye_next], cfg.fatigue);
            ++eye_next;
        }

        const double elev_ahead = max_elevation_ahead(field, st, region.depth);
        double flight_risk = 0.0;
        if (std::isfinite(elev_ahead))
            flight_risk =
                std::clamp(1.0 - (st.altitude - elev_ahead) / cfg.clearance_ref, 0.0, 1.0);

        int fired = 0;
        if (!cfg.suppress_alerts) {
            const auto alert =
                fatigue::evaluate_warning(fat, st, run.spots, flight_risk, cfg.fatigue, warnings);
            if (alert) {
                run.alerts.push_back(*alert);
                fired = 1;
                if (alert->cause == fatigue::AlertCause::fatigue_near_risk)
                    ++run.summary.fatigue_alerts;
            }
        }

        FrameMetrics fm;
        fm.frame = static_cast<int>(f);
        fm.bytes_prediction = pred_cache.bytes_this_frame();
        fm.bytes_baseline = base_cache.bytes_this_frame();
        fm.nodes_loaded = pred_cache.nodes_this_frame();
        fm.fatigue_level = fat.level;
        fm.alerts = fired;
        run.frames.push_back(fm);

        run.summary.bytes_prediction_total += fm.bytes_prediction;
        run.summary.bytes_baseline_total += fm.bytes_baseline;
        run.summary.nodes_loaded_total += fm.nodes_loaded;
    }
    run.summary.alerts_total = static_cast<int>(run.alerts.size());

    run.summary.total = static_cast<int>(sc.incident_script.size());
    for (double t_inc : sc.incident_script) {
        const bool hit = std::any_of(run.alerts.begin(), run.alerts.end(), [&](const auto& a) {
            return std::abs(a.timestamp - t_inc) <= cfg.reaction_window_s + 1e-9;
        });
        if (hit) ++run.summary.detected;
    }
    run.summary.no_incidents = run.summary.total == 0;
    run.summary.accuracy = run.summary.no_incidents
                               ? 1.0
                               : static_cast<double>(run.summary.detected) / run.summary.total;

    gaze::InterestConfig icfg = cfg.interest;
    icfg.stamp = next_interest_stamp(interests_in);
    run.interests = gaze::update_interest_list(interests_in, hits, sc.route_id, icfg);

    return run;
}

}  // namespace svsim::sim
