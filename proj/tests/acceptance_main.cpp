// Acceptance gate for the streaming pipeline. Each criterion prints one
// PASS/FAIL line; the process exits nonzero if any fail.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "oracles.hpp"
#include "svsim/cli/commands.hpp"
#include "svsim/gaze/interest.hpp"
#include "svsim/preload/select.hpp"
#include "svsim/preload/state.hpp"
#include "svsim/sim/report.hpp"
#include "svsim/sim/run.hpp"
#include "svsim/sim/scenario.hpp"
#include "svsim/terrain/tree.hpp"

using namespace svsim;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof(buf), f, ap);
    va_end(ap);
    return buf;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

preload::AircraftState random_state(Rng& rng, double turn_scale) {
    preload::AircraftState s;
    s.position = {rng.uniform(-200.0, 1000.0), rng.uniform(-200.0, 1000.0)};
    s.altitude = rng.uniform(20.0, 2500.0);
    s.speed = rng.uniform(0.0, 160.0);
    s.heading = rng.uniform(-kPi, kPi);
    s.theta = rng.uniform(0.05, kPi - 0.05);
    s.turn_rate = turn_scale * rng.uniform(-0.25, 0.25);
    s.bank = rng.uniform(-0.7, 0.7);
    return s;
}

// Shared standard run: two criteria read it, the first caller pays the cost.
const sim::RunResult& standard_run() {
    static const sim::RunResult run = [] {
        const sim::Scenario sc = sim::make_preset("standard", 1);
        return sim::run_scenario(sc, sim::SimConfig{}, gaze::InterestList{});
    }();
    return run;
}

// 1. Every leaf of a built tree stays within the vertical error tolerance or
//    covers no more samples than the cap, judged by a brute-force rescan.
Outcome leaf_error_bound() {
    Rng pick(4001);
    long leaves = 0;
    for (int round = 0; round < 50; ++round) {
        const int w = 2 + static_cast<int>(pick.uniform_int(64));
        const int h = 2 + static_cast<int>(pick.uniform_int(64));
        const auto field = oracle::random_field(1000 + round, w, h);
        const double alpha = pick.uniform(0.0, 30.0);
        const int children = pick.uniform() < 0.5 ? 2 : 4;
        const int max_points = 4 + static_cast<int>(pick.uniform_int(400));
        const auto tree = terrain::build_tree(field, alpha, children, max_points);
        for (const terrain::TerrainNode* n : tree.all_nodes()) {
            if (!n->leaf()) continue;
            ++leaves;
            const long covered =
                static_cast<long>(n->i1 - n->i0 + 1) * static_cast<long>(n->j1 - n->j0 + 1);
            const double err = oracle::node_error_scan(field, *n);
            if (!(err <= alpha + 1e-9 || covered <= max_points)) {
                return {false, fmt("field %d (%dx%d): leaf %u rescans to %.6f > alpha %.6f "
                                   "while covering %ld > %d samples",
                                   round, w, h, n->id, err, alpha, covered, max_points)};
            }
        }
    }
    return {true, fmt("50 fields, %ld leaves within bound", leaves)};
}

// 2. The recursive cut query and the two-tier selection match flat
//    enumeration oracles exactly.
Outcome selection_matches_oracle() {
    Rng rng(4002);
    for (int round = 0; round < 200; ++round) {
        const int w = 2 + static_cast<int>(rng.uniform_int(32));
        const int h = 2 + static_cast<int>(rng.uniform_int(32));
        const auto field = oracle::random_field(2000 + round, w, h);
        const double alpha = rng.uniform(0.0, 25.0);
        const int children = rng.uniform() < 0.5 ? 2 : 4;
        const int max_points = 4 + static_cast<int>(rng.uniform_int(200));
        const auto tree = terrain::build_tree(field, alpha, children, max_points);
        const oracle::TreeIndex idx(tree);

        const Vec2 a{rng.uniform(-150.0, 950.0), rng.uniform(-150.0, 950.0)};
        const Vec2 b{a.x + rng.uniform(0.0, 700.0), a.y + rng.uniform(0.0, 700.0)};
        const Rect query{a.x, b.x, a.y, b.y};
        const double max_error = rng.uniform(0.0, 30.0);
        const auto got = oracle::ids_of(terrain::query_nodes(tree, query, max_error));
        const auto want = oracle::query_scan(tree, idx, query, max_error);
        if (got != want) {
            return {false, fmt("case %d: cut query returned %zu nodes, scan %zu", round,
                               got.size(), want.size())};
        }

        preload::PreloadConfig cfg;
        cfg.base_error = rng.uniform(0.0, 30.0);
        cfg.fine_error = rng.uniform(0.0, cfg.base_error);
        const auto region =
            preload::compute_preload_region(random_state(rng, rng.uniform() < 0.5 ? 1.0 : 0.0),
                                            cfg);
        gaze::InterestList interests;
        const int n_spots = static_cast<int>(rng.uniform_int(4));
        for (int k = 0; k < n_spots; ++k) {
            interests.spots.push_back({{rng.uniform(-100.0, 900.0), rng.uniform(-100.0, 900.0)},
                                       rng.uniform(0.5, 20.0),
                                       rng.uniform(30.0, 400.0),
                                       "t",
                                       1});
        }
        const auto sel = preload::select_preload_set(tree, region, interests, cfg);
        const auto want_sel =
            oracle::select_scan(tree, idx, region, interests, cfg.base_error, cfg.fine_error);
        if (oracle::ids_of(sel.base) != want_sel.base ||
            oracle::ids_of(sel.refined) != want_sel.refined) {
            return {false, fmt("case %d: selection sets diverge from the scan oracle", round)};
        }
    }
    return {true, "200 query + selection cases, exact set equality"};
}

// 3. Straight flight degenerates the wedge to the symmetric nominal case.
Outcome straight_flight_symmetry() {
    Rng rng(4003);
    preload::PreloadConfig cfg;
    for (int round = 0; round < 1000; ++round) {
        preload::AircraftState s = random_state(rng, 0.0);
        s.turn_rate = 0.0;
        const auto region = preload::compute_preload_region(s, cfg);
        if (region.sigma_l != cfg.sigma0 || region.sigma_r != cfg.sigma0) {
            return {false, fmt("state %d: half-angles %.12f/%.12f differ from nominal %.12f",
                               round, region.sigma_l, region.sigma_r, cfg.sigma0)};
        }
        const double want = region.depth * region.depth * std::tan(cfg.sigma0);
        if (std::abs(region.area - want) > 1e-9 * std::max(1.0, std::abs(want))) {
            return {false, fmt("state %d: area %.9f vs %.9f", round, region.area, want)};
        }
    }
    return {true, "1000 straight states collapse to the symmetric wedge"};
}

// 4. Predictive transfers never exceed the full-resolution baseline on any
//    frame, and stay within half of it over the cruise phase; the bound is
//    recorded in the manifest.
Outcome transfer_reduction() {
    const sim::RunResult& run = standard_run();
    const auto bounds = run.scenario.phase_boundaries();
    std::uint64_t cruise_pred = 0, cruise_base = 0;
    for (const auto& fm : run.frames) {
        if (fm.bytes_prediction > fm.bytes_baseline) {
            return {false, fmt("frame %d transfers %llu predictive vs %llu baseline bytes",
                               fm.frame, (unsigned long long)fm.bytes_prediction,
                               (unsigned long long)fm.bytes_baseline)};
        }
        const double t = fm.frame / run.scenario.frame_rate;
        if (t >= bounds[1] && t < bounds[2]) {
            cruise_pred += fm.bytes_prediction;
            cruise_base += fm.bytes_baseline;
        }
    }
    if (cruise_base == 0) return {false, "cruise phase transferred no baseline bytes"};
    const double fraction = static_cast<double>(cruise_pred) / static_cast<double>(cruise_base);
    if (fraction > 0.5) {
        return {false, fmt("cruise predictive fraction %.3f exceeds 0.5", fraction)};
    }

    const fs::path dir = fresh_dir("svsim_acc_manifest");
    const std::vector<sim::RunResult> runs{run};
    sim::emit_report(runs, sim::SimConfig{}, dir.string());
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    const double stated =
        manifest.at("bounds").at("cruise_prediction_fraction_max").get<double>();
    fs::remove_all(dir);
    if (stated != 0.5) {
        return {false, fmt("manifest states bound %.3f instead of 0.5", stated)};
    }
    return {true, fmt("100%% of %zu frames dominated; cruise fraction %.3f (bound 0.5 in "
                      "manifest)",
                      run.frames.size(), fraction)};
}

// 5. Mean predictive transfer dips during cruise relative to both takeoff
//    and landing.
Outcome phase_signature() {
    const sim::RunResult& run = standard_run();
    const auto bounds = run.scenario.phase_boundaries();
    double sums[3] = {0, 0, 0};
    long counts[3] = {0, 0, 0};
    for (const auto& fm : run.frames) {
        const double t = fm.frame / run.scenario.frame_rate;
        int phase = 2;
        if (t < bounds[1]) phase = 0;
        else if (t < bounds[2]) phase = 1;
        sums[phase] += static_cast<double>(fm.bytes_prediction);
        ++counts[phase];
    }
    double mean[3];
    for (int k = 0; k < 3; ++k) {
        if (counts[k] == 0) return {false, fmt("phase %d has no frames", k)};
        mean[k] = sums[k] / static_cast<double>(counts[k]);
    }
    if (!(mean[1] < mean[0] && mean[1] < mean[2])) {
        return {false, fmt("means takeoff %.1f / cruise %.1f / landing %.1f lack the mid-flight "
                           "dip",
                           mean[0], mean[1], mean[2])};
    }
    return {true, fmt("mean bytes/frame: takeoff %.1f, cruise %.1f, landing %.1f", mean[0],
                      mean[1], mean[2])};
}

// 6. Scripted closure near risk spots is caught at >= 90% aggregate accuracy,
//    and clearing the closure script silences every proximity alert.
Outcome fatigue_detection() {
    struct SeedResult {
        int detected = 0;
        int total = 0;
        int control_fatigue_alerts = 0;
    };
    auto one_seed = [](std::uint64_t seed) {
        const sim::Scenario sc = sim::make_preset("fatigue-heavy", seed);
        const sim::SimConfig cfg;
        SeedResult r;
        const sim::RunResult treated = sim::run_scenario(sc, cfg, gaze::InterestList{});
        r.detected = treated.summary.detected;
        r.total = treated.summary.total;
        sim::Scenario control = sc;
        control.fatigue_script.clear();
        const sim::RunResult rested = sim::run_scenario(control, cfg, gaze::InterestList{});
        r.control_fatigue_alerts = rested.summary.fatigue_alerts;
        return r;
    };

    std::vector<std::future<SeedResult>> futures;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        futures.push_back(std::async(std::launch::async, one_seed, seed));
    }
    int detected = 0, total = 0, control_alerts = 0;
    for (auto& f : futures) {
        const SeedResult r = f.get();
        detected += r.detected;
        total += r.total;
        control_alerts += r.control_fatigue_alerts;
    }
    if (total == 0) return {false, "no incidents were scripted across 20 seeds"};
    const double accuracy = static_cast<double>(detected) / total;
    if (accuracy < 0.9) {
        return {false, fmt("aggregate detection %d/%d = %.3f below 0.9", detected, total,
                           accuracy)};
    }
    if (control_alerts != 0) {
        return {false, fmt("%d proximity alerts fired with no closure scripted", control_alerts)};
    }
    return {true, fmt("detected %d/%d incidents; 0 proximity alerts across 20 controls",
                      detected, total)};
}

// 7. The report arithmetic renders detected/total as a one-decimal percent.
Outcome report_arithmetic() {
    const struct {
        int detected, total;
        const char* want;
    } rows[] = {{55, 97, "56.7"}, {68, 90, "75.6"}, {9, 10, "90.0"}};
    for (const auto& row : rows) {
        const std::string got = sim::format_accuracy_percent(row.detected, row.total);
        if (got != row.want) {
            return {false, fmt("%d/%d formatted as %s, expected %s", row.detected, row.total,
                               got.c_str(), row.want)};
        }
    }

    const fs::path dir = fresh_dir("svsim_acc_report");
    std::vector<sim::RunResult> runs;
    for (const auto& row : rows) {
        sim::RunResult run;
        run.summary.name = fmt("row-%d-%d", row.detected, row.total);
        run.scenario.name = run.summary.name;
        run.summary.detected = row.detected;
        run.summary.total = row.total;
        runs.push_back(std::move(run));
    }
    sim::emit_report(runs, sim::SimConfig{}, dir.string());
    const std::string want =
        "scenario,detected,total,accuracy\n"
        "row-55-97,55,97,56.7\n"
        "row-68-90,68,90,75.6\n"
        "row-9-10,9,10,90.0\n";
    const std::string got = slurp(dir / "summary.csv");
    fs::remove_all(dir);
    if (got != want) return {false, "summary.csv rows differ from the expected percentages"};
    return {true, "55/97 -> 56.7, 68/90 -> 75.6, 9/10 -> 90.0, summary.csv verbatim"};
}

// 8. The interest list keeps its capacity, ordering, eviction, and (with no
//    decay and no cap) conservation properties under random updates.
Outcome interest_invariants() {
    Rng rng(4008);
    gaze::InterestList list;
    for (int round = 0; round < 10000; ++round) {
        gaze::InterestConfig cfg;
        cfg.capacity = 1 + rng.uniform_int(5);
        cfg.decay = rng.uniform(0.0, 1.0);
        cfg.merge_radius = rng.uniform(50.0, 600.0);
        cfg.spot_radius = rng.uniform(100.0, 900.0);
        cfg.stamp = static_cast<std::uint64_t>(round + 1);
        list.capacity = cfg.capacity;

        std::vector<gaze::GroundHit> hits;
        const int n = static_cast<int>(rng.uniform_int(6));
        for (int k = 0; k < n; ++k) {
            hits.push_back({{rng.uniform(-2000.0, 2000.0), rng.uniform(-2000.0, 2000.0)},
                            rng.uniform(0.1, 8.0)});
        }
        const std::string trip = "trip-" + std::to_string(round % 7);
        const gaze::InterestList next = gaze::update_interest_list(list, hits, trip, cfg);

        if (next.spots.size() > cfg.capacity) {
            return {false, fmt("round %d: %zu spots exceed capacity %zu", round,
                               next.spots.size(), cfg.capacity)};
        }
        if (!next.sorted()) return {false, fmt("round %d: list not priority-ordered", round)};
        const gaze::InterestList want = oracle::interest_scan(list, hits, trip, cfg);
        if (want.spots.size() != next.spots.size()) {
            return {false, fmt("round %d: size %zu vs oracle %zu", round, next.spots.size(),
                               want.spots.size())};
        }
        for (std::size_t k = 0; k < next.spots.size(); ++k) {
            const auto& a = next.spots[k];
            const auto& b = want.spots[k];
            if (!(a.location == b.location) || a.priority != b.priority ||
                a.radius != b.radius || a.trip_id != b.trip_id ||
                a.last_updated != b.last_updated) {
                return {false, fmt("round %d: spot %zu differs from the oracle", round, k)};
            }
        }
        list = next;
    }

    // conservation: with decay 1 and an unbounded list, total priority equals
    // the total attention ever fed in
    gaze::InterestConfig cfg;
    cfg.decay = 1.0;
    cfg.capacity = 1u << 30;
    gaze::InterestList pool;
    pool.capacity = cfg.capacity;
    double fed = 0.0;
    for (int round = 0; round < 1000; ++round) {
        cfg.stamp = static_cast<std::uint64_t>(round + 1);
        std::vector<gaze::GroundHit> hits;
        const int n = 1 + static_cast<int>(rng.uniform_int(5));
        for (int k = 0; k < n; ++k) {
            hits.push_back({{rng.uniform(-3000.0, 3000.0), rng.uniform(-3000.0, 3000.0)},
                            rng.uniform(0.1, 5.0)});
            fed += hits.back().attention;
        }
        pool = gaze::update_interest_list(pool, hits, "trip", cfg);
        double sum = 0.0;
        for (const auto& s : pool.spots) sum += s.priority;
        if (std::abs(sum - fed) > 1e-6 * std::max(1.0, fed)) {
            return {false, fmt("round %d: %.9f priority held vs %.9f attention fed", round, sum,
                               fed)};
        }
    }
    return {true, "10000 randomized updates + 1000 conservation rounds"};
}

// 9. Two simulate invocations over the same inputs write byte-identical
//    artifacts.
Outcome determinism() {
    const fs::path dir = fresh_dir("svsim_acc_determinism");
    std::ostringstream sink;
    cli::cmd_gen_scenario(1, "standard", (dir / "scene.scn").string(), sink);
    const std::vector<std::string> files = {(dir / "scene.scn").string()};
    cli::cmd_simulate(files, "", (dir / "a").string(), sink);
    cli::cmd_simulate(files, "", (dir / "b").string(), sink);

    std::set<std::string> names;
    for (const auto& e : fs::directory_iterator(dir / "a")) names.insert(e.path().filename());
    for (const auto& e : fs::directory_iterator(dir / "b")) names.insert(e.path().filename());
    int compared = 0;
    for (const std::string& name : names) {
        const fs::path pa = dir / "a" / name;
        const fs::path pb = dir / "b" / name;
        if (!fs::exists(pa) || !fs::exists(pb)) {
            return {false, fmt("%s written by only one run", name.c_str())};
        }
        if (slurp(pa) != slurp(pb)) {
            return {false, fmt("%s differs between the two runs", name.c_str())};
        }
        ++compared;
    }
    fs::remove_all(dir);
    if (compared < 5) return {false, fmt("only %d artifacts written", compared)};
    return {true, fmt("%d artifacts byte-identical across runs", compared)};
}

}  // namespace

int main() {
    const struct {
        const char* title;
        Outcome (*fn)();
    } criteria[] = {
        {"tree leaves meet the error bound or the sample cap", leaf_error_bound},
        {"queries and selections match enumeration oracles", selection_matches_oracle},
        {"straight flight yields the symmetric nominal wedge", straight_flight_symmetry},
        {"predictive transfers dominated; cruise within half baseline", transfer_reduction},
        {"mean transfer dips during cruise vs takeoff/landing", phase_signature},
        {"scripted closure near risk detected; controls stay silent", fatigue_detection},
        {"detection counts render as one-decimal percentages", report_arithmetic},
        {"interest list keeps capacity/order/eviction/conservation", interest_invariants},
        {"repeat simulate runs write byte-identical artifacts", determinism},
    };

    bool all = true;
    for (std::size_t k = 0; k < std::size(criteria); ++k) {
        const auto start = std::chrono::steady_clock::now();
        Outcome result;
        try {
            result = criteria[k].fn();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu: %-60s %s (%.2f s)%s%s\n", k + 1, criteria[k].title,
                    result.pass ? "PASS" : "FAIL", secs, result.detail.empty() ? "" : " -- ",
                    result.detail.c_str());
        std::fflush(stdout);
        all = all && result.pass;
    }
    std::printf("%s\n", all ? "all criteria passed" : "ACCEPTANCE FAILED");
    return all ? 0 : 1;
}
