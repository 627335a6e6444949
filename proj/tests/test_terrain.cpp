#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "svsim/sim/scenario.hpp"
#include "svsim/terrain/heightfield.hpp"
#include "svsim/terrain/tree.hpp"

using namespace svsim;
using namespace svsim::terrain;
namespace fs = std::filesystem;

namespace {

HeightField flat_field(int w, int h, float value, double cell = 10.0) {
    return HeightField(w, h, cell, {0.0, 0.0},
                       std::vector<float>(static_cast<std::size_t>(w) * h, value));
}

fs::path temp_file(const char* name) {
    return fs::temp_directory_path() / (std::string("svsim_test_") + name);
}

void collect_internal(const TerrainNode& n, std::vector<const TerrainNode*>* out) {
    if (n.leaf()) return;
    out->push_back(&n);
    for (const TerrainNode& c : n.children) collect_internal(c, out);
}

}  // namespace

TEST_CASE("heightfield constructor validates its input") {
    CHECK_THROWS_AS(HeightField(1, 4, 10.0, {0, 0}, std::vector<float>(4, 0.f)),
                    std::invalid_argument);
    CHECK_THROWS_AS(HeightField(4, 1, 10.0, {0, 0}, std::vector<float>(4, 0.f)),
                    std::invalid_argument);
    CHECK_THROWS_AS(HeightField(2, 2, 0.0, {0, 0}, std::vector<float>(4, 0.f)),
                    std::invalid_argument);
    CHECK_THROWS_AS(HeightField(2, 2, -1.0, {0, 0}, std::vector<float>(4, 0.f)),
                    std::invalid_argument);
    CHECK_THROWS_AS(HeightField(2, 2, 10.0, {0, 0}, std::vector<float>(3, 0.f)),
                    std::invalid_argument);
    std::vector<float> with_nan(4, 0.f);
    with_nan[2] = std::numeric_limits<float>::quiet_NaN();
    CHECK_THROWS_AS(HeightField(2, 2, 10.0, {0, 0}, with_nan), std::invalid_argument);
}

TEST_CASE("bilinear sampling hits grid values exactly and blends between") {
    std::vector<float> z = {0.f, 10.f, 20.f, 30.f};  // 2x2
    HeightField f(2, 2, 5.0, {100.0, 200.0}, z);
    CHECK(f.at(0, 0) == doctest::Approx(0.0));
    CHECK(f.at(1, 1) == doctest::Approx(30.0));
    CHECK(f.elevation_at({100.0, 200.0}) == doctest::Approx(0.0));
    CHECK(f.elevation_at({105.0, 205.0}) == doctest::Approx(30.0));
    CHECK(f.elevation_at({102.5, 200.0}) == doctest::Approx(5.0));
    CHECK(f.elevation_at({102.5, 202.5}) == doctest::Approx(15.0));
    // clamped outside the domain
    CHECK(f.elevation_at({90.0, 190.0}) == doctest::Approx(0.0));
    CHECK(f.elevation_at({1000.0, 1000.0}) == doctest::Approx(30.0));
    CHECK(f.min_elevation() == doctest::Approx(0.0));
    CHECK(f.max_elevation() == doctest::Approx(30.0));
    CHECK(f.domain() == Rect{100.0, 105.0, 200.0, 205.0});
}

TEST_CASE("hf1 files round-trip bit-exactly and reject corruption") {
    const HeightField f = oracle::random_field(31, 17, 9, 12.5, 80.0);
    const fs::path path = temp_file("roundtrip.hf1");
    save_hf1(f, path.string());
    const HeightField g = load_hf1(path.string());
    CHECK(g.width() == f.width());
    CHECK(g.height() == f.height());
    CHECK(g.cell_size() == f.cell_size());
    CHECK(g.origin() == f.origin());
    CHECK(g.elevations() == f.elevations());

    CHECK_THROWS_AS(load_hf1("/nonexistent/path/f.hf1"), std::runtime_error);

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "HF1 4 4 10.0 0 0\n";
        const float vals[3] = {1.f, 2.f, 3.f};  // 13 floats short
        out.write(reinterpret_cast<const char*>(vals), sizeof(vals));
    }
    CHECK_THROWS_AS(load_hf1(path.string()), std::runtime_error);

    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        out << "XYZ 4 4 10.0 0 0\n";
    }
    CHECK_THROWS_AS(load_hf1(path.string()), std::runtime_error);
    fs::remove(path);
}

TEST_CASE("constant terrain collapses to a single exact node") {
    const HeightField f = flat_field(33, 33, 42.f);
    const TerrainTree tree = build_tree(f, 0.0, 4, 64);
    CHECK(tree.node_count() == 1);
    CHECK(tree.root().leaf());
    CHECK(tree.root().error == doctest::Approx(0.0));
    CHECK(tree.root().domain == f.domain());
    // capped payload: the single node ships max_points samples, not the grid
    CHECK(tree.root().point_count == 64);
    CHECK(tree.root().data_size == 64u * 4u + 64u);
}

TEST_CASE("planar ramps fit one bilinear patch with zero error") {
    std::vector<float> z(33 * 33);
    for (int j = 0; j < 33; ++j)
        for (int i = 0; i < 33; ++i) z[j * 33 + i] = static_cast<float>(2 * i + 3 * j);
    const HeightField f(33, 33, 10.0, {0, 0}, std::move(z));
    const TerrainTree tree = build_tree(f, 1e-6, 4, 16);
    CHECK(tree.node_count() == 1);
    CHECK(tree.root().error <= 1e-6);
}

TEST_CASE("an isolated spike drives the root error and forces a split") {
    std::vector<float> z(9, 0.f);
    z[4] = 10.f;  // center of the 3x3
    const HeightField f(3, 3, 10.0, {0, 0}, z);
    CHECK(node_error(f, build_tree(f, 100.0, 4, 4).root()) == doctest::Approx(10.0));

    const TerrainTree split = build_tree(f, 5.0, 4, 4);
    CHECK(split.node_count() > 1);
    for (const TerrainNode* n : split.all_nodes()) {
        if (n->leaf()) CHECK((n->error <= 5.0 || n->covered() <= 4));
    }
}

TEST_CASE("build_tree rejects invalid parameters") {
    const HeightField f = flat_field(5, 5, 0.f);
    CHECK_THROWS_AS(build_tree(f, -1.0, 4, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_tree(f, 0.0, 3, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_tree(f, 0.0, 5, 16), std::invalid_argument);
    CHECK_THROWS_AS(build_tree(f, 0.0, 4, 3), std::invalid_argument);
}

TEST_CASE("node_error equals a direct full scan of covered samples") {
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const HeightField f = oracle::random_field(seed, 33, 33);
        const TerrainTree tree = build_tree(f, 8.0, 4, 16);
        for (const TerrainNode* n : tree.all_nodes()) {
            const double scan = oracle::node_error_scan(f, *n);
            CHECK(node_error(f, *n) == doctest::Approx(scan).epsilon(1e-9));
            CHECK(n->error == doctest::Approx(scan).epsilon(1e-9));
        }
    }
}

TEST_CASE("every leaf is within tolerance or at the size floor") {
    for (std::uint64_t seed = 10; seed < 18; ++seed) {
        svsim::Rng pick(seed * 977);
        const int w = 17 + static_cast<int>(pick.uniform_int(49));
        const int h = 17 + static_cast<int>(pick.uniform_int(49));
        const double alpha = pick.uniform(2.0, 30.0);
        const int max_points = 4 + static_cast<int>(pick.uniform_int(61));
        const int children = pick.uniform() < 0.5 ? 2 : 4;
        const HeightField f = oracle::random_field(seed, w, h);
        const TerrainTree tree = build_tree(f, alpha, children, max_points);
        for (const TerrainNode* n : tree.all_nodes()) {
            if (!n->leaf()) continue;
            const double scan = oracle::node_error_scan(f, *n);
            CHECK((scan <= alpha + 1e-9 || n->covered() <= max_points));
        }
    }
}

TEST_CASE("children tile their parent exactly") {
    for (std::uint64_t seed = 3; seed <= 5; ++seed) {
        const HeightField f = oracle::random_field(seed, 33, 29);
        for (int children : {2, 4}) {
            const TerrainTree tree = build_tree(f, 5.0, children, 16);
            std::vector<const TerrainNode*> internal;
            collect_internal(tree.root(), &internal);
            CHECK(!internal.empty());
            for (const TerrainNode* p : internal) {
                CHECK(static_cast<int>(p->children.size()) <= children);
                double child_area = 0.0;
                for (const TerrainNode& c : p->children) {
                    child_area += c.domain.area();
                    CHECK(p->domain.contains_rect(c.domain));
                    CHECK(c.parent_id == p->id);
                    CHECK(c.level == p->level + 1);
                    // corners land on grid samples
                    CHECK(c.i0 >= p->i0);
                    CHECK(c.i1 <= p->i1);
                    CHECK(c.corner_heights[0] == doctest::Approx(f.at(c.i0, c.j0)));
                    CHECK(c.corner_heights[3] == doctest::Approx(f.at(c.i1, c.j1)));
                }
                CHECK(child_area == doctest::Approx(p->domain.area()).epsilon(1e-12));
                // pairwise disjoint interiors
                for (std::size_t a = 0; a < p->children.size(); ++a) {
                    for (std::size_t b = a + 1; b < p->children.size(); ++b) {
                        const Rect inter =
                            p->children[a].domain.intersection(p->children[b].domain);
                        if (inter.valid()) CHECK(inter.area() == doctest::Approx(0.0));
                    }
                }
            }
        }
    }
}

TEST_CASE("internal nodes always exceed the tolerance that split them") {
    const HeightField f = oracle::random_field(77, 65, 65);
    const double alpha = 6.0;
    const TerrainTree tree = build_tree(f, alpha, 4, 16);
    CHECK(tree.node_count() > 1);
    for (const TerrainNode* n : tree.all_nodes()) {
        if (!n->leaf()) {
            CHECK(n->error > alpha);
            CHECK(n->covered() > 16);
        }
    }
}

TEST_CASE("payload size follows the transfer-cost model") {
    const HeightField f = oracle::random_field(5, 33, 33);
    NodeSizeModel model;
    model.bytes_per_point = 8;
    model.header_bytes = 100;
    model.multiplier = 1.5;
    const TerrainTree tree = build_tree(f, 5.0, 4, 16, model);
    for (const TerrainNode* n : tree.all_nodes()) {
        CHECK(n->point_count == std::min<std::int64_t>(n->covered(), 16));
        const double raw = model.multiplier * (n->point_count * 8.0 + 100.0);
        CHECK(n->data_size == static_cast<std::uint64_t>(raw + 0.5));
    }
}

TEST_CASE("identical inputs build identical trees") {
    const HeightField f1 = oracle::random_field(123, 49, 41);
    const HeightField f2 = oracle::random_field(123, 49, 41);
    const TerrainTree a = build_tree(f1, 7.5, 4, 25);
    const TerrainTree b = build_tree(f2, 7.5, 4, 25);
    REQUIRE(a.node_count() == b.node_count());
    for (std::size_t k = 0; k < a.node_count(); ++k) {
        const TerrainNode& na = *a.all_nodes()[k];
        const TerrainNode& nb = *b.all_nodes()[k];
        CHECK(na.id == nb.id);
        CHECK(na.parent_id == nb.parent_id);
        CHECK(na.domain == nb.domain);
        CHECK(na.error == nb.error);
        CHECK(na.data_size == nb.data_size);
    }
}

TEST_CASE("ids index the preorder node list") {
    const HeightField f = oracle::random_field(9, 33, 33);
    const TerrainTree tree = build_tree(f, 5.0, 4, 16);
    const auto& nodes = tree.all_nodes();
    for (std::uint32_t id = 0; id < nodes.size(); ++id) {
        CHECK(nodes[id]->id == id);
        CHECK(&tree.node(id) == nodes[id]);
    }
    CHECK(tree.root().id == 0);
    CHECK(tree.root().parent_id == TerrainNode::kNoParent);
}

TEST_CASE("query_nodes returns the minimal in-tolerance antichain") {
    const HeightField f = oracle::random_field(21, 33, 33);
    const TerrainTree tree = build_tree(f, 2.0, 4, 9);
    const oracle::TreeIndex idx(tree);

    // whole domain at infinite tolerance: just the root
    const Rect all = f.domain();
    auto cut = query_nodes(tree, all, std::numeric_limits<double>::infinity());
    REQUIRE(cut.size() == 1);
    CHECK(cut[0]->id == 0);

    // disjoint region: empty
    CHECK(query_nodes(tree, Rect{-500.0, -100.0, -500.0, -100.0}, 10.0).empty());

    svsim::Rng rng(4242);
    for (int k = 0; k < 60; ++k) {
        const double x0 = rng.uniform(-100.0, all.x_max);
        const double y0 = rng.uniform(-100.0, all.y_max);
        const Rect region{x0, x0 + rng.uniform(10.0, 500.0), y0, y0 + rng.uniform(10.0, 500.0)};
        const double max_error = rng.uniform(0.0, 25.0);
        const auto got = oracle::ids_of(query_nodes(tree, region, max_error));
        const auto want = oracle::query_scan(tree, idx, region, max_error);
        CHECK(got == want);
    }
}

TEST_CASE("scenario terrain generation is deterministic and validated") {
    sim::TerrainGen gen;
    gen.size = 33;
    gen.cell_size = 30.0;
    gen.amplitude = 400.0;
    gen.roughness = 0.6;
    gen.seed = 99;
    const HeightField a = sim::generate_terrain(gen);
    const HeightField b = sim::generate_terrain(gen);
    CHECK(a.width() == 33);
    CHECK(a.elevations() == b.elevations());

    gen.seed = 100;
    const HeightField c = sim::generate_terrain(gen);
    CHECK(a.elevations() != c.elevations());

    gen.size = 34;  // not 2^k + 1
    CHECK_THROWS_AS(sim::generate_terrain(gen), std::invalid_argument);
}
