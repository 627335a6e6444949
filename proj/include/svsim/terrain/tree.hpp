#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "svsim/terrain/heightfield.hpp"

namespace svsim::terrain {

// Transfer-cost model for a node: payload samples * bytes_per_point plus a
// fixed header, optionally scaled.
struct NodeSizeModel {
    int bytes_per_point = 4;
    int header_bytes = 64;
    double multiplier = 1.0;
};

// One rectangular patch of the multi-resolution tree. The approximation
// surface is the bilinear interpolant of the four corner samples; `error` is
// the maximum vertical distance between that surface and the source grid over
// every sample the domain covers. The payload a node costs to transfer is
// capped at the tree's max_points (a coarse node ships a downsampled grid),
// which is what makes coarse selection cheaper than leaf selection.
struct TerrainNode {
    Rect domain;
    std::uint32_t id = 0;
    std::uint32_t parent_id = kNoParent;
    int level = 0;
    int i0 = 0, j0 = 0, i1 = 0, j1 = 0;  // inclusive sample-index rectangle
    double corner_heights[4] = {0, 0, 0, 0};  // c00, c10, c01, c11
    double error = 0.0;
    std::int64_t point_count = 0;  // payload samples, min(covered, max_points)
    std::uint64_t data_size = 0;
    std::vector<TerrainNode> children;

    static constexpr std::uint32_t kNoParent = 0xffffffffu;

    bool leaf() const { return children.empty(); }
    std::int64_t covered() const {
        return static_cast<std::int64_t>(i1 - i0 + 1) * (j1 - j0 + 1);
    }
    // Bilinear corner surface evaluated at a world point.
    double surface_at(Vec2 p) const;
};

class TerrainTree {
public:
    TerrainTree(std::unique_ptr<TerrainNode> root, const HeightField* field, double alpha,
                int max_children, int max_points);

    TerrainTree(const TerrainTree&) = delete;
    TerrainTree& operator=(const TerrainTree&) = delete;
    TerrainTree(TerrainTree&&) = default;
    TerrainTree& operator=(TerrainTree&&) = default;

    const TerrainNode& root() const { return *root_; }
    const HeightField& field() const { return *field_; }
    double alpha() const { return alpha_; }
    int max_children() const { return max_children_; }
    int max_points() const { return max_points_; }

    std::size_t node_count() const { return index_.size(); }
    const TerrainNode& node(std::uint32_t id) const { return *index_[id]; }
    const std::vector<const TerrainNode*>& all_nodes() const { return index_; }

private:
    std::unique_ptr<TerrainNode> root_;
    const HeightField* field_;
    double alpha_;
    int max_children_;
    int max_points_;
    std::vector<const TerrainNode*> index_;  // by id, preorder
};

// Builds the multi-resolution tree over `field`. A node subdivides exactly
// while its error exceeds alpha AND it covers more than max_points samples;
// quadtree midpoint split for max_children = 4, longest-axis bisection for 2.
// Child corners always land on grid samples. The field must outlive the tree.
TerrainTree build_tree(const HeightField& field, double alpha, int max_children, int max_points,
                       const NodeSizeModel& size_model = {});

// Max |h_D(p) - h_{D_N}(p)| over every grid sample inside node.domain.
double node_error(const HeightField& field, const TerrainNode& node);

// Minimal antichain of nodes intersecting `region` whose error is within
// max_error (or that are leaves); every ancestor of a returned node exceeds
// max_error. Returned in preorder (ascending id).
std::vector<const TerrainNode*> query_nodes(const TerrainTree& tree, const Rect& region,
                                            double max_error);

}  // namespace svsim::terrain
