#include "svsim/preload/select.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace svsim::preload {

namespace {

using terrain::TerrainNode;
using terrain::TerrainTree;

std::vector<const TerrainNode*> query_region(const TerrainTree& tree, const PreloadRegion& region,
                                             double max_error) {
    const auto tri = region.corners();
    auto nodes = terrain::query_nodes(tree, region_to_domain(region), max_error);
    std::erase_if(nodes, [&](const TerrainNode* n) { return !triangle_intersects_rect(tri, n->domain); });
    return nodes;
}

// Every leaf under n whose domain touches the triangle.
void collect_region_leaves(const TerrainNode& n, const std::array<Vec2, 3>& tri,
                           std::vector<const TerrainNode*>& out) {
    if (!triangle_intersects_rect(tri, n.domain)) return;
    if (n.leaf()) {
        out.push_back(&n);
        return;
    }
    for (const TerrainNode& c : n.children) collect_region_leaves(c, tri, out);
}

std::uint64_t distinct_bytes(const Selection& sel) {
    std::set<std::uint32_t> seen;
    std::uint64_t bytes = 0;
    for (const TerrainNode* n : sel.base) {
        if (seen.insert(n->id).second) bytes += n->data_size;
    }
    for (const TerrainNode* n : sel.refined) {
        if (seen.insert(n->id).second) bytes += n->data_size;
    }
    return bytes;
}

// Collapse base nodes toward the budget: whenever every child of some parent
// sits in the base set (and none of them carries an interest refinement),
// the group may be replaced by the parent. Groups farther from the apex go
// first; a merge is taken only if it reduces bytes. Stops when the budget
// holds or nothing mergeable remains.
void coarsen_to_budget(const TerrainTree& tree, Selection& sel, Vec2 apex, std::uint64_t budget) {
    std::set<std::uint32_t> refined_ids;
    for (const TerrainNode* n : sel.refined) refined_ids.insert(n->id);

    while (sel.total_bytes > budget) {
        std::map<std::uint32_t, std::vector<const TerrainNode*>> by_parent;
        std::set<std::uint32_t> base_ids;
        for (const TerrainNode* n : sel.base) base_ids.insert(n->id);
        for (const TerrainNode* n : sel.base) {
            if (n->parent_id != TerrainNode::kNoParent) by_parent[n->parent_id].push_back(n);
        }

        const TerrainNode* best_parent = nullptr;
        double best_dist = -1.0;
        std::int64_t best_saving = 0;
        for (const auto& [pid, members] : by_parent) {
            const TerrainNode* parent = &tree.node(pid);
            if (members.size() != parent->children.size()) continue;
            bool blocked = false;
            std::uint64_t group_bytes = 0;
            for (const TerrainNode* m : members) {
                if (refined_ids.count(m->id)) {
                    blocked = true;
                    break;
                }
                group_bytes += m->data_size;
            }
            if (blocked || parent->data_size >= group_bytes) continue;
            const double dist = point_rect_distance(apex, parent->domain);
            if (dist > best_dist || (dist == best_dist && best_parent && pid > best_parent->id)) {
                best_parent = parent;
                best_dist = dist;
                best_saving = static_cast<std::int64_t>(group_bytes - parent->data_size);
            }
        }
        if (!best_parent) break;

        std::erase_if(sel.base,
                      [&](const TerrainNode* n) { return n->parent_id == best_parent->id; });
        if (!base_ids.count(best_parent->id)) sel.base.push_back(best_parent);
        sel.total_bytes -= static_cast<std::uint64_t>(best_saving);
    }

    std::sort(sel.base.begin(), sel.base.end(),
              [](const TerrainNode* a, const TerrainNode* b) { return a->id < b->id; });
}

}  // namespace

std::vector<const TerrainNode*> Selection::merged() const {
    std::vector<const TerrainNode*> all;
    all.reserve(base.size() + refined.size());
    all.insert(all.end(), base.begin(), base.end());
    all.insert(all.end(), refined.begin(), refined.end());
    std::sort(all.begin(), all.end(),
              [](const TerrainNode* a, const TerrainNode* b) { return a->id < b->id; });
    all.erase(std::unique(all.begin(), all.end(),
                          [](const TerrainNode* a, const TerrainNode* b) { return a->id == b->id; }),
              all.end());
    return all;
}

Selection select_preload_set(const TerrainTree& tree, const PreloadRegion& region,
                             const gaze::InterestList& interests, const PreloadConfig& cfg) {
    if (cfg.fine_error > cfg.base_error) {
        throw std::invalid_argument("fine_error must not exceed base_error");
    }
    Selection sel;
    sel.base = query_region(tree, region, cfg.base_error);

    const auto tri = region.corners();
    std::set<std::uint32_t> refined_seen;
    for (const gaze::InterestSpot& spot : interests.spots) {
        if (!disc_intersects_triangle(spot.location, spot.radius, tri)) continue;
        const Rect disc_box{spot.location.x - spot.radius, spot.location.x + spot.radius,
                            spot.location.y - spot.radius, spot.location.y + spot.radius};
        for (const TerrainNode* n : terrain::query_nodes(tree, disc_box, cfg.fine_error)) {
            if (!disc_intersects_rect(spot.location, spot.radius, n->domain)) continue;
            if (!triangle_intersects_rect(tri, n->domain)) continue;
            if (refined_seen.insert(n->id).second) sel.refined.push_back(n);
        }
    }
    std::sort(sel.refined.begin(), sel.refined.end(),
              [](const TerrainNode* a, const TerrainNode* b) { return a->id < b->id; });

    // A base node whose every region-touched leaf already ships at fine
    // resolution carries no data the display still needs; dropping it keeps
    // the transfer minimal.
    if (!sel.refined.empty()) {
        std::erase_if(sel.base, [&](const TerrainNode* n) {
            std::vector<const TerrainNode*> leaves;
            collect_region_leaves(*n, tri, leaves);
            for (const TerrainNode* leaf : leaves) {
                if (!refined_seen.count(leaf->id)) return false;
            }
            return !leaves.empty();
        });
    }

    sel.total_bytes = distinct_bytes(sel);
    if (cfg.max_bytes_per_frame > 0 && sel.total_bytes > cfg.max_bytes_per_frame) {
        coarsen_to_budget(tree, sel, region.apex, cfg.max_bytes_per_frame);
        sel.total_bytes = distinct_bytes(sel);
    }
    return sel;
}

std::vector<const TerrainNode*> baseline_select(const TerrainTree& tree,
                                                const PreloadRegion& region) {
    return query_region(tree, region, -std::numeric_limits<double>::infinity());
}

PreloadCache::PreloadCache(int evict_after) : evict_after_(evict_after) {
    if (evict_after <= 0) throw std::invalid_argument("evict_after must be positive");
}

void PreloadCache::step(std::span<const TerrainNode* const> selected) {
    ++frame_index_;
    bytes_this_frame_ = 0;
    nodes_this_frame_ = 0;
    for (const TerrainNode* n : selected) {
        auto [it, inserted] = loaded_.try_emplace(n->id, Entry{frame_index_, n->data_size});
        if (inserted) {
            bytes_this_frame_ += n->data_size;
            ++nodes_this_frame_;
        } else {
            it->second.last_selected = frame_index_;
        }
    }
    for (auto it = loaded_.begin(); it != loaded_.end();) {
        if (frame_index_ - it->second.last_selected >=
            static_cast<std::uint64_t>(evict_after_)) {
            it = loaded_.erase(it);
        } else {
            ++it;
        }
    }
    bytes_total_ += bytes_this_frame_;
}

}  // namespace svsim::preload
