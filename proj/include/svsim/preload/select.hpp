#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "svsim/gaze/interest.hpp"
#include "svsim/preload/state.hpp"
#include "svsim/terrain/tree.hpp"

namespace svsim::preload {

// Result of one frame's node selection. base holds the region-wide pick at
// the coarse tolerance, refined the finer pick under interest spots; the two
// may overlap. total_bytes counts each distinct node once.
struct Selection {
    std::vector<const terrain::TerrainNode*> base;
    std::vector<const terrain::TerrainNode*> refined;
    std::uint64_t total_bytes = 0;

    // Deduplicated union, ordered by node id.
    std::vector<const terrain::TerrainNode*> merged() const;
};

// Picks nodes for the frame: every tree node meeting base_error whose domain
// intersects the region triangle, plus fine_error nodes under interest spots
// whose disc touches the triangle. When max_bytes_per_frame > 0, base nodes
// are coarsened (complete sibling groups collapse to their parent, farthest
// from the apex first, only when that reduces bytes) until the budget holds
// or no merge is left; refined nodes are never coarsened.
Selection select_preload_set(const terrain::TerrainTree& tree, const PreloadRegion& region,
                             const gaze::InterestList& interests, const PreloadConfig& cfg);

// Full-resolution reference: every leaf intersecting the region triangle.
std::vector<const terrain::TerrainNode*> baseline_select(const terrain::TerrainTree& tree,
                                                         const PreloadRegion& region);

// Tracks which nodes are resident on the display side and charges bytes only
// for newly transferred ones. Nodes unselected for evict_after consecutive
// frames are dropped.
class PreloadCache {
  public:
    explicit PreloadCache(int evict_after = 120);

    void step(std::span<const terrain::TerrainNode* const> selected);

    std::uint64_t bytes_this_frame() const { return bytes_this_frame_; }
    std::uint64_t nodes_this_frame() const { return nodes_this_frame_; }
    std::uint64_t bytes_total() const { return bytes_total_; }
    std::uint64_t frame_index() const { return frame_index_; }
    std::size_t resident_count() const { return loaded_.size(); }
    bool contains(std::uint32_t id) const { return loaded_.count(id) != 0; }

  private:
    struct Entry {
        std::uint64_t last_selected;
        std::uint64_t data_size;
    };
    std::map<std::uint32_t, Entry> loaded_;
    std::uint64_t bytes_this_frame_ = 0;
    std::uint64_t nodes_this_frame_ = 0;
    std::uint64_t bytes_total_ = 0;
    std::uint64_t frame_index_ = 0;
    int evict_after_;
};

}  // namespace svsim::preload
