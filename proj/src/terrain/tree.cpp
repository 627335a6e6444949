#include "svsim/terrain/tree.hpp"

#include <cmath>
#include <stdexcept>

namespace svsim::terrain {

namespace {

double bilinear(const double c[4], double u, double v) {
    return (1 - u) * (1 - v) * c[0] + u * (1 - v) * c[1] + (1 - u) * v * c[2] + u * v * c[3];
}

struct Builder {
    const HeightField& field;
    double alpha;
    int max_children;
    int max_points;
    NodeSizeModel size_model;
    std::uint32_t next_id = 0;

    TerrainNode make_node(int i0, int j0, int i1, int j1, int level) {
        TerrainNode n;
        n.id = next_id++;
        n.level = level;
        n.i0 = i0;
        n.j0 = j0;
        n.i1 = i1;
        n.j1 = j1;
        n.domain = {field.sample_position(i0, j0).x, field.sample_position(i1, j1).x,
                    field.sample_position(i0, j0).y, field.sample_position(i1, j1).y};
        n.corner_heights[0] = field.at(i0, j0);
        n.corner_heights[1] = field.at(i1, j0);
        n.corner_heights[2] = field.at(i0, j1);
        n.corner_heights[3] = field.at(i1, j1);
        n.error = scan_error(n);
        n.point_count = std::min<std::int64_t>(n.covered(), max_points);
        n.data_size = static_cast<std::uint64_t>(std::llround(
            size_model.multiplier *
            (static_cast<double>(n.point_count) * size_model.bytes_per_point + size_model.header_bytes)));

        if (n.error > alpha && n.covered() > max_points) subdivide(n);
        return n;
    }

    double scan_error(const TerrainNode& n) const {
        const double du = n.i1 > n.i0 ? 1.0 / (n.i1 - n.i0) : 0.0;
        const double dv = n.j1 > n.j0 ? 1.0 / (n.j1 - n.j0) : 0.0;
        double worst = 0.0;
        for (int j = n.j0; j <= n.j1; ++j) {
            const double v = (j - n.j0) * dv;
            for (int i = n.i0; i <= n.i1; ++i) {
                const double u = (i - n.i0) * du;
                worst = std::max(worst, std::abs(field.at(i, j) - bilinear(n.corner_heights, u, v)));
            }
        }
        return worst;
    }

    void subdivide(TerrainNode& n) {
        const bool can_x = n.i1 - n.i0 >= 2;
        const bool can_y = n.j1 - n.j0 >= 2;
        const int im = (n.i0 + n.i1) / 2;
        const int jm = (n.j0 + n.j1) / 2;
        const int lvl = n.level + 1;

        if (max_children == 4 && can_x && can_y) {
            n.children.reserve(4);
            n.children.push_back(make_node(n.i0, n.j0, im, jm, lvl));
            n.children.push_back(make_node(im, n.j0, n.i1, jm, lvl));
            n.children.push_back(make_node(n.i0, jm, im, n.j1, lvl));
            n.children.push_back(make_node(im, jm, n.i1, n.j1, lvl));
        } else if ((can_x && n.i1 - n.i0 >= n.j1 - n.j0) || (can_x && !can_y)) {
            n.children.reserve(2);
            n.children.push_back(make_node(n.i0, n.j0, im, n.j1, lvl));
            n.children.push_back(make_node(im, n.j0, n.i1, n.j1, lvl));
        } else if (can_y) {
            n.children.reserve(2);
            n.children.push_back(make_node(n.i0, n.j0, n.i1, jm, lvl));
            n.children.push_back(make_node(n.i0, jm, n.i1, n.j1, lvl));
        }
        // A 2x2 node covers 4 samples <= max_points, so the recursion never
        // reaches an unsplittable node; the guards above are for safety only.
        for (auto& c : n.children) c.parent_id = n.id;
    }
};

void index_nodes(const TerrainNode& n, std::vector<const TerrainNode*>& index) {
    index[n.id] = &n;
    for (const auto& c : n.children) index_nodes(c, index);
}

}  // namespace

double TerrainNode::surface_at(Vec2 p) const {
    const double w = domain.width();
    const double h = domain.height();
    const double u = w > 0 ? std::clamp((p.x - domain.x_min) / w, 0.0, 1.0) : 0.0;
    const double v = h > 0 ? std::clamp((p.y - domain.y_min) / h, 0.0, 1.0) : 0.0;
    return bilinear(corner_heights, u, v);
}

TerrainTree::TerrainTree(std::unique_ptr<TerrainNode> root, const HeightField* field, double alpha,
                         int max_children, int max_points)
    : root_(std::move(root)), field_(field), alpha_(alpha), max_children_(max_children),
      max_points_(max_points) {
    std::uint32_t max_id = 0;
    struct Walk {
        std::uint32_t* max_id;
        void operator()(const TerrainNode& n) {
            *max_id = std::max(*max_id, n.id);
            for (const auto& c : n.children) (*this)(c);
        }
    };
    Walk{&max_id}(*root_);
    index_.assign(max_id + 1, nullptr);
    index_nodes(*root_, index_);
}

TerrainTree build_tree(const HeightField& field, double alpha, int max_children, int max_points,
                       const NodeSizeModel& size_model) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
    if (max_children != 2 && max_children != 4)
        throw std::invalid_argument("max_children must be 2 or 4");
    if (max_points < 4) throw std::invalid_argument("max_points must be >= 4");
    if (field.width() < 2 || field.height() < 2)
        throw std::invalid_argument("degenerate heightfield");

    Builder b{field, alpha, max_children, max_points, size_model};
    auto root = std::make_unique<TerrainNode>(
        b.make_node(0, 0, field.width() - 1, field.height() - 1, 0));
    return TerrainTree(std::move(root), &field, alpha, max_children, max_points);
}

double node_error(const HeightField& field, const TerrainNode& node) {
    const Rect fd = field.domain();
    const double eps = 1e-9 * field.cell_size();
    if (node.domain.x_min < fd.x_min - eps || node.domain.x_max > fd.x_max + eps ||
        node.domain.y_min < fd.y_min - eps || node.domain.y_max > fd.y_max + eps)
        throw std::invalid_argument("node domain lies outside the heightfield");

    const double cell = field.cell_size();
    const Vec2 org = field.origin();
    const int i_lo = std::max(0, static_cast<int>(std::ceil((node.domain.x_min - org.x) / cell - 1e-9)));
    const int i_hi = std::min(field.width() - 1,
                              static_cast<int>(std::floor((node.domain.x_max - org.x) / cell + 1e-9)));
    const int j_lo = std::max(0, static_cast<int>(std::ceil((node.domain.y_min - org.y) / cell - 1e-9)));
    const int j_hi = std::min(field.height() - 1,
                              static_cast<int>(std::floor((node.domain.y_max - org.y) / cell + 1e-9)));

    double worst = 0.0;
    for (int j = j_lo; j <= j_hi; ++j)
        for (int i = i_lo; i <= i_hi; ++i) {
            const Vec2 p = field.sample_position(i, j);
            worst = std::max(worst, std::abs(field.at(i, j) - node.surface_at(p)));
        }
    return worst;
}

namespace {

void query_visit(const TerrainNode& n, const Rect& region, double max_error,
                 std::vector<const TerrainNode*>& out) {
    if (!n.domain.intersects(region)) return;
    if (n.error <= max_error || n.leaf()) {
        out.push_back(&n);
        return;
    }
    for (const auto& c : n.children) query_visit(c, region, max_error, out);
}

}  // namespace

std::vector<const TerrainNode*> query_nodes(const TerrainTree& tree, const Rect& region,
                                            double max_error) {
    std::vector<const TerrainNode*> out;
    if (!region.valid()) return out;
    query_visit(tree.root(), region, max_error, out);
    return out;
}

}  // namespace svsim::terrain
