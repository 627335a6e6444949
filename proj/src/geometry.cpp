#include "svsim/geometry.hpp"

#include <limits>

namespace svsim {

Rect bounding_rect(const Vec2* points, int count) {
    Rect r{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest(),
           std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    for (int i = 0; i < count; ++i) {
        r.x_min = std::min(r.x_min, points[i].x);
        r.x_max = std::max(r.x_max, points[i].x);
        r.y_min = std::min(r.y_min, points[i].y);
        r.y_max = std::max(r.y_max, points[i].y);
    }
    return r;
}

double point_rect_distance(Vec2 p, const Rect& r) {
    const double dx = std::max({r.x_min - p.x, 0.0, p.x - r.x_max});
    const double dy = std::max({r.y_min - p.y, 0.0, p.y - r.y_max});
    return std::hypot(dx, dy);
}

bool point_in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c) {
    const double d1 = (b - a).cross(p - a);
    const double d2 = (c - b).cross(p - b);
    const double d3 = (a - c).cross(p - c);
    const bool has_neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool has_pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(has_neg && has_pos);
}

namespace {

struct Projection {
    double lo;
    double hi;
};

Projection project_triangle(const std::array<Vec2, 3>& tri, Vec2 axis) {
    Projection p{tri[0].dot(axis), tri[0].dot(axis)};
    for (int i = 1; i < 3; ++i) {
        const double v = tri[i].dot(axis);
        p.lo = std::min(p.lo, v);
        p.hi = std::max(p.hi, v);
    }
    return p;
}

Projection project_rect(const Rect& r, Vec2 axis) {
    Projection p{std::numeric_limits<double>::max(), std::numeric_limits<double>::lowest()};
    const Vec2 corners[4] = {{r.x_min, r.y_min}, {r.x_max, r.y_min}, {r.x_min, r.y_max}, {r.x_max, r.y_max}};
    for (const Vec2& c : corners) {
        const double v = c.dot(axis);
        p.lo = std::min(p.lo, v);
        p.hi = std::max(p.hi, v);
    }
    return p;
}

bool segment_intersects_rect(Vec2 a, Vec2 b, const Rect& r) {
    if (r.contains(a) || r.contains(b)) return true;
    // Slab clipping of the parametric segment a + t(b-a), t in [0,1].
    double t0 = 0.0, t1 = 1.0;
    const double d[2] = {b.x - a.x, b.y - a.y};
    const double lo[2] = {r.x_min, r.y_min};
    const double hi[2] = {r.x_max, r.y_max};
    const double s[2] = {a.x, a.y};
    for (int i = 0; i < 2; ++i) {
        if (d[i] == 0.0) {
            if (s[i] < lo[i] || s[i] > hi[i]) return false;
        } else {
            double ta = (lo[i] - s[i]) / d[i];
            double tb = (hi[i] - s[i]) / d[i];
            if (ta > tb) std::swap(ta, tb);
            t0 = std::max(t0, ta);
            t1 = std::min(t1, tb);
            if (t0 > t1) return false;
        }
    }
    return true;
}

}  // namespace

bool triangle_intersects_rect(const std::array<Vec2, 3>& tri, const Rect& r) {
    const double area2 = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
    if (area2 == 0.0) {
        // Degenerate: longest of the three edges as a segment, or a point.
        double best = -1.0;
        Vec2 pa = tri[0], pb = tri[0];
        for (int i = 0; i < 3; ++i) {
            const Vec2 a = tri[i], b = tri[(i + 1) % 3];
            const double len = distance(a, b);
            if (len > best) {
                best = len;
                pa = a;
                pb = b;
            }
        }
        if (best <= 0.0) return r.contains(tri[0]);
        return segment_intersects_rect(pa, pb, r);
    }

    // Rectangle axes.
    {
        Projection t = project_triangle(tri, {1, 0});
        if (t.hi < r.x_min || t.lo > r.x_max) return false;
        t = project_triangle(tri, {0, 1});
        if (t.hi < r.y_min || t.lo > r.y_max) return false;
    }
    // Triangle edge normals.
    for (int i = 0; i < 3; ++i) {
        const Vec2 e = tri[(i + 1) % 3] - tri[i];
        const Vec2 axis{-e.y, e.x};
        if (axis.x == 0.0 && axis.y == 0.0) continue;
        const Projection pt = project_triangle(tri, axis);
        const Projection pr = project_rect(r, axis);
        if (pt.hi < pr.lo || pr.hi < pt.lo) return false;
    }
    return true;
}

bool disc_intersects_rect(Vec2 center, double radius, const Rect& r) {
    return point_rect_distance(center, r) <= radius;
}

namespace {

double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
    const Vec2 ab = b - a;
    const double len2 = ab.dot(ab);
    if (len2 == 0.0) return distance(p, a);
    const double t = std::clamp((p - a).dot(ab) / len2, 0.0, 1.0);
    return distance(p, a + ab * t);
}

}  // namespace

bool disc_intersects_triangle(Vec2 center, double radius, const std::array<Vec2, 3>& tri) {
    // The sign test is meaningless for zero-area triangles; edge distances
    // still cover those (segment or point).
    const double area2 = (tri[1] - tri[0]).cross(tri[2] - tri[0]);
    if (area2 != 0.0 && point_in_triangle(center, tri[0], tri[1], tri[2])) return true;
    for (int i = 0; i < 3; ++i) {
        if (point_segment_distance(center, tri[i], tri[(i + 1) % 3]) <= radius) return true;
    }
    return false;
}

}  // namespace svsim
