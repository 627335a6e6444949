#pragma once

#include <algorithm>
#include <array>
#include <cmath>

namespace svsim {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle into (-pi, pi].
inline double wrap_pi(double a) {
    a = std::fmod(a, 2.0 * kPi);
    if (a <= -kPi) a += 2.0 * kPi;
    if (a > kPi) a -= 2.0 * kPi;
    return a;
}

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
    bool operator==(const Vec2&) const = default;
};

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Compass convention: heading is measured from +Y toward +X, so heading 0
// points north (+Y) and pi/2 points east (+X).
inline Vec2 heading_forward(double heading) { return {std::sin(heading), std::cos(heading)}; }
inline Vec2 heading_right(double heading) { return {std::cos(heading), -std::sin(heading)}; }
inline Vec2 heading_left(double heading) { return {-std::cos(heading), std::sin(heading)}; }

// Axis-aligned closed rectangle in world meters.
struct Rect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    double y_max = 0.0;

    bool valid() const { return x_min <= x_max && y_min <= y_max; }
    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    Vec2 center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }

    bool contains(Vec2 p) const {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }
    bool intersects(const Rect& o) const {
        return x_min <= o.x_max && o.x_min <= x_max && y_min <= o.y_max && o.y_min <= y_max;
    }
    bool contains_rect(const Rect& o) const {
        return o.x_min >= x_min && o.x_max <= x_max && o.y_min >= y_min && o.y_max <= y_max;
    }
    Rect intersection(const Rect& o) const {
        return {std::max(x_min, o.x_min), std::min(x_max, o.x_max),
                std::max(y_min, o.y_min), std::min(y_max, o.y_max)};
    }
    bool operator==(const Rect&) const = default;
};

Rect bounding_rect(const Vec2* points, int count);

// Distance from a point to the closest point of a closed rectangle (0 inside).
double point_rect_distance(Vec2 p, const Rect& r);

bool point_in_triangle(Vec2 p, Vec2 a, Vec2 b, Vec2 c);

// Separating-axis test between a triangle and an axis-aligned rectangle.
// Degenerate triangles (collinear or coincident vertices) fall back to
// segment/point containment, so a zero-length preload region still matches
// the rectangle under its apex.
bool triangle_intersects_rect(const std::array<Vec2, 3>& tri, const Rect& r);

bool disc_intersects_rect(Vec2 center, double radius, const Rect& r);
bool disc_intersects_triangle(Vec2 center, double radius, const std::array<Vec2, 3>& tri);

}  // namespace svsim
