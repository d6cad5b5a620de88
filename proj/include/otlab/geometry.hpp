#pragma once

#include <cmath>
#include <cstdint>

namespace otlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }
inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm2(const Vec2& v) { return v.x * v.x + v.y * v.y; }
inline double norm(const Vec2& v) { return std::hypot(v.x, v.y); }
inline double angle_of(const Vec2& v) { return std::atan2(v.y, v.x); }

struct Ball {
    Vec2 center;
    double radius = 1.0;

    Ball() = default;
    Ball(Vec2 c, double r) : center(c), radius(r) {}
    double area() const { return M_PI * radius * radius; }
    bool contains_open(const Vec2& p) const { return norm2(p - center) < radius * radius; }
};

/// Exact area and centroid of the intersection of an axis-aligned square cell
/// with a disk. The boundary of the intersection is walked as straight edge
/// pieces plus circular arcs; area and first moments come from Green's theorem,
/// so the result is closed-form (no sampling).
struct ClippedCell {
    double area = 0.0;
    Vec2 centroid;  // centroid of cell-and-disk intersection; undefined if area == 0
};

ClippedCell clip_cell_to_disk(double x0, double y0, double x1, double y1, const Ball& ball);

}  // namespace otlab
