#pragma once

#include <cmath>

namespace knotverify {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend constexpr Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend constexpr bool operator==(Point2, Point2) = default;
};

struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend constexpr Point3 operator+(Point3 a, Point3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend constexpr Point3 operator-(Point3 a, Point3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend constexpr Point3 operator*(double s, Point3 a) { return {s * a.x, s * a.y, s * a.z}; }
    friend constexpr Point3 operator*(Point3 a, double s) { return s * a; }
    friend constexpr bool operator==(Point3, Point3) = default;

    constexpr Point2 xy() const { return {x, y}; }
};

constexpr double dot(Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }

constexpr Point3 cross(Point3 a, Point3 b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

/// z-component of the 3D cross product of two planar vectors.
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Point3 a) { return std::sqrt(dot(a, a)); }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point3 a, Point3 b) { return norm(a - b); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

constexpr Point3 lerp(Point3 a, Point3 b, double t) { return a + t * (b - a); }
constexpr Point3 midpoint(Point3 a, Point3 b) { return 0.5 * (a + b); }

inline bool is_finite(Point3 p) { return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z); }

/// Distance from p to the closed segment [a, b]. Degenerate segments collapse to a point.
inline double point_segment_distance(Point3 p, Point3 a, Point3 b) {
    const Point3 ab = b - a;
    const double len2 = dot(ab, ab);
    if (len2 == 0.0) return distance(p, a);
    double s = dot(p - a, ab) / len2;
    s = s < 0.0 ? 0.0 : (s > 1.0 ? 1.0 : s);
    return distance(p, a + s * ab);
}

}  // namespace knotverify
