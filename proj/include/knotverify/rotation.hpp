#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>

#include "curve.hpp"
#include "error.hpp"
#include "geometry.hpp"

namespace knotverify {

namespace detail {

struct AxisFrame {
    Point3 origin;
    Point3 direction;  // unit
};

inline AxisFrame make_axis(Point3 a, Point3 b) {
    const Point3 d = b - a;
    const double len = norm(d);
    if (!(len > 0.0)) throw InvalidInput("rotation axis points coincide");
    return {a, (1.0 / len) * d};
}

}  // namespace detail

/// Rotates p about the directed line a -> b by `angle` radians (right-hand rule),
/// via Rodrigues' formula on the offset from a.
inline Point3 rotate_about_axis(Point3 p, Point3 axis_a, Point3 axis_b, double angle) {
    const auto axis = detail::make_axis(axis_a, axis_b);
    const Point3 v = p - axis.origin;
    const Point3 k = axis.direction;
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return axis.origin + c * v + s * cross(k, v) + (dot(k, v) * (1.0 - c)) * k;
}

/// Path of one polygon vertex rotating about the line through its two neighbours.
///
/// The axis is oriented so the rotation from `start` to `target` is the shorter arc and
/// has a positive angle. Because the target need not lie on the start's rotation circle,
/// the radius and the axial coordinate are interpolated linearly in theta, which lands
/// position(total_angle) exactly on the target.
struct PerturbationArc {
    std::size_t vertex_index = 0;
    Point3 axis_a;
    Point3 axis_b;
    double total_angle = 0.0;
    double radius_start = 0.0;
    double radius_end = 0.0;
    Point3 start;
    Point3 target;

    double axial_start = 0.0;  // signed coordinate of start's foot along axis_a -> axis_b
    double axial_end = 0.0;

    /// Bound on |d position / d theta| over the whole arc.
    double speed_bound() const {
        if (total_angle == 0.0) return 0.0;
        const double r = std::max(radius_start, radius_end);
        const double dr = (radius_end - radius_start) / total_angle;
        const double dh = (axial_end - axial_start) / total_angle;
        return std::sqrt(r * r + dr * dr + dh * dh);
    }
};

inline Point3 arc_position(const PerturbationArc& arc, double theta) {
    if (!(theta >= 0.0 && theta <= arc.total_angle))
        throw DomainError("arc angle outside [0, total_angle]");
    if (theta == 0.0) return arc.start;
    if (theta == arc.total_angle) return arc.target;
    const auto axis = detail::make_axis(arc.axis_a, arc.axis_b);
    const double f = theta / arc.total_angle;
    const Point3 foot_start = axis.origin + arc.axial_start * axis.direction;
    const Point3 u = (1.0 / arc.radius_start) * (arc.start - foot_start);
    const Point3 w = cross(axis.direction, u);
    const double h = arc.axial_start + f * (arc.axial_end - arc.axial_start);
    const double r = arc.radius_start + f * (arc.radius_end - arc.radius_start);
    return axis.origin + h * axis.direction + r * (std::cos(theta) * u + std::sin(theta) * w);
}

inline PerturbationArc make_perturbation_arc(const ControlPolygon& polygon, std::size_t vertex_index, Point3 target) {
    const std::size_t n = polygon.size();
    if (vertex_index >= n) throw DomainError("vertex index out of range");
    if (!polygon.closed() && (vertex_index == 0 || vertex_index + 1 == n))
        throw InvalidInput("endpoint of an open polygon has no rotation axis");
    if (!is_finite(target)) throw InvalidInput("target has a non-finite coordinate");

    const Point3 next = polygon[(vertex_index + 1) % n];
    const Point3 prev = polygon[(vertex_index + n - 1) % n];
    const Point3 start = polygon[vertex_index];

    auto axis = detail::make_axis(next, prev);
    auto decompose = [&](Point3 p, double& axial, Point3& radial) {
        axial = dot(p - axis.origin, axis.direction);
        radial = p - (axis.origin + axial * axis.direction);
    };

    double h0 = 0.0, h1 = 0.0;
    Point3 r0, r1;
    decompose(start, h0, r0);
    decompose(target, h1, r1);
    const double rad0 = norm(r0);
    const double rad1 = norm(r1);
    const double scale = std::max({1.0, norm(next - prev), rad0});
    if (rad0 <= 1e-12 * scale) throw InvalidInput("perturbed vertex lies on its rotation axis");
    if (rad1 <= 1e-12 * scale) throw InvalidInput("target lies on the rotation axis");

    const Point3 u = (1.0 / rad0) * r0;
    double angle = std::atan2(dot(r1, cross(axis.direction, u)), dot(r1, u));
    Point3 a = next, b = prev;
    if (angle < 0.0) {
        // Flip the axis so the shorter arc is a positive rotation.
        std::swap(a, b);
        axis = detail::make_axis(a, b);
        angle = -angle;
        decompose(start, h0, r0);
        decompose(target, h1, r1);
    }

    PerturbationArc arc;
    arc.vertex_index = vertex_index;
    arc.axis_a = a;
    arc.axis_b = b;
    arc.total_angle = (start == target) ? 0.0 : angle;
    arc.radius_start = rad0;
    arc.radius_end = rad1;
    arc.start = start;
    arc.target = target;
    arc.axial_start = h0;
    arc.axial_end = h1;
    return arc;
}

}  // namespace knotverify
