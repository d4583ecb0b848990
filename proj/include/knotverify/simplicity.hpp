#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "parallel.hpp"
#include "rotation.hpp"

namespace knotverify {

/// Minimum distance between the closed segments [a0,a1] and [b0,b1].
/// Clamped closed-form closest points; (near-)parallel pairs fall back to s = 0,
/// which the subsequent clamping turns into the exact minimum.
inline double segment_min_distance(Point3 a0, Point3 a1, Point3 b0, Point3 b1) {
    const Point3 d1 = a1 - a0;
    const Point3 d2 = b1 - b0;
    const Point3 r = a0 - b0;
    const double a = dot(d1, d1);
    const double e = dot(d2, d2);
    if (!(a > 0.0) || !(e > 0.0)) throw InvalidInput("segment_min_distance: zero-length segment");
    const double b = dot(d1, d2);
    const double c = dot(d1, r);
    const double f = dot(d2, r);
    const double denom = a * e - b * b;

    double s = 0.0;
    if (denom > 1e-14 * a * e) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
    double t = (b * s + f) / e;
    if (t < 0.0) {
        t = 0.0;
        s = std::clamp(-c / a, 0.0, 1.0);
    } else if (t > 1.0) {
        t = 1.0;
        s = std::clamp((b - c) / a, 0.0, 1.0);
    }
    return distance(a0 + s * d1, b0 + t * d2);
}

namespace detail {

inline bool edges_adjacent(std::size_t i, std::size_t j, std::size_t edge_count, bool closed) {
    if (i > j) std::swap(i, j);
    if (j == i + 1) return true;
    return closed && i == 0 && j + 1 == edge_count;
}

struct Aabb {
    Point3 lo, hi;
};

inline Aabb box_of(Point3 a, Point3 b) {
    return {{std::min(a.x, b.x), std::min(a.y, b.y), std::min(a.z, b.z)},
            {std::max(a.x, b.x), std::max(a.y, b.y), std::max(a.z, b.z)}};
}

inline double box_gap(const Aabb& p, const Aabb& q) {
    const double dx = std::max({0.0, p.lo.x - q.hi.x, q.lo.x - p.hi.x});
    const double dy = std::max({0.0, p.lo.y - q.hi.y, q.lo.y - p.hi.y});
    const double dz = std::max({0.0, p.lo.z - q.hi.z, q.lo.z - p.hi.z});
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

}  // namespace detail

/// True iff non-adjacent edges stay more than `clearance` apart and adjacent edges
/// do not fold back onto each other past their shared vertex.
inline bool polygon_is_simple(const ControlPolygon& polygon, double clearance = 1e-6) {
    const std::size_t m = polygon.edge_count();
    std::vector<detail::Aabb> boxes(m);
    for (std::size_t i = 0; i < m; ++i) {
        auto [a, b] = polygon.edge(i);
        boxes[i] = detail::box_of(a, b);
    }
    for (std::size_t i = 0; i < m; ++i) {
        auto [a0, a1] = polygon.edge(i);
        for (std::size_t j = i + 1; j < m; ++j) {
            auto [b0, b1] = polygon.edge(j);
            if (detail::edges_adjacent(i, j, m, polygon.closed())) {
                // Shared vertex is a1 == b0 (or b1 == a0 for the closing pair).
                const bool forward = (j == i + 1);
                const Point3 far_i = forward ? a0 : a1;
                const Point3 far_j = forward ? b1 : b0;
                const Point3 shared = forward ? a1 : a0;
                if (point_segment_distance(far_j, far_i, shared) <= clearance ||
                    point_segment_distance(far_i, shared, far_j) <= clearance)
                    return false;
                continue;
            }
            if (detail::box_gap(boxes[i], boxes[j]) > clearance) continue;
            if (segment_min_distance(a0, a1, b0, b1) <= clearance) return false;
        }
    }
    return true;
}

struct SweepReport {
    int steps = 0;
    double min_distance = 0.0;
    double theta_at_min = 0.0;
    double theta_step = 0.0;
    double lipschitz_bound = 0.0;
    bool certified = false;
};

/// Moves arc.vertex_index along the arc and samples theta_k = k alpha / steps. At each
/// sample the polygon is rebuilt with `insertion_rounds` collinear insertions, so the
/// midpoints on the two incident original edges move with the vertex. Records the
/// smallest distance between a moving sub-edge and any non-adjacent sub-edge (moving
/// sub-edges on different original edges included).
///
/// Every moving point is a convex combination of the vertex and a fixed point, so it
/// moves no faster than the vertex. For two moving points lambda v + (1 - lambda) a and
/// mu v + (1 - mu) b their difference moves at |lambda - mu| |v'| <= L, so every pairwise
/// distance, and hence the minimum, is L-Lipschitz in theta.
/// Between samples the distance therefore drops by at most L * step, and
/// certified = min_distance > L * step proves the sweep intersection-free.
inline SweepReport sweep_simplicity(const ControlPolygon& polygon, const PerturbationArc& arc, int steps = 4096,
                                    int insertion_rounds = 0) {
    if (steps < 1) throw DomainError("sweep needs at least one step");
    if (arc.vertex_index >= polygon.size()) throw DomainError("arc vertex index out of range");
    const std::size_t n = polygon.size();
    const ControlPolygon start = polygon.with_vertex(arc.vertex_index, arc_position(arc, 0.0));
    if (!polygon_is_simple(collinear_insert(start, insertion_rounds)))
        throw InvalidInput("sweep precondition: polygon is not simple at theta = 0");

    const std::size_t per_edge = std::size_t{1} << insertion_rounds;
    const std::size_t orig_edges = polygon.edge_count();
    const std::size_t total_edges = orig_edges * per_edge;
    std::vector<std::size_t> moving_orig;
    if (arc.vertex_index < orig_edges) moving_orig.push_back(arc.vertex_index);
    if (polygon.closed() || arc.vertex_index > 0) moving_orig.push_back((arc.vertex_index + n - 1) % n);

    auto is_moving = [&](std::size_t sub) {
        const std::size_t orig = sub / per_edge;
        return std::find(moving_orig.begin(), moving_orig.end(), orig) != moving_orig.end();
    };

    const double step = arc.total_angle / steps;
    std::vector<double> best(static_cast<std::size_t>(steps) + 1, std::numeric_limits<double>::infinity());
    parallel_for(best.size(), [&](std::size_t k) {
        const double theta = (k == static_cast<std::size_t>(steps)) ? arc.total_angle : static_cast<double>(k) * step;
        const ControlPolygon p =
            collinear_insert(polygon.with_vertex(arc.vertex_index, arc_position(arc, theta)), insertion_rounds);
        double local = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < total_edges; ++i) {
            if (!is_moving(i)) continue;
            auto [a0, a1] = p.edge(i);
            for (std::size_t j = 0; j < total_edges; ++j) {
                if (j == i || j / per_edge == i / per_edge) continue;  // collinear pieces of one edge
                if (is_moving(j) && j < i) continue;                     // moving pairs once
                if (detail::edges_adjacent(i, j, total_edges, p.closed())) continue;
                auto [b0, b1] = p.edge(j);
                local = std::min(local, segment_min_distance(a0, a1, b0, b1));
            }
        }
        best[k] = local;
    });

    SweepReport report;
    report.steps = steps;
    const auto it = std::min_element(best.begin(), best.end());
    report.min_distance = *it;
    report.theta_at_min = static_cast<double>(it - best.begin()) * step;
    report.theta_step = step;
    report.lipschitz_bound = arc.speed_bound();
    report.certified = report.min_distance > report.lipschitz_bound * step;
    return report;
}

}  // namespace knotverify
