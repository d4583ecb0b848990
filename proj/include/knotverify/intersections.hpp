#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <tuple>
#include <vector>

#include "curve.hpp"
#include "geometry.hpp"
#include "nelder_mead.hpp"
#include "parallel.hpp"

namespace knotverify {

/// A self-intersection of the xy-projection: C2d(t1) == C2d(t2), t1 < t2.
struct IntersectionPair {
    double t1 = 0.0;
    double t2 = 0.0;
    Point2 point2d;
    Point3 p3d_1;
    Point3 p3d_2;
    double residual = 0.0;  // |C2d(t1) - C2d(t2)|
};

struct IntersectionConfig {
    int grid = 32;
    double root_tolerance = 1e-6;
    double diagonal_margin = 0.02;
    double wrap_margin = 0.02;
    double dedup_radius = 5e-3;
    SimplexConfig simplex{};
};

/// fnS(t1, t2) = |C2d(t1) - C2d(t2)|.
inline double pairwise_distance(const BezierCurve& curve, double t1, double t2) {
    return distance(bezier_eval_2d(curve, t1), bezier_eval_2d(curve, t2));
}

namespace detail {

inline bool in_excluded_band(const BezierCurve& curve, double t1, double t2, const IntersectionConfig& cfg) {
    if (std::abs(t2 - t1) < cfg.diagonal_margin) return true;
    return curve.closed() && t1 < cfg.wrap_margin && t2 > 1.0 - cfg.wrap_margin;
}

}  // namespace detail

/// Multi-start Nelder-Mead on fnS^2 from every grid cell centre strictly above the
/// diagonal. Minima with residual <= root_tolerance outside the diagonal band and the
/// closed-curve seam corner are clustered within dedup_radius (lowest residual wins)
/// and returned sorted by t1.
inline std::vector<IntersectionPair> find_self_intersections(const BezierCurve& curve,
                                                             const IntersectionConfig& cfg = {}) {
    if (cfg.grid < 8) throw DomainError("intersection grid must be at least 8");
    cfg.simplex.validate();

    std::vector<Vec2> starts;
    const double cell = 1.0 / cfg.grid;
    for (int i = 0; i < cfg.grid; ++i)
        for (int j = i + 1; j < cfg.grid; ++j) starts.push_back({(i + 0.5) * cell, (j + 0.5) * cell});

    std::vector<std::optional<MinimizationResult>> minima(starts.size());
    parallel_for(starts.size(), [&](std::size_t k) {
        auto objective = [&](double a, double b) {
            const Point2 d = bezier_eval_2d(curve, a) - bezier_eval_2d(curve, b);
            return dot(d, d);
        };
        auto r = nelder_mead(objective, starts[k], cfg.simplex);
        if (r.converged) minima[k] = r;
    });

    std::vector<IntersectionPair> candidates;
    for (const auto& m : minima) {
        if (!m) continue;
        double t1 = m->x[0], t2 = m->x[1];
        if (t1 > t2) std::swap(t1, t2);
        const double residual = std::sqrt(m->f_value);
        if (residual > cfg.root_tolerance) continue;
        if (detail::in_excluded_band(curve, t1, t2, cfg)) continue;
        IntersectionPair p;
        p.t1 = t1;
        p.t2 = t2;
        p.residual = residual;
        candidates.push_back(p);
    }

    std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
        return std::tie(a.residual, a.t1, a.t2) < std::tie(b.residual, b.t1, b.t2);
    });
    std::vector<IntersectionPair> kept;
    for (const auto& c : candidates) {
        const bool duplicate = std::any_of(kept.begin(), kept.end(), [&](const auto& k) {
            return std::hypot(k.t1 - c.t1, k.t2 - c.t2) < cfg.dedup_radius;
        });
        if (!duplicate) kept.push_back(c);
    }
    for (auto& p : kept) {
        p.p3d_1 = bezier_eval(curve, p.t1);
        p.p3d_2 = bezier_eval(curve, p.t2);
        p.point2d = 0.5 * (p.p3d_1.xy() + p.p3d_2.xy());
    }
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.t1 < b.t1; });
    return kept;
}

/// Approximate crossing parameters from a uniform `segments`-piece polyline of the
/// projection, by testing every non-adjacent segment pair. Used to cross-check the
/// optimizer's root count.
inline std::vector<Vec2> polyline_crossings(const BezierCurve& curve, int segments = 4096) {
    if (segments < 4) throw DomainError("polyline needs at least 4 segments");
    const auto n = static_cast<std::size_t>(segments);
    std::vector<Point2> pts(n + 1);
    parallel_for(n + 1, [&](std::size_t i) { pts[i] = bezier_eval_2d(curve, static_cast<double>(i) / segments); });

    struct Box {
        double x0, x1, y0, y1;
    };
    std::vector<Box> boxes(n);
    for (std::size_t i = 0; i < n; ++i)
        boxes[i] = {std::min(pts[i].x, pts[i + 1].x), std::max(pts[i].x, pts[i + 1].x),
                    std::min(pts[i].y, pts[i + 1].y), std::max(pts[i].y, pts[i + 1].y)};

    auto orient = [](Point2 o, Point2 a, Point2 b) { return cross(a - o, b - o); };
    std::vector<std::vector<Vec2>> per_row(n);
    const bool closed = curve.closed();
    parallel_for(n, [&](std::size_t i) {
        for (std::size_t j = i + 2; j < n; ++j) {
            if (closed && i == 0 && j == n - 1) continue;
            const Box &a = boxes[i], &b = boxes[j];
            if (a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0) continue;
            const double d1 = orient(pts[i], pts[i + 1], pts[j]);
            const double d2 = orient(pts[i], pts[i + 1], pts[j + 1]);
            const double d3 = orient(pts[j], pts[j + 1], pts[i]);
            const double d4 = orient(pts[j], pts[j + 1], pts[i + 1]);
            if (d1 * d2 < 0.0 && d3 * d4 < 0.0) {
                const double s = d3 / (d3 - d4);
                const double u = d1 / (d1 - d2);
                per_row[i].push_back({(static_cast<double>(i) + s) / segments, (static_cast<double>(j) + u) / segments});
            }
        }
    });
    std::vector<Vec2> out;
    for (auto& row : per_row) out.insert(out.end(), row.begin(), row.end());
    return out;
}

}  // namespace knotverify
