#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"
#include "geometry.hpp"

namespace knotverify {

/// Ordered PL curve. A closed polygon stores v0 once; the closing edge v[n-1]v0 is implied.
class ControlPolygon {
public:
    ControlPolygon(std::vector<Point3> vertices, bool closed) : vertices_(std::move(vertices)), closed_(closed) {
        if (vertices_.size() < 2) throw InvalidInput("control polygon needs at least 2 vertices");
        for (const auto& v : vertices_)
            if (!is_finite(v)) throw InvalidInput("control polygon has a non-finite coordinate");
        for (std::size_t i = 0; i < edge_count(); ++i) {
            auto [a, b] = edge(i);
            if (a == b) throw InvalidInput("control polygon edge " + std::to_string(i) + " has zero length");
        }
    }

    const std::vector<Point3>& vertices() const { return vertices_; }
    bool closed() const { return closed_; }
    std::size_t size() const { return vertices_.size(); }
    const Point3& operator[](std::size_t i) const { return vertices_[i]; }

    std::size_t edge_count() const { return closed_ ? vertices_.size() : vertices_.size() - 1; }

    std::pair<Point3, Point3> edge(std::size_t i) const {
        return {vertices_[i], vertices_[(i + 1) % vertices_.size()]};
    }

    double perimeter() const {
        double sum = 0.0;
        for (std::size_t i = 0; i < edge_count(); ++i) {
            auto [a, b] = edge(i);
            sum += distance(a, b);
        }
        return sum;
    }

    /// Copy with one vertex replaced; revalidates.
    ControlPolygon with_vertex(std::size_t index, Point3 p) const {
        if (index >= vertices_.size()) throw DomainError("vertex index out of range");
        auto copy = vertices_;
        copy[index] = p;
        return ControlPolygon(std::move(copy), closed_);
    }

private:
    std::vector<Point3> vertices_;
    bool closed_;
};

/// Bezier curve B(t) = sum_m C(n,m) t^m (1-t)^(n-m) P_m, t in [0,1].
class BezierCurve {
public:
    explicit BezierCurve(std::vector<Point3> control_points) : points_(std::move(control_points)) {
        if (points_.size() < 2) throw InvalidInput("Bezier curve needs at least 2 control points");
        for (const auto& p : points_)
            if (!is_finite(p)) throw InvalidInput("Bezier curve has a non-finite control point");
    }

    /// Closed polygons get v0 appended, so n distinct vertices give degree n.
    static BezierCurve from_polygon(const ControlPolygon& polygon) {
        auto pts = polygon.vertices();
        if (polygon.closed()) pts.push_back(pts.front());
        return BezierCurve(std::move(pts));
    }

    const std::vector<Point3>& control_points() const { return points_; }
    std::size_t degree() const { return points_.size() - 1; }
    bool closed() const { return points_.front() == points_.back(); }

private:
    std::vector<Point3> points_;
};

namespace detail {

inline void check_parameter(double t) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("curve parameter outside [0,1]: " + std::to_string(t));
}

// Degrees above this switch from O(n^2) de Casteljau to the O(n) weight sum.
inline constexpr std::size_t kCasteljauMaxDegree = 160;

}  // namespace detail

/// Reference evaluation: the de Casteljau recurrence, no binomials formed.
inline Point3 de_casteljau(std::span<const Point3> points, double t) {
    std::vector<Point3> b(points.begin(), points.end());
    const double s = 1.0 - t;
    for (std::size_t r = b.size() - 1; r > 0; --r)
        for (std::size_t i = 0; i < r; ++i) b[i] = s * b[i] + t * b[i + 1];
    return b[0];
}

/// O(n) Bernstein evaluation. Weights start at the mode m* ~ n t from log-gamma and
/// propagate outward by exact ratios; dividing by the weight sum removes the
/// log-gamma rounding. Stays finite for degrees in the thousands.
inline Point3 bernstein_sum(std::span<const Point3> points, double t) {
    const std::size_t n = points.size() - 1;
    if (t <= 0.0) return points.front();
    if (t >= 1.0) return points.back();
    const double nd = static_cast<double>(n);
    const auto mode = static_cast<std::size_t>(std::clamp(std::floor((nd + 1.0) * t), 0.0, nd));
    const double md = static_cast<double>(mode);
    const double log_w = std::lgamma(nd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(nd - md + 1.0) +
                         md * std::log(t) + (nd - md) * std::log1p(-t);
    const double ratio = t / (1.0 - t);

    const double w_mode = std::exp(log_w);
    Point3 acc = w_mode * points[mode];
    double weight_sum = w_mode;
    double w = w_mode;
    for (std::size_t m = mode; m < n; ++m) {
        w *= static_cast<double>(n - m) / static_cast<double>(m + 1) * ratio;
        if (w == 0.0) break;
        acc = acc + w * points[m + 1];
        weight_sum += w;
    }
    w = w_mode;
    for (std::size_t m = mode; m > 0; --m) {
        w *= static_cast<double>(m) / static_cast<double>(n - m + 1) / ratio;
        if (w == 0.0) break;
        acc = acc + w * points[m - 1];
        weight_sum += w;
    }
    return (1.0 / weight_sum) * acc;
}

inline Point3 bezier_eval(const BezierCurve& curve, double t) {
    detail::check_parameter(t);
    const auto& pts = curve.control_points();
    if (curve.degree() <= detail::kCasteljauMaxDegree) return de_casteljau(pts, t);
    return bernstein_sum(pts, t);
}

/// xy-projection of bezier_eval; runs the recurrence on two coordinates only.
inline Point2 bezier_eval_2d(const BezierCurve& curve, double t) {
    detail::check_parameter(t);
    const auto& pts = curve.control_points();
    if (curve.degree() > detail::kCasteljauMaxDegree) return bernstein_sum(pts, t).xy();
    thread_local std::vector<double> xs, ys;
    xs.resize(pts.size());
    ys.resize(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        xs[i] = pts[i].x;
        ys[i] = pts[i].y;
    }
    const double s = 1.0 - t;
    for (std::size_t r = pts.size() - 1; r > 0; --r) {
        for (std::size_t i = 0; i < r; ++i) {
            xs[i] = s * xs[i] + t * xs[i + 1];
            ys[i] = s * ys[i] + t * ys[i + 1];
        }
    }
    return {xs[0], ys[0]};
}

/// Inserts the midpoint of every edge. Original vertices land on even indices.
inline ControlPolygon collinear_insert(const ControlPolygon& polygon) {
    std::vector<Point3> out;
    out.reserve(2 * polygon.size());
    for (std::size_t i = 0; i < polygon.size(); ++i) {
        out.push_back(polygon[i]);
        if (i < polygon.edge_count()) {
            auto [a, b] = polygon.edge(i);
            out.push_back(midpoint(a, b));
        }
    }
    return ControlPolygon(std::move(out), polygon.closed());
}

inline ControlPolygon collinear_insert(const ControlPolygon& polygon, int rounds) {
    if (rounds < 0) throw DomainError("insertion rounds must be non-negative");
    ControlPolygon p = polygon;
    for (int k = 0; k < rounds; ++k) p = collinear_insert(p);
    return p;
}

inline double point_polygon_distance(Point3 p, const ControlPolygon& polygon) {
    double best = INFINITY;
    for (std::size_t i = 0; i < polygon.edge_count(); ++i) {
        auto [a, b] = polygon.edge(i);
        best = std::min(best, point_segment_distance(p, a, b));
    }
    return best;
}

/// Symmetric sampled Hausdorff distance. Curve -> polygon uses exact point-segment
/// distances from `samples + 1` curve points; polygon -> curve measures polygon
/// vertices and `samples` arclength-uniform points against the sampled curve polyline.
inline double hausdorff_distance(const BezierCurve& curve, const ControlPolygon& polygon, int samples) {
    if (samples < 16) throw DomainError("hausdorff_distance needs at least 16 samples");
    std::vector<Point3> curve_pts(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) curve_pts[static_cast<std::size_t>(i)] = bezier_eval(curve, static_cast<double>(i) / samples);

    double forward = 0.0;
    for (const auto& c : curve_pts) forward = std::max(forward, point_polygon_distance(c, polygon));

    auto to_curve = [&](Point3 p) {
        double best = INFINITY;
        for (std::size_t i = 0; i + 1 < curve_pts.size(); ++i)
            best = std::min(best, point_segment_distance(p, curve_pts[i], curve_pts[i + 1]));
        return best;
    };

    double backward = 0.0;
    for (const auto& v : polygon.vertices()) backward = std::max(backward, to_curve(v));
    const double perimeter = polygon.perimeter();
    std::size_t edge = 0;
    double edge_start = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double s = perimeter * (static_cast<double>(i) + 0.5) / samples;
        auto [a, b] = polygon.edge(edge);
        double len = distance(a, b);
        while (s > edge_start + len && edge + 1 < polygon.edge_count()) {
            edge_start += len;
            ++edge;
            std::tie(a, b) = polygon.edge(edge);
            len = distance(a, b);
        }
        const double local = std::clamp((s - edge_start) / len, 0.0, 1.0);
        backward = std::max(backward, to_curve(lerp(a, b, local)));
    }
    return std::max(forward, backward);
}

}  // namespace knotverify
