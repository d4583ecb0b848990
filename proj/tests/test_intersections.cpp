#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "knotverify/intersections.hpp"
#include "knotverify/reference_example.hpp"
#include "test_support.hpp"

using namespace knotverify;

namespace {

/// Test-side oracle: proper crossings of a uniformly sampled polyline, pairwise.
std::vector<Vec2> brute_force_crossings(const BezierCurve& curve, int segments) {
    std::vector<Point2> pts;
    for (int i = 0; i <= segments; ++i) {
        const Point3 p = de_casteljau(curve.control_points(), static_cast<double>(i) / segments);
        pts.push_back({p.x, p.y});
    }
    auto orient = [](Point2 a, Point2 b, Point2 c) { return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x); };
    std::vector<Vec2> out;
    const int last = curve.closed() ? segments - 1 : segments;
    for (int i = 0; i < segments; ++i) {
        for (int j = i + 2; j < segments; ++j) {
            if (i == 0 && j == last) continue;  // joined through the closing point
            const Point2 a = pts[i], b = pts[i + 1], c = pts[j], d = pts[j + 1];
            const double o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
            if ((o1 > 0) != (o2 > 0) && (o3 > 0) != (o4 > 0)) {
                const double s = o3 / (o3 - o4), u = o1 / (o1 - o2);
                out.push_back({(i + s) / segments, (j + u) / segments});
            }
        }
    }
    return out;
}

bool contains_near(const std::vector<IntersectionPair>& found, double t1, double t2, double tol) {
    return std::any_of(found.begin(), found.end(), [&](const auto& p) {
        return std::abs(p.t1 - t1) <= tol && std::abs(p.t2 - t2) <= tol;
    });
}

}  // namespace

TEST(SelfIntersections, InitialReferenceCurve) {
    const auto curve = BezierCurve::from_polygon(collinear_insert(reference::initial_polygon(), 4));
    const auto found = find_self_intersections(curve);
    ASSERT_EQ(found.size(), 4u);
    for (const auto& e : reference::initial_crossings()) EXPECT_TRUE(contains_near(found, e.t1, e.t2, 5e-3));
    for (const auto& p : found) {
        EXPECT_LT(p.t1, p.t2);
        EXPECT_LE(p.residual, 1e-6);
        EXPECT_NEAR(p.p3d_1.x, p.p3d_2.x, 1e-5);
        EXPECT_NEAR(p.p3d_1.y, p.p3d_2.y, 1e-5);
    }
}

TEST(SelfIntersections, PerturbedReferenceCurveContainsPublishedPairs) {
    const auto curve = BezierCurve::from_polygon(collinear_insert(reference::perturbed_polygon(), 4));
    const auto found = find_self_intersections(curve);
    for (const auto& e : reference::perturbed_crossings()) EXPECT_TRUE(contains_near(found, e.t1, e.t2, 5e-3));
    // Two further transversal crossings exist beyond the published four; see the
    // brute-force agreement test below.
    EXPECT_EQ(found.size(), 6u);
}

TEST(SelfIntersections, AgreesWithBruteForcePolyline) {
    for (const auto& poly : {reference::initial_polygon(), reference::perturbed_polygon()}) {
        const auto curve = BezierCurve::from_polygon(collinear_insert(poly, 4));
        const auto found = find_self_intersections(curve);
        const auto oracle = brute_force_crossings(curve, 4096);
        ASSERT_EQ(found.size(), oracle.size());
        for (const auto& o : oracle) EXPECT_TRUE(contains_near(found, o[0], o[1], 5e-3));
        // The library's own polyline oracle agrees with this one.
        EXPECT_EQ(polyline_crossings(curve, 4096).size(), oracle.size());
    }
}

TEST(SelfIntersections, RandomCurvesAgreeWithBruteForce) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 10; ++trial) {
        const auto curve = BezierCurve::from_polygon(test::random_polygon(rng, 6 + trial % 4));
        const auto found = find_self_intersections(curve);
        const auto oracle = brute_force_crossings(curve, 4096);
        EXPECT_EQ(found.size(), oracle.size()) << "trial " << trial;
    }
}

TEST(SelfIntersections, LineHasNone) {
    BezierCurve line({{0, 0, 0}, {1, 1, 1}});
    EXPECT_TRUE(find_self_intersections(line).empty());
    EXPECT_TRUE(polyline_crossings(line).empty());
}

TEST(SelfIntersections, LoopedCubic) {
    // Symmetric cubic with a single loop crossing on the x axis at t1 + t2 = 1.
    BezierCurve loop({{0, 0, 0}, {3, 2, 1}, {-1, 2, 0}, {2, 0, 0}});
    const auto oracle = brute_force_crossings(loop, 4096);
    const auto found = find_self_intersections(loop);
    ASSERT_EQ(oracle.size(), 1u);
    ASSERT_EQ(found.size(), 1u);
    EXPECT_NEAR(found[0].t1, oracle[0][0], 1e-3);
    EXPECT_NEAR(found[0].t2, oracle[0][1], 1e-3);
}

TEST(SelfIntersections, Deterministic) {
    const auto curve = BezierCurve::from_polygon(collinear_insert(reference::perturbed_polygon(), 4));
    const auto a = find_self_intersections(curve);
    const auto b = find_self_intersections(curve);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].t1, b[i].t1);
        EXPECT_EQ(a[i].t2, b[i].t2);
    }
}

TEST(SelfIntersections, CoarseGridRejected) {
    const auto curve = BezierCurve::from_polygon(reference::initial_polygon());
    IntersectionConfig cfg;
    cfg.grid = 4;
    EXPECT_THROW(find_self_intersections(curve, cfg), DomainError);
}
