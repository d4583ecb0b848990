#include <gtest/gtest.h>

#include "knotverify/analysis.hpp"
#include "knotverify/reference_example.hpp"
#include "knotverify/reproduce.hpp"

using namespace knotverify;

namespace {
AnalysisConfig published() {
    AnalysisConfig c;
    c.insert_rounds = reference::kInsertionRounds;
    return c;
}
}  // namespace

TEST(Analysis, InitialReferenceIsUnknot) {
    const auto r = run_analysis(reference::initial_polygon(), published(), "b1");
    EXPECT_EQ(r.control_point_count, 112u);
    EXPECT_EQ(r.degree, 112u);
    EXPECT_EQ(r.crossing_pairs.size(), 4u);
    EXPECT_TRUE(r.oracle_agrees);
    ASSERT_TRUE(r.alexander);
    EXPECT_EQ(*r.alexander, LaurentPolynomial(1));
    EXPECT_EQ(r.verdict, Verdict::Unknot);
    EXPECT_TRUE(r.polygon_simple);
}

TEST(Analysis, PerturbedReferenceIsKnotted) {
    const auto r = run_perturbation(reference::initial_polygon(), reference::kMovedVertex, reference::kMovedTarget,
                                    published(), true, "b2");
    EXPECT_TRUE(r.oracle_agrees);
    ASSERT_TRUE(r.alexander);
    EXPECT_EQ(*r.alexander, reference::perturbed_alexander());
    EXPECT_EQ(r.verdict, Verdict::NontrivialKnot);
    ASSERT_TRUE(r.arc);
    ASSERT_TRUE(r.sweep);
    EXPECT_TRUE(r.sweep->certified);
}

TEST(Analysis, ReportJsonShape) {
    const auto j = to_json(run_analysis(reference::perturbed_polygon(), published(), "b2"));
    EXPECT_EQ(j["alexander"]["base_exp"], 0);
    EXPECT_EQ(j["alexander"]["coeffs"], json::array({1, -3, 1}));
    EXPECT_EQ(j["verdict"], "NontrivialKnot");
    EXPECT_EQ(j["tolerances"]["root_tolerance"], 1e-6);
    EXPECT_EQ(j["tolerances"]["insert_rounds"], 4);
    EXPECT_EQ(j["tolerances"]["z_separation"], 1e-2);
    EXPECT_TRUE(j["sweep"].is_null());
}

TEST(Analysis, DeterministicBytes) {
    const auto a = to_json(run_analysis(reference::perturbed_polygon(), published())).dump();
    const auto b = to_json(run_analysis(reference::perturbed_polygon(), published())).dump();
    EXPECT_EQ(a, b);
}

TEST(Analysis, PlanarPolygonIsSingularFrame) {
    const ControlPolygon planar({{0, 0, 0}, {2, 0, 0}, {2, 2, 0}, {0, 2, 0}, {1, -1, 0}}, true);
    EXPECT_THROW(run_analysis(planar, {}), SingularFrame);
}

TEST(Analysis, CoarseGridReportsMismatchInsteadOfVerdict) {
    auto cfg = published();
    cfg.intersections.grid = 8;
    const auto r = run_analysis(reference::perturbed_polygon(), cfg);
    EXPECT_FALSE(r.oracle_agrees);
    EXPECT_FALSE(r.alexander);
    EXPECT_EQ(r.verdict, Verdict::Inconclusive);
    EXPECT_NE(r.note.find("crossing-count mismatch"), std::string::npos);
}

TEST(Analysis, OpenCurveCarriesNote) {
    const ControlPolygon open({{0, 0, 0}, {3, 2, 1}, {-1, 2, 0}, {2, 0, 0}}, false);
    const auto r = run_analysis(open, {});
    EXPECT_FALSE(r.closed);
    EXPECT_NE(r.note.find("not closed"), std::string::npos);
}

TEST(Analysis, ZeroRoundsRunsWithoutClaims) {
    AnalysisConfig cfg;
    cfg.insert_rounds = 0;
    const auto outcome = reproduce_reference(cfg);
    EXPECT_FALSE(outcome.claims_asserted);
    EXPECT_EQ(outcome.bundle["initial"]["degree"], 7);
}

TEST(Analysis, PolygonJsonRoundTrip) {
    const auto poly = reference::initial_polygon();
    const auto back = polygon_from_json(polygon_to_json(poly));
    EXPECT_EQ(back.vertices(), poly.vertices());
    auto j = polygon_to_json(poly);
    j["control_points"].push_back(j["control_points"][0]);
    EXPECT_EQ(polygon_from_json(j).size(), 7u);
    EXPECT_THROW(polygon_from_json(json{{"control_points", {{1, 2}}}}), InvalidInput);
    EXPECT_THROW(read_polygon_file("/nonexistent/polygon.json"), IoError);
}
