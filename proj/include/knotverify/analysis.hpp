#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"
#include "diagram.hpp"
#include "intersections.hpp"
#include "json_io.hpp"
#include "laurent.hpp"
#include "rotation.hpp"
#include "simplicity.hpp"

namespace knotverify {

struct AnalysisConfig {
    int insert_rounds = 0;
    IntersectionConfig intersections{};
    double z_separation = 1e-2;
    double tangent_step = 1e-5;
    double clearance = 1e-6;
    int oracle_segments = 4096;
    int sweep_steps = 4096;
};

inline json to_json(const AnalysisConfig& c) {
    return {{"insert_rounds", c.insert_rounds},
            {"grid", c.intersections.grid},
            {"root_tolerance", c.intersections.root_tolerance},
            {"diagonal_margin", c.intersections.diagonal_margin},
            {"wrap_margin", c.intersections.wrap_margin},
            {"dedup_radius", c.intersections.dedup_radius},
            {"simplex", to_json(c.intersections.simplex)},
            {"z_separation", c.z_separation},
            {"tangent_step", c.tangent_step},
            {"clearance", c.clearance},
            {"oracle_segments", c.oracle_segments},
            {"sweep_steps", c.sweep_steps}};
}

struct AnalysisReport {
    std::string curve_id;
    bool closed = true;
    std::size_t control_point_count = 0;  // polygon vertices after insertion
    std::size_t degree = 0;
    std::vector<IntersectionPair> crossing_pairs;
    KnotDiagram diagram;
    std::string gauss_code;
    std::optional<LaurentPolynomial> alexander;  // absent when the oracle disagrees
    Verdict verdict = Verdict::Inconclusive;
    bool polygon_simple = false;
    std::size_t oracle_crossing_count = 0;
    bool oracle_agrees = false;
    std::optional<PerturbationArc> arc;
    std::optional<SweepReport> sweep;
    std::string note;
    AnalysisConfig config;
};

inline json to_json(const AnalysisReport& r) {
    json pairs = json::array();
    for (const auto& p : r.crossing_pairs) pairs.push_back(to_json(p));
    json crossings = json::array();
    for (std::size_t k = 0; k < r.diagram.crossings.size(); ++k) {
        const auto& c = r.diagram.crossings[k];
        crossings.push_back({{"id", k + 1},
                             {"t_first", c.t_first},
                             {"t_second", c.t_second},
                             {"point2d", to_json(c.point2d)},
                             {"z_first", c.z_first},
                             {"z_second", c.z_second},
                             {"over_is_first", c.over_is_first},
                             {"sign", c.sign}});
    }
    json j = {{"curve_id", r.curve_id},
              {"closed", r.closed},
              {"control_point_count", r.control_point_count},
              {"degree", r.degree},
              {"crossing_pairs", pairs},
              {"crossings", crossings},
              {"gauss_code", r.gauss_code},
              {"alexander", r.alexander ? polynomial_to_json(*r.alexander) : json(nullptr)},
              {"verdict", to_string(r.verdict)},
              {"polygon_simple", r.polygon_simple},
              {"oracle_crossing_count", r.oracle_crossing_count},
              {"oracle_agrees", r.oracle_agrees},
              {"arc", r.arc ? to_json(*r.arc) : json(nullptr)},
              {"sweep", r.sweep ? to_json(*r.sweep) : json(nullptr)},
              {"tolerances", to_json(r.config)}};
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

/// True when the polyline crossings and the optimizer's pairs match one-to-one within
/// dedup_radius.
inline bool crossings_agree(const std::vector<IntersectionPair>& pairs, const std::vector<Vec2>& oracle,
                            double radius) {
    if (pairs.size() != oracle.size()) return false;
    std::vector<bool> used(pairs.size(), false);
    for (const auto& o : oracle) {
        bool matched = false;
        for (std::size_t i = 0; i < pairs.size() && !matched; ++i) {
            if (used[i]) continue;
            if (std::hypot(pairs[i].t1 - o[0], pairs[i].t2 - o[1]) < radius) used[i] = matched = true;
        }
        if (!matched) return false;
    }
    return true;
}

/// Insertion, intersection search, diagram, invariant, and polygon simplicity.
/// SingularFrame / TangentialCrossing propagate to the caller.
inline AnalysisReport run_analysis(const ControlPolygon& base, const AnalysisConfig& config,
                                   std::string curve_id = "curve") {
    AnalysisReport r;
    r.curve_id = std::move(curve_id);
    r.config = config;
    const ControlPolygon polygon = collinear_insert(base, config.insert_rounds);
    const BezierCurve curve = BezierCurve::from_polygon(polygon);
    r.closed = polygon.closed();
    r.control_point_count = polygon.size();
    r.degree = curve.degree();

    r.crossing_pairs = find_self_intersections(curve, config.intersections);
    const auto oracle = polyline_crossings(curve, config.oracle_segments);
    r.oracle_crossing_count = oracle.size();
    r.oracle_agrees = crossings_agree(r.crossing_pairs, oracle, config.intersections.dedup_radius);

    r.diagram = build_diagram(curve, r.crossing_pairs, config.z_separation, config.tangent_step);
    r.gauss_code = gauss_code_string(r.diagram);
    if (r.oracle_agrees) {
        r.alexander = alexander_polynomial(r.diagram);
        r.verdict = is_trivial_verdict(*r.alexander, r.diagram.crossings.size());
    } else {
        r.verdict = Verdict::Inconclusive;
        r.note = "crossing-count mismatch: optimizer found " + std::to_string(r.crossing_pairs.size()) +
                 ", polyline oracle found " + std::to_string(oracle.size());
    }
    if (!r.closed) r.note = r.note.empty() ? "not closed: knot type n/a" : r.note + "; not closed: knot type n/a";
    r.polygon_simple = polygon_is_simple(polygon, config.clearance);
    return r;
}

/// Moves one original vertex to `target`, analyses the result and optionally sweeps
/// the rotation arc for polygon simplicity.
inline AnalysisReport run_perturbation(const ControlPolygon& base, std::size_t vertex, Point3 target,
                                       const AnalysisConfig& config, bool sweep, std::string curve_id = "perturbed") {
    const PerturbationArc arc = make_perturbation_arc(base, vertex, target);
    AnalysisReport r = run_analysis(base.with_vertex(vertex, target), config, std::move(curve_id));
    r.arc = arc;
    if (sweep) r.sweep = sweep_simplicity(base, arc, config.sweep_steps, config.insert_rounds);
    return r;
}

}  // namespace knotverify
