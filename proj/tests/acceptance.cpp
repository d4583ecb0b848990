// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "knotverify/analysis.hpp"
#include "knotverify/nelder_mead.hpp"
#include "knotverify/reference_example.hpp"
#include "knotverify/reproduce.hpp"
#include "test_support.hpp"

using namespace knotverify;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <std::size_t N>
Outcome pairs_match(const std::vector<IntersectionPair>& found, const std::array<reference::ReportedCrossing, N>& want) {
    std::ostringstream os;
    bool ok = found.size() == N;
    for (const auto& e : want) {
        if (!detail::match_pair(found, e.t1, e.t2, 5e-3)) {
            ok = false;
            os << "missing (" << e.t1 << ", " << e.t2 << ") ";
        }
    }
    os << "found " << found.size() << " pairs (expected " << N << "):";
    for (const auto& p : found) os << " (" << p.t1 << ", " << p.t2 << ")";
    return {ok, os.str()};
}

Outcome property_suite() {
    std::mt19937_64 rng(20240101);
    std::vector<std::string> failures;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) failures.push_back(what);
    };

    int endpoint = 0, affine = 0, perimeter = 0;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 1000; ++i) {
        const auto poly = test::random_polygon(rng, 3 + i % 12);
        const auto curve = BezierCurve::from_polygon(poly);
        endpoint += test::max_abs_diff(bezier_eval(curve, 0.0), poly[0]) <= 1e-12 &&
                    test::max_abs_diff(bezier_eval(curve, 1.0), poly[0]) <= 1e-12;

        double a[9];
        for (auto& v : a) v = u(rng);
        auto map = [&](Point3 p) {
            return Point3{a[0] * p.x + a[1] * p.y + a[2] * p.z + 1.0, a[3] * p.x + a[4] * p.y + a[5] * p.z - 2.0,
                          a[6] * p.x + a[7] * p.y + a[8] * p.z + 0.5};
        };
        std::vector<Point3> mapped;
        for (const auto& v : poly.vertices()) mapped.push_back(map(v));
        const double t = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        affine += test::max_abs_diff(map(bezier_eval(curve, t)),
                                     bezier_eval(BezierCurve::from_polygon(ControlPolygon(mapped, true)), t)) <= 1e-9;

        perimeter += std::abs(collinear_insert(poly, 3).perimeter() - poly.perimeter()) <= 1e-12 * poly.perimeter();
    }
    check(endpoint == 1000, "endpoint interpolation " + std::to_string(endpoint) + "/1000");
    check(affine == 1000, "affine invariance " + std::to_string(affine) + "/1000");
    check(perimeter == 1000, "perimeter preservation " + std::to_string(perimeter) + "/1000");

    int alexander_ok = 0;
    for (const auto& poly : test::random_space_polygons(200, 77)) {
        const auto p = alexander_polynomial(make_diagram(test::polygon_crossings(poly)));
        const auto v1 = p.evaluate(1);
        alexander_ok += (v1 == 1 || v1 == -1) && std::abs(p.evaluate(-1)) % 2 == 1;
    }
    check(alexander_ok == 200, "Alexander identities " + std::to_string(alexander_ok) + "/200");

    int segment_ok = 0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Point3 a0{unit(rng), unit(rng), unit(rng)}, a1{unit(rng), unit(rng), unit(rng)};
        const Point3 b0{unit(rng), unit(rng), unit(rng)}, b1{unit(rng), unit(rng), unit(rng)};
        const double exact = segment_min_distance(a0, a1, b0, b1);
        double sampled = INFINITY;
        for (int k = 0; k <= 1000; ++k) {
            const Point3 p = lerp(a0, a1, k / 1000.0);
            for (int l = 0; l <= 1000; ++l) sampled = std::min(sampled, distance(p, lerp(b0, b1, l / 1000.0)));
        }
        segment_ok += exact <= sampled + 1e-12 && sampled - exact <= 1e-3;
    }
    check(segment_ok == 100, "segment distance " + std::to_string(segment_ok) + "/100");

    const auto c1 = BezierCurve::from_polygon(collinear_insert(reference::initial_polygon(), 4));
    auto fns2 = [&](double t1, double t2) {
        const double d = pairwise_distance(c1, t1, t2);
        return d * d;
    };
    const auto r1 = nelder_mead(fns2, {0.05, 0.45});
    const auto r2 = nelder_mead(fns2, {0.05, 0.45});
    check(r1.x == r2.x && r1.f_value == r2.f_value && r1.iterations == r2.iterations, "optimizer determinism");

    auto bowl = [](double x, double y) { return (x - 0.3) * (x - 0.3) + 2.0 * (y - 0.7) * (y - 0.7); };
    const auto b = nelder_mead(bowl, {0.9, 0.1});
    check(std::abs(b.x[0] - 0.3) <= 1e-6 && std::abs(b.x[1] - 0.7) <= 1e-6, "Nelder-Mead bowl");

    for (const auto& [name, poly] : {std::pair{"initial", reference::initial_polygon()},
                                     std::pair{"perturbed", reference::perturbed_polygon()}}) {
        const auto curve = BezierCurve::from_polygon(collinear_insert(poly, 4));
        const auto found = find_self_intersections(curve);
        const auto oracle = polyline_crossings(curve, 4096);
        check(crossings_agree(found, oracle, 5e-3), std::string("oracle agreement on ") + name + " (" +
                                                        std::to_string(found.size()) + " vs " +
                                                        std::to_string(oracle.size()) + ")");
    }

    if (failures.empty()) return {true, "all properties hold"};
    std::string d;
    for (const auto& f : failures) d += f + "; ";
    return {false, d};
}

}  // namespace

int main() {
    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria;
    AnalysisConfig cfg;
    cfg.insert_rounds = reference::kInsertionRounds;

    const auto initial = reference::initial_polygon();
    const auto c1 = BezierCurve::from_polygon(collinear_insert(initial, 4));
    const auto c2 = BezierCurve::from_polygon(collinear_insert(reference::perturbed_polygon(), 4));
    std::vector<IntersectionPair> found1, found2;
    double search_seconds = 0.0;

    criteria.emplace_back("Repro-1 crossing parameters (initial)", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        found1 = find_self_intersections(c1);
        search_seconds = seconds_since(t0);
        auto o = pairs_match(found1, reference::initial_crossings());
        o.passed = o.passed && search_seconds < 60.0;
        o.detail += "; " + std::to_string(search_seconds) + " s";
        return o;
    });
    criteria.emplace_back("Repro-2 crossing parameters (perturbed)", [&] {
        found2 = find_self_intersections(c2);
        return pairs_match(found2, reference::perturbed_crossings());
    });
    criteria.emplace_back("Repro-3 3D evaluations", [&] {
        double worst = 0.0;
        bool all = true;
        auto scan = [&](const std::vector<IntersectionPair>& found, const BezierCurve& curve, const auto& want) {
            for (const auto& e : want) {
                const auto m = detail::match_pair(found, e.t1, e.t2, 5e-3);
                if (!m) {
                    all = false;
                    continue;
                }
                const Point3 p1 = bezier_eval(curve, found[*m].t1), p2 = bezier_eval(curve, found[*m].t2);
                worst = std::max({worst, test::max_abs_diff(p1, e.p1), test::max_abs_diff(p2, e.p2)});
            }
        };
        scan(found1, c1, reference::initial_crossings());
        scan(found2, c2, reference::perturbed_crossings());
        return Outcome{all && worst <= 1e-2, "max coordinate deviation " + std::to_string(worst)};
    });
    criteria.emplace_back("Repro-4 over/under (initial)", [&] {
        const auto d = build_diagram(c1, found1);
        std::string pattern;
        bool ok = d.crossings.size() == 4;
        for (std::size_t k = 0; k < d.crossings.size() && k < 4; ++k) {
            pattern += d.crossings[k].over_is_first ? "over " : "under ";
            ok = ok && d.crossings[k].over_is_first == reference::kInitialFirstStrandOver[k];
        }
        return Outcome{ok, "first strand: " + pattern};
    });
    criteria.emplace_back("Repro-5 invariants", [&] {
        const auto r1 = run_analysis(initial, cfg);
        const auto r2 = run_analysis(reference::perturbed_polygon(), cfg);
        const bool ok = r1.alexander && *r1.alexander == LaurentPolynomial(1) && r1.verdict == Verdict::Unknot &&
                        r2.alexander && *r2.alexander == reference::perturbed_alexander() &&
                        r2.verdict == Verdict::NontrivialKnot;
        return Outcome{ok, "initial " + (r1.alexander ? r1.alexander->to_string() : "n/a") + " " +
                               to_string(r1.verdict) + "; perturbed " +
                               (r2.alexander ? r2.alexander->to_string() : "n/a") + " " + to_string(r2.verdict)};
    });
    criteria.emplace_back("Repro-6 simplicity sweep", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto arc = make_perturbation_arc(initial, reference::kMovedVertex, reference::kMovedTarget);
        const auto s = sweep_simplicity(initial, arc, 4096, reference::kInsertionRounds);
        const double secs = seconds_since(t0);
        std::ostringstream os;
        os << "steps " << s.steps << ", min distance " << s.min_distance << ", L*step "
           << s.lipschitz_bound * s.theta_step << ", " << secs << " s";
        return Outcome{s.certified && s.min_distance > 0.0 && s.steps <= 8192 && secs < 30.0, os.str()};
    });
    criteria.emplace_back("Repro-7 collinear insertion", [&] {
        const auto p = collinear_insert(initial, 4);
        const double rel = std::abs(p.perimeter() - initial.perimeter()) / initial.perimeter();
        std::ostringstream os;
        os << p.size() << " control points, relative perimeter change " << rel;
        return Outcome{p.size() == 112 && rel <= 1e-12, os.str()};
    });
    criteria.emplace_back("Fixture-8 published matrix minors", [&] {
        // Independently expanded values (computer algebra), frozen.
        const std::vector<std::vector<std::int64_t>> expected = {
            {1, -2, 2}, {1, -1, 1, 0, -1}, {1, -1, 1}, {1, 1}, {1, 1, -1}};
        const auto m = reference::region_matrix();
        bool ok = true, any_match = false;
        std::string values;
        for (std::size_t k = 0; k < 5; ++k) {
            const auto det = normalize_alexander(poly_matrix_determinant(m.without({}, {k, k + 1})));
            ok = ok && det == LaurentPolynomial::from_ascending(0, expected[k]);
            any_match = any_match || det == reference::perturbed_alexander();
            values += det.to_string() + "; ";
        }
        return Outcome{ok, values + (any_match ? "one minor matches" : "no minor matches (recorded erratum)")};
    });
    criteria.emplace_back("Property suite", property_suite);
    criteria.emplace_back("Convergence (Hausdorff decreasing)", [&] {
        double previous = INFINITY;
        bool ok = true;
        std::ostringstream os;
        for (int k = 0; k <= 4; ++k) {
            const auto p = collinear_insert(initial, k);
            const double h = hausdorff_distance(BezierCurve::from_polygon(p), p, 2048);
            ok = ok && h < previous;
            previous = h;
            os << h << " ";
        }
        return Outcome{ok, os.str()};
    });

    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Outcome o;
        try {
            o = run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.passed;
        std::printf("%s %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
