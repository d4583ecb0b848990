#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "curve.hpp"
#include "error.hpp"
#include "intersections.hpp"
#include "laurent.hpp"

namespace knotverify {

struct Crossing {
    double t_first = 0.0;  // t_first < t_second
    double t_second = 0.0;
    Point2 point2d;
    double z_first = 0.0;
    double z_second = 0.0;
    bool over_is_first = false;
    int sign = 0;  // sign of cross(over tangent, under tangent)
};

struct GaussEntry {
    int crossing_id = 0;  // 1-based
    bool over = false;
    int sign = 0;

    friend bool operator==(const GaussEntry&, const GaussEntry&) = default;
};

/// Oriented diagram traversed by increasing parameter. crossings[k] has id k + 1.
struct KnotDiagram {
    std::vector<Crossing> crossings;
    std::vector<GaussEntry> gauss_code;
};

/// Orders crossings by t_first, assigns ids 1..k and builds the Gauss sequence.
inline KnotDiagram make_diagram(std::vector<Crossing> crossings) {
    for (const auto& c : crossings) {
        if (!(c.t_first < c.t_second)) throw StructuralError("crossing parameters must satisfy t_first < t_second");
        if (c.sign != 1 && c.sign != -1) throw StructuralError("crossing sign must be +1 or -1");
        if (c.over_is_first != (c.z_first > c.z_second))
            throw StructuralError("over/under flag disagrees with the z values");
    }
    std::stable_sort(crossings.begin(), crossings.end(), [](const auto& a, const auto& b) { return a.t_first < b.t_first; });

    struct Visit {
        double t;
        GaussEntry entry;
    };
    std::vector<Visit> visits;
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const auto& c = crossings[k];
        const int id = static_cast<int>(k) + 1;
        visits.push_back({c.t_first, {id, c.over_is_first, c.sign}});
        visits.push_back({c.t_second, {id, !c.over_is_first, c.sign}});
    }
    std::stable_sort(visits.begin(), visits.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    for (std::size_t i = 1; i < visits.size(); ++i)
        if (visits[i].t == visits[i - 1].t) throw StructuralError("two crossing visits share a parameter value");

    KnotDiagram d;
    d.crossings = std::move(crossings);
    for (const auto& v : visits) d.gauss_code.push_back(v.entry);
    return d;
}

/// Classifies each intersection pair by z and orients it with central-difference tangents.
inline KnotDiagram build_diagram(const BezierCurve& curve, const std::vector<IntersectionPair>& pairs,
                                 double z_separation = 1e-2, double tangent_step = 1e-5) {
    auto tangent = [&](double t) {
        const double lo = std::max(0.0, t - tangent_step);
        const double hi = std::min(1.0, t + tangent_step);
        const Point2 d = bezier_eval_2d(curve, hi) - bezier_eval_2d(curve, lo);
        const double len = norm(d);
        if (!(len > 0.0)) throw TangentialCrossing("projected tangent vanishes at t=" + std::to_string(t));
        return (1.0 / len) * d;
    };

    std::vector<Crossing> crossings;
    for (const auto& p : pairs) {
        Crossing c;
        c.t_first = std::min(p.t1, p.t2);
        c.t_second = std::max(p.t1, p.t2);
        c.point2d = p.point2d;
        const Point3 a = bezier_eval(curve, c.t_first);
        const Point3 b = bezier_eval(curve, c.t_second);
        c.z_first = a.z;
        c.z_second = b.z;
        if (!(std::abs(a.z - b.z) > z_separation)) {
            std::ostringstream os;
            os << "singular frame: strands at t=" << c.t_first << " and t=" << c.t_second << " differ in z by "
               << std::abs(a.z - b.z) << " <= " << z_separation;
            throw SingularFrame(os.str());
        }
        c.over_is_first = a.z > b.z;
        const Point2 ta = tangent(c.t_first);
        const Point2 tb = tangent(c.t_second);
        const double s = c.over_is_first ? cross(ta, tb) : cross(tb, ta);
        if (std::abs(s) < 1e-8) {
            std::ostringstream os;
            os << "tangential crossing at t=" << c.t_first << ", " << c.t_second;
            throw TangentialCrossing(os.str());
        }
        c.sign = s > 0.0 ? 1 : -1;
        crossings.push_back(c);
    }
    return make_diagram(std::move(crossings));
}

/// "1 -2 3 ... | + - ...": signed ids in traversal order (positive = over), then the
/// sign of each crossing by id.
inline std::string gauss_code_string(const KnotDiagram& d) {
    std::ostringstream os;
    for (std::size_t i = 0; i < d.gauss_code.size(); ++i) {
        if (i) os << ' ';
        const auto& g = d.gauss_code[i];
        os << (g.over ? g.crossing_id : -g.crossing_id);
    }
    os << " |";
    for (const auto& c : d.crossings) os << ' ' << (c.sign > 0 ? '+' : '-');
    return os.str();
}

/// Reads the gauss_code_string format. Visits get synthetic parameters (k + 0.5) / 2n
/// and z values 1 (over) / 0 (under); crossings are renumbered by first visit.
inline KnotDiagram parse_gauss_code(std::string_view text) {
    const auto bar = text.find('|');
    if (bar == std::string_view::npos) throw StructuralError("Gauss code needs a '|' before the sign list");
    std::istringstream seq{std::string(text.substr(0, bar))};
    std::istringstream signs{std::string(text.substr(bar + 1))};
    std::vector<int> visits;
    for (int v; seq >> v;) {
        if (v == 0) throw StructuralError("crossing id 0 in Gauss code");
        visits.push_back(v);
    }
    if (!seq.eof()) throw StructuralError("Gauss code sequence must be integers");
    std::vector<int> sign_list;
    for (std::string s; signs >> s;) {
        if (s == "+")
            sign_list.push_back(1);
        else if (s == "-")
            sign_list.push_back(-1);
        else
            throw StructuralError("sign list entries must be '+' or '-'");
    }
    const std::size_t n = sign_list.size();
    if (visits.size() != 2 * n) throw StructuralError("Gauss code length must be twice the crossing count");

    std::vector<Crossing> crossings(n);
    std::vector<int> seen(n, 0);
    const double step = 1.0 / static_cast<double>(2 * n);
    for (std::size_t k = 0; k < visits.size(); ++k) {
        const int id = visits[k] < 0 ? -visits[k] : visits[k];
        if (static_cast<std::size_t>(id) > n) throw StructuralError("crossing id exceeds the sign list");
        auto& c = crossings[static_cast<std::size_t>(id) - 1];
        const double t = (static_cast<double>(k) + 0.5) * step;
        const double z = visits[k] > 0 ? 1.0 : 0.0;
        if (seen[id - 1] == 0) {
            c.t_first = t;
            c.z_first = z;
        } else if (seen[id - 1] == 1) {
            c.t_second = t;
            c.z_second = z;
        } else {
            throw StructuralError("crossing " + std::to_string(id) + " visited more than twice");
        }
        ++seen[id - 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto& c = crossings[i];
        if (seen[i] != 2 || c.z_first == c.z_second)
            throw StructuralError("crossing " + std::to_string(i + 1) + " must be visited once over and once under");
        c.over_is_first = c.z_first > c.z_second;
        c.sign = sign_list[i];
    }
    return make_diagram(std::move(crossings));
}

namespace detail {

inline void check_diagram(const KnotDiagram& d) {
    const std::size_t n = d.crossings.size();
    if (d.gauss_code.size() != 2 * n) throw StructuralError("Gauss code length must be twice the crossing count");
    std::vector<int> over(n, 0), under(n, 0);
    for (const auto& g : d.gauss_code) {
        if (g.crossing_id < 1 || static_cast<std::size_t>(g.crossing_id) > n)
            throw StructuralError("Gauss code references an unknown crossing");
        ++(g.over ? over : under)[static_cast<std::size_t>(g.crossing_id) - 1];
        if (g.sign != d.crossings[static_cast<std::size_t>(g.crossing_id) - 1].sign)
            throw StructuralError("Gauss code sign disagrees with its crossing");
    }
    for (std::size_t i = 0; i < n; ++i)
        if (over[i] != 1 || under[i] != 1)
            throw StructuralError("crossing " + std::to_string(i + 1) + " must be visited once over and once under");
}

}  // namespace detail

/// Alexander-Fox matrix of the Wirtinger presentation. Arcs run between consecutive
/// under-visits of the Gauss code; arc j starts just after the j-th under-visit. At the
/// crossing closing arc j-1 (incoming) and opening arc j (outgoing) under arc k (over):
///   positive: (1-t) x_k + t x_{j-1} - x_j
///   negative: (1-t) x_k - x_{j-1} + t x_j
/// Row j corresponds to the j-th under-visit.
inline PolyMatrix alexander_matrix(const KnotDiagram& d) {
    detail::check_diagram(d);
    const std::size_t n = d.crossings.size();
    std::vector<std::size_t> arc_of_visit(d.gauss_code.size());
    std::vector<std::size_t> under_positions;
    for (std::size_t k = 0; k < d.gauss_code.size(); ++k)
        if (!d.gauss_code[k].over) under_positions.push_back(k);
    // Visits before the first under-visit belong to the last arc, which wraps around.
    std::size_t arc = n - 1;
    for (std::size_t k = 0, u = 0; k < d.gauss_code.size(); ++k) {
        arc_of_visit[k] = arc;
        if (u < under_positions.size() && under_positions[u] == k) {
            arc = u;
            ++u;
        }
    }
    std::vector<std::size_t> over_arc(n);
    for (std::size_t k = 0; k < d.gauss_code.size(); ++k)
        if (d.gauss_code[k].over) over_arc[static_cast<std::size_t>(d.gauss_code[k].crossing_id) - 1] = arc_of_visit[k];

    const LaurentPolynomial t = LaurentPolynomial::t();
    const LaurentPolynomial one(1);
    PolyMatrix m(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const auto& g = d.gauss_code[under_positions[j]];
        const std::size_t incoming = (j + n - 1) % n;
        const std::size_t outgoing = j;
        const std::size_t over = over_arc[static_cast<std::size_t>(g.crossing_id) - 1];
        m(j, over) += one - t;
        if (g.sign > 0) {
            m(j, incoming) += t;
            m(j, outgoing) -= one;
        } else {
            m(j, incoming) -= one;
            m(j, outgoing) += t;
        }
    }
    return m;
}

/// Normalized Alexander polynomial: determinant of the matrix with its last row and
/// column removed. Diagrams without crossings give 1.
inline LaurentPolynomial alexander_polynomial(const KnotDiagram& d) {
    if (d.crossings.empty()) {
        detail::check_diagram(d);
        return LaurentPolynomial(1);
    }
    const PolyMatrix m = alexander_matrix(d);
    const std::size_t last = m.rows() - 1;
    return normalize_alexander(poly_matrix_determinant(m.without({last}, {last})));
}

enum class Verdict { Unknot, NontrivialKnot, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Unknot: return "Unknot";
        case Verdict::NontrivialKnot: return "NontrivialKnot";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

/// A trivial polynomial certifies the unknot only for diagrams of at most 4 crossings
/// (3_1 and 4_1 both have nontrivial polynomials).
inline Verdict is_trivial_verdict(const LaurentPolynomial& normalized, std::size_t crossing_count) {
    if (normalized != LaurentPolynomial(1)) return Verdict::NontrivialKnot;
    return crossing_count <= 4 ? Verdict::Unknot : Verdict::Inconclusive;
}

}  // namespace knotverify
