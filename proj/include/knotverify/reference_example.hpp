#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "curve.hpp"
#include "geometry.hpp"
#include "laurent.hpp"

/// The seven-vertex closed polygon whose degree-112 Bezier curve is an unknot, and the
/// single-vertex move that turns the curve into a knot while the polygon stays simple.
namespace knotverify::reference {

inline ControlPolygon initial_polygon() {
    return ControlPolygon(
        {
            {1.9817, -1.7646, -4.5897},
            {-1.3841185, 4.6825505, 0.913541},
            {-3.2983075, -4.0566825, 2.686189},
            {-0.1232995, 2.768254, -2.463584},
            {3.9079915, -4.533357, 1.2263705},
            {-3.935983, -0.438272, -0.983365},
            {3.218174, 4.296123, 2.1124595},
        },
        true);
}

inline constexpr std::size_t kMovedVertex = 0;
inline constexpr Point3 kMovedTarget{1.3076, -3.3320, -2.5072};
inline constexpr int kInsertionRounds = 4;
inline constexpr std::size_t kExpectedControlPoints = 112;

inline ControlPolygon perturbed_polygon() { return initial_polygon().with_vertex(kMovedVertex, kMovedTarget); }

struct ReportedCrossing {
    double t1, t2;
    Point3 p1, p2;
};

/// Published self-intersection parameters and their 3D evaluations, 4 digits.
inline const std::array<ReportedCrossing, 4>& initial_crossings() {
    static const std::array<ReportedCrossing, 4> v{{
        {0.0488, 0.4614, {0.8309, 0.4397, -2.7081}, {0.8308, 0.4397, -1.2072}},
        {0.0861, 0.7918, {-0.0435, 2.0929, -1.2807}, {-0.0435, 2.0928, 0.6747}},
        {0.3473, 0.6931, {-1.8672, -1.0031, 0.4288}, {-1.8672, -1.0032, -0.3359}},
        {0.5126, 0.9915, {2.0548, -1.4062, -0.3480}, {2.0548, -1.4061, -4.1932}},
    }};
    return v;
}

inline const std::array<ReportedCrossing, 4>& perturbed_crossings() {
    static const std::array<ReportedCrossing, 4> v{{
        {0.0761, 0.4240, {-0.1265, 0.9308, -0.6850}, {-0.1266, 0.9308, -1.2854}},
        {0.0928, 0.7830, {-0.4389, 1.8160, -0.2901}, {-0.4389, 1.8159, 0.5159}},
        {0.3473, 0.6931, {-1.8672, -1.0032, 0.4289}, {-1.8671, -1.0032, -0.3358}},
        {0.5039, 0.9575, {1.8761, -1.0622, -0.5163}, {1.8761, -1.0623, -1.1327}},
    }};
    return v;
}

/// Over/under of the first-visited strand at the four initial crossings: under, under, over, over.
inline constexpr std::array<bool, 4> kInitialFirstStrandOver{false, false, true, true};

/// Published region-based 4x6 diagram matrix of the perturbed curve.
inline PolyMatrix region_matrix() {
    const LaurentPolynomial t = LaurentPolynomial::t();
    const LaurentPolynomial o(0), p(1), m(-1);
    return PolyMatrix{
        {o, o, p, m, -t, t},
        {m, t, p, -t, o, o},
        {-t, t, o, m, o, p},
        {t, o, p, o, m, t},
    };
}

/// Published Alexander polynomial of the perturbed curve, 1 - 3t + t^2.
inline LaurentPolynomial perturbed_alexander() { return LaurentPolynomial::from_ascending(0, {1, -3, 1}); }

}  // namespace knotverify::reference
