#include <gtest/gtest.h>

#include <limits>

#include "knotverify/laurent.hpp"
#include "knotverify/reference_example.hpp"

using namespace knotverify;

namespace {
LaurentPolynomial asc(int base, std::vector<std::int64_t> c) { return LaurentPolynomial::from_ascending(base, c); }
}  // namespace

TEST(Laurent, Arithmetic) {
    const auto t = LaurentPolynomial::t();
    const auto p = t * t - 3 * t + 1;
    EXPECT_EQ(p, asc(0, {1, -3, 1}));
    EXPECT_EQ(p.evaluate(1), -1);
    EXPECT_EQ(p.evaluate(-1), 5);
    EXPECT_EQ((t - 1) * (t + 1), t * t - 1);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p.to_string(), "t^2 - 3*t + 1");
    EXPECT_EQ(LaurentPolynomial::monomial(5, -2).min_exponent(), -2);
}

TEST(Laurent, Reflection) {
    const auto p = asc(-1, {2, 0, 3});  // 2/t + 3t
    EXPECT_EQ(p.reflected(), asc(-1, {3, 0, 2}));
}

TEST(Laurent, OverflowIsDetected) {
    const auto big = LaurentPolynomial(std::numeric_limits<std::int64_t>::max());
    EXPECT_THROW(big + 1, Error);
    EXPECT_THROW(big * 2, Error);
}

TEST(Laurent, Normalization) {
    EXPECT_EQ(normalize_alexander(asc(-3, {-1, 3, -1})), asc(0, {1, -3, 1}));
    EXPECT_EQ(normalize_alexander(LaurentPolynomial::monomial(-1, 4)), LaurentPolynomial(1));
    EXPECT_THROW(normalize_alexander(LaurentPolynomial{}), StructuralError);
}

TEST(Determinant, SmallExamples) {
    const auto t = LaurentPolynomial::t();
    EXPECT_EQ(poly_matrix_determinant(PolyMatrix{{t, 1}, {1, t}}), t * t - 1);
    EXPECT_EQ(poly_matrix_determinant(PolyMatrix{{2, 0, 0}, {0, 3, 0}, {0, 0, t}}), 6 * t);
    EXPECT_EQ(poly_matrix_determinant(PolyMatrix(0, 0)), LaurentPolynomial(1));
    // Trefoil-style 2x2 Alexander minor: det [[1-t, t], [-1, 1-t]] = t^2 - t + 1.
    EXPECT_EQ(poly_matrix_determinant(PolyMatrix{{1 - t, t}, {-1, 1 - t}}), t * t - t + 1);
}

TEST(Determinant, IntegerMatrixMatchesCofactorFormula) {
    const PolyMatrix m{{2, -1, 0, 3}, {1, 4, -2, 0}, {0, 5, 1, -1}, {3, 0, 2, 2}};
    // Reference value from a floating-point LU determinant.
    EXPECT_EQ(poly_matrix_determinant(m), LaurentPolynomial(-74));
}

TEST(Determinant, NonSquareAndOversizedThrow) {
    EXPECT_THROW(poly_matrix_determinant(PolyMatrix(2, 3)), InvalidInput);
    EXPECT_THROW(poly_matrix_determinant(PolyMatrix(21, 21)), InvalidInput);
}

// The published 4x6 matrix, with each consecutive pair of columns deleted. None of the
// five minors normalizes to t^2 - 3t + 1; the values are frozen here as regressions.
TEST(Determinant, PublishedRegionMatrixMinors) {
    const auto m = reference::region_matrix();
    ASSERT_EQ(m.rows(), 4u);
    ASSERT_EQ(m.cols(), 6u);
    const std::vector<LaurentPolynomial> expected_raw = {
        asc(0, {1, -2, 2}),         // 2t^2 - 2t + 1
        asc(0, {-1, 1, -1, 0, 1}),  // t^4 - t^2 + t - 1
        asc(2, {-1, 1, -1}),        // -t^4 + t^3 - t^2
        asc(2, {1, 1}),             // t^3 + t^2
        asc(1, {-1, -1, 1}),        // t^3 - t^2 - t
    };
    const std::vector<LaurentPolynomial> expected_normalized = {
        asc(0, {1, -2, 2}), asc(0, {1, -1, 1, 0, -1}), asc(0, {1, -1, 1}), asc(0, {1, 1}), asc(0, {1, 1, -1}),
    };
    for (std::size_t k = 0; k < 5; ++k) {
        const auto det = poly_matrix_determinant(m.without({}, {k, k + 1}));
        EXPECT_EQ(det, expected_raw[k]) << "columns " << k << "," << k + 1 << ": " << det.to_string();
        EXPECT_EQ(normalize_alexander(det), expected_normalized[k]);
        EXPECT_NE(normalize_alexander(det), reference::perturbed_alexander());
    }
}
