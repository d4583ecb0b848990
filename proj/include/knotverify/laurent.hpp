#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace knotverify {

namespace detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("Laurent coefficient overflow");
    return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("Laurent coefficient overflow");
    return r;
}

}  // namespace detail

/// Integer Laurent polynomial in t. Zero coefficients are never stored.
class LaurentPolynomial {
public:
    using Terms = std::map<int, std::int64_t>;

    LaurentPolynomial() = default;
    LaurentPolynomial(std::int64_t constant) {  // NOLINT(google-explicit-constructor)
        if (constant != 0) terms_[0] = constant;
    }
    explicit LaurentPolynomial(Terms terms) {
        for (auto [e, c] : terms)
            if (c != 0) terms_[e] = c;
    }

    static LaurentPolynomial monomial(std::int64_t coef, int exponent) { return LaurentPolynomial(Terms{{exponent, coef}}); }
    static LaurentPolynomial t() { return monomial(1, 1); }

    /// Coefficients c0, c1, ... of t^(base + i).
    static LaurentPolynomial from_ascending(int base, const std::vector<std::int64_t>& coeffs) {
        Terms terms;
        for (std::size_t i = 0; i < coeffs.size(); ++i) terms[base + static_cast<int>(i)] = coeffs[i];
        return LaurentPolynomial(std::move(terms));
    }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int min_exponent() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exponent() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    std::int64_t coefficient(int exponent) const {
        auto it = terms_.find(exponent);
        return it == terms_.end() ? 0 : it->second;
    }

    /// Dense coefficients from min_exponent to max_exponent.
    std::vector<std::int64_t> ascending() const {
        std::vector<std::int64_t> out;
        if (is_zero()) return out;
        for (int e = min_exponent(); e <= max_exponent(); ++e) out.push_back(coefficient(e));
        return out;
    }

    /// Value at an integer point; t must be +-1 when negative exponents are present.
    std::int64_t evaluate(std::int64_t x) const {
        std::int64_t sum = 0;
        for (auto [e, c] : terms_) {
            if (e < 0 && x != 1 && x != -1) throw DomainError("negative exponent evaluated off the unit points");
            std::int64_t p = 1;
            for (int k = 0; k < (e < 0 ? -e : e); ++k) p = detail::checked_mul(p, x);
            sum = detail::checked_add(sum, detail::checked_mul(c, p));
        }
        return sum;
    }

    /// p(1/t).
    LaurentPolynomial reflected() const {
        Terms out;
        for (auto [e, c] : terms_) out[-e] = c;
        return LaurentPolynomial(std::move(out));
    }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        for (auto [e, c] : o.terms_) {
            const std::int64_t v = detail::checked_add(coefficient(e), c);
            if (v == 0)
                terms_.erase(e);
            else
                terms_[e] = v;
        }
        return *this;
    }
    LaurentPolynomial operator-() const {
        Terms out;
        for (auto [e, c] : terms_) out[e] = detail::checked_mul(c, -1);
        return LaurentPolynomial(std::move(out));
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) { return *this += -o; }

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial out;
        for (auto [ea, ca] : a.terms_)
            for (auto [eb, cb] : b.terms_) out += monomial(detail::checked_mul(ca, cb), ea + eb);
        return out;
    }
    friend bool operator==(const LaurentPolynomial&, const LaurentPolynomial&) = default;

    /// Human-readable form in descending powers, e.g. "t^2 - 3*t + 1".
    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            auto [e, c] = *it;
            const std::int64_t mag = c < 0 ? -c : c;
            if (first)
                os << (c < 0 ? "-" : "");
            else
                os << (c < 0 ? " - " : " + ");
            first = false;
            if (e == 0) {
                os << mag;
                continue;
            }
            if (mag != 1) os << mag << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
        return os.str();
    }

private:
    Terms terms_;
};

/// Dense rectangular matrix of Laurent polynomials.
class PolyMatrix {
public:
    PolyMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), cells_(rows * cols) {}
    PolyMatrix(std::initializer_list<std::initializer_list<LaurentPolynomial>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        for (const auto& r : rows) {
            if (r.size() != cols_) throw InvalidInput("PolyMatrix rows must have equal length");
            cells_.insert(cells_.end(), r.begin(), r.end());
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    LaurentPolynomial& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    const LaurentPolynomial& operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

    PolyMatrix without(const std::vector<std::size_t>& drop_rows, const std::vector<std::size_t>& drop_cols) const {
        auto keep = [](std::size_t n, const std::vector<std::size_t>& drop) {
            std::vector<std::size_t> k;
            for (std::size_t i = 0; i < n; ++i) {
                bool dropped = false;
                for (auto d : drop) dropped = dropped || d == i;
                if (!dropped) k.push_back(i);
            }
            return k;
        };
        const auto kr = keep(rows_, drop_rows);
        const auto kc = keep(cols_, drop_cols);
        PolyMatrix out(kr.size(), kc.size());
        for (std::size_t i = 0; i < kr.size(); ++i)
            for (std::size_t j = 0; j < kc.size(); ++j) out(i, j) = (*this)(kr[i], kc[j]);
        return out;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<LaurentPolynomial> cells_;
};

/// Exact determinant by Laplace expansion along rows, memoised over column subsets:
/// minor[S] is the determinant of the first |S| rows restricted to the columns in S.
/// Cost O(2^n n) polynomial products, integer-exact, division-free.
inline LaurentPolynomial poly_matrix_determinant(const PolyMatrix& m) {
    if (m.rows() != m.cols()) throw InvalidInput("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return LaurentPolynomial(1);
    if (n > 20) throw InvalidInput("determinant size exceeds the exact-expansion limit (20)");
    std::vector<LaurentPolynomial> minor(std::size_t{1} << n);
    minor[0] = LaurentPolynomial(1);
    for (std::size_t mask = 1; mask < minor.size(); ++mask) {
        const auto row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
        LaurentPolynomial acc;
        int position = 0;  // columns in mask to the right of c, for the cofactor sign
        for (std::size_t c = n; c-- > 0;) {
            if (!(mask & (std::size_t{1} << c))) continue;
            const auto& entry = m(row, c);
            const auto& sub = minor[mask & ~(std::size_t{1} << c)];
            if (!entry.is_zero() && !sub.is_zero()) {
                if (position % 2 == 0)
                    acc += entry * sub;
                else
                    acc -= entry * sub;
            }
            ++position;
        }
        minor[mask] = std::move(acc);
    }
    return minor.back();
}

/// Multiplies by +-t^k so the lowest term has exponent 0 and a positive coefficient.
inline LaurentPolynomial normalize_alexander(const LaurentPolynomial& p) {
    if (p.is_zero()) throw StructuralError("Alexander polynomial vanished (degenerate diagram)");
    const int shift = -p.min_exponent();
    const std::int64_t sign = p.terms().begin()->second < 0 ? -1 : 1;
    LaurentPolynomial::Terms out;
    for (auto [e, c] : p.terms()) out[e + shift] = sign * c;
    return LaurentPolynomial(std::move(out));
}

}  // namespace knotverify
