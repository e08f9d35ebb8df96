#include "extremal/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace extremal {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("RatMatrix: empty dimensions");
}

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("RatMatrix: empty dimensions");
    if (entries_.size() != rows * cols)
        throw std::invalid_argument("RatMatrix: entry count does not match dimensions");
}

RatMatrix RatMatrix::identity(std::size_t n) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RatMatrix RatMatrix::from_rows(std::initializer_list<std::initializer_list<Rational>> rows) {
    std::vector<Rational> entries;
    const std::size_t r = rows.size();
    std::size_t c = 0;
    for (const auto& row : rows) {
        if (c == 0) c = row.size();
        if (row.size() != c) throw std::invalid_argument("RatMatrix: ragged rows");
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return RatMatrix(r, c, std::move(entries));
}

RrefResult rref(const RatMatrix& a) {
    RatMatrix m = a;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
        std::size_t r = pivot_row;
        while (r < rows && m(r, col).is_zero()) ++r;
        if (r == rows) continue;
        if (r != pivot_row)
            for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot_row, j), m(r, j));
        const Rational pivot = m(pivot_row, col);
        for (std::size_t j = col; j < cols; ++j) m(pivot_row, j) /= pivot;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == pivot_row || m(i, col).is_zero()) continue;
            const Rational factor = m(i, col);
            for (std::size_t j = col; j < cols; ++j)
                m(i, j) -= factor * m(pivot_row, j);
        }
        pivots.push_back(col);
        ++pivot_row;
    }
    return RrefResult{pivots.size(), std::move(pivots), std::move(m)};
}

void normalize_primitive(RatVector& v) {
    BigInt lcm_den = 1;
    for (const Rational& x : v)
        lcm_den = boost::multiprecision::lcm(lcm_den, x.denominator());
    BigInt gcd_num = 0;
    std::vector<BigInt> scaled(v.size());
    const Rational scale(lcm_den);
    for (std::size_t i = 0; i < v.size(); ++i) {
        scaled[i] = (v[i] * scale).numerator();
        gcd_num = boost::multiprecision::gcd(gcd_num, scaled[i]);
    }
    if (gcd_num.is_zero()) return;
    int lead_sign = 0;
    for (const BigInt& x : scaled) {
        if (!x.is_zero()) {
            lead_sign = x.sign();
            break;
        }
    }
    if (lead_sign < 0) gcd_num = -gcd_num;
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = Rational(scaled[i] / gcd_num);
}

std::vector<RatVector> null_space(const RatMatrix& a) {
    const RrefResult r = rref(a);
    const std::size_t cols = a.cols();
    std::vector<bool> is_pivot(cols, false);
    for (std::size_t p : r.pivot_cols) is_pivot[p] = true;

    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector v(cols);
        v[f] = 1;
        for (std::size_t i = 0; i < r.pivot_cols.size(); ++i)
            v[r.pivot_cols[i]] = -r.reduced(i, f);
        normalize_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

SolveResult solve(const RatMatrix& a, const RatVector& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length != rows");
    const std::size_t cols = a.cols();
    RatMatrix aug(a.rows(), cols + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < cols; ++j) aug(i, j) = a(i, j);
        aug(i, cols) = b[i];
    }
    const RrefResult r = rref(aug);

    SolveResult res;
    for (std::size_t p : r.pivot_cols) {
        if (p == cols) {  // pivot in the rhs column: inconsistent
            res.kind = SolveResult::Kind::None;
            return res;
        }
    }
    RatVector x(cols);
    for (std::size_t i = 0; i < r.pivot_cols.size(); ++i) x[r.pivot_cols[i]] = r.reduced(i, cols);
    res.particular = std::move(x);
    if (r.rank == cols) {
        res.kind = SolveResult::Kind::Unique;
    } else {
        res.kind = SolveResult::Kind::Underdetermined;
        res.null_basis = null_space(a);
    }
    return res;
}

RatVector mat_vec(const RatMatrix& a, const RatVector& v) {
    if (v.size() != a.cols()) throw std::invalid_argument("mat_vec: length mismatch");
    RatVector out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Rational acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
        out[i] = acc;
    }
    return out;
}

}  // namespace extremal
