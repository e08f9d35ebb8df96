#pragma once

#include "extremal/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <vector>

namespace extremal {

// Dense row-major matrix of exact rationals. Dimensions are fixed at
// construction; entries are assignable.
class RatMatrix {
public:
    RatMatrix(std::size_t rows, std::size_t cols);
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rational> entries);

    static RatMatrix identity(std::size_t n);
    static RatMatrix from_rows(std::initializer_list<std::initializer_list<Rational>> rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Rational& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }
    Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

    const std::vector<Rational>& entries() const { return entries_; }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> entries_;
};

using RatVector = std::vector<Rational>;

struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivot_cols;
    RatMatrix reduced;
};

// Unique reduced row-echelon form, exact arithmetic throughout. Pivot rule:
// first nonzero entry scanning down the column.
RrefResult rref(const RatMatrix& a);

// Basis of {v : A v = 0}; empty iff rank = cols. Basis vectors come from
// back-substituted free-variable unit vectors, then each is scaled to integer
// entries with gcd 1 and positive leading nonzero entry, so the output is
// deterministic.
std::vector<RatVector> null_space(const RatMatrix& a);

struct SolveResult {
    enum class Kind { None, Unique, Underdetermined };
    Kind kind = Kind::None;
    RatVector particular;               // empty when None
    std::vector<RatVector> null_basis;  // nonempty only when Underdetermined
};

// Exact classification of A x = b. Unique iff rank(A) = cols and consistent.
SolveResult solve(const RatMatrix& a, const RatVector& b);

RatVector mat_vec(const RatMatrix& a, const RatVector& v);

// In place: integer entries with gcd 1, leading nonzero entry positive.
// Zero vectors are left untouched.
void normalize_primitive(RatVector& v);

}  // namespace extremal
