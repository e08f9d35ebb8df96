#pragma once

#include "extremal/linalg.hpp"
#include "extremal/symmetry.hpp"

#include <optional>
#include <string>
#include <vector>

namespace extremal {

// Probability vector over one space; all entries >= 0, exact sum 1. Strict
// positivity is a precondition of the extremality machinery and is obtained
// by stripping zero-mass points beforehand (see instance preprocessing).
struct Marginal {
    RatVector masses;
    int size() const { return static_cast<int>(masses.size()); }
    friend bool operator==(const Marginal&, const Marginal&) = default;
};

Marginal uniform_marginal(int n);

// Product marginal on X x Z, x-major indexing.
Marginal tensor(const Marginal& a, const Marginal& b);

struct Violation {
    enum class Kind {
        DimensionMismatch,
        MarginalNegativeEntry,
        MarginalSumNotOne,
        MarginalNotInvariant,
        NegativeEntry,
        RowSumMismatch,
        ColSumMismatch,
        OrbitNotConstant,
    };
    Kind kind;
    int index1 = -1;  // row / point / orbit index, by kind
    int index2 = -1;  // column index when applicable
    std::string message;
};

std::string violation_kind_name(Violation::Kind kind);

/// Carries the full violation list produced by validate().
class CouplingValidationError : public std::runtime_error {
public:
    explicit CouplingValidationError(std::vector<Violation> violations);
    const std::vector<Violation>& violations() const { return violations_; }

private:
    std::vector<Violation> violations_;
};

// Joint distribution with positive-mass support cells cached. Structural
// invariants (entries >= 0, total mass exactly 1) hold for every instance
// constructed through make_coupling; conformance to given marginals, group
// invariance and orbit structure is what validate() checks.
struct Coupling {
    RatMatrix matrix;
    std::vector<int> support;  // cell ids x1*n2 + x2 with positive mass, ascending

    int n1() const { return static_cast<int>(matrix.rows()); }
    int n2() const { return static_cast<int>(matrix.cols()); }
    const Rational& mass(int x1, int x2) const { return matrix(x1, x2); }
    friend bool operator==(const Coupling& a, const Coupling& b) {
        return a.matrix == b.matrix;
    }
};

// Checks entries >= 0 and total mass 1, computes the support.
Coupling make_coupling(RatMatrix matrix);

// Marginal-only validation: sizes, nonnegativity, exact sum 1, constancy on
// the point orbits of each space. Used when there is no candidate coupling
// (e.g. before enumeration).
std::vector<Violation> check_marginal_pair(const Marginal& mu1, const Marginal& mu2,
                                           const OrbitDecomposition& orbits);

// Full invariant check of a candidate coupling against declared marginals and
// a diagonal-action orbit structure: marginal well-formedness and invariance,
// nonnegativity, exact row/column sums, and constancy on every diagonal
// orbit. Returns the violations; empty means valid.
std::vector<Violation> check_coupling(const RatMatrix& matrix, const Marginal& mu1,
                                      const Marginal& mu2, const OrbitDecomposition& orbits);

// Throwing form of check_coupling; returns the validated coupling.
Coupling validate(const RatMatrix& matrix, const Marginal& mu1, const Marginal& mu2,
                  const OrbitDecomposition& orbits);

// Exact row and column sums.
std::pair<Marginal, Marginal> marginals(const Coupling& c);

enum class GraphicKind { GraphOfMapForward, GraphOfMapBackward, Both, Neither };

std::string graphic_kind_name(GraphicKind kind);

struct GraphicVerdict {
    GraphicKind kind = GraphicKind::Neither;
    // Forward/Both: the map X1 -> X2; Backward: the map X2 -> X1.
    std::optional<std::vector<int>> map;
};

// Support-shape test: forward-graphic iff every x1 has exactly one x2 with
// positive mass, backward symmetric, Both iff a bijection.
GraphicVerdict is_graphic(const Coupling& c);

// Coupling of (xi, T(xi)): mass mu1(x1) at (x1, map[x1]). The second marginal
// is the pushforward of mu1 under the map.
Coupling graphic_coupling(const std::vector<int>& map, const Marginal& mu1, int n2);

// Pairs c with an independent coordinate: mass at ((x,z),(y,z')) is
// c(x,y) * nu(z) when z = z', else 0. Product spaces are indexed x-major.
// The output marginals are tensor(mu1, nu) and tensor(mu2, nu).
Coupling extend_with_independent(const Coupling& c, const Marginal& nu);

}  // namespace extremal
