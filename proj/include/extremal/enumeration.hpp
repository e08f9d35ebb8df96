#pragma once

#include "extremal/coupling.hpp"
#include "extremal/extremality.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace extremal {

// Marginal equations in orbit-mass coordinates: one row per point of X1 then
// X2, one column per diagonal orbit, entry = number of the orbit's cells in
// that row (resp. column). The feasible region {c >= 0 : A c = b} is exactly
// the invariant couplings with the given marginals, one coordinate per orbit.
struct ConstraintSystem {
    RatMatrix matrix;  // (n1 + n2) x m12, nonnegative integer-valued
    RatVector rhs;     // mu1 stacked over mu2
};

ConstraintSystem build_constraint_system(const Marginal& mu1, const Marginal& mu2,
                                         const OrbitDecomposition& orbits);

BigInt binomial(unsigned n, unsigned k);

// Number of restricted solves enumeration will perform: sum of C(m12, r)
// over the support window max(m1,m2) <= r <= min(m1+m2, m12).
BigInt enumeration_required_budget(int m1, int m2, int m12);

/// Thrown before enumeration when the support-subset count exceeds the budget.
class BudgetExceededError : public std::runtime_error {
public:
    BudgetExceededError(BigInt required_budget, std::uint64_t budget)
        : std::runtime_error("enumeration needs a budget of " + required_budget.str() +
                             " restricted solves, have " + std::to_string(budget)),
          required(std::move(required_budget)) {}
    BigInt required;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 5'000'000;

struct VertexSet {
    std::vector<Coupling> vertices;
    std::vector<std::vector<int>> supports;  // orbit-index subsets, ascending
    std::vector<int> orbit_counts;           // N(omega) per vertex
    std::size_t size() const { return vertices.size(); }
};

// All extreme points of the invariant couplings with the given marginals.
// Iterates support subsets S of diagonal orbits inside the window
// max(m1,m2) <= |S| <= min(m1+m2, m12), solves the restricted marginal
// system, and accepts exactly the unique strictly positive solutions.
// Output is sorted by support bitmask.
// Pre: marginals strictly positive and constant on their orbits.
VertexSet enumerate_extreme(const Marginal& mu1, const Marginal& mu2,
                            const OrbitDecomposition& orbits,
                            std::uint64_t budget = kDefaultEnumerationBudget);

struct BirkhoffReport {
    int m = 0;
    std::size_t vertex_count = 0;
    std::uint64_t expected_count = 0;  // m!
    bool all_permutation_type = false;
    bool complete = false;  // vertex set equals { P_sigma / m } exactly
    std::vector<std::string> discrepancies;
    bool ok() const { return all_permutation_type && complete; }
};

// Enumerates uniform marginals on m points under the trivial group and checks
// the vertex set is exactly the scaled permutation matrices.
BirkhoffReport verify_birkhoff(int m, std::uint64_t budget = kDefaultEnumerationBudget);

struct SupportBoundsReport {
    int window_lo = 0;  // max(m1, m2)
    int window_hi = 0;  // m1 + m2
    std::vector<int> orbit_counts;
    bool all_within_window = false;
    BigInt vertex_count_bound;  // sum of C(m12, r) over the window
    bool count_within_bound = false;
    bool ok() const { return all_within_window && count_within_bound; }
};

SupportBoundsReport check_support_bounds(const VertexSet& vs, const OrbitDecomposition& orbits);

struct SupportUniquenessReport {
    std::vector<std::pair<int, int>> violating_pairs;  // (contained, container)
    bool ok() const { return violating_pairs.empty(); }
};

// No vertex support may contain another's.
SupportUniquenessReport check_support_uniqueness(const VertexSet& vs);

}  // namespace extremal
