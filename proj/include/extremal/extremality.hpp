#pragma once

#include "extremal/coupling.hpp"
#include "extremal/linalg.hpp"
#include "extremal/symmetry.hpp"

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace extremal {

/// Defensive: a valid coupling always has nonempty support.
class EmptySupportError : public std::runtime_error {
public:
    EmptySupportError() : std::runtime_error("coupling has empty support") {}
};

/// Thrown by perturbation_pair when the witness function is identically zero.
class ZeroCertificateError : public std::runtime_error {
public:
    ZeroCertificateError() : std::runtime_error("witness function is identically zero") {}
};

// Linear system whose kernel decides extremality. One variable per diagonal
// orbit contained in the support; one row per point of X1 followed by one row
// per point of X2. The entry for (row x1, orbit O) is the mass the coupling
// puts on O's cells inside row x1, so "A zeta = 0" says both conditional
// sums of zeta against the coupling vanish.
struct RegressionSystem {
    std::vector<int> support_orbits;  // orbit indices, ascending (= least-cell order)
    RatMatrix matrix;                 // (n1 + n2) x support_orbits.size()
};

RegressionSystem build_regression_system(const Coupling& c, const OrbitDecomposition& orbits);

struct Certificate {
    RatVector zeta;  // one value per support orbit, aligned with support_orbits
    Rational epsilon;
    Coupling omega_plus;
    Coupling omega_minus;
};

struct ExtremalityVerdict {
    bool extreme = false;
    std::size_t null_dim = 0;
    std::vector<int> support_orbits;
    std::optional<Certificate> certificate;  // present iff not extreme
};

// Decides extremality of c inside the invariant couplings with c's marginals:
// extreme iff the regression system has trivial kernel. When the kernel is
// nontrivial the verdict carries a machine-checkable refutation built from
// the first kernel basis vector.
// Pre: c validated against the orbit structure; strictly positive marginals.
ExtremalityVerdict test_extreme(const Coupling& c, const OrbitDecomposition& orbits);

// epsilon = 1 / (2 max_O |zeta(O)|); keeps omega * (1 +- epsilon zeta)
// strictly positive on the support.
Rational perturbation_epsilon(const RatVector& zeta);

// The pair omega_pm = omega * (1 +- epsilon zeta), with zeta read through the
// orbit of each cell. Marginals are preserved because the regression sums
// vanish, invariance because zeta is orbit-constant, and the midpoint
// reproduces omega exactly.
std::pair<Coupling, Coupling> perturbation_pair(const Coupling& c,
                                                const OrbitDecomposition& orbits,
                                                const std::vector<int>& support_orbits,
                                                const RatVector& zeta);

}  // namespace extremal
