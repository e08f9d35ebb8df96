#pragma once

#include "extremal/coupling.hpp"
#include "extremal/linalg.hpp"
#include "extremal/symmetry.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace extremal {

// One problem statement: two marginals, a group action given by generators,
// and optionally a candidate coupling. Mirrors the JSON instance file.
struct Instance {
    int n1 = 0;
    int n2 = 0;
    Marginal mu1;
    Marginal mu2;
    std::vector<ActionGenerator> generators;
    std::optional<RatMatrix> omega;
};

/// Thrown when zero-mass points cannot be stripped consistently.
class StripError : public std::runtime_error {
public:
    explicit StripError(const std::string& what) : std::runtime_error(what) {}
};

struct StripOutcome {
    Instance instance;       // re-indexed to the positive-mass points
    std::vector<int> kept1;  // new index -> original index, X1
    std::vector<int> kept2;
    bool changed = false;
};

// Removes marginal points of exactly zero mass and re-indexes both spaces,
// restricting the group generators and omega along the way. The extremality
// theory assumes the marginals are supported everywhere; this reconciles
// arbitrary inputs with that hypothesis. Errors when a generator maps a kept
// point to a dropped one (the action would not restrict) or when omega has
// nonzero mass at a dropped point (the mass could not be accounted for).
StripOutcome strip_zero_mass(const Instance& inst);

}  // namespace extremal
