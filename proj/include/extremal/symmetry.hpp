#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace extremal {

// Permutation of {0..n-1}, stored as the image array: p[i] is where i goes.
using Permutation = std::vector<int>;

bool is_permutation(const Permutation& p);
Permutation identity_permutation(int n);
Permutation compose(const Permutation& f, const Permutation& g);  // (f o g)[i] = f[g[i]]
Permutation inverse_permutation(const Permutation& p);

// One group element acting on X1 and X2 simultaneously.
struct ActionGenerator {
    Permutation perm1;
    Permutation perm2;
    friend bool operator==(const ActionGenerator&, const ActionGenerator&) = default;
    friend auto operator<=>(const ActionGenerator&, const ActionGenerator&) = default;
};

// Extends a permutation on X (size n) to X x Z with Z of size k fixed
// pointwise, x-major indexing: x*k + z  ->  p[x]*k + z.
Permutation extend_with_fixed_factor(const Permutation& p, int k);

/// Thrown when the group closure grows past its cap.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(std::size_t cap)
        : std::runtime_error("group closure exceeds cap of " + std::to_string(cap) +
                             " elements"),
          cap(cap) {}
    std::size_t cap;
};

inline constexpr std::size_t kDefaultGroupCap = 10'000;

// Full element list of the generated finite group, as explicit permutation
// pairs: identity first, then breadth-first insertion order.
class GroupClosure {
public:
    const std::vector<ActionGenerator>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    int n1() const { return n1_; }
    int n2() const { return n2_; }

    friend GroupClosure close_group(const std::vector<ActionGenerator>& generators, int n1,
                                    int n2, std::size_t cap);

private:
    GroupClosure(std::vector<ActionGenerator> elements, int n1, int n2)
        : elements_(std::move(elements)), n1_(n1), n2_(n2) {}
    std::vector<ActionGenerator> elements_;
    int n1_;
    int n2_;
};

GroupClosure close_group(const std::vector<ActionGenerator>& generators, int n1, int n2,
                         std::size_t cap = kDefaultGroupCap);

struct OrbitDecomposition {
    int n1 = 0;
    int n2 = 0;
    // Members sorted ascending within each orbit; orbit lists sorted by least
    // member, so the orbit index order is the least-representative order.
    std::vector<std::vector<int>> orbits1;
    std::vector<std::vector<int>> orbits2;
    std::vector<std::vector<int>> orbits12;  // members are cell ids x1*n2 + x2
    std::vector<int> orbit_of1;              // point -> orbit index
    std::vector<int> orbit_of2;
    std::vector<int> orbit_of12;             // cell id -> orbit index

    int m1() const { return static_cast<int>(orbits1.size()); }
    int m2() const { return static_cast<int>(orbits2.size()); }
    int m12() const { return static_cast<int>(orbits12.size()); }

    int cell_id(int x1, int x2) const { return x1 * n2 + x2; }
    std::pair<int, int> cell_of(int id) const { return {id / n2, id % n2}; }
};

// Orbit partition of X1, X2 and X1 x X2 under the diagonal action of the
// closure's elements.
OrbitDecomposition decompose_orbits(int n1, int n2, const GroupClosure& closure);

// Singleton orbits everywhere; the trivial-group case.
OrbitDecomposition trivial_orbits(int n1, int n2);

}  // namespace extremal
