#include "extremal/symmetry.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace extremal {

bool is_permutation(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

Permutation identity_permutation(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation& f, const Permutation& g) {
    if (f.size() != g.size()) throw std::invalid_argument("compose: size mismatch");
    Permutation h(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) h[i] = f[g[i]];
    return h;
}

Permutation inverse_permutation(const Permutation& p) {
    Permutation inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

Permutation extend_with_fixed_factor(const Permutation& p, int k) {
    if (k <= 0) throw std::invalid_argument("extend_with_fixed_factor: k must be positive");
    Permutation out(p.size() * static_cast<std::size_t>(k));
    for (std::size_t x = 0; x < p.size(); ++x)
        for (int z = 0; z < k; ++z) out[x * k + z] = p[x] * k + z;
    return out;
}

GroupClosure close_group(const std::vector<ActionGenerator>& generators, int n1, int n2,
                         std::size_t cap) {
    for (const ActionGenerator& g : generators) {
        if (static_cast<int>(g.perm1.size()) != n1 || static_cast<int>(g.perm2.size()) != n2)
            throw std::invalid_argument("close_group: generator dimensions do not match spaces");
        if (!is_permutation(g.perm1) || !is_permutation(g.perm2))
            throw std::invalid_argument("close_group: generator component is not a bijection");
    }

    const ActionGenerator id{identity_permutation(n1), identity_permutation(n2)};
    std::vector<ActionGenerator> elements{id};
    std::set<ActionGenerator> seen{id};

    // Breadth-first closure under right multiplication by the generators.
    // A finite set closed under composition is closed under inverse too.
    for (std::size_t head = 0; head < elements.size(); ++head) {
        const ActionGenerator current = elements[head];
        for (const ActionGenerator& g : generators) {
            ActionGenerator next{compose(current.perm1, g.perm1),
                                 compose(current.perm2, g.perm2)};
            if (seen.insert(next).second) {
                if (elements.size() + 1 > cap) throw CapExceededError(cap);
                elements.push_back(std::move(next));
            }
        }
    }
    return GroupClosure(std::move(elements), n1, n2);
}

namespace {

class DisjointSet {
public:
    explicit DisjointSet(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

private:
    std::vector<int> parent_;
};

std::vector<std::vector<int>> collect_orbits(DisjointSet& ds, int n, std::vector<int>& orbit_of) {
    std::vector<std::vector<int>> by_root(n);
    for (int x = 0; x < n; ++x) by_root[ds.find(x)].push_back(x);
    std::vector<std::vector<int>> orbits;
    orbit_of.assign(n, -1);
    for (int root = 0; root < n; ++root) {
        if (by_root[root].empty()) continue;
        for (int member : by_root[root]) orbit_of[member] = static_cast<int>(orbits.size());
        orbits.push_back(std::move(by_root[root]));
    }
    // Roots are orbit minima, so iteration order is already least-member order.
    return orbits;
}

}  // namespace

OrbitDecomposition decompose_orbits(int n1, int n2, const GroupClosure& closure) {
    if (closure.n1() != n1 || closure.n2() != n2)
        throw std::invalid_argument("decompose_orbits: closure does not match space sizes");

    OrbitDecomposition d;
    d.n1 = n1;
    d.n2 = n2;

    DisjointSet ds1(n1), ds2(n2), ds12(n1 * n2);
    for (const ActionGenerator& g : closure.elements()) {
        for (int x = 0; x < n1; ++x) ds1.unite(x, g.perm1[x]);
        for (int y = 0; y < n2; ++y) ds2.unite(y, g.perm2[y]);
        for (int x = 0; x < n1; ++x)
            for (int y = 0; y < n2; ++y)
                ds12.unite(x * n2 + y, g.perm1[x] * n2 + g.perm2[y]);
    }
    d.orbits1 = collect_orbits(ds1, n1, d.orbit_of1);
    d.orbits2 = collect_orbits(ds2, n2, d.orbit_of2);
    d.orbits12 = collect_orbits(ds12, n1 * n2, d.orbit_of12);
    return d;
}

OrbitDecomposition trivial_orbits(int n1, int n2) {
    return decompose_orbits(n1, n2, close_group({}, n1, n2));
}

}  // namespace extremal
