#include "extremal/enumeration.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace extremal {

ConstraintSystem build_constraint_system(const Marginal& mu1, const Marginal& mu2,
                                         const OrbitDecomposition& orbits) {
    if (mu1.size() != orbits.n1 || mu2.size() != orbits.n2)
        throw std::invalid_argument("build_constraint_system: marginal sizes mismatch orbits");
    const int n1 = orbits.n1, n2 = orbits.n2;
    RatMatrix a(n1 + n2, orbits.m12());
    for (int o = 0; o < orbits.m12(); ++o) {
        for (int cell : orbits.orbits12[o]) {
            const auto [x, y] = orbits.cell_of(cell);
            a(x, o) += 1;
            a(n1 + y, o) += 1;
        }
    }
    RatVector rhs;
    rhs.reserve(n1 + n2);
    rhs.insert(rhs.end(), mu1.masses.begin(), mu1.masses.end());
    rhs.insert(rhs.end(), mu2.masses.begin(), mu2.masses.end());
    return ConstraintSystem{std::move(a), std::move(rhs)};
}

BigInt binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (unsigned i = 1; i <= k; ++i) {
        result *= n - k + i;
        result /= i;  // exact: a prefix product of C(n-k+i, i)
    }
    return result;
}

BigInt enumeration_required_budget(int m1, int m2, int m12) {
    const int lo = std::max(m1, m2);
    const int hi = std::min(m1 + m2, m12);
    BigInt required = 0;
    for (int r = lo; r <= hi; ++r) required += binomial(m12, r);
    return required;
}

namespace {

// Numeric order of the support bitmask (bit i = orbit i present): compare the
// highest orbit index where the two supports differ.
bool bitmask_less(const std::vector<int>& a, const std::vector<int>& b) {
    auto ia = a.rbegin(), ib = b.rbegin();
    for (; ia != a.rend() && ib != b.rend(); ++ia, ++ib) {
        if (*ia != *ib) return *ia < *ib;
    }
    return a.size() < b.size();
}

// First/next r-subset of {0..m-1} in lexicographic order.
bool next_combination(std::vector<int>& idx, int m) {
    const int r = static_cast<int>(idx.size());
    int i = r - 1;
    while (i >= 0 && idx[i] == m - r + i) --i;
    if (i < 0) return false;
    ++idx[i];
    for (int j = i + 1; j < r; ++j) idx[j] = idx[j - 1] + 1;
    return true;
}

void require_positive_invariant(const Marginal& mu, const std::vector<std::vector<int>>& orbits,
                                const char* label) {
    for (const Rational& m : mu.masses)
        if (m.sign() <= 0)
            throw std::invalid_argument(std::string(label) +
                                        " must be strictly positive; strip zero-mass points first");
    for (const auto& orbit : orbits) {
        const Rational& ref = mu.masses[orbit[0]];
        for (int member : orbit)
            if (mu.masses[member] != ref)
                throw std::invalid_argument(std::string(label) + " is not invariant under the group");
    }
}

}  // namespace

VertexSet enumerate_extreme(const Marginal& mu1, const Marginal& mu2,
                            const OrbitDecomposition& orbits, std::uint64_t budget) {
    require_positive_invariant(mu1, orbits.orbits1, "mu1");
    require_positive_invariant(mu2, orbits.orbits2, "mu2");

    const int m12 = orbits.m12();
    const int lo = std::max(orbits.m1(), orbits.m2());
    const int hi = std::min(orbits.m1() + orbits.m2(), m12);
    const BigInt required = enumeration_required_budget(orbits.m1(), orbits.m2(), m12);
    if (required > BigInt(budget)) throw BudgetExceededError(required, budget);

    const ConstraintSystem sys = build_constraint_system(mu1, mu2, orbits);

    const std::size_t rows = sys.matrix.rows();
    struct Hit {
        std::vector<int> support;
        Coupling coupling;
    };
    std::vector<Hit> hits;

    for (int r = lo; r <= hi; ++r) {
        std::vector<int> subset(r);
        for (int i = 0; i < r; ++i) subset[i] = i;
        do {
            RatMatrix restricted(rows, r);
            for (std::size_t i = 0; i < rows; ++i)
                for (int j = 0; j < r; ++j) restricted(i, j) = sys.matrix(i, subset[j]);
            const SolveResult sol = solve(restricted, sys.rhs);
            if (sol.kind != SolveResult::Kind::Unique) continue;
            bool positive = true;
            for (const Rational& mass : sol.particular)
                if (mass.sign() <= 0) {
                    positive = false;
                    break;
                }
            if (!positive) continue;

            RatMatrix matrix(orbits.n1, orbits.n2);
            for (int j = 0; j < r; ++j)
                for (int cell : orbits.orbits12[subset[j]]) {
                    const auto [x, y] = orbits.cell_of(cell);
                    matrix(x, y) = sol.particular[j];
                }
            hits.push_back(Hit{subset, make_coupling(std::move(matrix))});
        } while (next_combination(subset, m12));
    }

    std::sort(hits.begin(), hits.end(),
              [](const Hit& a, const Hit& b) { return bitmask_less(a.support, b.support); });

    // Strict positivity makes the accepted support exactly the chosen subset,
    // so supports are pairwise distinct; verified defensively.
    for (std::size_t i = 1; i < hits.size(); ++i)
        if (hits[i - 1].support == hits[i].support)
            throw std::logic_error("enumerate_extreme: duplicate support subset");

    VertexSet out;
    out.vertices.reserve(hits.size());
    for (Hit& h : hits) {
        out.orbit_counts.push_back(static_cast<int>(h.support.size()));
        out.supports.push_back(std::move(h.support));
        out.vertices.push_back(std::move(h.coupling));
    }
    return out;
}

BirkhoffReport verify_birkhoff(int m, std::uint64_t budget) {
    if (m < 1) throw std::invalid_argument("verify_birkhoff: m must be >= 1");
    if (m > 1000) throw std::invalid_argument("verify_birkhoff: m too large for exhaustive search");
    // Cheap pre-check so an oversized m fails on the budget before the m^2
    // orbit tables are even allocated.
    const BigInt required = enumeration_required_budget(m, m, m * m);
    if (required > BigInt(budget)) throw BudgetExceededError(required, budget);
    const Marginal mu = uniform_marginal(m);
    const OrbitDecomposition orbits = trivial_orbits(m, m);
    const VertexSet vs = enumerate_extreme(mu, mu, orbits, budget);

    BirkhoffReport report;
    report.m = m;
    report.vertex_count = vs.size();
    report.expected_count = 1;
    for (int i = 2; i <= m; ++i) report.expected_count *= static_cast<std::uint64_t>(i);

    const Rational cell(1, m);
    report.all_permutation_type = true;
    std::set<std::vector<int>> seen_maps;
    for (std::size_t v = 0; v < vs.size(); ++v) {
        const GraphicVerdict g = is_graphic(vs.vertices[v]);
        bool perm_type = g.kind == GraphicKind::Both;
        if (perm_type)
            for (int cell_id : vs.vertices[v].support)
                perm_type = perm_type && vs.vertices[v].matrix(cell_id / m, cell_id % m) == cell;
        if (!perm_type) {
            report.all_permutation_type = false;
            report.discrepancies.push_back("vertex " + std::to_string(v) +
                                           " is not (1/m) times a permutation matrix");
            continue;
        }
        if (!seen_maps.insert(*g.map).second)
            report.discrepancies.push_back("vertex " + std::to_string(v) +
                                           " duplicates an earlier permutation");
    }
    report.complete = report.all_permutation_type &&
                      seen_maps.size() == vs.size() &&
                      vs.size() == report.expected_count;
    if (vs.size() != report.expected_count)
        report.discrepancies.push_back("vertex count " + std::to_string(vs.size()) +
                                       " differs from m! = " +
                                       std::to_string(report.expected_count));
    return report;
}

SupportBoundsReport check_support_bounds(const VertexSet& vs, const OrbitDecomposition& orbits) {
    SupportBoundsReport report;
    report.window_lo = std::max(orbits.m1(), orbits.m2());
    report.window_hi = orbits.m1() + orbits.m2();
    report.orbit_counts = vs.orbit_counts;
    report.all_within_window = true;
    for (int n : vs.orbit_counts)
        report.all_within_window =
            report.all_within_window && report.window_lo <= n && n <= report.window_hi;
    report.vertex_count_bound = 0;
    for (int r = report.window_lo; r <= report.window_hi; ++r)
        report.vertex_count_bound += binomial(orbits.m12(), r);
    report.count_within_bound = BigInt(vs.size()) <= report.vertex_count_bound;
    return report;
}

SupportUniquenessReport check_support_uniqueness(const VertexSet& vs) {
    SupportUniquenessReport report;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = 0; j < vs.size(); ++j) {
            if (i == j) continue;
            if (std::includes(vs.supports[j].begin(), vs.supports[j].end(),
                              vs.supports[i].begin(), vs.supports[i].end()))
                report.violating_pairs.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return report;
}

}  // namespace extremal
