#include "extremal/instance.hpp"

#include <string>
#include <utility>

namespace extremal {

namespace {

struct Reindex {
    std::vector<int> kept;        // new -> old
    std::vector<int> old_to_new;  // old -> new, -1 if dropped
};

Reindex positive_points(const Marginal& mu) {
    Reindex r;
    r.old_to_new.assign(mu.masses.size(), -1);
    for (int i = 0; i < mu.size(); ++i) {
        if (!mu.masses[i].is_zero()) {
            r.old_to_new[i] = static_cast<int>(r.kept.size());
            r.kept.push_back(i);
        }
    }
    return r;
}

Permutation restrict_permutation(const Permutation& p, const Reindex& r, const char* space,
                                 std::size_t gen_index) {
    Permutation out(r.kept.size());
    for (std::size_t ni = 0; ni < r.kept.size(); ++ni) {
        const int image = p[r.kept[ni]];
        if (r.old_to_new[image] < 0)
            throw StripError("generator " + std::to_string(gen_index) + " maps positive-mass " +
                             space + " point " + std::to_string(r.kept[ni]) +
                             " to zero-mass point " + std::to_string(image) +
                             "; the action does not restrict to the support");
        out[ni] = r.old_to_new[image];
    }
    return out;
}

}  // namespace

StripOutcome strip_zero_mass(const Instance& inst) {
    const Reindex r1 = positive_points(inst.mu1);
    const Reindex r2 = positive_points(inst.mu2);

    StripOutcome out;
    out.kept1 = r1.kept;
    out.kept2 = r2.kept;
    out.changed = static_cast<int>(r1.kept.size()) != inst.n1 ||
                  static_cast<int>(r2.kept.size()) != inst.n2;
    if (!out.changed) {
        out.instance = inst;
        return out;
    }

    Instance& stripped = out.instance;
    stripped.n1 = static_cast<int>(r1.kept.size());
    stripped.n2 = static_cast<int>(r2.kept.size());
    for (int old : r1.kept) stripped.mu1.masses.push_back(inst.mu1.masses[old]);
    for (int old : r2.kept) stripped.mu2.masses.push_back(inst.mu2.masses[old]);

    for (std::size_t g = 0; g < inst.generators.size(); ++g) {
        stripped.generators.push_back(
            {restrict_permutation(inst.generators[g].perm1, r1, "X1", g),
             restrict_permutation(inst.generators[g].perm2, r2, "X2", g)});
    }

    if (inst.omega) {
        const RatMatrix& om = *inst.omega;
        for (int i = 0; i < inst.n1; ++i)
            for (int j = 0; j < inst.n2; ++j)
                if (!om(i, j).is_zero() && (r1.old_to_new[i] < 0 || r2.old_to_new[j] < 0))
                    throw StripError("omega has nonzero mass " + om(i, j).str() + " at cell (" +
                                     std::to_string(i) + "," + std::to_string(j) +
                                     ") outside the positive-mass marginal support");
        RatMatrix sub(stripped.n1, stripped.n2);
        for (int i = 0; i < stripped.n1; ++i)
            for (int j = 0; j < stripped.n2; ++j) sub(i, j) = om(r1.kept[i], r2.kept[j]);
        stripped.omega = std::move(sub);
    }
    return out;
}

}  // namespace extremal
