#include "extremal/extremality.hpp"

#include <algorithm>

namespace extremal {

RegressionSystem build_regression_system(const Coupling& c, const OrbitDecomposition& orbits) {
    if (c.support.empty()) throw EmptySupportError();
    if (c.n1() != orbits.n1 || c.n2() != orbits.n2)
        throw std::invalid_argument("build_regression_system: orbit structure size mismatch");

    std::vector<int> support_orbits;
    std::vector<int> column_of(orbits.m12(), -1);
    for (int cell : c.support) {
        const int o = orbits.orbit_of12[cell];
        if (column_of[o] < 0) {
            column_of[o] = static_cast<int>(support_orbits.size());
            support_orbits.push_back(o);
        }
    }
    // Ascending orbit index equals least-cell order: support is scanned in
    // cell order and orbit indices are assigned by least member.

    const int n1 = c.n1(), n2 = c.n2();
    RatMatrix m(n1 + n2, support_orbits.size());
    for (int cell : c.support) {
        const int col = column_of[orbits.orbit_of12[cell]];
        const int x = cell / n2, y = cell % n2;
        m(x, col) += c.matrix(x, y);
        m(n1 + y, col) += c.matrix(x, y);
    }
    return RegressionSystem{std::move(support_orbits), std::move(m)};
}

Rational perturbation_epsilon(const RatVector& zeta) {
    Rational max_abs = 0;
    for (const Rational& z : zeta) max_abs = std::max(max_abs, z.abs());
    if (max_abs.is_zero()) throw ZeroCertificateError();
    return Rational(1) / (Rational(2) * max_abs);
}

std::pair<Coupling, Coupling> perturbation_pair(const Coupling& c,
                                                const OrbitDecomposition& orbits,
                                                const std::vector<int>& support_orbits,
                                                const RatVector& zeta) {
    if (zeta.size() != support_orbits.size())
        throw std::invalid_argument("perturbation_pair: zeta length mismatch");
    const Rational eps = perturbation_epsilon(zeta);

    std::vector<int> column_of(orbits.m12(), -1);
    for (std::size_t i = 0; i < support_orbits.size(); ++i)
        column_of[support_orbits[i]] = static_cast<int>(i);

    RatMatrix plus = c.matrix, minus = c.matrix;
    for (int cell : c.support) {
        const int col = column_of[orbits.orbit_of12[cell]];
        if (col < 0)
            throw std::invalid_argument("perturbation_pair: support cell outside given orbits");
        const int x = cell / c.n2(), y = cell % c.n2();
        const Rational delta = c.matrix(x, y) * eps * zeta[col];
        plus(x, y) += delta;
        minus(x, y) -= delta;
    }
    return {make_coupling(std::move(plus)), make_coupling(std::move(minus))};
}

ExtremalityVerdict test_extreme(const Coupling& c, const OrbitDecomposition& orbits) {
    RegressionSystem sys = build_regression_system(c, orbits);
    const std::vector<RatVector> kernel = null_space(sys.matrix);

    ExtremalityVerdict v;
    v.null_dim = kernel.size();
    v.extreme = kernel.empty();
    v.support_orbits = sys.support_orbits;
    if (!v.extreme) {
        const RatVector& zeta = kernel.front();
        auto [plus, minus] = perturbation_pair(c, orbits, sys.support_orbits, zeta);
        v.certificate = Certificate{zeta, perturbation_epsilon(zeta), std::move(plus),
                                    std::move(minus)};
    }
    return v;
}

}  // namespace extremal
