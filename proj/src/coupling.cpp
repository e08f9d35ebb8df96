#include "extremal/coupling.hpp"

#include <sstream>
#include <utility>

namespace extremal {

Marginal uniform_marginal(int n) {
    Marginal m;
    m.masses.assign(n, Rational(1, n));
    return m;
}

Marginal tensor(const Marginal& a, const Marginal& b) {
    Marginal out;
    out.masses.reserve(a.masses.size() * b.masses.size());
    for (const Rational& x : a.masses)
        for (const Rational& y : b.masses) out.masses.push_back(x * y);
    return out;
}

std::string violation_kind_name(Violation::Kind kind) {
    switch (kind) {
        case Violation::Kind::DimensionMismatch: return "dimension_mismatch";
        case Violation::Kind::MarginalNegativeEntry: return "marginal_negative_entry";
        case Violation::Kind::MarginalSumNotOne: return "marginal_sum_not_one";
        case Violation::Kind::MarginalNotInvariant: return "marginal_not_invariant";
        case Violation::Kind::NegativeEntry: return "negative_entry";
        case Violation::Kind::RowSumMismatch: return "row_sum_mismatch";
        case Violation::Kind::ColSumMismatch: return "col_sum_mismatch";
        case Violation::Kind::OrbitNotConstant: return "orbit_not_constant";
    }
    return "unknown";
}

namespace {

std::string join_messages(const std::vector<Violation>& violations) {
    std::ostringstream os;
    os << "coupling validation failed (" << violations.size() << " violation"
       << (violations.size() == 1 ? "" : "s") << ")";
    for (const Violation& v : violations) os << "; " << v.message;
    return os.str();
}

}  // namespace

CouplingValidationError::CouplingValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_messages(violations)), violations_(std::move(violations)) {}

Coupling make_coupling(RatMatrix matrix) {
    Rational total = 0;
    std::vector<int> support;
    const int n2 = static_cast<int>(matrix.cols());
    for (std::size_t i = 0; i < matrix.rows(); ++i) {
        for (std::size_t j = 0; j < matrix.cols(); ++j) {
            const Rational& m = matrix(i, j);
            if (m.sign() < 0)
                throw std::invalid_argument("make_coupling: negative mass at (" +
                                            std::to_string(i) + "," + std::to_string(j) + ")");
            if (m.sign() > 0) support.push_back(static_cast<int>(i) * n2 + static_cast<int>(j));
            total += m;
        }
    }
    if (total != Rational(1))
        throw std::invalid_argument("make_coupling: total mass is " + total.str() + ", not 1");
    return Coupling{std::move(matrix), std::move(support)};
}

namespace {

void check_marginal(const Marginal& mu, const char* label,
                    const std::vector<std::vector<int>>& orbits,
                    std::vector<Violation>& out) {
    Rational total = 0;
    for (int i = 0; i < mu.size(); ++i) {
        if (mu.masses[i].sign() < 0) {
            out.push_back({Violation::Kind::MarginalNegativeEntry, i, -1,
                           std::string(label) + " entry " + std::to_string(i) + " is negative: " +
                               mu.masses[i].str()});
        }
        total += mu.masses[i];
    }
    if (total != Rational(1)) {
        out.push_back({Violation::Kind::MarginalSumNotOne, -1, -1,
                       std::string(label) + " sums to " + total.str() + ", not 1"});
    }
    for (std::size_t o = 0; o < orbits.size(); ++o) {
        const Rational& ref = mu.masses[orbits[o][0]];
        for (int member : orbits[o]) {
            if (mu.masses[member] != ref) {
                out.push_back({Violation::Kind::MarginalNotInvariant, static_cast<int>(o), -1,
                               std::string(label) + " not constant on orbit " + std::to_string(o) +
                                   ": point " + std::to_string(orbits[o][0]) + " has " + ref.str() +
                                   ", point " + std::to_string(member) + " has " +
                                   mu.masses[member].str()});
                break;
            }
        }
    }
}

}  // namespace

std::vector<Violation> check_marginal_pair(const Marginal& mu1, const Marginal& mu2,
                                           const OrbitDecomposition& orbits) {
    std::vector<Violation> out;
    if (mu1.size() != orbits.n1 || mu2.size() != orbits.n2) {
        out.push_back({Violation::Kind::DimensionMismatch, -1, -1,
                       "dimension mismatch: mu1 " + std::to_string(mu1.size()) + ", mu2 " +
                           std::to_string(mu2.size()) + ", orbits " + std::to_string(orbits.n1) +
                           "x" + std::to_string(orbits.n2)});
        return out;
    }
    check_marginal(mu1, "mu1", orbits.orbits1, out);
    check_marginal(mu2, "mu2", orbits.orbits2, out);
    return out;
}

std::vector<Violation> check_coupling(const RatMatrix& matrix, const Marginal& mu1,
                                      const Marginal& mu2, const OrbitDecomposition& orbits) {
    std::vector<Violation> out;
    const int n1 = static_cast<int>(matrix.rows());
    const int n2 = static_cast<int>(matrix.cols());
    if (mu1.size() != n1 || mu2.size() != n2 || orbits.n1 != n1 || orbits.n2 != n2) {
        out.push_back({Violation::Kind::DimensionMismatch, -1, -1,
                       "dimension mismatch: matrix " + std::to_string(n1) + "x" +
                           std::to_string(n2) + ", mu1 " + std::to_string(mu1.size()) + ", mu2 " +
                           std::to_string(mu2.size()) + ", orbits " + std::to_string(orbits.n1) +
                           "x" + std::to_string(orbits.n2)});
        return out;
    }
    check_marginal(mu1, "mu1", orbits.orbits1, out);
    check_marginal(mu2, "mu2", orbits.orbits2, out);

    for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j)
            if (matrix(i, j).sign() < 0)
                out.push_back({Violation::Kind::NegativeEntry, i, j,
                               "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") is negative: " + matrix(i, j).str()});

    for (int i = 0; i < n1; ++i) {
        Rational sum = 0;
        for (int j = 0; j < n2; ++j) sum += matrix(i, j);
        if (sum != mu1.masses[i])
            out.push_back({Violation::Kind::RowSumMismatch, i, -1,
                           "row " + std::to_string(i) + " sum mismatch: got " + sum.str() +
                               ", declared " + mu1.masses[i].str()});
    }
    for (int j = 0; j < n2; ++j) {
        Rational sum = 0;
        for (int i = 0; i < n1; ++i) sum += matrix(i, j);
        if (sum != mu2.masses[j])
            out.push_back({Violation::Kind::ColSumMismatch, j, -1,
                           "column " + std::to_string(j) + " sum mismatch: got " + sum.str() +
                               ", declared " + mu2.masses[j].str()});
    }

    for (std::size_t o = 0; o < orbits.orbits12.size(); ++o) {
        const auto [rx, ry] = orbits.cell_of(orbits.orbits12[o][0]);
        const Rational& ref = matrix(rx, ry);
        for (int cell : orbits.orbits12[o]) {
            const auto [x, y] = orbits.cell_of(cell);
            if (matrix(x, y) != ref) {
                out.push_back({Violation::Kind::OrbitNotConstant, static_cast<int>(o), -1,
                               "not constant on diagonal orbit " + std::to_string(o) + ": cell (" +
                                   std::to_string(rx) + "," + std::to_string(ry) + ") has " +
                                   ref.str() + ", cell (" + std::to_string(x) + "," +
                                   std::to_string(y) + ") has " + matrix(x, y).str()});
                break;
            }
        }
    }
    return out;
}

Coupling validate(const RatMatrix& matrix, const Marginal& mu1, const Marginal& mu2,
                  const OrbitDecomposition& orbits) {
    std::vector<Violation> violations = check_coupling(matrix, mu1, mu2, orbits);
    if (!violations.empty()) throw CouplingValidationError(std::move(violations));
    return make_coupling(matrix);
}

std::pair<Marginal, Marginal> marginals(const Coupling& c) {
    Marginal mu1, mu2;
    mu1.masses.assign(c.n1(), Rational(0));
    mu2.masses.assign(c.n2(), Rational(0));
    for (int i = 0; i < c.n1(); ++i) {
        for (int j = 0; j < c.n2(); ++j) {
            mu1.masses[i] += c.matrix(i, j);
            mu2.masses[j] += c.matrix(i, j);
        }
    }
    return {std::move(mu1), std::move(mu2)};
}

std::string graphic_kind_name(GraphicKind kind) {
    switch (kind) {
        case GraphicKind::GraphOfMapForward: return "forward";
        case GraphicKind::GraphOfMapBackward: return "backward";
        case GraphicKind::Both: return "both";
        case GraphicKind::Neither: return "neither";
    }
    return "unknown";
}

GraphicVerdict is_graphic(const Coupling& c) {
    std::vector<int> row_count(c.n1(), 0), col_count(c.n2(), 0);
    std::vector<int> forward(c.n1(), -1), backward(c.n2(), -1);
    for (int cell : c.support) {
        const int x = cell / c.n2(), y = cell % c.n2();
        ++row_count[x];
        ++col_count[y];
        forward[x] = y;
        backward[y] = x;
    }
    bool fwd = true, bwd = true;
    for (int x = 0; x < c.n1(); ++x) fwd = fwd && row_count[x] == 1;
    for (int y = 0; y < c.n2(); ++y) bwd = bwd && col_count[y] == 1;

    GraphicVerdict v;
    if (fwd && bwd) {
        v.kind = GraphicKind::Both;
        v.map = std::move(forward);
    } else if (fwd) {
        v.kind = GraphicKind::GraphOfMapForward;
        v.map = std::move(forward);
    } else if (bwd) {
        v.kind = GraphicKind::GraphOfMapBackward;
        v.map = std::move(backward);
    }
    return v;
}

Coupling graphic_coupling(const std::vector<int>& map, const Marginal& mu1, int n2) {
    if (static_cast<int>(map.size()) != mu1.size())
        throw std::invalid_argument("graphic_coupling: map not total on X1");
    RatMatrix m(mu1.size(), n2);
    for (int x = 0; x < mu1.size(); ++x) {
        if (map[x] < 0 || map[x] >= n2)
            throw std::invalid_argument("graphic_coupling: map value out of range");
        m(x, map[x]) += mu1.masses[x];
    }
    return make_coupling(std::move(m));
}

Coupling extend_with_independent(const Coupling& c, const Marginal& nu) {
    const int k = nu.size();
    if (k == 0) throw std::invalid_argument("extend_with_independent: empty factor");
    RatMatrix m(static_cast<std::size_t>(c.n1()) * k, static_cast<std::size_t>(c.n2()) * k);
    for (int cell : c.support) {
        const int x = cell / c.n2(), y = cell % c.n2();
        for (int z = 0; z < k; ++z)
            m(x * k + z, y * k + z) = c.matrix(x, y) * nu.masses[z];
    }
    return make_coupling(std::move(m));
}

}  // namespace extremal
