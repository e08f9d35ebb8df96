#pragma once

#include "extremal/coupling.hpp"
#include "extremal/rational.hpp"

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace extremal {

/// Thrown when the base-coupling parameter is outside (0, 1/2).
class InvalidPError : public std::runtime_error {
public:
    explicit InvalidPError(const Rational& p)
        : std::runtime_error("p = " + p.str() +
                             " is outside (0, 1/2); the two-point construction needs p < q") {}
};

/// Thrown when a truncated space would exceed the size cap.
class SizeCapExceededError : public std::runtime_error {
public:
    SizeCapExceededError(int depth, int cap)
        : std::runtime_error("truncation depth " + std::to_string(depth) +
                             " needs 2^depth points per space, cap is " + std::to_string(cap)) {}
};

/// Thrown by eval_fp for arguments outside its domain.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

inline constexpr int kDefaultTruncationCap = 1024;  // points per truncated space

// Parameters of the two-point construction: P({0}) = p, P({1}) = q = 1 - p
// with 0 < p < q, plus the truncation depth (depth 1 = the bare two-point
// coupling, each further level adjoins one independent digit).
struct DyadicSpec {
    Rational p;
    int depth = 1;

    DyadicSpec(Rational p_, int depth_) : p(std::move(p_)), depth(depth_) {
        if (p.sign() <= 0 || !(p < Rational(1, 2))) throw InvalidPError(p);
        if (depth < 1) throw std::invalid_argument("DyadicSpec: depth must be >= 1");
    }
    Rational q() const { return Rational(1) - p; }
};

// The 2x2 nongraphic building block [[0, p], [p, q-p]]; both marginals (p, q).
Coupling base_coupling(const Rational& p);

// The (p, q) marginal on bit-strings of the given length, tensor power order
// matching the truncated coupling's indexing.
Marginal truncated_marginal(const DyadicSpec& spec);

// Coupling of ((b, z), (b', z')) where (b, b') follows the base coupling and
// the shared digits z are i.i.d. (p, q): mass = base(b, b') * prod_j P(z_j)
// when z = z', else 0. Spaces are bit-strings (b, z_1..z_{depth-1}) indexed
// lexicographically. Equals the (depth-1)-fold independent extension of the
// base coupling by nu = (p, q).
Coupling truncated_coupling(const DyadicSpec& spec, int size_cap = kDefaultTruncationCap);

// Distribution function of a random point of [0,1] whose binary digits are
// i.i.d. with P(digit = 0) = p. Evaluated through the self-similarity
// F(t) = p F(2t) for t < 1/2 and F(t) = p + q F(2t - 1) for t >= 1/2,
// truncated once the remaining factor drops below tol. Accepts any p in
// (0,1) so the p = 1/2 identity is expressible; F(0) = 0 and F(1) = 1 exactly.
double eval_fp(const Rational& p, double t, double tol);

struct SamplePair {
    double xi_prime = 0.0;
    double eta_prime = 0.0;
};

// Draws (xi, eta) from the base coupling and a shared digit stream
// zeta_1..zeta_depth i.i.d. (p, q), forms the dyadic expansions
// xi~ = xi/2 + sum_j zeta_j / 2^{j+1} (eta~ likewise, same digits), and
// returns (F_p(xi~), F_p(eta~)). Both coordinates are uniform in law.
// Accepts p in (0, 1/2]; sample_depth must be >= 8.
//
// Determinism contract: the generator is std::mt19937_64 seeded with `seed`;
// each pair consumes 1 + sample_depth words in order (one for (xi, eta),
// then one per digit); a word w yields u = w >> 11 and an event of rational
// probability a/b fires iff u < floor(a * 2^53 / b). Identical seeds give
// identical output, bit for bit.
std::vector<SamplePair> sample_transformed_pairs(const Rational& p, std::size_t count,
                                                 std::uint64_t seed, int sample_depth,
                                                 double tol);

// CSV with header "xi_prime,eta_prime", one pair per row, 17 significant
// digits, locale-independent.
void write_samples_csv(std::ostream& os, const std::vector<SamplePair>& samples);

}  // namespace extremal
