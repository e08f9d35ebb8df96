#include "extremal/dyadic.hpp"

#include <charconv>
#include <ostream>
#include <random>
#include <string>
#include <utility>

namespace extremal {

namespace {

void require_valid_p(const Rational& p) {
    if (p.sign() <= 0 || !(p < Rational(1, 2))) throw InvalidPError(p);
}

// floor(r * 2^53) for r in [0, 1]; comparing a 53-bit uniform word against
// this reproduces an event of probability r up to 2^-53, deterministically.
std::uint64_t threshold53(const Rational& r) {
    BigInt t = (r.numerator() << 53) / r.denominator();
    return t.convert_to<std::uint64_t>();
}

}  // namespace

Coupling base_coupling(const Rational& p) {
    require_valid_p(p);
    const Rational q = Rational(1) - p;
    RatMatrix m = RatMatrix::from_rows({{Rational(0), p}, {p, q - p}});
    return make_coupling(std::move(m));
}

Marginal truncated_marginal(const DyadicSpec& spec) {
    Marginal level{{spec.p, spec.q()}};
    Marginal out = level;
    for (int k = 1; k < spec.depth; ++k) out = tensor(out, level);
    return out;
}

Coupling truncated_coupling(const DyadicSpec& spec, int size_cap) {
    if (spec.depth >= 31 || (1 << spec.depth) > size_cap)
        throw SizeCapExceededError(spec.depth, size_cap);
    const Rational q = spec.q();
    const Coupling base = base_coupling(spec.p);

    // Weight of each shared digit string z_1..z_{depth-1}, most significant
    // digit first, matching the lexicographic index b * 2^{depth-1} + z.
    std::vector<Rational> weights{Rational(1)};
    for (int level = 1; level < spec.depth; ++level) {
        std::vector<Rational> next;
        next.reserve(weights.size() * 2);
        for (const Rational& w : weights) {
            next.push_back(w * spec.p);
            next.push_back(w * q);
        }
        weights = std::move(next);
    }

    const std::size_t n = weights.size();
    RatMatrix m(2 * n, 2 * n);
    for (int b1 = 0; b1 < 2; ++b1)
        for (int b2 = 0; b2 < 2; ++b2) {
            const Rational& mass = base.matrix(b1, b2);
            if (mass.is_zero()) continue;
            for (std::size_t z = 0; z < n; ++z) m(b1 * n + z, b2 * n + z) = mass * weights[z];
        }
    return make_coupling(std::move(m));
}

double eval_fp(const Rational& p, double t, double tol) {
    if (p.sign() <= 0 || !(p < Rational(1)))
        throw DomainError("p = " + p.str() + " is outside (0, 1)");
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("t = " + std::to_string(t) + " outside [0, 1]");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");

    const double pd = p.to_double();
    const double qd = (Rational(1) - p).to_double();

    // Unwind F(t) = p F(2t) (t < 1/2), F(t) = p + q F(2t - 1) (t >= 1/2)
    // until the unresolved tail cannot move the value by tol.
    double prefix = 0.0;
    double scale = 1.0;
    for (int iter = 0; scale >= tol && iter < 4096; ++iter) {
        if (t <= 0.0) return prefix;
        if (t >= 1.0) return prefix + scale;
        if (t < 0.5) {
            scale *= pd;
            t *= 2.0;
        } else {
            prefix += scale * pd;
            scale *= qd;
            t = 2.0 * t - 1.0;
        }
    }
    return prefix + scale * t;
}

std::vector<SamplePair> sample_transformed_pairs(const Rational& p, std::size_t count,
                                                 std::uint64_t seed, int sample_depth,
                                                 double tol) {
    // Accepts the boundary p = 1/2 (mass (1-2p) on (1,1) degenerates to zero,
    // leaving the swap coupling) so the F identity case can be sampled.
    if (p.sign() <= 0 || p > Rational(1, 2)) throw InvalidPError(p);
    if (sample_depth < 8) throw std::invalid_argument("sample_depth must be >= 8");
    if (!(tol > 0.0)) throw DomainError("tol must be positive");

    // Cumulative masses of the base coupling in the order (0,1), (1,0), (1,1).
    const std::uint64_t cum1 = threshold53(p);
    const std::uint64_t cum2 = threshold53(p + p);
    const std::uint64_t digit0 = cum1;  // P(zeta = 0) = p

    std::mt19937_64 rng(seed);
    const auto next53 = [&rng]() { return rng() >> 11; };

    std::vector<SamplePair> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t u = next53();
        int xi = 1, eta = 1;
        if (u < cum1) {
            xi = 0;
        } else if (u < cum2) {
            eta = 0;
        }
        double xt = xi * 0.5;
        double et = eta * 0.5;
        double w = 0.25;
        for (int j = 0; j < sample_depth; ++j) {
            if (next53() >= digit0) {  // zeta_j = 1
                xt += w;
                et += w;
            }
            w *= 0.5;
        }
        out.push_back({eval_fp(p, xt, tol), eval_fp(p, et, tol)});
    }
    return out;
}

void write_samples_csv(std::ostream& os, const std::vector<SamplePair>& samples) {
    char buf[64];
    const auto fmt = [&buf](double v) {
        auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
        return std::string(buf, res.ptr);
    };
    os << "xi_prime,eta_prime\n";
    for (const SamplePair& s : samples) os << fmt(s.xi_prime) << ',' << fmt(s.eta_prime) << '\n';
}

}  // namespace extremal
