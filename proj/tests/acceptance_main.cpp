// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.
// Tolerances and thresholds are pinned here, not configurable.

#include "battery.hpp"
#include "extremal/dyadic.hpp"
#include "extremal/enumeration.hpp"
#include "extremal/extremality.hpp"
#include "extremal/json_io.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace extremal;

std::string g_cli;  // path to the command-line binary under test

struct CliRun {
    int status = -1;
    double wall_ms = 0.0;
};

CliRun run_cli(const std::string& args) {
    const std::string cmd = g_cli + " " + args + " >/dev/null 2>&1";
    const auto start = std::chrono::steady_clock::now();
    const int rc = std::system(cmd.c_str());
    CliRun r;
    r.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    return r;
}

// Assertion helper: accumulates the first failure reason of one criterion.
struct Checker {
    bool ok = true;
    std::string why;
    void expect(bool cond, const std::string& reason) {
        if (!cond && ok) {
            ok = false;
            why = reason;
        }
    }
};

struct PreparedInstance {
    testbed::BatteryInstance spec;
    OrbitDecomposition orbits;
    VertexSet vs;
};

std::vector<PreparedInstance> prepare_battery() {
    std::vector<PreparedInstance> out;
    for (testbed::BatteryInstance& b : testbed::standard_battery()) {
        OrbitDecomposition orbits = testbed::orbits_for(b);
        VertexSet vs = enumerate_extreme(b.mu1, b.mu2, orbits);
        out.push_back({std::move(b), std::move(orbits), std::move(vs)});
    }
    return out;
}

// Full verification of a non-extremality certificate against the coupling it
// refutes: nonzero witness in the regression kernel, both perturbations are
// valid couplings with the same marginals, they differ, and their midpoint
// reproduces the coupling with exact equality.
bool certificate_verifies(const Coupling& c, const OrbitDecomposition& orbits,
                          const ExtremalityVerdict& verdict) {
    if (verdict.extreme || !verdict.certificate) return false;
    const Certificate& cert = *verdict.certificate;

    bool nonzero = false;
    for (const Rational& z : cert.zeta) nonzero = nonzero || !z.is_zero();
    if (!nonzero) return false;

    const RegressionSystem sys = build_regression_system(c, orbits);
    for (const Rational& coord : mat_vec(sys.matrix, cert.zeta))
        if (!coord.is_zero()) return false;

    const auto [mu1, mu2] = marginals(c);
    if (!check_coupling(cert.omega_plus.matrix, mu1, mu2, orbits).empty()) return false;
    if (!check_coupling(cert.omega_minus.matrix, mu1, mu2, orbits).empty()) return false;
    if (cert.omega_plus.matrix == cert.omega_minus.matrix) return false;

    for (int i = 0; i < c.n1(); ++i)
        for (int j = 0; j < c.n2(); ++j)
            if ((cert.omega_plus.mass(i, j) + cert.omega_minus.mass(i, j)) / Rational(2) !=
                c.mass(i, j))
                return false;
    return true;
}

Coupling midpoint(const Coupling& a, const Coupling& b) {
    RatMatrix m(a.matrix.rows(), a.matrix.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = (a.matrix(i, j) + b.matrix(i, j)) / Rational(2);
    return make_coupling(std::move(m));
}

Checker criterion1_birkhoff() {
    Checker c;
    const BirkhoffReport r3 = verify_birkhoff(3);
    c.expect(r3.vertex_count == 6 && r3.ok(), "birkhoff 3 must yield exactly the 6 scaled "
                                              "permutation matrices");
    const BirkhoffReport r4 = verify_birkhoff(4);
    c.expect(r4.vertex_count == 24 && r4.ok(), "birkhoff 4 must yield exactly the 24 scaled "
                                               "permutation matrices");

    const CliRun t3 = run_cli("birkhoff 3");
    c.expect(t3.status == 0, "CLI birkhoff 3 must exit 0");
    c.expect(t3.wall_ms < 1000.0,
             "CLI birkhoff 3 took " + std::to_string(t3.wall_ms) + " ms (limit 1000)");
    const CliRun t4 = run_cli("birkhoff 4");
    c.expect(t4.status == 0, "CLI birkhoff 4 must exit 0");
    c.expect(t4.wall_ms < 30000.0,
             "CLI birkhoff 4 took " + std::to_string(t4.wall_ms) + " ms (limit 30000)");
    return c;
}

Checker criterion2_oracle_equivalence(const std::vector<PreparedInstance>& battery) {
    Checker c;
    c.expect(battery.size() >= 10, "battery must contain at least 10 instances");

    for (const PreparedInstance& p : battery)
        for (const Coupling& v : p.vs.vertices) {
            c.expect(check_coupling(v.matrix, p.spec.mu1, p.spec.mu2, p.orbits).empty(),
                     p.spec.name + ": an enumerated vertex failed validation");
            c.expect(test_extreme(v, p.orbits).extreme,
                     p.spec.name + ": an enumerated vertex failed test_extreme");
        }

    // random distinct vertex pairs, fixed seed so the run is reproducible
    std::vector<std::pair<const PreparedInstance*, std::pair<std::size_t, std::size_t>>> pairs;
    for (const PreparedInstance& p : battery)
        for (std::size_t i = 0; i < p.vs.size(); ++i)
            for (std::size_t j = i + 1; j < p.vs.size(); ++j) pairs.push_back({&p, {i, j}});
    std::shuffle(pairs.begin(), pairs.end(), std::mt19937_64(20260814));

    int verified_failures = 0;
    for (const auto& [p, ij] : pairs) {
        if (verified_failures >= 120) break;
        const Coupling mid = midpoint(p->vs.vertices[ij.first], p->vs.vertices[ij.second]);
        if (!check_coupling(mid.matrix, p->spec.mu1, p->spec.mu2, p->orbits).empty()) {
            c.expect(false, p->spec.name + ": a vertex midpoint failed validation");
            continue;
        }
        const ExtremalityVerdict verdict = test_extreme(mid, p->orbits);
        if (verdict.extreme) {
            c.expect(false, p->spec.name + ": a midpoint of distinct vertices tested extreme");
            continue;
        }
        if (certificate_verifies(mid, p->orbits, verdict))
            ++verified_failures;
        else
            c.expect(false, p->spec.name + ": a midpoint certificate failed verification");
    }
    c.expect(verified_failures >= 100,
             "needed >= 100 verified midpoint failures, got " +
                 std::to_string(verified_failures));
    return c;
}

Checker criterion3_truncations() {
    Checker c;
    const Rational p(1, 3);
    for (int depth = 1; depth <= 5; ++depth) {
        const Coupling t = truncated_coupling(DyadicSpec(p, depth));
        const ExtremalityVerdict v = test_extreme(t, trivial_orbits(t.n1(), t.n2()));
        c.expect(v.extreme, "depth " + std::to_string(depth) + " truncation must be extreme");
        c.expect(is_graphic(t).kind == GraphicKind::Neither,
                 "depth " + std::to_string(depth) + " truncation must be nongraphic");
    }
    const std::string serialized =
        matrix_to_json(truncated_coupling(DyadicSpec(p, 1)).matrix).dump();
    c.expect(serialized == R"([["0","1/3"],["1/3","1/3"]])",
             "depth-1 matrix serialized to " + serialized);
    return c;
}

Checker criterion4_extension_preservation(const std::vector<PreparedInstance>& battery) {
    Checker c;
    const Marginal nu = uniform_marginal(2);

    for (const PreparedInstance& p : battery) {
        // the group acts on the extended spaces with the new factor fixed
        std::vector<ActionGenerator> ext_gens;
        for (const ActionGenerator& g : p.spec.generators)
            ext_gens.push_back({extend_with_fixed_factor(g.perm1, 2),
                                extend_with_fixed_factor(g.perm2, 2)});
        const int n1 = p.spec.mu1.size() * 2;
        const int n2 = p.spec.mu2.size() * 2;
        const OrbitDecomposition ext_orbits =
            decompose_orbits(n1, n2, close_group(ext_gens, n1, n2));
        const Marginal ext_mu1 = tensor(p.spec.mu1, nu);
        const Marginal ext_mu2 = tensor(p.spec.mu2, nu);

        for (const Coupling& v : p.vs.vertices) {
            const Coupling ext = extend_with_independent(v, nu);
            c.expect(check_coupling(ext.matrix, ext_mu1, ext_mu2, ext_orbits).empty(),
                     p.spec.name + ": an extended vertex failed validation");
            c.expect(test_extreme(ext, ext_orbits).extreme,
                     p.spec.name + ": an extended vertex is no longer extreme");
        }
    }

    // and non-extremality is preserved too
    const Coupling product = make_coupling(RatMatrix::from_rows(
        {{Rational(1, 4), Rational(1, 4)}, {Rational(1, 4), Rational(1, 4)}}));
    const Coupling ext = extend_with_independent(product, nu);
    c.expect(!test_extreme(ext, trivial_orbits(4, 4)).extreme,
             "the extended uniform product must stay non-extreme");
    return c;
}

Checker criterion5_support_bounds(const std::vector<PreparedInstance>& battery) {
    Checker c;
    for (const PreparedInstance& p : battery) {
        c.expect(check_support_bounds(p.vs, p.orbits).ok(),
                 p.spec.name + ": support-window or count bound violated");
        c.expect(check_support_uniqueness(p.vs).ok(),
                 p.spec.name + ": a vertex support contains another");
    }
    return c;
}

Checker criterion6_nongraphic_pair() {
    Checker c;
    const Marginal mu{{Rational(1, 3), Rational(2, 3)}};
    const VertexSet vs = enumerate_extreme(mu, mu, trivial_orbits(2, 2));
    c.expect(vs.size() == 2, "expected exactly two vertices, got " + std::to_string(vs.size()));
    if (vs.size() == 2) {
        const GraphicKind k0 = is_graphic(vs.vertices[0]).kind;
        c.expect(vs.vertices[0].matrix ==
                     RatMatrix::from_rows({{Rational(1, 3), 0}, {0, Rational(2, 3)}}),
                 "first vertex must be the diagonal coupling");
        c.expect(k0 == GraphicKind::Both || k0 == GraphicKind::GraphOfMapForward,
                 "diagonal vertex must be graphic");
        c.expect(vs.vertices[1].matrix ==
                     RatMatrix::from_rows({{0, Rational(1, 3)}, {Rational(1, 3), Rational(1, 3)}}),
                 "second vertex must be the nongraphic coupling");
        c.expect(is_graphic(vs.vertices[1]).kind == GraphicKind::Neither,
                 "second vertex must be nongraphic");
    }
    return c;
}

Checker criterion7_swap_instance() {
    Checker c;
    const GroupClosure g = close_group({{{1, 0}, {1, 0}}}, 2, 2);
    const OrbitDecomposition orbits = decompose_orbits(2, 2, g);
    const Marginal mu = uniform_marginal(2);
    const VertexSet vs = enumerate_extreme(mu, mu, orbits);

    c.expect(vs.size() == 2,
             "expected exactly two invariant vertices, got " + std::to_string(vs.size()));
    if (vs.size() == 2) {
        c.expect(vs.vertices[0].matrix ==
                     RatMatrix::from_rows({{Rational(1, 2), 0}, {0, Rational(1, 2)}}),
                 "first vertex must be identity/2");
        c.expect(vs.vertices[1].matrix ==
                     RatMatrix::from_rows({{0, Rational(1, 2)}, {Rational(1, 2), 0}}),
                 "second vertex must be swap/2");
    }

    const Coupling mid = make_coupling(RatMatrix::from_rows(
        {{Rational(1, 4), Rational(1, 4)}, {Rational(1, 4), Rational(1, 4)}}));
    const ExtremalityVerdict verdict = test_extreme(mid, orbits);
    c.expect(!verdict.extreme, "the invariant midpoint must be rejected");
    c.expect(verdict.support_orbits.size() == 2 && verdict.certificate &&
                 verdict.certificate->zeta.size() == 2,
             "the rejection must carry a 2-orbit certificate");
    c.expect(certificate_verifies(mid, orbits, verdict),
             "the 2-orbit certificate failed verification");
    return c;
}

Checker criterion8_fp_numerics() {
    Checker c;
    const Rational half(1, 2), third(1, 3);

    double prev = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double t = static_cast<double>(i) / 1000.0;
        const double vh = eval_fp(half, t, 1e-13);
        if (std::fabs(vh - t) > 1e-12) {
            c.expect(false, "|F_{1/2}(t) - t| > 1e-12 at t = " + std::to_string(t));
            break;
        }
        const double vt = eval_fp(third, t, 1e-13);
        if (vt < prev) {
            c.expect(false, "F_{1/3} decreased at t = " + std::to_string(t));
            break;
        }
        prev = vt;
    }

    c.expect(std::fabs(eval_fp(third, 0.5, 1e-13) - 1.0 / 3.0) <= 1e-12,
             "F_{1/3}(1/2) must equal 1/3 within 1e-12");
    c.expect(std::fabs(eval_fp(third, 0.25, 1e-13) - 1.0 / 9.0) <= 1e-12,
             "F_{1/3}(1/4) must equal 1/9 within 1e-12");
    c.expect(eval_fp(third, 0.0, 1e-13) == 0.0, "F(0) must be exactly 0");
    c.expect(eval_fp(third, 1.0, 1e-13) == 1.0, "F(1) must be exactly 1");
    c.expect(eval_fp(half, 0.0, 1e-13) == 0.0, "F_{1/2}(0) must be exactly 0");
    c.expect(eval_fp(half, 1.0, 1e-13) == 1.0, "F_{1/2}(1) must be exactly 1");
    return c;
}

double ks_distance_to_uniform(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        d = std::max(d, values[i] - static_cast<double>(i) / n);
        d = std::max(d, static_cast<double>(i + 1) / n - values[i]);
    }
    return d;
}

Checker criterion9_sampling() {
    Checker c;
    const Rational p(1, 3);
    const std::uint64_t seed = 20260814;
    const auto samples = sample_transformed_pairs(p, 20000, seed, 40, 1e-12);
    c.expect(samples.size() == 20000, "sampler must return 20000 pairs");

    std::vector<double> xs, es;
    xs.reserve(samples.size());
    es.reserve(samples.size());
    for (const SamplePair& s : samples) {
        xs.push_back(s.xi_prime);
        es.push_back(s.eta_prime);
    }
    const double dx = ks_distance_to_uniform(std::move(xs));
    const double de = ks_distance_to_uniform(std::move(es));
    c.expect(dx < 0.02, "KS distance of xi' to uniform is " + std::to_string(dx));
    c.expect(de < 0.02, "KS distance of eta' to uniform is " + std::to_string(de));

    const auto rerun = sample_transformed_pairs(p, 20000, seed, 40, 1e-12);
    c.expect(rerun.size() == samples.size() &&
                 std::memcmp(rerun.data(), samples.data(),
                             samples.size() * sizeof(SamplePair)) == 0,
             "rerun with the same seed must be bitwise identical");
    return c;
}

int report(int number, const std::string& label, const std::function<Checker()>& body) {
    Checker c;
    try {
        c = body();
    } catch (const std::exception& e) {
        c.ok = false;
        c.why = std::string("exception: ") + e.what();
    }
    std::cout << (c.ok ? "PASS" : "FAIL") << ": criterion " << number << " - " << label;
    if (!c.ok) std::cout << " [" << c.why << "]";
    std::cout << std::endl;
    return c.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli-binary>\n";
        return 1;
    }
    g_cli = argv[1];

    std::vector<PreparedInstance> battery;
    try {
        battery = prepare_battery();
    } catch (const std::exception& e) {
        std::cerr << "battery setup failed: " << e.what() << "\n";
        return 1;
    }

    int failures = 0;
    failures += report(1, "Birkhoff polytopes 3 and 4, exact and within time limits",
                       criterion1_birkhoff);
    failures += report(2, "vertices pass the extremality test, >= 100 midpoints fail with "
                          "verified certificates",
                       [&] { return criterion2_oracle_equivalence(battery); });
    failures += report(3, "two-point truncations extreme and nongraphic, depth-1 bytes frozen",
                       criterion3_truncations);
    failures += report(4, "independent extension preserves extremality and non-extremality",
                       [&] { return criterion4_extension_preservation(battery); });
    failures += report(5, "support windows, count bounds, and support uniqueness",
                       [&] { return criterion5_support_bounds(battery); });
    failures += report(6, "marginals (1/3, 2/3): exactly the graphic and nongraphic vertices",
                       criterion6_nongraphic_pair);
    failures += report(7, "swap-invariant instance: two vertices, midpoint rejected with a "
                          "2-orbit certificate",
                       criterion7_swap_instance);
    failures += report(8, "digit-distribution numerics on the 1001-point grid",
                       criterion8_fp_numerics);
    failures += report(9, "20000 transformed pairs uniform within KS 0.02, rerun bitwise equal",
                       criterion9_sampling);

    return failures == 0 ? 0 : 1;
}
