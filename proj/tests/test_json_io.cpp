#include "doctest.h"

#include "extremal/json_io.hpp"

#include <string>

using namespace extremal;

namespace {

Rational rat(long long n, long long d = 1) { return Rational(n, d); }

// the depth-1 two-point instance at p = 1/3, as a user would write it
const char* kNongraphicInstance = R"({
    "x1_size": 2,
    "x2_size": 2,
    "mu1": ["1/3", "2/3"],
    "mu2": ["1/3", "2/3"],
    "group_generators": [],
    "omega": [["0", "1/3"], ["1/3", "1/3"]]
})";

}  // namespace

TEST_CASE("parse_instance reads sizes, rationals, generators, omega") {
    const Instance inst = parse_instance(R"({
        "x1_size": 2,
        "x2_size": 2,
        "mu1": ["1/2", "2/4"],
        "mu2": [1, 0],
        "group_generators": [{"g1": [1, 0], "g2": [0, 1]}]
    })");
    CHECK(inst.n1 == 2);
    CHECK(inst.n2 == 2);
    CHECK(inst.mu1.masses == RatVector{rat(1, 2), rat(1, 2)});  // "2/4" reduced
    CHECK(inst.mu2.masses == RatVector{rat(1), rat(0)});        // integers accepted
    REQUIRE(inst.generators.size() == 1);
    CHECK(inst.generators[0].perm1 == Permutation{1, 0});
    CHECK(inst.generators[0].perm2 == Permutation{0, 1});
    CHECK(!inst.omega.has_value());

    const Instance with_omega = parse_instance(kNongraphicInstance);
    REQUIRE(with_omega.omega.has_value());
    CHECK(*with_omega.omega ==
          RatMatrix::from_rows({{0, rat(1, 3)}, {rat(1, 3), rat(1, 3)}}));
}

TEST_CASE("omega: null means absent, group_generators may be omitted") {
    const Instance inst = parse_instance(
        R"({"x1_size": 1, "x2_size": 1, "mu1": [1], "mu2": [1], "omega": null})");
    CHECK(!inst.omega.has_value());
    CHECK(inst.generators.empty());
}

TEST_CASE("canonical serialization: fixed key order, reduced rationals, no spaces") {
    const Instance inst = parse_instance(kNongraphicInstance);
    CHECK(canonical_instance_text(inst) ==
          R"({"x1_size":2,"x2_size":2,"mu1":["1/3","2/3"],"mu2":["1/3","2/3"],)"
          R"("group_generators":[],"omega":[["0","1/3"],["1/3","1/3"]]})");

    // serialize-parse round trip is the identity on canonical text
    const std::string text = canonical_instance_text(inst);
    CHECK(canonical_instance_text(parse_instance(text)) == text);

    // unreduced input canonicalizes: "2/6" and "4/6" become "1/3" and "2/3"
    const Instance messy = parse_instance(
        R"({"x2_size": 2, "x1_size": 2, "mu1": ["2/6", "4/6"], "mu2": ["1/3", "2/3"],
            "group_generators": [], "omega": [["0", "2/6"], ["1/3", "2/6"]]})");
    CHECK(canonical_instance_text(messy) == text);
}

TEST_CASE("instance digest is frozen and content-sensitive") {
    const Instance inst = parse_instance(kNongraphicInstance);
    CHECK(instance_digest(inst) == "f5ef094daff3e621");

    Instance tweaked = inst;
    (*tweaked.omega)(0, 0) = rat(1, 3);
    CHECK(instance_digest(tweaked) != instance_digest(inst));
    CHECK(instance_digest(tweaked).size() == 16);
    for (char c : instance_digest(tweaked))
        CHECK(((c >= '0' && c <= '9') || (c >= 'a' && c <= 'f')));
}

TEST_CASE("parse_instance rejects malformed input with located messages") {
    const auto message_of = [](const std::string& text) {
        try {
            parse_instance(text);
            return std::string("(no error)");
        } catch (const InstanceParseError& e) {
            return std::string(e.what());
        }
    };

    CHECK(message_of("not json {").find("invalid JSON") != std::string::npos);
    CHECK(message_of("[1, 2]").find("JSON object") != std::string::npos);
    CHECK(message_of(R"({"x2_size": 1, "mu1": [1], "mu2": [1]})").find("x1_size") !=
          std::string::npos);
    CHECK(message_of(R"({"x1_size": 0, "x2_size": 1, "mu1": [], "mu2": [1]})")
              .find("x1_size") != std::string::npos);
    CHECK(message_of(R"({"x1_size": 1.5, "x2_size": 1, "mu1": [1], "mu2": [1]})")
              .find("x1_size") != std::string::npos);
    CHECK(message_of(R"({"x1_size": 2, "x2_size": 1, "mu1": [1], "mu2": [1]})")
              .find("mu1 has 1 entries, expected 2") != std::string::npos);
    CHECK(message_of(R"({"x1_size": 1, "x2_size": 1, "mu1": ["1/0"], "mu2": [1]})")
              .find("mu1[0]") != std::string::npos);
    CHECK(message_of(R"({"x1_size": 1, "x2_size": 1, "mu1": ["abc"], "mu2": [1]})")
              .find("invalid rational literal") != std::string::npos);
    CHECK(message_of(R"({"x1_size": 1, "x2_size": 1, "mu1": [0.5], "mu2": [1]})")
              .find("expected a rational") != std::string::npos);

    const std::string gens_prefix =
        R"({"x1_size": 2, "x2_size": 2, "mu1": ["1/2","1/2"], "mu2": ["1/2","1/2"],)";
    CHECK(message_of(gens_prefix + R"( "group_generators": [{"g1": [0, 0], "g2": [0, 1]}]})")
              .find("not a permutation") != std::string::npos);
    CHECK(message_of(gens_prefix + R"( "group_generators": [{"g1": [0], "g2": [0, 1]}]})")
              .find("length 1") != std::string::npos);
    CHECK(message_of(gens_prefix + R"( "group_generators": [{"g1": [0, 1]}]})")
              .find("g1 and g2") != std::string::npos);
    CHECK(message_of(gens_prefix + R"( "group_generators": {}})").find("array") !=
          std::string::npos);
    CHECK(message_of(gens_prefix + R"( "omega": [["1/2", "1/2"]]})").find("2 rows") !=
          std::string::npos);
    CHECK(message_of(gens_prefix + R"( "omega": [["1/2"], ["1/2"]]})").find("omega[0]") !=
          std::string::npos);
}

TEST_CASE("matrix and scalar serialization, exact bytes") {
    const RatMatrix m = RatMatrix::from_rows({{0, rat(1, 3)}, {rat(1, 3), rat(1, 3)}});
    CHECK(matrix_to_json(m).dump() == R"([["0","1/3"],["1/3","1/3"]])");
    CHECK(rational_to_json(rat(-5, 10)).dump() == R"("-1/2")");
    CHECK(rational_list_to_json({rat(1), rat(1, 2)}).dump() == R"(["1","1/2"])");
}

TEST_CASE("report fragments carry the expected fields") {
    const Coupling c =
        make_coupling(RatMatrix::from_rows({{rat(1, 4), rat(1, 4)}, {rat(1, 4), rat(1, 4)}}));
    const OrbitDecomposition orbits = trivial_orbits(2, 2);

    SUBCASE("verdict with certificate") {
        const Json j = verdict_to_json(test_extreme(c, orbits));
        CHECK(j["extreme"] == false);
        CHECK(j["null_dim"] == 1);
        CHECK(j["support_orbit_count"] == 4);
        CHECK(j["certificate"]["zeta"].dump() == R"(["1","-1","-1","1"])");
        CHECK(j["certificate"]["epsilon"] == "1/2");
        CHECK(j["certificate"]["omega_plus"].dump() ==
              R"([["3/8","1/8"],["1/8","3/8"]])");
    }
    SUBCASE("verdict without certificate") {
        const Coupling diag =
            make_coupling(RatMatrix::from_rows({{rat(1, 2), 0}, {0, rat(1, 2)}}));
        const Json j = verdict_to_json(test_extreme(diag, orbits));
        CHECK(j["extreme"] == true);
        CHECK(!j.contains("certificate"));
    }
    SUBCASE("graphic fragment") {
        const Json j = graphic_to_json(is_graphic(c));
        CHECK(j["kind"] == "neither");
        CHECK(!j.contains("map"));
        const Json g = graphic_to_json(
            is_graphic(make_coupling(RatMatrix::from_rows({{rat(1, 2), 0}, {0, rat(1, 2)}}))));
        CHECK(g["kind"] == "both");
        CHECK(g["map"] == Json::array({0, 1}));
    }
    SUBCASE("violations fragment") {
        const auto vs = check_coupling(c.matrix, Marginal{{rat(1, 3), rat(2, 3)}},
                                       uniform_marginal(2), orbits);
        const Json j = violations_to_json(vs);
        REQUIRE(!j.empty());
        CHECK(j[0].contains("kind"));
        CHECK(j[0].contains("message"));
    }
    SUBCASE("orbit fragment") {
        const GroupClosure g = close_group({{{1, 0}, {1, 0}}}, 2, 2);
        const Json j = orbits_to_json(decompose_orbits(2, 2, g), g.size());
        CHECK(j["group_order"] == 2);
        CHECK(j["m1"] == 1);
        CHECK(j["m2"] == 1);
        CHECK(j["m12"] == 2);
        CHECK(j["orbits12"].dump() == "[[[0,0],[1,1]],[[0,1],[1,0]]]");
    }
    SUBCASE("vertex set, bounds, uniqueness, birkhoff fragments") {
        const Marginal mu{{rat(1, 3), rat(2, 3)}};
        const VertexSet vs = enumerate_extreme(mu, mu, orbits);
        const Json jv = vertex_set_to_json(vs);
        CHECK(jv["count"] == 2);
        CHECK(jv["vertices"][0]["omega"].dump() == R"([["1/3","0"],["0","2/3"]])");
        CHECK(jv["vertices"][1]["graphic"]["kind"] == "neither");

        const Json jb = support_bounds_to_json(check_support_bounds(vs, orbits));
        CHECK(jb["window_lo"] == 2);
        CHECK(jb["window_hi"] == 4);
        CHECK(jb["vertex_count_bound"] == "11");
        CHECK(jb["ok"] == true);

        CHECK(support_uniqueness_to_json(check_support_uniqueness(vs))["ok"] == true);

        const Json jk = birkhoff_to_json(verify_birkhoff(2));
        CHECK(jk["m"] == 2);
        CHECK(jk["vertex_count"] == 2);
        CHECK(jk["expected_count"] == 2);
        CHECK(jk["ok"] == true);
    }
}

TEST_CASE("strip_zero_mass: identity on fully supported instances") {
    const Instance inst = parse_instance(kNongraphicInstance);
    const StripOutcome out = strip_zero_mass(inst);
    CHECK(!out.changed);
    CHECK(out.kept1 == std::vector<int>{0, 1});
    CHECK(out.kept2 == std::vector<int>{0, 1});
    CHECK(canonical_instance_text(out.instance) == canonical_instance_text(inst));
}

TEST_CASE("strip_zero_mass: drops zero-mass points and re-indexes everything") {
    const Instance inst = parse_instance(R"({
        "x1_size": 3, "x2_size": 2,
        "mu1": ["1/2", "0", "1/2"],
        "mu2": ["1/2", "1/2"],
        "group_generators": [{"g1": [2, 1, 0], "g2": [1, 0]}],
        "omega": [["1/2", "0"], ["0", "0"], ["0", "1/2"]]
    })");
    const StripOutcome out = strip_zero_mass(inst);
    CHECK(out.changed);
    CHECK(out.kept1 == std::vector<int>{0, 2});
    CHECK(out.kept2 == std::vector<int>{0, 1});
    CHECK(out.instance.n1 == 2);
    CHECK(out.instance.mu1.masses == RatVector{rat(1, 2), rat(1, 2)});
    REQUIRE(out.instance.generators.size() == 1);
    CHECK(out.instance.generators[0].perm1 == Permutation{1, 0});  // swap of the kept pair
    CHECK(out.instance.generators[0].perm2 == Permutation{1, 0});
    REQUIRE(out.instance.omega.has_value());
    CHECK(*out.instance.omega == RatMatrix::from_rows({{rat(1, 2), 0}, {0, rat(1, 2)}}));
}

TEST_CASE("strip_zero_mass: errors when the action or omega will not restrict") {
    // generator sends the kept point 0 to the dropped point 1
    CHECK_THROWS_AS(strip_zero_mass(parse_instance(R"({
        "x1_size": 2, "x2_size": 1,
        "mu1": ["1", "0"], "mu2": ["1"],
        "group_generators": [{"g1": [1, 0], "g2": [0]}]
    })")),
                    StripError);

    // omega has mass at a dropped cell
    CHECK_THROWS_AS(strip_zero_mass(parse_instance(R"({
        "x1_size": 2, "x2_size": 2,
        "mu1": ["1", "0"], "mu2": ["1/2", "1/2"],
        "group_generators": [],
        "omega": [["1/2", "0"], ["0", "1/2"]]
    })")),
                    StripError);
}
