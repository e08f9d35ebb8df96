#include "extremal/json_io.hpp"

#include <cstdint>
#include <utility>

namespace extremal {

namespace {

Rational rational_from_json(const Json& j, const std::string& where) {
    try {
        if (j.is_string()) return Rational::parse(j.get<std::string>());
        if (j.is_number_integer()) return Rational(j.get<long long>());
    } catch (const RationalParseError& e) {
        throw InstanceParseError(where + ": " + e.what());
    }
    throw InstanceParseError(where + ": expected a rational string \"a/b\" or an integer, got " +
                             j.dump());
}

int size_field(const Json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer())
        throw InstanceParseError(std::string(key) + ": required positive integer");
    const long long v = j[key].get<long long>();
    if (v < 1) throw InstanceParseError(std::string(key) + " must be >= 1, got " + j[key].dump());
    return static_cast<int>(v);
}

Marginal marginal_field(const Json& j, const char* key, int size) {
    if (!j.contains(key) || !j[key].is_array())
        throw InstanceParseError(std::string(key) + ": required array of rationals");
    const Json& arr = j[key];
    if (static_cast<int>(arr.size()) != size)
        throw InstanceParseError(std::string(key) + " has " + std::to_string(arr.size()) +
                                 " entries, expected " + std::to_string(size));
    Marginal m;
    for (std::size_t i = 0; i < arr.size(); ++i)
        m.masses.push_back(
            rational_from_json(arr[i], std::string(key) + "[" + std::to_string(i) + "]"));
    return m;
}

Permutation permutation_field(const Json& j, const std::string& where, int size) {
    if (!j.is_array())
        throw InstanceParseError(where + ": expected a permutation array");
    Permutation p;
    for (const Json& e : j) {
        if (!e.is_number_integer())
            throw InstanceParseError(where + ": permutation entries must be integers");
        p.push_back(e.get<int>());
    }
    if (static_cast<int>(p.size()) != size)
        throw InstanceParseError(where + " has length " + std::to_string(p.size()) +
                                 ", expected " + std::to_string(size));
    if (!is_permutation(p))
        throw InstanceParseError(where + " is not a permutation of 0.." + std::to_string(size - 1));
    return p;
}

}  // namespace

Instance parse_instance(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw InstanceParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw InstanceParseError("instance must be a JSON object");

    Instance inst;
    inst.n1 = size_field(j, "x1_size");
    inst.n2 = size_field(j, "x2_size");
    inst.mu1 = marginal_field(j, "mu1", inst.n1);
    inst.mu2 = marginal_field(j, "mu2", inst.n2);

    if (j.contains("group_generators")) {
        const Json& gens = j["group_generators"];
        if (!gens.is_array())
            throw InstanceParseError("group_generators: expected an array of {g1, g2} objects");
        for (std::size_t g = 0; g < gens.size(); ++g) {
            const Json& gen = gens[g];
            const std::string where = "group_generators[" + std::to_string(g) + "]";
            if (!gen.is_object() || !gen.contains("g1") || !gen.contains("g2"))
                throw InstanceParseError(where + ": expected an object with g1 and g2");
            inst.generators.push_back({permutation_field(gen["g1"], where + ".g1", inst.n1),
                                       permutation_field(gen["g2"], where + ".g2", inst.n2)});
        }
    }

    if (j.contains("omega") && !j["omega"].is_null()) {
        const Json& om = j["omega"];
        if (!om.is_array() || static_cast<int>(om.size()) != inst.n1)
            throw InstanceParseError("omega: expected " + std::to_string(inst.n1) + " rows");
        RatMatrix m(inst.n1, inst.n2);
        for (int i = 0; i < inst.n1; ++i) {
            const Json& row = om[i];
            if (!row.is_array() || static_cast<int>(row.size()) != inst.n2)
                throw InstanceParseError("omega[" + std::to_string(i) + "]: expected " +
                                         std::to_string(inst.n2) + " entries");
            for (int k = 0; k < inst.n2; ++k)
                m(i, k) = rational_from_json(
                    row[k], "omega[" + std::to_string(i) + "][" + std::to_string(k) + "]");
        }
        inst.omega = std::move(m);
    }
    return inst;
}

Json rational_to_json(const Rational& r) { return r.str(); }

Json rational_list_to_json(const RatVector& v) {
    Json arr = Json::array();
    for (const Rational& r : v) arr.push_back(rational_to_json(r));
    return arr;
}

Json matrix_to_json(const RatMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Json instance_to_json(const Instance& inst) {
    Json j;
    j["x1_size"] = inst.n1;
    j["x2_size"] = inst.n2;
    j["mu1"] = rational_list_to_json(inst.mu1.masses);
    j["mu2"] = rational_list_to_json(inst.mu2.masses);
    Json gens = Json::array();
    for (const ActionGenerator& g : inst.generators) {
        Json gen;
        gen["g1"] = g.perm1;
        gen["g2"] = g.perm2;
        gens.push_back(std::move(gen));
    }
    j["group_generators"] = std::move(gens);
    if (inst.omega) j["omega"] = matrix_to_json(*inst.omega);
    return j;
}

std::string canonical_instance_text(const Instance& inst) { return instance_to_json(inst).dump(); }

std::string instance_digest(const Instance& inst) {
    const std::string text = canonical_instance_text(inst);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xF];
        h >>= 4;
    }
    return out;
}

Json violations_to_json(const std::vector<Violation>& violations) {
    Json arr = Json::array();
    for (const Violation& v : violations) {
        Json item;
        item["kind"] = violation_kind_name(v.kind);
        item["message"] = v.message;
        arr.push_back(std::move(item));
    }
    return arr;
}

Json graphic_to_json(const GraphicVerdict& v) {
    Json j;
    j["kind"] = graphic_kind_name(v.kind);
    if (v.map) j["map"] = *v.map;
    return j;
}

Json verdict_to_json(const ExtremalityVerdict& v) {
    Json j;
    j["extreme"] = v.extreme;
    j["null_dim"] = v.null_dim;
    j["support_orbit_count"] = v.support_orbits.size();
    j["support_orbits"] = v.support_orbits;
    if (v.certificate) {
        Json cert;
        cert["zeta"] = rational_list_to_json(v.certificate->zeta);
        cert["epsilon"] = rational_to_json(v.certificate->epsilon);
        cert["omega_plus"] = matrix_to_json(v.certificate->omega_plus.matrix);
        cert["omega_minus"] = matrix_to_json(v.certificate->omega_minus.matrix);
        j["certificate"] = std::move(cert);
    }
    return j;
}

Json orbits_to_json(const OrbitDecomposition& orbits, std::size_t group_order) {
    Json j;
    j["group_order"] = group_order;
    j["m1"] = orbits.m1();
    j["m2"] = orbits.m2();
    j["m12"] = orbits.m12();
    j["orbits1"] = orbits.orbits1;
    j["orbits2"] = orbits.orbits2;
    Json cells = Json::array();
    for (const std::vector<int>& orbit : orbits.orbits12) {
        Json members = Json::array();
        for (int cell : orbit) {
            const auto [x, y] = orbits.cell_of(cell);
            members.push_back(Json::array({x, y}));
        }
        cells.push_back(std::move(members));
    }
    j["orbits12"] = std::move(cells);
    return j;
}

Json vertex_set_to_json(const VertexSet& vs) {
    Json j;
    j["count"] = vs.size();
    Json verts = Json::array();
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Json v;
        v["omega"] = matrix_to_json(vs.vertices[i].matrix);
        v["support_orbits"] = vs.supports[i];
        v["orbit_count"] = vs.orbit_counts[i];
        v["graphic"] = graphic_to_json(is_graphic(vs.vertices[i]));
        verts.push_back(std::move(v));
    }
    j["vertices"] = std::move(verts);
    return j;
}

Json support_bounds_to_json(const SupportBoundsReport& r) {
    Json j;
    j["window_lo"] = r.window_lo;
    j["window_hi"] = r.window_hi;
    j["orbit_counts"] = r.orbit_counts;
    j["all_within_window"] = r.all_within_window;
    j["vertex_count_bound"] = r.vertex_count_bound.str();
    j["count_within_bound"] = r.count_within_bound;
    j["ok"] = r.ok();
    return j;
}

Json support_uniqueness_to_json(const SupportUniquenessReport& r) {
    Json j;
    Json pairs = Json::array();
    for (const auto& [inner, outer] : r.violating_pairs)
        pairs.push_back(Json::array({inner, outer}));
    j["violating_pairs"] = std::move(pairs);
    j["ok"] = r.ok();
    return j;
}

Json birkhoff_to_json(const BirkhoffReport& r) {
    Json j;
    j["m"] = r.m;
    j["vertex_count"] = r.vertex_count;
    j["expected_count"] = r.expected_count;
    j["all_permutation_type"] = r.all_permutation_type;
    j["complete"] = r.complete;
    j["discrepancies"] = r.discrepancies;
    j["ok"] = r.ok();
    return j;
}

}  // namespace extremal
