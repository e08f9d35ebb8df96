#pragma once

#include "extremal/coupling.hpp"
#include "extremal/enumeration.hpp"
#include "extremal/extremality.hpp"
#include "extremal/instance.hpp"
#include "extremal/symmetry.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace extremal {

// Ordered so serialization key order is canonical (insertion order).
using Json = nlohmann::ordered_json;

/// Thrown for malformed instance files (bad JSON, missing or ill-typed fields).
class InstanceParseError : public std::runtime_error {
public:
    explicit InstanceParseError(const std::string& what) : std::runtime_error(what) {}
};

// Instance file format: object with x1_size, x2_size, mu1, mu2 (arrays of
// rational strings "a/b" or integers), group_generators (array of
// {g1: permutation, g2: permutation}), optional omega (2-D array of
// rationals). Rationals are accepted as strings or JSON integers and always
// emitted as strings in lowest terms.
Instance parse_instance(const std::string& text);

Json instance_to_json(const Instance& inst);

// Compact dump of instance_to_json: fixed key order, reduced rationals,
// no whitespace. Semantically equal instances serialize identically.
std::string canonical_instance_text(const Instance& inst);

// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string instance_digest(const Instance& inst);

Json rational_to_json(const Rational& r);
Json rational_list_to_json(const RatVector& v);
Json matrix_to_json(const RatMatrix& m);
Json violations_to_json(const std::vector<Violation>& violations);
Json graphic_to_json(const GraphicVerdict& v);
Json verdict_to_json(const ExtremalityVerdict& v);
Json orbits_to_json(const OrbitDecomposition& orbits, std::size_t group_order);
Json vertex_set_to_json(const VertexSet& vs);
Json support_bounds_to_json(const SupportBoundsReport& r);
Json support_uniqueness_to_json(const SupportUniquenessReport& r);
Json birkhoff_to_json(const BirkhoffReport& r);

}  // namespace extremal
