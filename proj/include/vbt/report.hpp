#pragma once
// Canonical JSON serialization (machine format) and the deterministic
// seeded suite report.

#include <json.hpp>
#include <string>

#include "vbt/braidrep.hpp"

namespace vbt {

using Json = nlohmann::ordered_json;

Json scalar_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

Json tree_vector_json(const TreeVector& tv);
TreeVector tree_vector_from_json(const Json& j);

Json rep_matrix_json(const RepMatrix& m);
Json certificates_json(const std::vector<RuleCertificate>& certs);
Json relations_json(const std::vector<RelationResult>& rels);

// deterministic randomized-suite report; identical seed -> identical bytes
Json suite_report(uint64_t seed);

}  // namespace vbt
