#pragma once

#include "presdist/field.hpp"
#include "presdist/gadgets.hpp"
#include "presdist/matching.hpp"
#include "presdist/merge_tree.hpp"
#include "presdist/solvers.hpp"
#include "presdist/two_param.hpp"

#include <json.hpp>

#include <string>
#include <variant>

namespace presdist {

using Json = nlohmann::json;

// Presentations. Grades are canonical rational strings ("-16", "3/2");
// two-parameter grades are ["x", "y"] pairs and relation coefficients map
// generator ids (as keys) to field values.
Json merge_tree_to_json(const MergeTreePresentation& p);
MergeTreePresentation merge_tree_from_json(const Json& j);
Json two_param_to_json(const TwoParamPresentation& p);
TwoParamPresentation two_param_from_json(const Json& j);

// Barcodes aggregate repeated intervals with a "mult" field; "inf" marks
// infinite deaths.
Json barcode_to_json(const Barcode& b);
Barcode barcode_from_json(const Json& j);

Json balpart_instance_to_json(const BalPartInstance& inst);
Json ci_instance_to_json(const CIInstance& inst);

using Instance = std::variant<BalPartInstance, CIInstance>;
/// Accepts {"balpart": {...}} or {"ci": {...}}.
Instance instance_from_json(const Json& j);

Json balpart_solution_to_json(const BalPartSolution& s);
BalPartSolution balpart_solution_from_json(const Json& j);
Json ci_solution_to_json(const CISolutionPair& s);
CISolutionPair ci_solution_from_json(const Json& j);

Json field_matrix_to_json(const FieldMatrix& m);
FieldMatrix field_matrix_from_json(const Json& j);

Json matching_to_json(const Matching& m);
Json mt_sigma_to_json(const MtSigma& s);

/// Canonical serialization: sorted keys, no insignificant whitespace.
std::string canonical_dump(const Json& j);

/// FNV-1a 64-bit hex digest of the canonical serialization.
std::string content_digest(const Json& j);

Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace presdist
