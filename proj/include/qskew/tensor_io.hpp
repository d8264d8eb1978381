#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "qskew/model_space.hpp"
#include "qskew/quaternion.hpp"

namespace qskew {

using json = nlohmann::json;

constexpr int kSchemaVersion = 1;

// A tensor on V = R^{4n} as a JSON document:
//   {"schema_version": 1, "n": N, "field": "rational" | "float64",
//    "kind": "2form" | "metric" | "endo" | "torsion" | "3tensor" | "4tensor" | "basis_change",
//    "symmetry": "none" | "symmetric" | "antisymmetric"   (optional, kind default otherwise),
//    "entries": [[[i1, ..., ir], "p/q"], ...]}
// Indices are 1-based in the ordering e_1..e_2n, f_1..f_2n. Under a symmetry
// flag each entry also sets its permutations of the covariant slots; entries
// that contradict one another are rejected. Float64 values are JSON numbers
// and are converted to rationals exactly.
struct TensorDocument {
    std::string kind;
    Field field = Field::Rational;
    ModelTensor tensor;
};

TensorDocument tensor_from_json(const json& j);
json tensor_to_json(const TensorDocument& doc);

// Slot layout and default symmetry of a kind.
std::vector<Slot> kind_slots(const std::string& kind);
Symmetry kind_symmetry(const std::string& kind);

// {"schema_version": 1, "n": N, "kind": "triple", "matrices": [E1, E2, E3]}
// where each E is an "endo" entry list.
HypercomplexTriple triple_from_json(const json& j);
json triple_to_json(const HypercomplexTriple& h);

// {"schema_version": 1, "kind": "quat_matrix", "field": ..., "rows": R, "cols": C,
//  "entries": [[[r, c], [w, x, y, z]], ...]} with 1-based indices.
QuatMatrix quat_matrix_from_json(const json& j);
json quat_matrix_to_json(const QuatMatrix& A);

json read_json_file(const std::string& path);

std::string rational_string(const Q& q);
json scalar_json(const Scalar& s);

} // namespace qskew
