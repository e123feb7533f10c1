#pragma once

// JSON forms of matrices, type sums, family labels and flow runs.
//
// Matrix: {"sig": "3,4", "rows": [[...7 numbers...], ...7 rows]}. Entries may be
// numbers or strings holding exact rationals ("1/3", "0.25"). A bare array of rows
// is accepted on input.

#include <json.hpp>
#include <optional>

#include "qkr/family.hpp"
#include "qkr/lie.hpp"
#include "qkr/moment.hpp"
#include "qkr/octonion.hpp"
#include "qkr/properness.hpp"
#include "qkr/rational.hpp"
#include "qkr/types.hpp"

namespace qkr {

using Json = nlohmann::ordered_json;

struct ParsedMatrix {
    Mat7 m = Mat7::Zero();
    MetricSignature sig;
    std::optional<RMat> exact;  // set when every entry was given as an exact rational string
};

Json matrix_to_json(const Mat7& m, MetricSignature sig);
// fallback_sig applies when the object carries no "sig".
ParsedMatrix matrix_from_json(const Json& j, MetricSignature fallback_sig);

Json type_to_json(const IndecomposableType& t);
Json type_sum_to_json(const TypeSum& ts);
TypeSum type_sum_from_json(const Json& j);

Json family_to_json(const FamilyLabel& fl);
FamilyLabel family_from_json(const Json& j);  // {"family": "IV_4", "params": [1, "sqrt(2)", 1]}

Json proper_to_json(const ProperReport& r);
Json flow_to_json(const FlowResult& r, bool with_trajectory);
Json multiplication_table_to_json(const MultiplicationTable& t);

}  // namespace qkr
