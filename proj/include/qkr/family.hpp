#pragma once

// The 24 orbit families of so(3,4) and matching of type sums against them.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkr/types.hpp"

namespace qkr {

struct FamilySlot {
    Kind kind;
    int height;
    int sign;  // 0 where the kind carries none
};

struct FamilyRow {
    std::string name;  // "I_1", "II_3", "IV_4", ...
    int height;
    int nparams;
    std::vector<FamilySlot> slots;

    std::string display() const;  // e.g. "D4+(0) + D0-(z1)"
};

const std::vector<FamilyRow>& family_table();
const FamilyRow& family_row(const std::string& name);

struct FamilyLabel {
    std::string name;
    std::vector<double> params;  // quad slots contribute (a, b)
    std::optional<std::vector<ExactReal>> exact_params;
    // Other families the same type sum falls into through degenerate parameters.
    std::vector<std::string> aliases;
};

struct ClassificationIncomplete : std::runtime_error {
    TypeSum types;
    explicit ClassificationIncomplete(const TypeSum& t);
};

// Matches ts against the table, allowing slots to degenerate (parameter 0, or a
// quadruple collapsing onto the axes). Among several matching families the one
// needing the fewest degenerate slots wins, then table order.
FamilyLabel family_label(const TypeSum& ts, double rel_tol = 1e-6);

// The type sum of a labelled family, degenerate slots expanded.
TypeSum family_type_sum(const FamilyLabel& fl);

}  // namespace qkr
