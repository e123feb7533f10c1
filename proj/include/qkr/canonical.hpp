#pragma once

// Explicit representatives of orbit types in so(3,4) (or so(7) for compact sums).

#include <Eigen/Dense>
#include <vector>

#include "qkr/family.hpp"
#include "qkr/lie.hpp"
#include "qkr/types.hpp"

namespace qkr {

struct CanonicalForm {
    SkewAdjointMatrix a;
    // Column basis of each summand's subspace, in the order of the sorted sum.
    std::vector<Eigen::MatrixXd> blocks;
};

// Signature (3,4) sums give a split representative, (7,0) sums a compact one.
CanonicalForm canonical_form(const TypeSum& ts);
SkewAdjointMatrix canonical_representative(const TypeSum& ts);
SkewAdjointMatrix canonical_representative(const FamilyLabel& fl);

}  // namespace qkr
