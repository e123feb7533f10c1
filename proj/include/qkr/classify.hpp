#pragma once

// Orbit type of A in so(V, eta): Jordan-Chevalley splitting A = S + N, then
// the reduced forms tau(u, N^j v) on each eigenvalue group of S.

#include <array>
#include <optional>
#include <stdexcept>

#include "qkr/lie.hpp"
#include "qkr/octonion.hpp"
#include "qkr/rational.hpp"
#include "qkr/types.hpp"

namespace qkr {

constexpr double kClassifyTol = 1e-8;

// Eigenvalue clusters too close to separate reliably.
struct IllConditioned : std::runtime_error {
    double gap;  // smallest distance between cluster centres, in units of A
    IllConditioned(const std::string& what, double g);
};

struct SemisimpleNilpotentPair {
    SkewAdjointMatrix S, N;
    int height = 0;
};

struct ClassifyReport {
    TypeSum types;
    SemisimpleNilpotentPair jc;
    bool exact = false;
    double gap = 0.0;              // smallest inter-cluster distance (0 if one cluster)
    double parity_residual = 0.0;  // symmetry defect of the reduced forms, relative
};

SemisimpleNilpotentPair jordan_chevalley(const SkewAdjointMatrix& A, double tol = kClassifyTol);

// Uses exact arithmetic when every entry of A is a short rational and the
// eigenvalues of S are square roots of rationals; floating point otherwise.
ClassifyReport classify_report(const SkewAdjointMatrix& A, double tol = kClassifyTol);
TypeSum classify(const SkewAdjointMatrix& A, double tol = kClassifyTol);

// Exact path; empty when some eigenvalue of S is not a square root of a rational.
std::optional<ClassifyReport> classify_exact(const RMat& A, MetricSignature sig);

// Entries of A as rationals when each is a fraction with denominator <= 2^20.
std::optional<RMat> exact_entries(const Mat7& A);

RMat to_rmat(const Mat7& A);
RMat eta_exact(MetricSignature sig);
// A_x = F^-1(i_x phi) over Q.
RMat canonical_vector_field_exact(const SevenVector<mpq_class>& x);

// Sorted rotation rates (a <= b <= c) of a skew-symmetric matrix.
std::array<double, 3> classify_compact(const SkewAdjointMatrix& A);

}  // namespace qkr
