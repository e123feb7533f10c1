#pragma once

// G2(V) membership: the column criterion at group level and the seven
// linear equations at algebra level.

#include <array>
#include <string>

#include "qkr/lie.hpp"
#include "qkr/rational.hpp"

namespace qkr {

// Residuals of the seven defining equations of g2(V), evaluated on the
// entries of a 7x7 matrix (1-based names a_ij in the comments of g2.cpp).
std::array<double, 7> g2_equation_residuals(const Mat7& A, MetricSignature sig);

bool is_g2_algebra_element(const SkewAdjointMatrix& X, double tol = 1e-9);

// 7 x 21 coefficient matrix of the equations in the coordinates a_ij, i < j,
// with the lower entries a_ji = -eta_i eta_j a_ij.
RMat g2_equation_matrix(MetricSignature sig);

// Exact rational basis of the solution space (14 elements).
std::vector<Mat7> g2_algebra_basis(MetricSignature sig);
std::vector<RMat> g2_algebra_basis_exact(MetricSignature sig);

// Same equations over Q.
std::array<Rational, 7> g2_equation_residuals(const RMat& A, MetricSignature sig);

struct G2GroupReport {
    bool member = false;
    double product_residual = 0.0;     // column product equations
    double orthogonality_residual = 0; // a4..a7 orthonormal with norms eps
    std::string detail;
};

// Columns a1..a7: a4a5 = eps a1, a4a6 = eps a2, a4a7 = eps a3, a4a5 + a6a7 = 0,
// and (a4,a5,a6,a7) orthogonal with V-norms eps.
G2GroupReport is_g2_group_element(const Mat7& A, AlgebraTag tag, double tol = 1e-9);

// Random element exp(X) with X a random combination of the g2 basis.
GroupElement random_g2_element(MetricSignature sig, std::mt19937_64& rng, double frobenius);
SkewAdjointMatrix random_g2_algebra(MetricSignature sig, std::mt19937_64& rng, double frobenius);

}  // namespace qkr
