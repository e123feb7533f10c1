#pragma once

// so(V, eta) and its groups SO(7), SO_0(3,4) as 7x7 real matrices.
//
// Block layout used throughout: indices 0..2 carry the so(3) factor,
// indices 3..6 the so(4) factor. The off-diagonal 3x4 blocks form m.

#include <Eigen/Dense>
#include <array>
#include <random>
#include <string>

#include "qkr/octonion.hpp"

namespace qkr {

using Mat7 = Eigen::Matrix<double, 7, 7>;
using Vec7 = Eigen::Matrix<double, 7, 1>;
using Sp1Vector = Eigen::Vector3d;
using Block34 = Eigen::Matrix<double, 3, 4>;

struct MetricSignature {
    int epsilon = 1;  // +1 for (7,0), -1 for (3,4)

    static MetricSignature compact() { return {1}; }
    static MetricSignature split() { return {-1}; }
    static MetricSignature parse(const std::string& s);  // "7,0" or "3,4"

    std::string name() const { return epsilon > 0 ? "7,0" : "3,4"; }
    Vec7 diagonal() const;
    Mat7 eta() const { return diagonal().asDiagonal(); }
    AlgebraTag tag() const { return AlgebraTag{epsilon}; }
    bool operator==(const MetricSignature&) const = default;
};

struct SkewAdjointMatrix {
    Mat7 a = Mat7::Zero();
    MetricSignature sig;

    SkewAdjointMatrix() = default;
    SkewAdjointMatrix(const Mat7& m, MetricSignature s) : a(m), sig(s) {}

    // max |A^T eta + eta A|
    double residual() const;
};

struct GroupElement {
    Mat7 g = Mat7::Identity();
    MetricSignature sig;

    GroupElement() = default;
    GroupElement(const Mat7& m, MetricSignature s) : g(m), sig(s) {}
    static GroupElement identity(MetricSignature s) { return {Mat7::Identity(), s}; }

    GroupElement inverse() const;  // eta g^T eta
    // max |g^T eta g - eta|
    double residual() const;
    // det of the upper-left 3x3 block is positive on the identity component
    bool in_identity_component() const;
};

GroupElement operator*(const GroupElement& x, const GroupElement& y);

SkewAdjointMatrix bracket(const SkewAdjointMatrix& A, const SkewAdjointMatrix& B);
Mat7 bracket(const Mat7& A, const Mat7& B);
// ad(A)(B)
SkewAdjointMatrix ad(const SkewAdjointMatrix& A, const SkewAdjointMatrix& B);
// Ad(g)(A) = g A g^-1
SkewAdjointMatrix Ad(const GroupElement& g, const SkewAdjointMatrix& A);
SkewAdjointMatrix Ad_inv(const GroupElement& g, const SkewAdjointMatrix& A);
GroupElement exp(const SkewAdjointMatrix& A, double t = 1.0);

// <A,B> = -1/2 tr(AB)
double killing(const SkewAdjointMatrix& A, const SkewAdjointMatrix& B);
double killing(const Mat7& A, const Mat7& B);

// Projection onto so(V, eta): (A - eta A^T eta) / 2
Mat7 project_algebra(const Mat7& M, MetricSignature sig);

// One sp(1) factor of so(4), given by three basis matrices J_a with
// tr(J_a J_b) = -4 delta_ab.
struct Sp1Factor {
    std::array<Mat7, 3> J;
    const char* name;

    Sp1Vector coords(const Mat7& M) const;  // c_a = -tr(J_a M)/4
    Mat7 matrix(const Sp1Vector& c) const;
};

// Candidates on the so(4) block spanned by e4..e7 (block indices 1..4):
// plus:  E12+E34, E13-E24, E14+E23
// minus: E12-E34, E13+E24, E14-E23
// where Eij = e_i e_j^T - e_j e_i^T.
const Sp1Factor& sp1_factor_plus();
const Sp1Factor& sp1_factor_minus();

// Convention fixed by the start-up self-test: which candidate is s and the
// scale kappa with moment_explicit = kappa * moment.
struct MomentConvention {
    const Sp1Factor* s;
    const Sp1Factor* complement;
    double kappa;
};
const MomentConvention& moment_convention(MetricSignature sig);

// (w(f1,f2)+w(f3,f4), w(f1,f3)-w(f2,f4), w(f1,f4)+w(f2,f3)), f_i = last four columns of g.
Sp1Vector two_form_components(const Mat7& omega, const Mat7& g);

struct SplitParts {
    Mat7 h_prime = Mat7::Zero();
    Sp1Vector s = Sp1Vector::Zero();
    Mat7 s_matrix = Mat7::Zero();
    Block34 m_block = Block34::Zero();  // upper-right 3x4 block
    Mat7 m = Mat7::Zero();              // full off-diagonal part
    MetricSignature sig;

    Mat7 reassemble() const { return h_prime + s_matrix + m; }
};

SplitParts split(const SkewAdjointMatrix& A);
Sp1Vector project_s(const Mat7& A, MetricSignature sig);
Mat7 s_part(const Mat7& A, MetricSignature sig);
Mat7 m_part(const Mat7& A);
Mat7 h_part(const Mat7& A);
Mat7 h_prime_part(const Mat7& A, MetricSignature sig);

// F(A)(x,y) = <Ax, y>_V and its inverse.
Mat7 matrix_to_two_form(const SkewAdjointMatrix& A);
SkewAdjointMatrix two_form_to_matrix(const Mat7& omega, MetricSignature sig);

// A_x = F^-1(i_x phi)
SkewAdjointMatrix canonical_vector_field(const SevenVector<double>& x);

// Rotations with rates a, b, c in the planes (e2,e3), (e4,e5), (e6,e7).
SkewAdjointMatrix so7_block_form(double a, double b, double c);

Mat7 random_algebra_matrix(MetricSignature sig, std::mt19937_64& rng, double frobenius);
SkewAdjointMatrix random_algebra(MetricSignature sig, std::mt19937_64& rng, double frobenius);
GroupElement random_group(MetricSignature sig, std::mt19937_64& rng, double frobenius);

// Basis of so(V, eta): E_ij - eta_i eta_j E_ji for i < j, 21 elements.
std::array<Mat7, 21> algebra_basis(MetricSignature sig);
std::array<Mat7, 3> so3_basis();
std::array<Mat7, 12> m_basis(MetricSignature sig);

}  // namespace qkr
