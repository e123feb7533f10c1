#pragma once

// Moment map of a one-dimensional torus acting on G/H, with
// mu_v(g) = (Ad_g^-1 v)_s, and the objects built from it.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qkr/lie.hpp"

namespace qkr {

constexpr double kZeroLocusTol = 1e-9;

// Scale of the second fundamental form and quaternionic two-form.
constexpr double kLambda = 1.0;

struct MomentAction {
    SkewAdjointMatrix v;

    explicit MomentAction(const SkewAdjointMatrix& gen);
};

enum class Regularity { regular, irregular_3sasakian, irregular_twistor, irregular_quaternionic };
std::string to_string(Regularity r);

struct ZeroLocusPoint {
    GroupElement g;
    SkewAdjointMatrix v;
    Regularity regularity = Regularity::regular;
    double residual = 0.0;  // |mu_v(g)|
};

struct FlowState {
    GroupElement g;
    double t = 0.0;
    double energy = 0.0;
};

// stalled: no step size down to 1e-14 * step decreases E.
enum class FlowStatus { converged, critical_point, max_steps, stalled };
std::string to_string(FlowStatus s);

struct FlowResult {
    std::vector<FlowState> trajectory;
    FlowStatus status = FlowStatus::max_steps;
    int steps = 0;
    double gradient_norm = 0.0;
    Regularity final_regularity = Regularity::regular;
    bool monotone = true;
};

// Thrown where 1/|(Ad_g^-1 v)_m| would be evaluated at an irregular point.
struct DegenerateDenominator : std::domain_error {
    double m_norm;
    explicit DegenerateDenominator(double n);
};

// Positive definite norm 1/2 tr(Y^T Y)^(1/2); agrees with -1/2 tr(Y^2) on so(7).
double plus_norm(const Mat7& Y);
double plus_inner(const Mat7& A, const Mat7& B);

Sp1Vector moment(const SkewAdjointMatrix& v, const GroupElement& g);
Sp1Vector moment_explicit(const Mat7& omega, const GroupElement& g);
Sp1Vector moment_differential(const SkewAdjointMatrix& v, const GroupElement& g, const Mat7& w);

// d_g mu_v on the 21-element basis of so(V, eta), or restricted to m.
Eigen::Matrix<double, 3, 21> moment_differential_matrix(const SkewAdjointMatrix& v, const GroupElement& g);
Eigen::Matrix<double, 3, 12> moment_differential_m(const SkewAdjointMatrix& v, const GroupElement& g);
int moment_differential_rank(const SkewAdjointMatrix& v, const GroupElement& g, double tol = kZeroLocusTol);

// Norm of (Ad_g^-1 v)_m.
double m_component_norm(const SkewAdjointMatrix& v, const GroupElement& g);

Regularity classify_regularity(const SkewAdjointMatrix& v, const GroupElement& g, double tol = kZeroLocusTol);

Sp1Vector second_fundamental_form(const SkewAdjointMatrix& v, const GroupElement& g, const Mat7& w1,
                                  const Mat7& w2, double tol = kZeroLocusTol);
double sectional_curvature(const SkewAdjointMatrix& v, const GroupElement& g, const Mat7& w1, const Mat7& w2,
                           double tol = kZeroLocusTol);

// Orthonormal (for plus_inner) directions in m annihilated by d_g mu_v.
std::vector<Mat7> zero_locus_tangent_basis(const SkewAdjointMatrix& v, const GroupElement& g,
                                           double tol = kZeroLocusTol);

// Theta(v,w) = -lambda [v,w]_s
Sp1Vector quaternionic_two_form(const Mat7& v, const Mat7& w, MetricSignature sig);

// E(g) = -1/2 tr(X_s^2), X = Ad_g^-1 v
double energy(const SkewAdjointMatrix& v, const GroupElement& g);
// Gradient for plus_inner as a left-invariant direction: 2 eps [X_s, X_m].
Mat7 energy_gradient(const SkewAdjointMatrix& v, const GroupElement& g);

struct FlowOptions {
    double step = 0.1;
    int max_steps = 10000;
    double tol = 1e-8;
    bool record_all = true;
};
FlowResult flow(const SkewAdjointMatrix& v, const GroupElement& g0, const FlowOptions& opt);

// Points exp(s A_x) gamma r with gamma in G2(V) and r in SO(3).
std::vector<ZeroLocusPoint> sample_zero_locus_canonical(const SevenVector<double>& x, int n, std::uint64_t seed,
                                                        double tol = kZeroLocusTol);

// h in Z(v) iff g h in Z(Ad_g v); true when both memberships agree.
bool extra_symmetry_check(const SkewAdjointMatrix& v, const GroupElement& g, const GroupElement& h,
                          double tol = kZeroLocusTol);

}  // namespace qkr
