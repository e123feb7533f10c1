#include "qkr/moment.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <random>

#include "qkr/g2.hpp"

namespace qkr {

namespace {

Mat7 adjoint_inverse(const SkewAdjointMatrix& v, const GroupElement& g) { return Ad_inv(g, v).a; }

double scale_of(const Mat7& X) { return std::max(1.0, plus_norm(X)); }

Mat7 rot_so3(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat7 X = Mat7::Zero();
    for (const auto& b : so3_basis()) X += n(rng) * b;
    return X;
}

}  // namespace

MomentAction::MomentAction(const SkewAdjointMatrix& gen) : v(gen) {
    if (gen.a.cwiseAbs().maxCoeff() == 0.0) throw std::invalid_argument("torus generator v must be nonzero");
    if (gen.residual() > 1e-9 * std::max(1.0, gen.a.norm()))
        throw std::invalid_argument("torus generator is not in so(V, eta)");
}

std::string to_string(Regularity r) {
    switch (r) {
        case Regularity::regular: return "regular";
        case Regularity::irregular_3sasakian: return "irregular-3sasakian";
        case Regularity::irregular_twistor: return "irregular-twistor";
        case Regularity::irregular_quaternionic: return "irregular-quaternionic";
    }
    return "?";
}

std::string to_string(FlowStatus s) {
    switch (s) {
        case FlowStatus::converged: return "converged";
        case FlowStatus::critical_point: return "critical-point";
        case FlowStatus::max_steps: return "max-steps";
        case FlowStatus::stalled: return "stalled";
    }
    return "?";
}

DegenerateDenominator::DegenerateDenominator(double n)
    : std::domain_error("(Ad_g^-1 v)_m vanishes to tolerance: irregular point"), m_norm(n) {}

double plus_inner(const Mat7& A, const Mat7& B) { return 0.5 * (A.transpose() * B).trace(); }

double plus_norm(const Mat7& Y) { return std::sqrt(std::max(0.0, plus_inner(Y, Y))); }

Sp1Vector moment(const SkewAdjointMatrix& v, const GroupElement& g) {
    return project_s(adjoint_inverse(v, g), v.sig);
}

Sp1Vector moment_explicit(const Mat7& omega, const GroupElement& g) { return two_form_components(omega, g.g); }

Sp1Vector moment_differential(const SkewAdjointMatrix& v, const GroupElement& g, const Mat7& w) {
    return project_s(bracket(adjoint_inverse(v, g), w), v.sig);
}

Eigen::Matrix<double, 3, 21> moment_differential_matrix(const SkewAdjointMatrix& v, const GroupElement& g) {
    const Mat7 X = adjoint_inverse(v, g);
    Eigen::Matrix<double, 3, 21> D;
    const auto basis = algebra_basis(v.sig);
    for (int k = 0; k < 21; ++k) D.col(k) = project_s(bracket(X, basis[k]), v.sig);
    return D;
}

Eigen::Matrix<double, 3, 12> moment_differential_m(const SkewAdjointMatrix& v, const GroupElement& g) {
    const Mat7 X = adjoint_inverse(v, g);
    Eigen::Matrix<double, 3, 12> D;
    const auto basis = m_basis(v.sig);
    for (int k = 0; k < 12; ++k) D.col(k) = project_s(bracket(X, basis[k]), v.sig);
    return D;
}

int moment_differential_rank(const SkewAdjointMatrix& v, const GroupElement& g, double tol) {
    const Eigen::Matrix<double, 3, 21> D = moment_differential_matrix(v, g);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D);
    const double thresh = tol * scale_of(adjoint_inverse(v, g));
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > thresh) ++r;
    return r;
}

double m_component_norm(const SkewAdjointMatrix& v, const GroupElement& g) {
    return plus_norm(m_part(adjoint_inverse(v, g)));
}

Regularity classify_regularity(const SkewAdjointMatrix& v, const GroupElement& g, double tol) {
    const Mat7 X = adjoint_inverse(v, g);
    const double t = tol * scale_of(X);
    if (plus_norm(m_part(X)) > t) return Regularity::regular;
    const Sp1Vector s = project_s(X, v.sig);
    // u = span of the first s basis element
    if (s.norm() <= t) return Regularity::irregular_3sasakian;
    if (s.tail<2>().norm() <= t) return Regularity::irregular_twistor;
    return Regularity::irregular_quaternionic;
}

Sp1Vector second_fundamental_form(const SkewAdjointMatrix& v, const GroupElement& g, const Mat7& w1,
                                  const Mat7& w2, double tol) {
    const Mat7 X = adjoint_inverse(v, g);
    const double mn = plus_norm(m_part(X));
    if (mn <= tol * scale_of(X)) throw DegenerateDenominator(mn);
    return (kLambda / mn) * project_s(bracket(bracket(w1, X), w2), v.sig);
}

double sectional_curvature(const SkewAdjointMatrix& v, const GroupElement& g, const Mat7& w1, const Mat7& w2,
                           double tol) {
    const Sp1Vector a11 = second_fundamental_form(v, g, w1, w1, tol);
    const Sp1Vector a22 = second_fundamental_form(v, g, w2, w2, tol);
    const Sp1Vector a12 = second_fundamental_form(v, g, w1, w2, tol);
    const auto& s = *moment_convention(v.sig).s;
    const Mat7 c = bracket(w1, w2);
    return killing(c, c) + killing(s.matrix(a11), s.matrix(a22)) - killing(s.matrix(a12), s.matrix(a12));
}

std::vector<Mat7> zero_locus_tangent_basis(const SkewAdjointMatrix& v, const GroupElement& g, double tol) {
    const Eigen::Matrix<double, 3, 12> D = moment_differential_m(v, g);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(D, Eigen::ComputeFullV);
    const double thresh = tol * scale_of(adjoint_inverse(v, g));
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()[i] > thresh) ++r;
    const auto basis = m_basis(v.sig);
    std::vector<Mat7> out;
    for (int k = r; k < 12; ++k) {
        Mat7 w = Mat7::Zero();
        for (int j = 0; j < 12; ++j) w += svd.matrixV()(j, k) * basis[j];
        out.push_back(w);
    }
    return out;
}

Sp1Vector quaternionic_two_form(const Mat7& v, const Mat7& w, MetricSignature sig) {
    return -kLambda * project_s(bracket(v, w), sig);
}

double energy(const SkewAdjointMatrix& v, const GroupElement& g) {
    const Mat7 Xs = s_part(adjoint_inverse(v, g), v.sig);
    return killing(Xs, Xs);
}

Mat7 energy_gradient(const SkewAdjointMatrix& v, const GroupElement& g) {
    const Mat7 X = adjoint_inverse(v, g);
    return 2.0 * v.sig.epsilon * bracket(s_part(X, v.sig), m_part(X));
}

FlowResult flow(const SkewAdjointMatrix& v, const GroupElement& g0, const FlowOptions& opt) {
    if (!(opt.step > 0)) throw std::invalid_argument("flow step must be positive");
    FlowResult res;
    GroupElement g = g0;
    double E = energy(v, g);
    double t = 0.0;
    double h = opt.step;
    const double h_max = 10.0 * opt.step;
    res.trajectory.push_back({g, t, E});
    for (;;) {
        if (E <= opt.tol) {
            res.status = FlowStatus::converged;
            break;
        }
        const Mat7 G = energy_gradient(v, g);
        res.gradient_norm = plus_norm(G);
        if (res.gradient_norm <= opt.tol) {
            res.status = FlowStatus::critical_point;
            break;
        }
        if (res.steps >= opt.max_steps) {
            res.status = FlowStatus::max_steps;
            break;
        }
        bool accepted = false;
        while (h >= 1e-14 * opt.step) {
            GroupElement trial = g * exp(SkewAdjointMatrix(G, v.sig), -h);
            const double Et = energy(v, trial);
            if (Et <= E) {
                g = trial;
                t += h;
                E = Et;
                accepted = true;
                h = std::min(1.25 * h, h_max);
                break;
            }
            h *= 0.5;
        }
        if (!accepted) {
            res.status = FlowStatus::stalled;
            break;
        }
        ++res.steps;
        if (opt.record_all) res.trajectory.push_back({g, t, E});
    }
    if (!opt.record_all && res.trajectory.back().t != t) res.trajectory.push_back({g, t, E});
    for (size_t i = 1; i < res.trajectory.size(); ++i)
        if (res.trajectory[i].energy > res.trajectory[i - 1].energy) res.monotone = false;
    res.final_regularity = classify_regularity(v, g);
    return res;
}

std::vector<ZeroLocusPoint> sample_zero_locus_canonical(const SevenVector<double>& x, int n, std::uint64_t seed,
                                                        double tol) {
    if (n <= 0) throw std::invalid_argument("sample count must be positive");
    const double nx = norm(x);
    const double target = std::abs(nx) < 1e-9 ? 0.0 : (nx > 0 ? 1.0 : -1.0);
    if (std::abs(nx - target) > 1e-9)
        throw std::invalid_argument("x must be normalized to |x| in {1, -1, 0}");
    if (x.tag.epsilon > 0 && target != 1.0) throw std::invalid_argument("compact case needs |x| = 1");
    const MetricSignature sig{x.tag.epsilon};
    const SkewAdjointMatrix Ax = canonical_vector_field(x);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    std::uniform_real_distribution<double> size(0.1, 2.0);
    std::vector<ZeroLocusPoint> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) {
        const GroupElement T = exp(Ax, ang(rng));
        const GroupElement gamma = random_g2_element(sig, rng, size(rng));
        const GroupElement r = exp(SkewAdjointMatrix(rot_so3(rng), sig));
        ZeroLocusPoint p;
        p.g = T * gamma * r;
        p.v = Ax;
        p.residual = moment(Ax, p.g).norm();
        p.regularity = classify_regularity(Ax, p.g, tol);
        out.push_back(p);
    }
    return out;
}

bool extra_symmetry_check(const SkewAdjointMatrix& v, const GroupElement& g, const GroupElement& h, double tol) {
    const bool a = moment(v, h).norm() <= tol;
    const bool b = moment(Ad(g, v), g * h).norm() <= tol * std::max(1.0, g.g.norm() * g.g.norm());
    return a == b;
}

}  // namespace qkr
