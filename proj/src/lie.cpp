#include "qkr/lie.hpp"

#include <cmath>
#include <stdexcept>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

namespace qkr {

namespace {

void require_same(MetricSignature a, MetricSignature b) {
    if (!(a == b)) throw std::domain_error("signature mismatch");
}

// E_ij - E_ji on the so(4) block, block indices 1..4.
Mat7 block_rot(int i, int j) {
    Mat7 m = Mat7::Zero();
    m(2 + i, 2 + j) = 1.0;
    m(2 + j, 2 + i) = -1.0;
    return m;
}

Sp1Factor make_factor(int s, const char* name) {
    Sp1Factor f;
    f.J[0] = block_rot(1, 2) + s * block_rot(3, 4);
    f.J[1] = block_rot(1, 3) - s * block_rot(2, 4);
    f.J[2] = block_rot(1, 4) + s * block_rot(2, 3);
    f.name = name;
    return f;
}

MomentConvention pin_convention(MetricSignature sig) {
    std::mt19937_64 rng(0x5eed5eedULL + (sig.epsilon > 0 ? 0 : 1));
    const Sp1Factor* candidates[2] = {&sp1_factor_plus(), &sp1_factor_minus()};
    int fits = 0;
    MomentConvention out{nullptr, nullptr, 0.0};
    for (int c = 0; c < 2; ++c) {
        std::mt19937_64 local = rng;
        double num = 0.0, den = 0.0;
        std::vector<std::pair<Sp1Vector, Sp1Vector>> probes;
        for (int k = 0; k < 8; ++k) {
            const SkewAdjointMatrix A = random_algebra(sig, local, 2.0);
            const GroupElement g = random_group(sig, local, 1.0);
            const Mat7 omega = matrix_to_two_form(A);
            const Sp1Vector p = candidates[c]->coords(Ad_inv(g, A).a);
            const Sp1Vector q = two_form_components(omega, g.g);
            num += p.dot(q);
            den += p.dot(p);
            probes.emplace_back(p, q);
        }
        if (den == 0.0) continue;
        double kappa = num / den;
        if (std::abs(kappa - std::round(kappa)) < 1e-9) kappa = std::round(kappa);
        bool ok = kappa != 0.0;
        for (const auto& [p, q] : probes)
            ok = ok && (q - kappa * p).norm() <= 1e-9 * std::max(1.0, q.norm());
        if (ok) {
            ++fits;
            out = {candidates[c], candidates[1 - c], kappa};
        }
    }
    if (fits != 1) throw std::logic_error("moment convention self-test failed to single out one sp(1) factor");
    return out;
}

}  // namespace

MetricSignature MetricSignature::parse(const std::string& s) {
    if (s == "7,0") return compact();
    if (s == "3,4") return split();
    throw std::invalid_argument("unknown signature '" + s + "' (expected 7,0 or 3,4)");
}

Vec7 MetricSignature::diagonal() const {
    Vec7 d;
    d << 1, 1, 1, epsilon, epsilon, epsilon, epsilon;
    return d;
}

double SkewAdjointMatrix::residual() const {
    const Mat7 eta = sig.eta();
    return (a.transpose() * eta + eta * a).cwiseAbs().maxCoeff();
}

GroupElement GroupElement::inverse() const {
    const Mat7 eta = sig.eta();
    return {eta * g.transpose() * eta, sig};
}

double GroupElement::residual() const {
    const Mat7 eta = sig.eta();
    return (g.transpose() * eta * g - eta).cwiseAbs().maxCoeff();
}

bool GroupElement::in_identity_component() const {
    return g.topLeftCorner<3, 3>().determinant() > 0.0 && g.determinant() > 0.0;
}

GroupElement operator*(const GroupElement& x, const GroupElement& y) {
    require_same(x.sig, y.sig);
    return {x.g * y.g, x.sig};
}

Mat7 bracket(const Mat7& A, const Mat7& B) { return A * B - B * A; }

SkewAdjointMatrix bracket(const SkewAdjointMatrix& A, const SkewAdjointMatrix& B) {
    require_same(A.sig, B.sig);
    return {bracket(A.a, B.a), A.sig};
}

SkewAdjointMatrix ad(const SkewAdjointMatrix& A, const SkewAdjointMatrix& B) { return bracket(A, B); }

SkewAdjointMatrix Ad(const GroupElement& g, const SkewAdjointMatrix& A) {
    require_same(g.sig, A.sig);
    return {g.g * A.a * g.inverse().g, A.sig};
}

SkewAdjointMatrix Ad_inv(const GroupElement& g, const SkewAdjointMatrix& A) {
    require_same(g.sig, A.sig);
    return {g.inverse().g * A.a * g.g, A.sig};
}

GroupElement exp(const SkewAdjointMatrix& A, double t) {
    const Mat7 tA = t * A.a;
    return {tA.exp(), A.sig};
}

double killing(const Mat7& A, const Mat7& B) { return -0.5 * (A * B).trace(); }

double killing(const SkewAdjointMatrix& A, const SkewAdjointMatrix& B) {
    require_same(A.sig, B.sig);
    return killing(A.a, B.a);
}

Mat7 project_algebra(const Mat7& M, MetricSignature sig) {
    const Mat7 eta = sig.eta();
    return 0.5 * (M - eta * M.transpose() * eta);
}

Sp1Vector Sp1Factor::coords(const Mat7& M) const {
    Sp1Vector c;
    for (int a = 0; a < 3; ++a) c[a] = -0.25 * (J[a] * M).trace();
    return c;
}

Mat7 Sp1Factor::matrix(const Sp1Vector& c) const { return c[0] * J[0] + c[1] * J[1] + c[2] * J[2]; }

const Sp1Factor& sp1_factor_plus() {
    static const Sp1Factor f = make_factor(+1, "plus");
    return f;
}

const Sp1Factor& sp1_factor_minus() {
    static const Sp1Factor f = make_factor(-1, "minus");
    return f;
}

const MomentConvention& moment_convention(MetricSignature sig) {
    static const MomentConvention compact = pin_convention(MetricSignature::compact());
    static const MomentConvention split = pin_convention(MetricSignature::split());
    return sig.epsilon > 0 ? compact : split;
}

Sp1Vector two_form_components(const Mat7& omega, const Mat7& g) {
    const auto f = g.rightCols<4>();
    auto w = [&](int i, int j) { return f.col(i).dot(omega * f.col(j)); };
    return {w(0, 1) + w(2, 3), w(0, 2) - w(1, 3), w(0, 3) + w(1, 2)};
}

Sp1Vector project_s(const Mat7& A, MetricSignature sig) { return moment_convention(sig).s->coords(A); }

Mat7 s_part(const Mat7& A, MetricSignature sig) {
    const auto& s = *moment_convention(sig).s;
    return s.matrix(s.coords(A));
}

Mat7 m_part(const Mat7& A) {
    Mat7 m = Mat7::Zero();
    m.topRightCorner<3, 4>() = A.topRightCorner<3, 4>();
    m.bottomLeftCorner<4, 3>() = A.bottomLeftCorner<4, 3>();
    return m;
}

Mat7 h_part(const Mat7& A) { return A - m_part(A); }

Mat7 h_prime_part(const Mat7& A, MetricSignature sig) { return h_part(A) - s_part(A, sig); }

SplitParts split(const SkewAdjointMatrix& A) {
    SplitParts p;
    p.sig = A.sig;
    const auto& s = *moment_convention(A.sig).s;
    p.s = s.coords(A.a);
    p.s_matrix = s.matrix(p.s);
    p.m = m_part(A.a);
    p.m_block = A.a.topRightCorner<3, 4>();
    p.h_prime = h_part(A.a) - p.s_matrix;
    return p;
}

Mat7 matrix_to_two_form(const SkewAdjointMatrix& A) { return A.a.transpose() * A.sig.eta(); }

SkewAdjointMatrix two_form_to_matrix(const Mat7& omega, MetricSignature sig) {
    return {sig.eta() * omega.transpose(), sig};
}

SkewAdjointMatrix canonical_vector_field(const SevenVector<double>& x) {
    const MetricSignature sig{x.tag.epsilon};
    Mat7 omega;
    for (int b = 0; b < 7; ++b)
        for (int c = 0; c < 7; ++c)
            omega(b, c) = associative_form(x, SevenVector<double>::basis(x.tag, b + 1),
                                           SevenVector<double>::basis(x.tag, c + 1));
    return two_form_to_matrix(omega, sig);
}

SkewAdjointMatrix so7_block_form(double a, double b, double c) {
    Mat7 m = Mat7::Zero();
    m(1, 2) = a;
    m(2, 1) = -a;
    m(3, 4) = b;
    m(4, 3) = -b;
    m(5, 6) = c;
    m(6, 5) = -c;
    return {m, MetricSignature::compact()};
}

std::array<Mat7, 21> algebra_basis(MetricSignature sig) {
    std::array<Mat7, 21> out;
    const Vec7 d = sig.diagonal();
    int k = 0;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) {
            Mat7 m = Mat7::Zero();
            m(i, j) = 1.0;
            m(j, i) = -d[i] * d[j];
            out[k++] = m;
        }
    return out;
}

std::array<Mat7, 3> so3_basis() {
    std::array<Mat7, 3> out;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (int k = 0; k < 3; ++k) {
        out[k] = Mat7::Zero();
        out[k](pairs[k][0], pairs[k][1]) = 1.0;
        out[k](pairs[k][1], pairs[k][0]) = -1.0;
    }
    return out;
}

std::array<Mat7, 12> m_basis(MetricSignature sig) {
    std::array<Mat7, 12> out;
    int k = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 3; j < 7; ++j) {
            Mat7 m = Mat7::Zero();
            m(i, j) = 1.0;
            m(j, i) = -sig.epsilon;
            out[k++] = m;
        }
    return out;
}

Mat7 random_algebra_matrix(MetricSignature sig, std::mt19937_64& rng, double frobenius) {
    std::normal_distribution<double> n(0.0, 1.0);
    Mat7 m = Mat7::Zero();
    for (const auto& b : algebra_basis(sig)) m += n(rng) * b;
    const double f = m.norm();
    return f > 0 ? Mat7(m * (frobenius / f)) : m;
}

SkewAdjointMatrix random_algebra(MetricSignature sig, std::mt19937_64& rng, double frobenius) {
    return {random_algebra_matrix(sig, rng, frobenius), sig};
}

GroupElement random_group(MetricSignature sig, std::mt19937_64& rng, double frobenius) {
    return exp(random_algebra(sig, rng, frobenius));
}

}  // namespace qkr
