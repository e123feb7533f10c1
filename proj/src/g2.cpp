#include "qkr/g2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qkr {

namespace {

// a(i,j) with 1-based indices. The four epsilon-weighted terms take the entry
// below the diagonal; with a_ji = -eps a_ij for i <= 3 < j this is the form
// that is bracket-closed for both signs of eps.
template <class T, class Get>
std::array<T, 7> residuals(Get a, int eps) {
    const T e(eps);
    return {T(a(1, 2) + a(4, 7) - a(5, 6)),
            T(a(1, 3) - a(4, 6) - a(5, 7)),
            T(a(1, 4) - a(2, 7) - e * a(6, 3)),
            T(a(1, 5) + a(2, 6) - e * a(7, 3)),
            T(a(1, 6) - a(2, 5) + e * a(4, 3)),
            T(a(1, 7) + a(2, 4) + e * a(5, 3)),
            T(a(2, 3) + a(4, 5) - a(6, 7))};
}

RMat algebra_basis_exact(MetricSignature sig, int i, int j) {
    RMat m(7, 7);
    const int di = i < 3 ? 1 : sig.epsilon, dj = j < 3 ? 1 : sig.epsilon;
    m(i, j) = 1;
    m(j, i) = -di * dj;
    return m;
}

}  // namespace

std::array<double, 7> g2_equation_residuals(const Mat7& A, MetricSignature sig) {
    return residuals<double>([&](int i, int j) { return A(i - 1, j - 1); }, sig.epsilon);
}

std::array<Rational, 7> g2_equation_residuals(const RMat& A, MetricSignature sig) {
    return residuals<Rational>([&](int i, int j) { return A(i - 1, j - 1); }, sig.epsilon);
}

bool is_g2_algebra_element(const SkewAdjointMatrix& X, double tol) {
    if (X.residual() > tol) return false;
    const auto r = g2_equation_residuals(X.a, X.sig);
    const double scale = std::max(1.0, X.a.cwiseAbs().maxCoeff());
    return std::all_of(r.begin(), r.end(), [&](double v) { return std::abs(v) <= tol * scale; });
}

RMat g2_equation_matrix(MetricSignature sig) {
    RMat M(7, 21);
    int col = 0;
    for (int i = 0; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j, ++col) {
            const auto r = g2_equation_residuals(algebra_basis_exact(sig, i, j), sig);
            for (int k = 0; k < 7; ++k) M(k, col) = r[k];
        }
    return M;
}

std::vector<RMat> g2_algebra_basis_exact(MetricSignature sig) {
    const RMat N = g2_equation_matrix(sig).nullspace();
    std::vector<RMat> out;
    for (int f = 0; f < N.cols(); ++f) {
        RMat X(7, 7);
        int col = 0;
        for (int i = 0; i < 7; ++i)
            for (int j = i + 1; j < 7; ++j, ++col)
                if (sgn(N(col, f)) != 0) X = X + algebra_basis_exact(sig, i, j) * N(col, f);
        out.push_back(X);
    }
    return out;
}

std::vector<Mat7> g2_algebra_basis(MetricSignature sig) {
    std::vector<Mat7> out;
    for (const auto& X : g2_algebra_basis_exact(sig)) {
        Mat7 m;
        for (int i = 0; i < 7; ++i)
            for (int j = 0; j < 7; ++j) m(i, j) = X(i, j).get_d();
        out.push_back(m);
    }
    return out;
}

G2GroupReport is_g2_group_element(const Mat7& A, AlgebraTag tag, double tol) {
    G2GroupReport rep;
    const double eps = tag.epsilon;
    auto column = [&](int k) {  // 1-based
        SevenVector<double> v;
        v.tag = tag;
        for (int i = 0; i < 7; ++i) v.c[i] = A(i, k - 1);
        return v;
    };
    auto dist = [](const AlgebraElement<double>& x, const AlgebraElement<double>& y) {
        double m = 0;
        for (int i = 0; i < 8; ++i) m = std::max(m, std::abs(x.c[i] - y.c[i]));
        return m;
    };
    const auto a1 = column(1), a2 = column(2), a3 = column(3);
    const auto a4 = column(4), a5 = column(5), a6 = column(6), a7 = column(7);
    const auto p45 = vmul(a4, a5), p46 = vmul(a4, a6), p47 = vmul(a4, a7), p67 = vmul(a6, a7);
    auto zero = AlgebraElement<double>::one(tag);
    zero.c[0] = 0.0;
    const double r1 = dist(p45, eps * a1.embed());
    const double r2 = dist(p46, eps * a2.embed());
    const double r3 = dist(p47, eps * a3.embed());
    const double r4 = dist(p45 + p67, zero);
    rep.product_residual = std::max({r1, r2, r3, r4});

    const SevenVector<double> f[4] = {a4, a5, a6, a7};
    double orth = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) {
            const double target = i == j ? eps : 0.0;
            orth = std::max(orth, std::abs(inner(f[i], f[j]) - target));
        }
    rep.orthogonality_residual = orth;
    const double scale = std::max(1.0, A.cwiseAbs().maxCoeff());
    rep.member = rep.product_residual <= tol * scale * scale && orth <= tol * scale * scale;
    std::ostringstream os;
    os << "a4a5-eps*a1=" << r1 << " a4a6-eps*a2=" << r2 << " a4a7-eps*a3=" << r3
       << " a4a5+a6a7=" << r4 << " orthonormality=" << orth;
    rep.detail = os.str();
    return rep;
}

SkewAdjointMatrix random_g2_algebra(MetricSignature sig, std::mt19937_64& rng, double frobenius) {
    static const std::vector<Mat7> compact = g2_algebra_basis(MetricSignature::compact());
    static const std::vector<Mat7> split = g2_algebra_basis(MetricSignature::split());
    const auto& basis = sig.epsilon > 0 ? compact : split;
    std::normal_distribution<double> n(0.0, 1.0);
    Mat7 X = Mat7::Zero();
    for (const auto& b : basis) X += n(rng) * b;
    const double f = X.norm();
    if (f > 0) X *= frobenius / f;
    return {X, sig};
}

GroupElement random_g2_element(MetricSignature sig, std::mt19937_64& rng, double frobenius) {
    return exp(random_g2_algebra(sig, rng, frobenius));
}

}  // namespace qkr
