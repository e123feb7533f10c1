#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "qkr/classify.hpp"

namespace qkr {

namespace {

RMat inverse(const RMat& M) {
    const int n = M.rows();
    std::vector<int> piv;
    const RMat R = hcat(M, RMat::identity(n)).rref(&piv);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] >= n) throw std::domain_error("singular rational matrix");
    RMat out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out(i, j) = R(i, n + j);
    return out;
}

RMat mpow(const RMat& M, int j) {
    RMat R = RMat::identity(M.rows());
    for (int i = 0; i < j; ++i) R = R * M;
    return R;
}

// Rational roots of a squarefree polynomial of degree <= 3; empty if any root
// is irrational or complex.
std::optional<std::vector<Rational>> rational_roots(const RPoly& p) {
    const int d = p.degree();
    std::vector<Rational> out;
    if (d <= 0) return out;
    const RPoly m = p.monic();
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -m.coeff(i).get_d();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    for (int i = 0; i < d; ++i) {
        const std::complex<double> r = es.eigenvalues()(i);
        if (std::abs(r.imag()) > 1e-6 * std::max(1.0, std::abs(r))) return std::nullopt;
        const auto q = rational_reconstruction(r.real(), 1000000, 1e-7);
        if (!q || sgn(p(*q)) != 0) return std::nullopt;
        if (std::find(out.begin(), out.end(), *q) != out.end()) return std::nullopt;
        out.push_back(*q);
    }
    return out;
}

Mat7 to_mat7(const RMat& R) {
    Mat7 m;
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) m(i, j) = R(i, j).get_d();
    return m;
}

}  // namespace

RMat eta_exact(MetricSignature sig) {
    RMat e = RMat::identity(7);
    for (int i = 3; i < 7; ++i) e(i, i) = sig.epsilon;
    return e;
}

RMat canonical_vector_field_exact(const SevenVector<mpq_class>& x) {
    const MetricSignature sig{x.tag.epsilon};
    RMat omega(7, 7);
    for (int b = 0; b < 7; ++b)
        for (int c = 0; c < 7; ++c)
            omega(b, c) = associative_form(x, SevenVector<mpq_class>::basis(x.tag, b + 1),
                                           SevenVector<mpq_class>::basis(x.tag, c + 1));
    return eta_exact(sig) * omega.transpose();
}

std::optional<ClassifyReport> classify_exact(const RMat& A, MetricSignature sig) {
    if (A.rows() != 7 || A.cols() != 7) throw std::domain_error("expected a 7x7 matrix");
    const RMat eta = eta_exact(sig);
    if (!(A.transpose() * eta + eta * A).is_zero())
        throw std::domain_error("matrix is not in so(" + sig.name() + ")");

    // chi(x) = x q(x^2) for a skew-adjoint operator in odd dimension.
    const RPoly chi = characteristic_polynomial(A);
    std::vector<Rational> qc;
    for (int k = 1; k <= chi.degree(); k += 2) qc.push_back(chi.coeff(k));
    const RPoly q(qc);
    RPoly qsf, rem;
    divmod(q, gcd(q, q.derivative()), qsf, rem);
    const auto u_roots = rational_roots(qsf);
    if (!u_roots) return std::nullopt;

    // Squarefree part of chi and Newton iteration for S.
    RPoly p;
    divmod(chi, gcd(chi, chi.derivative()), p, rem);
    RMat S = A;
    for (int it = 0; it < 10; ++it) {
        const RMat P = p.eval(S);
        if (P.is_zero()) break;
        S = S - P * inverse(p.derivative().eval(S));
    }
    if (!p.eval(S).is_zero()) return std::nullopt;
    const RMat N = A - S;

    ClassifyReport rep;
    rep.exact = true;
    int height = 0;
    std::vector<Rational> us = *u_roots;
    // odd dimension: 0 is always an eigenvalue, even when q(0) != 0
    if (std::find(us.begin(), us.end(), Rational(0)) == us.end()) us.push_back(Rational(0));
    std::sort(us.begin(), us.end());
    for (const Rational& u0 : us) {
        const RMat Y0 = (S * S - RMat::identity(7) * u0).nullspace();
        const int d = Y0.cols();
        std::vector<int> rk = {d};
        for (int j = 1; j <= d + 1; ++j) rk.push_back((mpow(N, j) * Y0).rank());
        for (int j = 0; j < d; ++j) {
            const int blocks = rk[j] - 2 * rk[j + 1] + rk[j + 2];
            if (blocks == 0) continue;
            height = std::max(height, j);
            const RMat Y = Y0 * (mpow(N, j + 1) * Y0).nullspace();
            const RMat Nj = mpow(N, j);
            const bool odd = j % 2 == 1;
            if (sgn(u0) == 0) {
                if (odd) {
                    for (int c = 0; c < blocks / 2; ++c) append_expanded(rep.types, make_real(j, 0.0));
                } else {
                    const Inertia in = inertia(Y.transpose() * eta * Nj * Y);
                    for (int c = 0; c < in.pos; ++c) rep.types.summands.push_back(make_zero(j, 1));
                    for (int c = 0; c < in.neg; ++c) rep.types.summands.push_back(make_zero(j, -1));
                }
            } else if (sgn(u0) > 0) {
                const ExactReal a = ExactReal::sqrt_of(u0);
                for (int c = 0; c < blocks / 2; ++c) rep.types.summands.push_back(make_real(j, a));
            } else {
                const ExactReal b = ExactReal::sqrt_of(-u0);
                const RMat G = odd ? Y.transpose() * eta * Nj * S * Y : Y.transpose() * eta * Nj * Y;
                const Inertia in = inertia(G);
                if (in.pos % 2 || in.neg % 2) throw std::logic_error("odd inertia on an imaginary pair");
                for (int c = 0; c < in.pos / 2; ++c) rep.types.summands.push_back(make_imag(j, 1, b));
                for (int c = 0; c < in.neg / 2; ++c) rep.types.summands.push_back(make_imag(j, -1, b));
            }
        }
    }
    rep.types.sort();
    const auto want = sig.epsilon > 0 ? std::pair<int, int>{7, 0} : std::pair<int, int>{3, 4};
    if (rep.types.dimension() != 7 || rep.types.signature() != want)
        throw std::logic_error("exact classification produced " + rep.types.str());
    rep.jc = {SkewAdjointMatrix(to_mat7(S), sig), SkewAdjointMatrix(to_mat7(N), sig), height};
    return rep;
}

}  // namespace qkr
