#include "qkr/canonical.hpp"

#include <cmath>
#include <stdexcept>

namespace qkr {

namespace {

using Eigen::MatrixXd;

// Reduced data on W: the form tau~ and the semisimple part S_W (columns are images).
void reduced_data(const IndecomposableType& t, MatrixXd& G, MatrixXd& S) {
    const bool odd = t.height % 2 == 1;
    const double a = t.zeta.real(), b = t.zeta.imag();
    switch (t.kind) {
        case Kind::zero:
            G = MatrixXd::Constant(1, 1, t.sign);
            S = MatrixXd::Zero(1, 1);
            return;
        case Kind::real:
            if (odd)
                G = (MatrixXd(2, 2) << 0, -1, 1, 0).finished();
            else
                G = (MatrixXd(2, 2) << 1, 0, 0, -1).finished();
            S = (MatrixXd(2, 2) << 0, a, a, 0).finished();
            return;
        case Kind::imag:
            if (odd)
                G = (MatrixXd(2, 2) << 0, 1, -1, 0).finished() * t.sign;
            else
                G = MatrixXd::Identity(2, 2) * t.sign;
            S = (MatrixXd(2, 2) << 0, -b, b, 0).finished();
            return;
        case Kind::quad:
            if (odd) {
                G = MatrixXd::Zero(4, 4);
                G(0, 1) = G(2, 3) = -1;
                G(1, 0) = G(3, 2) = 1;
                // a +- ib on span(w1, w3), -a +- ib on span(w2, w4)
                S = (MatrixXd(4, 4) << a, 0, -b, 0,  //
                     0, -a, 0, -b,                   //
                     b, 0, a, 0,                     //
                     0, b, 0, -a)
                        .finished();
            } else {
                G = Eigen::Vector4d(1, 1, -1, -1).asDiagonal();
                // Sw1 = a w3 + b w2, Sw2 = a w4 - b w1, Sw3 = a w1 + b w4, Sw4 = a w2 - b w3
                S = (MatrixXd(4, 4) << 0, -b, a, 0,  //
                     b, 0, 0, a,                     //
                     a, 0, 0, -b,                    //
                     0, a, b, 0)
                        .finished();
            }
            return;
    }
}

// Operator and Gram matrix of one summand on the layers N^0 W, ..., N^k W.
void summand(const IndecomposableType& t, MatrixXd& A, MatrixXd& G) {
    MatrixXd Gw, Sw;
    reduced_data(t, Gw, Sw);
    const int w = static_cast<int>(Gw.rows()), k = t.height, n = w * (k + 1);
    A = MatrixXd::Zero(n, n);
    G = MatrixXd::Zero(n, n);
    for (int a = 0; a <= k; ++a) {
        A.block(a * w, a * w, w, w) = Sw;
        if (a < k) A.block((a + 1) * w, a * w, w, w) = MatrixXd::Identity(w, w);
        const int b = k - a;
        G.block(a * w, b * w, w, w) = (a % 2 ? -1.0 : 1.0) * Gw;
    }
}

}  // namespace

CanonicalForm canonical_form(const TypeSum& ts0) {
    TypeSum ts = ts0;
    ts.sort();
    for (const auto& t : ts.summands) validate(t);
    if (ts.dimension() != 7) throw std::domain_error("type sum " + ts.str() + " is not 7-dimensional");
    const auto sg = ts.signature();
    MetricSignature sig;
    if (sg == std::pair<int, int>{3, 4})
        sig = MetricSignature::split();
    else if (sg == std::pair<int, int>{7, 0})
        sig = MetricSignature::compact();
    else
        throw std::domain_error("type sum " + ts.str() + " has signature (" + std::to_string(sg.first) + "," +
                                std::to_string(sg.second) + ")");

    // Per summand: C_b with C_b^T G_b C_b = diag(+-1), positives first.
    Mat7 A = Mat7::Zero(), C = Mat7::Zero();
    std::vector<int> pos, neg;  // global columns
    std::vector<std::pair<int, int>> ranges;
    int off = 0;
    for (const auto& t : ts.summands) {
        MatrixXd As, Gs;
        summand(t, As, Gs);
        const int n = static_cast<int>(As.rows());
        A.block(off, off, n, n) = As;
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(Gs);
        for (int i = 0; i < n; ++i) {
            const double l = es.eigenvalues()(i);
            C.block(off, off + i, n, 1) = es.eigenvectors().col(i) / std::sqrt(std::abs(l));
            (l > 0 ? pos : neg).push_back(off + i);
        }
        ranges.push_back({off, n});
        off += n;
    }
    // Reorder columns so the form becomes eta.
    Mat7 P = Mat7::Zero();
    int c = 0;
    for (int i : pos) P(i, c++) = 1;
    for (int i : neg) P(i, c++) = 1;
    const Mat7 T = C * P;  // x = T y
    const Mat7 Tinv = T.inverse();

    CanonicalForm out;
    out.a = SkewAdjointMatrix(Tinv * A * T, sig);
    for (const auto& [o, n] : ranges) out.blocks.push_back(Tinv.block(0, o, 7, n));
    const double scale = std::max(1.0, out.a.a.cwiseAbs().maxCoeff());
    if (out.a.residual() > 1e-12 * scale) throw std::logic_error("canonical form left the algebra");
    return out;
}

SkewAdjointMatrix canonical_representative(const TypeSum& ts) { return canonical_form(ts).a; }

SkewAdjointMatrix canonical_representative(const FamilyLabel& fl) {
    return canonical_representative(family_type_sum(fl));
}

}  // namespace qkr
