#include "qkr/classify.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>

namespace qkr {

namespace {

using cd = std::complex<double>;
using CMat = Eigen::Matrix<cd, 7, 7>;
using Eigen::MatrixXd;

// Thresholds for the normalized problem (|B| = 1), all derived from tol.
// Ball test on sigma_m((B - mu)^m): accepted below merge, rejected above
// separate, ill-conditioned in between. For two simple eigenvalues d apart the
// tested quantity is about d^2 / 4, so tol also sets the resolvable gap.
struct Thresholds {
    double merge, separate, rank;
    explicit Thresholds(double tol) : merge(tol / 100), separate(10 * tol), rank(tol) {}
};

struct Cluster {
    std::vector<int> members;
    cd mu;
};

Eigen::VectorXd singular_values_ascending(const CMat& M) {
    Eigen::JacobiSVD<CMat> svd(M);
    Eigen::VectorXd s = svd.singularValues();
    std::sort(s.data(), s.data() + s.size());
    return s;
}

CMat power(const CMat& M, int m) {
    CMat R = CMat::Identity();
    for (int i = 0; i < m; ++i) R = R * M;
    return R;
}

double ball_sigma(const Mat7& B, const cd& mu, int m, int index) {
    const CMat T = power(B.cast<cd>() - mu * CMat::Identity(), m);
    return singular_values_ascending(T)(index);
}

std::vector<Cluster> cluster_eigenvalues(const Mat7& B, const Eigen::Matrix<cd, 7, 1>& ev, const Thresholds& th) {
    const int n = 7;
    std::vector<std::vector<int>> candidate(n);
    for (int i = 0; i < n; ++i) {
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int x, int y) { return std::abs(ev(x) - ev(i)) < std::abs(ev(y) - ev(i)); });
        for (int m = n; m >= 1; --m) {
            cd mu = 0;
            for (int t = 0; t < m; ++t) mu += ev(order[t]);
            mu /= static_cast<double>(m);
            const double s = ball_sigma(B, mu, m, m - 1);
            if (s <= th.merge) {
                candidate[i].assign(order.begin(), order.begin() + m);
                std::sort(candidate[i].begin(), candidate[i].end());
                break;
            }
            if (s <= th.separate)
                throw IllConditioned("eigenvalue cluster of size " + std::to_string(m) + " is ambiguous",
                                     std::abs(ev(order[m - 1]) - ev(i)));
        }
        if (candidate[i].empty()) candidate[i] = {i};
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return candidate[x].size() > candidate[y].size(); });
    std::vector<int> owner(n, -1);
    std::vector<Cluster> out;
    for (int i : idx) {
        const auto& c = candidate[i];
        int taken = 0;
        for (int j : c) taken += owner[j] >= 0;
        if (taken == static_cast<int>(c.size())) continue;
        if (taken > 0) throw IllConditioned("overlapping eigenvalue clusters", 0.0);
        Cluster cl;
        cl.members = c;
        cl.mu = 0;
        for (int j : c) {
            owner[j] = static_cast<int>(out.size());
            cl.mu += ev(j);
        }
        cl.mu /= static_cast<double>(c.size());
        out.push_back(cl);
    }
    // An eigenvalue outside a cluster must be visibly separate from it.
    for (size_t c = 0; c < out.size(); ++c) {
        const int m = static_cast<int>(out[c].members.size());
        if (m < n && ball_sigma(B, out[c].mu, m, m) <= th.separate)
            throw IllConditioned("eigenvalue near the cluster at " + std::to_string(out[c].mu.real()) + "+" +
                                     std::to_string(out[c].mu.imag()) + "i",
                                 0.0);
    }
    return out;
}

double min_gap(const std::vector<Cluster>& cl) {
    double g = 0.0;
    bool any = false;
    for (size_t i = 0; i < cl.size(); ++i)
        for (size_t j = i + 1; j < cl.size(); ++j) {
            const double d = std::abs(cl[i].mu - cl[j].mu);
            g = any ? std::min(g, d) : d;
            any = true;
        }
    return g;
}

enum class GroupKind { zero, real, imag, quad };

struct Group {
    GroupKind kind;
    double a = 0.0, b = 0.0;  // normalized parameter
    int mult = 0;             // algebraic multiplicity of each member eigenvalue
    std::vector<cd> roots;
};

// Collects clusters into orbits under mu -> -mu, conj(mu) and snaps them.
std::vector<Group> form_groups(const std::vector<Cluster>& cl, double snap) {
    std::vector<bool> done(cl.size(), false);
    std::vector<Group> out;
    auto nearest = [&](cd target) {
        size_t best = 0;
        for (size_t j = 1; j < cl.size(); ++j)
            if (std::abs(cl[j].mu - target) < std::abs(cl[best].mu - target)) best = j;
        return best;
    };
    for (size_t i = 0; i < cl.size(); ++i) {
        if (done[i]) continue;
        const cd mu = cl[i].mu;
        const int m = static_cast<int>(cl[i].members.size());
        std::vector<size_t> orbit = {i};
        for (cd t : {-mu, std::conj(mu), -std::conj(mu)}) {
            const size_t j = nearest(t);
            if (std::find(orbit.begin(), orbit.end(), j) == orbit.end()) orbit.push_back(j);
        }
        Group g;
        g.mult = m;
        double sa = 0, sb = 0;
        for (size_t j : orbit) {
            if (done[j]) throw IllConditioned("eigenvalue pattern is not symmetric", 0.0);
            if (static_cast<int>(cl[j].members.size()) != m)
                throw IllConditioned("paired eigenvalue clusters differ in multiplicity", 0.0);
            done[j] = true;
            sa += std::abs(cl[j].mu.real());
            sb += std::abs(cl[j].mu.imag());
        }
        const double a = sa / orbit.size(), b = sb / orbit.size();
        const bool re0 = a <= snap, im0 = b <= snap;
        size_t expected;
        if (re0 && im0) {
            g.kind = GroupKind::zero;
            g.roots = {0.0};
            expected = 1;
        } else if (im0) {
            g.kind = GroupKind::real;
            g.a = a;
            g.roots = {a, -a};
            expected = 2;
        } else if (re0) {
            g.kind = GroupKind::imag;
            g.b = b;
            g.roots = {cd(0, b), cd(0, -b)};
            expected = 2;
        } else {
            g.kind = GroupKind::quad;
            g.a = a;
            g.b = b;
            g.roots = {cd(a, b), cd(a, -b), cd(-a, b), cd(-a, -b)};
            expected = 4;
        }
        if (orbit.size() != expected) throw IllConditioned("eigenvalue orbit has the wrong size", 0.0);
        out.push_back(g);
    }
    return out;
}

// Real coefficients of prod (x - r), low degree first.
std::vector<double> real_poly(const std::vector<cd>& roots) {
    std::vector<cd> c = {1.0};
    for (cd r : roots) {
        std::vector<cd> n(c.size() + 1, 0.0);
        for (size_t k = 0; k < c.size(); ++k) {
            n[k + 1] += c[k];
            n[k] -= r * c[k];
        }
        c = n;
    }
    std::vector<double> out(c.size());
    for (size_t k = 0; k < c.size(); ++k) out[k] = c[k].real();
    return out;
}

Mat7 eval_poly(const std::vector<double>& p, const Mat7& X) {
    Mat7 R = Mat7::Zero();
    for (size_t k = p.size(); k-- > 0;) R = R * X + p[k] * Mat7::Identity();
    return R;
}

std::vector<double> derivative(const std::vector<double>& p) {
    std::vector<double> d;
    for (size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<double>(k));
    return d;
}

// Newton iteration for the semisimple part: S <- S - q(S) q'(S)^-1, q squarefree.
Mat7 semisimple_part(const Mat7& B, const std::vector<double>& q) {
    const auto dq = derivative(q);
    Mat7 S = B;
    for (int it = 0; it < 20; ++it) {
        const Mat7 Q = eval_poly(q, S);
        if (Q.norm() <= 1e-15) break;
        const Mat7 step = Q * eval_poly(dq, S).inverse();
        S -= step;
        if (step.norm() <= 1e-15) break;
    }
    return S;
}

int numeric_rank(const MatrixXd& M, double tol) {
    if (M.size() == 0) return 0;
    Eigen::JacobiSVD<MatrixXd> svd(M);
    int r = 0;
    for (int i = 0; i < svd.singularValues().size(); ++i) r += svd.singularValues()(i) > tol;
    return r;
}

// Orthonormal basis of the numerical kernel of M (columns), dimension dim.
MatrixXd kernel(const MatrixXd& M, int dim) {
    Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
    const int n = static_cast<int>(M.cols());
    return svd.matrixV().rightCols(std::min(dim, n));
}

Mat7 mpow(const Mat7& M, int j) {
    Mat7 R = Mat7::Identity();
    for (int i = 0; i < j; ++i) R = R * M;
    return R;
}

struct Analysis {
    TypeSum types;
    Mat7 S, N;
    int height = 0;
    double gap = 0.0;
    double parity = 0.0;
};

Analysis analyse(const Mat7& B, MetricSignature sig, double tol) {
    const Mat7 eta = sig.eta();
    Eigen::Matrix<cd, 7, 1> ev;
    Eigen::EigenSolver<Mat7> es(B, false);
    if (es.info() == Eigen::Success) {
        ev = es.eigenvalues();
    } else {
        // the real QR iteration occasionally stalls; the complex one does not share its shifts
        Eigen::ComplexEigenSolver<CMat> ces(B.cast<cd>(), false);
        if (ces.info() != Eigen::Success) throw IllConditioned("eigenvalue iteration did not converge", 0.0);
        ev = ces.eigenvalues();
    }
    const Thresholds th(tol);
    const auto clusters = cluster_eigenvalues(B, ev, th);
    const auto groups = form_groups(clusters, tol);

    Analysis out;
    out.gap = min_gap(clusters);
    std::vector<cd> all_roots;
    for (const auto& g : groups) all_roots.insert(all_roots.end(), g.roots.begin(), g.roots.end());
    out.S = project_algebra(semisimple_part(B, real_poly(all_roots)), sig);
    out.N = B - out.S;

    for (const auto& g : groups) {
        const int d = g.mult * static_cast<int>(g.roots.size());
        const Mat7 Qg = eval_poly(real_poly(g.roots), out.S);
        {
            Eigen::JacobiSVD<Mat7> svd(Qg);
            const auto& sv = svd.singularValues();  // descending
            if (d < 7 && sv(6 - d) <= th.separate)
                throw IllConditioned("eigenspace of S is not separated", out.gap);
        }
        const MatrixXd Y0 = kernel(Qg, d);
        std::vector<int> rk = {d};
        for (int j = 1; j <= d + 1; ++j) rk.push_back(numeric_rank(mpow(out.N, j) * Y0, th.rank));
        for (int j = 0; j < d; ++j) {
            const int blocks = rk[j] - 2 * rk[j + 1] + (j + 2 <= d + 1 ? rk[j + 2] : 0);
            if (blocks < 0) throw IllConditioned("inconsistent ranks of the nilpotent part", out.gap);
            if (blocks == 0) continue;
            out.height = std::max(out.height, j);
            const int kdim = d - rk[j + 1];
            const MatrixXd Y = Y0 * kernel(mpow(out.N, j + 1) * Y0, kdim);
            const Mat7 Nj = mpow(out.N, j);
            MatrixXd M = Y.transpose() * eta * Nj * Y;
            const double mscale = std::max(1.0, M.cwiseAbs().maxCoeff());
            const double parity = j % 2 == 0 ? (M - M.transpose()).cwiseAbs().maxCoeff()
                                             : (M + M.transpose()).cwiseAbs().maxCoeff();
            out.parity = std::max(out.parity, parity / mscale);
            const bool odd = j % 2 == 1;
            int pos = 0, neg = 0, rank = 0;
            if (odd && g.kind == GroupKind::imag) M = Y.transpose() * eta * Nj * out.S * Y;
            if (!odd || g.kind == GroupKind::imag) {
                const MatrixXd Ms = (M + M.transpose()) / 2;
                Eigen::SelfAdjointEigenSolver<MatrixXd> se(Ms);
                for (int i = 0; i < Ms.rows(); ++i) {
                    const double l = se.eigenvalues()(i);
                    if (l > th.rank) ++pos;
                    if (l < -th.rank) ++neg;
                }
                rank = pos + neg;
            } else {
                rank = numeric_rank(M, th.rank);
            }
            // a string with reduced space W gives dim W Jordan blocks, one per root
            const int per = g.kind == GroupKind::zero ? (odd ? 2 : 1) : static_cast<int>(g.roots.size());
            if (rank != blocks || blocks % per)
                throw IllConditioned("reduced form has rank " + std::to_string(rank) + ", expected " +
                                         std::to_string(blocks),
                                     out.gap);
            const int strings = blocks / per;
            switch (g.kind) {
                case GroupKind::zero:
                    if (odd) {
                        for (int c = 0; c < strings; ++c) append_expanded(out.types, make_real(j, 0.0));
                    } else {
                        for (int c = 0; c < pos; ++c) out.types.summands.push_back(make_zero(j, 1));
                        for (int c = 0; c < neg; ++c) out.types.summands.push_back(make_zero(j, -1));
                    }
                    break;
                case GroupKind::real:
                    for (int c = 0; c < strings; ++c) out.types.summands.push_back(make_real(j, g.a));
                    break;
                case GroupKind::imag:
                    if (pos % 2 || neg % 2) throw IllConditioned("odd inertia on an imaginary pair", out.gap);
                    for (int c = 0; c < pos / 2; ++c) out.types.summands.push_back(make_imag(j, 1, g.b));
                    for (int c = 0; c < neg / 2; ++c) out.types.summands.push_back(make_imag(j, -1, g.b));
                    break;
                case GroupKind::quad:
                    for (int c = 0; c < strings; ++c) out.types.summands.push_back(make_quad(j, g.a, g.b));
                    break;
            }
        }
    }
    return out;
}

TypeSum scaled(const TypeSum& t, double s) {
    TypeSum out = t;
    for (auto& x : out.summands) x.zeta *= s;
    return out;
}

void check_signature(const TypeSum& t, MetricSignature sig) {
    const auto want = sig.epsilon > 0 ? std::pair<int, int>{7, 0} : std::pair<int, int>{3, 4};
    if (t.dimension() != 7 || t.signature() != want)
        throw std::domain_error("classified type " + t.str() + " does not have signature (" +
                                std::to_string(want.first) + "," + std::to_string(want.second) + ")");
}

}  // namespace

IllConditioned::IllConditioned(const std::string& what, double g)
    : std::runtime_error("ill-conditioned input: " + what), gap(g) {}

std::optional<RMat> exact_entries(const Mat7& A) {
    RMat R(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) {
            const double x = A(i, j);
            const auto q = rational_reconstruction(x, 1L << 20, 0.0);
            if (!q || q->get_d() != x) return std::nullopt;
            R(i, j) = *q;
        }
    return R;
}

RMat to_rmat(const Mat7& A) {
    RMat R(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) R(i, j) = mpq_class(A(i, j));
    return R;
}

ClassifyReport classify_report(const SkewAdjointMatrix& A, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("tolerance must be positive");
    const double scale = A.a.cwiseAbs().maxCoeff();
    if (!std::isfinite(scale)) throw std::domain_error("matrix has non-finite entries");
    if (A.residual() > tol * std::max(1.0, scale))
        throw std::domain_error("matrix is not in so(" + A.sig.name() + "), residual " + std::to_string(A.residual()));

    if (const auto R = exact_entries(A.a)) {
        try {
            if (auto rep = classify_exact(*R, A.sig)) return *rep;
        } catch (const std::domain_error&) {
            // entries look rational but are not exactly skew-adjoint
        }
    }

    ClassifyReport rep;
    const double s = A.a.jacobiSvd().singularValues()(0);
    if (s == 0.0) {
        for (int i = 0; i < 7; ++i) rep.types.summands.push_back(make_zero(0, A.sig.diagonal()(i) > 0 ? 1 : -1));
        rep.types.sort();
        rep.jc = {SkewAdjointMatrix(Mat7::Zero(), A.sig), SkewAdjointMatrix(Mat7::Zero(), A.sig), 0};
        return rep;
    }
    const Analysis an = analyse(A.a / s, A.sig, tol);
    rep.types = scaled(an.types, s);
    rep.types.sort();
    check_signature(rep.types, A.sig);
    rep.jc = {SkewAdjointMatrix(an.S * s, A.sig), SkewAdjointMatrix(an.N * s, A.sig), an.height};
    rep.gap = an.gap * s;
    rep.parity_residual = an.parity;
    return rep;
}

TypeSum classify(const SkewAdjointMatrix& A, double tol) { return classify_report(A, tol).types; }

SemisimpleNilpotentPair jordan_chevalley(const SkewAdjointMatrix& A, double tol) {
    return classify_report(A, tol).jc;
}

std::array<double, 3> classify_compact(const SkewAdjointMatrix& A) {
    if (A.sig.epsilon < 0) throw std::domain_error("classify_compact needs signature 7,0");
    // i A is Hermitian with eigenvalues +-a, +-b, +-c, 0
    const Eigen::Matrix<cd, 7, 7> H = cd(0, 1) * A.a.cast<cd>();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<cd, 7, 7>> es(H, Eigen::EigenvaluesOnly);
    const auto& l = es.eigenvalues();  // ascending
    std::array<double, 3> r;
    for (int i = 0; i < 3; ++i) r[i] = std::max(0.0, (l(4 + i) - l(2 - i)) / 2);
    std::sort(r.begin(), r.end());
    return r;
}

}  // namespace qkr
