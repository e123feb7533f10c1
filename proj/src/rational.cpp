#include "qkr/rational.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace qkr {

RMat RMat::identity(int n) {
    RMat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMat RMat::transpose() const {
    RMat t(c_, r_);
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RMat RMat::col(int j) const {
    RMat v(r_, 1);
    for (int i = 0; i < r_; ++i) v(i, 0) = (*this)(i, j);
    return v;
}

RMat RMat::operator+(const RMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("RMat shape mismatch");
    RMat s = *this;
    for (size_t k = 0; k < d_.size(); ++k) s.d_[k] += o.d_[k];
    return s;
}

RMat RMat::operator-(const RMat& o) const {
    if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("RMat shape mismatch");
    RMat s = *this;
    for (size_t k = 0; k < d_.size(); ++k) s.d_[k] -= o.d_[k];
    return s;
}

RMat RMat::operator*(const RMat& o) const {
    if (c_ != o.r_) throw std::invalid_argument("RMat shape mismatch");
    RMat p(r_, o.c_);
    for (int i = 0; i < r_; ++i)
        for (int k = 0; k < c_; ++k) {
            const Rational& a = (*this)(i, k);
            if (sgn(a) == 0) continue;
            for (int j = 0; j < o.c_; ++j) p(i, j) += a * o(k, j);
        }
    return p;
}

RMat RMat::operator*(const Rational& s) const {
    RMat p = *this;
    for (auto& v : p.d_) v *= s;
    return p;
}

bool RMat::operator==(const RMat& o) const { return r_ == o.r_ && c_ == o.c_ && d_ == o.d_; }

bool RMat::is_zero() const {
    for (const auto& v : d_)
        if (sgn(v) != 0) return false;
    return true;
}

RMat RMat::rref(std::vector<int>* pivots) const {
    RMat m = *this;
    if (pivots) pivots->clear();
    int row = 0;
    for (int col = 0; col < c_ && row < r_; ++col) {
        int p = -1;
        for (int i = row; i < r_; ++i)
            if (sgn(m(i, col)) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < c_; ++j) std::swap(m(p, j), m(row, j));
        const Rational inv = 1 / m(row, col);
        for (int j = col; j < c_; ++j) m(row, j) *= inv;
        for (int i = 0; i < r_; ++i) {
            if (i == row || sgn(m(i, col)) == 0) continue;
            const Rational f = m(i, col);
            for (int j = col; j < c_; ++j) m(i, j) -= f * m(row, j);
        }
        if (pivots) pivots->push_back(col);
        ++row;
    }
    return m;
}

int RMat::rank() const {
    std::vector<int> piv;
    rref(&piv);
    return static_cast<int>(piv.size());
}

RMat RMat::nullspace() const {
    std::vector<int> piv;
    const RMat R = rref(&piv);
    std::vector<bool> is_piv(c_, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free_cols;
    for (int j = 0; j < c_; ++j)
        if (!is_piv[j]) free_cols.push_back(j);
    RMat N(c_, static_cast<int>(free_cols.size()));
    for (size_t f = 0; f < free_cols.size(); ++f) {
        const int fc = free_cols[f];
        N(fc, static_cast<int>(f)) = 1;
        for (size_t r = 0; r < piv.size(); ++r) N(piv[r], static_cast<int>(f)) = -R(static_cast<int>(r), fc);
    }
    return N;
}

RMat RMat::column_basis() const {
    std::vector<int> piv;
    rref(&piv);
    RMat B(r_, static_cast<int>(piv.size()));
    for (size_t k = 0; k < piv.size(); ++k)
        for (int i = 0; i < r_; ++i) B(i, static_cast<int>(k)) = (*this)(i, piv[k]);
    return B;
}

Rational RMat::trace() const {
    Rational t = 0;
    for (int i = 0; i < std::min(r_, c_); ++i) t += (*this)(i, i);
    return t;
}

std::vector<double> RMat::to_doubles() const {
    std::vector<double> out;
    out.reserve(d_.size());
    for (const auto& v : d_) out.push_back(v.get_d());
    return out;
}

std::string RMat::str() const {
    std::ostringstream os;
    for (int i = 0; i < r_; ++i) {
        for (int j = 0; j < c_; ++j) os << (j ? " " : "") << (*this)(i, j);
        os << "\n";
    }
    return os.str();
}

RMat hcat(const RMat& a, const RMat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hcat row mismatch");
    RMat m(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (int j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
    }
    return m;
}

RPoly::RPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

RPoly RPoly::monomial(int k, const Rational& a) {
    std::vector<Rational> c(k + 1, Rational(0));
    c[k] = a;
    return RPoly(c);
}

void RPoly::trim() {
    while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

RPoly RPoly::operator+(const RPoly& o) const {
    std::vector<Rational> c(std::max(c_.size(), o.c_.size()), Rational(0));
    for (size_t k = 0; k < c_.size(); ++k) c[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) c[k] += o.c_[k];
    return RPoly(c);
}

RPoly RPoly::operator-(const RPoly& o) const { return *this + o * Rational(-1); }

RPoly RPoly::operator*(const RPoly& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> c(c_.size() + o.c_.size() - 1, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) c[i + j] += c_[i] * o.c_[j];
    return RPoly(c);
}

RPoly RPoly::operator*(const Rational& s) const {
    std::vector<Rational> c = c_;
    for (auto& v : c) v *= s;
    return RPoly(c);
}

RPoly RPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> c(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) c[k - 1] = c_[k] * static_cast<long>(k);
    return RPoly(c);
}

RPoly RPoly::monic() const {
    if (is_zero()) return {};
    return *this * (1 / lead());
}

Rational RPoly::operator()(const Rational& x) const {
    Rational v = 0;
    for (size_t k = c_.size(); k-- > 0;) v = v * x + c_[k];
    return v;
}

double RPoly::eval(double x) const {
    double v = 0;
    for (size_t k = c_.size(); k-- > 0;) v = v * x + c_[k].get_d();
    return v;
}

RMat RPoly::eval(const RMat& A) const {
    const int n = A.rows();
    RMat v(n, n);
    for (size_t k = c_.size(); k-- > 0;) v = v * A + RMat::identity(n) * c_[k];
    return v;
}

std::string RPoly::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t k = c_.size(); k-- > 0;) {
        if (sgn(c_[k]) == 0) continue;
        os << (first ? "" : " + ") << c_[k];
        if (k) os << "*x^" << k;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

void divmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    const int dq = a.degree() - db;
    std::vector<Rational> quo(dq >= 0 ? dq + 1 : 0, Rational(0));
    for (int k = dq; k >= 0; --k) {
        const Rational f = rem[k + db] / b.lead();
        quo[k] = f;
        for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.coeff(j);
    }
    q = RPoly(quo);
    r = RPoly(rem);
}

RPoly gcd(const RPoly& a, const RPoly& b) {
    RPoly x = a, y = b;
    while (!y.is_zero()) {
        RPoly q, r;
        divmod(x, y, q, r);
        x = y;
        y = r;
    }
    return x.monic();
}

RPoly characteristic_polynomial(const RMat& A) {
    const int n = A.rows();
    // M_0 = 0, c_n = 1; M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k)/k
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    RMat M(n, n);
    for (int k = 1; k <= n; ++k) {
        M = A * M + RMat::identity(n) * c[n - k + 1];
        c[n - k] = -(A * M).trace() / k;
    }
    return RPoly(c);
}

Inertia inertia(const RMat& S0) {
    RMat S = S0;
    const int n = S.rows();
    Inertia out;
    std::vector<bool> done(n, false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[i] && sgn(S(i, i)) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            // All remaining diagonal entries vanish; fold a nonzero off-diagonal into a diagonal.
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[i] && !done[j] && i != j && sgn(S(i, j)) != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a < 0) break;
            // row/col a += row/col b
            for (int j = 0; j < n; ++j) S(a, j) += S(b, j);
            for (int i = 0; i < n; ++i) S(i, a) += S(i, b);
            p = a;
        }
        const Rational d = S(p, p);
        if (sgn(d) > 0)
            ++out.pos;
        else
            ++out.neg;
        done[p] = true;
        for (int i = 0; i < n; ++i) {
            if (done[i] || sgn(S(i, p)) == 0) continue;
            const Rational f = S(i, p) / d;
            for (int j = 0; j < n; ++j) S(i, j) -= f * S(p, j);
            for (int j = 0; j < n; ++j) S(j, i) = S(i, j);
        }
        for (int j = 0; j < n; ++j)
            if (j != p) {
                S(p, j) = 0;
                S(j, p) = 0;
            }
    }
    for (int i = 0; i < n; ++i)
        if (!done[i]) ++out.zero;
    return out;
}

}  // namespace qkr
