#pragma once

// Dense rational matrices and polynomials over Q (GMP).

#include <gmpxx.h>

#include <string>
#include <vector>

namespace qkr {

using Rational = mpq_class;

class RMat {
public:
    RMat() = default;
    RMat(int rows, int cols) : r_(rows), c_(cols), d_(static_cast<size_t>(rows) * cols, Rational(0)) {}
    static RMat identity(int n);

    int rows() const { return r_; }
    int cols() const { return c_; }
    Rational& operator()(int i, int j) { return d_[static_cast<size_t>(i) * c_ + j]; }
    const Rational& operator()(int i, int j) const { return d_[static_cast<size_t>(i) * c_ + j]; }

    RMat transpose() const;
    RMat col(int j) const;
    RMat operator+(const RMat& o) const;
    RMat operator-(const RMat& o) const;
    RMat operator*(const RMat& o) const;
    RMat operator*(const Rational& s) const;
    bool operator==(const RMat& o) const;
    bool is_zero() const;

    // Reduced row echelon form; pivots receive the pivot column of each nonzero row.
    RMat rref(std::vector<int>* pivots = nullptr) const;
    int rank() const;
    // Columns form a basis of the right nullspace.
    RMat nullspace() const;
    // Columns form a basis of the column space (selected original columns).
    RMat column_basis() const;
    Rational trace() const;

    std::vector<double> to_doubles() const;
    std::string str() const;

private:
    int r_ = 0, c_ = 0;
    std::vector<Rational> d_;
};

// Horizontal concatenation.
RMat hcat(const RMat& a, const RMat& b);

// Dense polynomial, coefficient k multiplies x^k; no trailing zeros.
class RPoly {
public:
    RPoly() = default;
    explicit RPoly(std::vector<Rational> c);
    static RPoly monomial(int k, const Rational& a = 1);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<Rational>& coeffs() const { return c_; }
    Rational coeff(int k) const { return k < static_cast<int>(c_.size()) ? c_[k] : Rational(0); }
    Rational lead() const { return c_.empty() ? Rational(0) : c_.back(); }

    RPoly operator+(const RPoly& o) const;
    RPoly operator-(const RPoly& o) const;
    RPoly operator*(const RPoly& o) const;
    RPoly operator*(const Rational& s) const;
    bool operator==(const RPoly& o) const { return c_ == o.c_; }
    RPoly derivative() const;
    RPoly monic() const;
    Rational operator()(const Rational& x) const;
    double eval(double x) const;
    RMat eval(const RMat& A) const;

    std::string str() const;

private:
    void trim();
    std::vector<Rational> c_;
};

// Quotient and remainder, b nonzero.
void divmod(const RPoly& a, const RPoly& b, RPoly& q, RPoly& r);
RPoly gcd(const RPoly& a, const RPoly& b);  // monic, or zero

// det(xI - A) by the Faddeev-LeVerrier recursion.
RPoly characteristic_polynomial(const RMat& A);

// Inertia (positive, negative, zero) of a symmetric rational matrix by
// congruence diagonalization.
struct Inertia {
    int pos = 0, neg = 0, zero = 0;
};
Inertia inertia(const RMat& S);

}  // namespace qkr
