#pragma once

// Indecomposable orthogonal types D_k and their formal sums.
//
// ASCII notation, accepted by parse and produced by str():
//   D6+(0)                 zero eigenvalue, even height, sign of the reduced form
//   D2(a,-a)   D1(0,0)     real pair (symplectic zero type for odd height, a = 0)
//   D0-(bi,-bi)            imaginary pair with sign
//   D0(a+bi,-a-bi,a-bi,-a+bi)   complex quadruple
// Sums are joined by " + " (or the unicode circled plus), multiplicities as "2D0-(i,-i)".

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qkr/exact_real.hpp"

namespace qkr {

enum class Kind { zero, real, imag, quad };

struct IndecomposableType {
    Kind kind = Kind::zero;
    int height = 0;
    int sign = 0;  // +1 / -1 for zero (even height) and imag kinds, else 0
    // Normalized parameter: real a >= 0 for real, b > 0 for imag (stored as re = 0, im = b),
    // a > 0 and b > 0 for quad. Zero for the zero kind.
    std::complex<double> zeta{0.0, 0.0};
    // Exact real and imaginary parts when known.
    std::optional<ExactReal> exact_re, exact_im;

    int dimension() const;
    std::pair<int, int> signature() const;  // (#positive, #negative)
    // Magnitudes reported as family parameters: a, b, or (a, b) for quad.
    std::vector<double> parameters() const;
    std::vector<ExactReal> exact_parameters() const;  // empty if not exact
    bool is_exact() const;

    std::string str() const;
    // Structural part of the type, without parameter values.
    std::string key() const;
};

// Validation of kind / height / sign / parameter combinations; throws std::domain_error.
void validate(const IndecomposableType& t);

struct TypeSum {
    std::vector<IndecomposableType> summands;

    int dimension() const;
    std::pair<int, int> signature() const;
    int height() const;
    bool exact() const;

    // Canonical order: descending height, then kind, sign, parameter.
    void sort();
    std::string str() const;
};

TypeSum type_sum(const TypeSum& a, const TypeSum& b);
inline int dimension(const TypeSum& t) { return t.dimension(); }
inline std::pair<int, int> signature(const TypeSum& t) { return t.signature(); }
inline int height(const TypeSum& t) { return t.height(); }

// Same structure and parameters within rel_tol * max(1, |zeta|).
bool equivalent(const TypeSum& a, const TypeSum& b, double rel_tol = 1e-6);

// Parses a type expression. Degenerate notations are expanded:
// D2+(0,0) = 2 D2+(0), D2(0,0) = D2+(0) + D2-(0) (even height),
// D0(a,-a,a,-a) = 2 D0(a,-a), D0(bi,-bi,-bi,bi) = D0+(bi,-bi) + D0-(bi,-bi),
// D0(0,0) = D0+(0) + D0-(0), D0+(0,0) = 2 D0+(0).
TypeSum parse_type_sum(const std::string& text);

// Builders with normalization of the parameter sign.
IndecomposableType make_zero(int height, int sign);
IndecomposableType make_real(int height, double a);
IndecomposableType make_imag(int height, int sign, double b);
IndecomposableType make_quad(int height, double a, double b);
IndecomposableType make_real(int height, const ExactReal& a);
IndecomposableType make_imag(int height, int sign, const ExactReal& b);

// Appends t, or its expansion when t is a degenerate parameter value.
void append_expanded(TypeSum& sum, const IndecomposableType& t);

std::string kind_name(Kind k);

}  // namespace qkr
