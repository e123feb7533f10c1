#pragma once

// Finite sums q_1 sqrt(d_1) + ... + q_n sqrt(d_n), q_i rational, d_i distinct
// squarefree positive integers. Closed under +, -, * and rational scaling.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>

namespace qkr {

class ExactReal {
public:
    ExactReal() = default;
    ExactReal(long v) : ExactReal(mpq_class(v)) {}  // NOLINT: implicit from integers
    explicit ExactReal(const mpq_class& q);

    static ExactReal sqrt_of(const mpq_class& q);  // q >= 0
    // Accepts "3", "-3/2", "0.25", "sqrt(2)", "2*sqrt(3)/5", "1+sqrt(2)", "sqrt(8/3)".
    static ExactReal parse(const std::string& s);

    bool is_zero() const { return terms_.empty(); }
    bool is_rational() const;
    std::optional<mpq_class> rational_value() const;
    // Sign computed in double; exact for rational values.
    int sign() const;
    double to_double() const;

    ExactReal operator+(const ExactReal& o) const;
    ExactReal operator-(const ExactReal& o) const;
    ExactReal operator-() const;
    ExactReal operator*(const ExactReal& o) const;
    bool operator==(const ExactReal& o) const { return terms_ == o.terms_; }

    // x / y rational (y nonzero); 0 is commensurable with everything.
    friend bool commensurable(const ExactReal& x, const ExactReal& y);

    std::string str() const;
    const std::map<unsigned long, mpq_class>& terms() const { return terms_; }

private:
    void add_term(unsigned long d, const mpq_class& q);
    std::map<unsigned long, mpq_class> terms_;  // squarefree radicand -> coefficient
};

bool commensurable(const ExactReal& x, const ExactReal& y);

// Decimal or fraction text to an exact rational ("0.125", "-3/4", "2e-3").
mpq_class parse_rational(const std::string& s);

// Continued-fraction reconstruction p/q with q <= max_den and
// |x - p/q| <= rel_tol * max(1, |x|); empty if none.
std::optional<mpq_class> rational_reconstruction(double x, long max_den = 1000000, double rel_tol = 1e-9);

}  // namespace qkr
