#include "qkr/exact_real.hpp"

#include <cctype>
#include <climits>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace qkr {

namespace {

// n = s^2 * d with d squarefree.
void square_split(const mpz_class& n, mpz_class& s, mpz_class& d) {
    s = 1;
    d = 1;
    mpz_class m = n;
    for (unsigned long p = 2; p <= 1000000UL && mpz_class(p) * p <= m; ++p) {
        int e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            m /= p;
            ++e;
        }
        for (int k = 0; k < e / 2; ++k) s *= p;
        if (e % 2) d *= p;
    }
    if (m > 1) {
        if (mpz_perfect_square_p(m.get_mpz_t())) {
            mpz_class r;
            mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
            s *= r;
        } else {
            d *= m;
        }
    }
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

ExactReal parse_factor(const std::string& f) {
    const std::string t = trim(f);
    if (t.empty()) throw std::invalid_argument("empty factor in exact number");
    if (t.rfind("sqrt(", 0) == 0 && t.back() == ')') {
        const ExactReal inner = ExactReal::parse(t.substr(5, t.size() - 6));
        const auto q = inner.rational_value();
        if (!q) throw std::invalid_argument("sqrt of a non-rational value is not supported: " + t);
        return ExactReal::sqrt_of(*q);
    }
    if (t.front() == '(' && t.back() == ')') return ExactReal::parse(t.substr(1, t.size() - 2));
    return ExactReal(parse_rational(t));
}

ExactReal invert(const ExactReal& x) {
    const auto& terms = x.terms();
    if (terms.size() != 1) throw std::invalid_argument("division only by a single rational multiple of a root");
    const auto& [d, q] = *terms.begin();
    // 1 / (q sqrt(d)) = sqrt(d) / (q d)
    return ExactReal::sqrt_of(mpq_class(static_cast<long>(d))) * ExactReal(mpq_class(1) / (q * static_cast<long>(d)));
}

ExactReal parse_term(const std::string& term) {
    // factor (('*'|'/') factor)*, at parenthesis depth 0
    ExactReal acc(1);
    int depth = 0;
    size_t start = 0;
    char op = '*';
    for (size_t i = 0; i <= term.size(); ++i) {
        const char c = i < term.size() ? term[i] : '\0';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if ((c == '*' || c == '/' || c == '\0') && depth == 0) {
            const ExactReal f = parse_factor(term.substr(start, i - start));
            acc = op == '*' ? acc * f : acc * invert(f);
            op = c;
            start = i + 1;
        }
    }
    return acc;
}

}  // namespace

mpq_class parse_rational(const std::string& s0) {
    const std::string s = trim(s0);
    if (s.empty()) throw std::invalid_argument("empty number");
    const auto slash = s.find('/');
    if (slash != std::string::npos)
        return parse_rational(s.substr(0, slash)) / parse_rational(s.substr(slash + 1));
    // sign, digits, optional fraction, optional exponent
    size_t i = 0;
    bool neg = false;
    if (s[i] == '+' || s[i] == '-') neg = s[i++] == '-';
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, any = false;
    for (; i < s.size(); ++i) {
        const char c = s[i];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            any = true;
            if (seen_dot) ++frac_digits;
        } else if (c == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!any) throw std::invalid_argument("not a number: '" + s + "'");
    long exp10 = 0;
    if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
        size_t used = 0;
        exp10 = std::stol(s.substr(i + 1), &used);
        i += 1 + used;
    }
    if (i != s.size()) throw std::invalid_argument("not a number: '" + s + "'");
    mpz_class num(digits, 10);  // base 0 would read a leading 0 as octal
    mpz_class den = 1;
    long e = exp10 - frac_digits;
    mpz_class ten = 10;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(std::labs(e)));
    if (e >= 0)
        num *= p;
    else
        den = p;
    mpq_class q(num, den);
    q.canonicalize();
    return neg ? mpq_class(-q) : q;
}

ExactReal::ExactReal(const mpq_class& q) {
    if (sgn(q) != 0) terms_[1] = q;
}

void ExactReal::add_term(unsigned long d, const mpq_class& q) {
    auto it = terms_.find(d);
    if (it == terms_.end()) {
        if (sgn(q) != 0) terms_[d] = q;
        return;
    }
    it->second += q;
    if (sgn(it->second) == 0) terms_.erase(it);
}

ExactReal ExactReal::sqrt_of(const mpq_class& q0) {
    if (sgn(q0) < 0) throw std::domain_error("square root of a negative rational");
    ExactReal r;
    if (sgn(q0) == 0) return r;
    mpq_class q = q0;
    q.canonicalize();
    // sqrt(p/r) = sqrt(p r) / r
    const mpz_class n = q.get_num() * q.get_den();
    mpz_class s, d;
    square_split(n, s, d);
    if (!d.fits_ulong_p()) throw std::overflow_error("radicand too large");
    mpq_class coef(s, q.get_den());
    coef.canonicalize();
    r.terms_[d.get_ui()] = coef;
    return r;
}

ExactReal ExactReal::parse(const std::string& s0) {
    const std::string s = trim(s0);
    if (s.empty()) throw std::invalid_argument("empty exact number");
    ExactReal acc;
    int depth = 0;
    size_t start = 0;
    bool neg = false;
    for (size_t i = 0; i <= s.size(); ++i) {
        const char c = i < s.size() ? s[i] : '\0';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        const bool exponent_sign = i > 0 && (s[i - 1] == 'e' || s[i - 1] == 'E') && i >= 2 &&
                                   (std::isdigit(static_cast<unsigned char>(s[i - 2])) || s[i - 2] == '.');
        if (depth == 0 && (((c == '+' || c == '-') && !exponent_sign) || c == '\0')) {
            const std::string term = trim(s.substr(start, i - start));
            if (!term.empty()) {
                const ExactReal t = parse_term(term);
                acc = neg ? acc - t : acc + t;
            } else if (c == '\0') {
                throw std::invalid_argument("dangling sign in '" + s + "'");
            }
            neg = c == '-';
            start = i + 1;
        }
    }
    return acc;
}

bool ExactReal::is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 1);
}

std::optional<mpq_class> ExactReal::rational_value() const {
    if (terms_.empty()) return mpq_class(0);
    if (is_rational()) return terms_.begin()->second;
    return std::nullopt;
}

double ExactReal::to_double() const {
    double v = 0.0;
    for (const auto& [d, q] : terms_) v += q.get_d() * std::sqrt(static_cast<double>(d));
    return v;
}

int ExactReal::sign() const {
    if (auto q = rational_value()) return sgn(*q);
    const double v = to_double();
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
}

ExactReal ExactReal::operator+(const ExactReal& o) const {
    ExactReal r = *this;
    for (const auto& [d, q] : o.terms_) r.add_term(d, q);
    return r;
}

ExactReal ExactReal::operator-() const {
    ExactReal r = *this;
    for (auto& [d, q] : r.terms_) q = -q;
    return r;
}

ExactReal ExactReal::operator-(const ExactReal& o) const { return *this + (-o); }

ExactReal ExactReal::operator*(const ExactReal& o) const {
    ExactReal r;
    for (const auto& [d1, q1] : terms_)
        for (const auto& [d2, q2] : o.terms_) {
            // sqrt(d1) sqrt(d2) = g sqrt(d1 d2 / g^2), g = gcd(d1, d2)
            const mpz_class a(d1), b(d2);
            mpz_class g;
            mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
            const mpz_class rad = (a / g) * (b / g);
            if (!rad.fits_ulong_p()) throw std::overflow_error("radicand too large");
            r.add_term(rad.get_ui(), q1 * q2 * mpq_class(g));
        }
    return r;
}

bool commensurable(const ExactReal& x, const ExactReal& y) {
    if (x.is_zero() || y.is_zero()) return true;
    if (x.terms_.size() != y.terms_.size()) return false;
    std::optional<mpq_class> ratio;
    for (auto ix = x.terms_.begin(), iy = y.terms_.begin(); ix != x.terms_.end(); ++ix, ++iy) {
        if (ix->first != iy->first) return false;
        const mpq_class r = ix->second / iy->second;
        if (ratio && *ratio != r) return false;
        ratio = r;
    }
    return true;
}

std::string ExactReal::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, q] : terms_) {
        mpq_class c = q;
        if (!first) os << (sgn(c) < 0 ? "-" : "+");
        if (first && sgn(c) < 0) os << "-";
        c = abs(c);
        if (d == 1) {
            os << c;
        } else {
            const mpz_class num = c.get_num(), den = c.get_den();
            if (num != 1) os << num << "*";
            os << "sqrt(" << d << ")";
            if (den != 1) os << "/" << den;
        }
        first = false;
    }
    return os.str();
}

std::optional<mpq_class> rational_reconstruction(double x, long max_den, double rel_tol) {
    if (!std::isfinite(x)) return std::nullopt;
    const double tol = rel_tol * std::max(1.0, std::abs(x));
    // convergents h/k of the continued fraction of x
    mpz_class h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int it = 0; it < 64; ++it) {
        const double a = std::floor(r);
        if (std::abs(a) > 1e15) break;
        const mpz_class ai(static_cast<long>(a));
        const mpz_class h2 = ai * h1 + h0, k2 = ai * k1 + k0;
        if (k2 > max_den) break;
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        mpq_class q(h1, k1);
        q.canonicalize();
        if (std::abs(q.get_d() - x) <= tol) return q;
        const double frac = r - a;
        if (frac == 0.0) break;
        r = 1.0 / frac;
    }
    return std::nullopt;
}

}  // namespace qkr
