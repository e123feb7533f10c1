#include "qkr/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace qkr {

namespace {

std::string fmt(double x) {
    if (std::abs(x) < 5e-13) x = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string real_text(double v, const std::optional<ExactReal>& e) { return e ? e->str() : fmt(v); }

// Coefficient text c for "c i": "" for 1, "-" for -1.
std::string imag_text(double v, const std::optional<ExactReal>& e, bool negate) {
    std::string c = e ? (negate ? (-*e).str() : e->str()) : fmt(negate ? -v : v);
    if (c == "1") return "i";
    if (c == "-1") return "-i";
    return c + "i";
}

std::string strip(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

struct ParsedComplex {
    ExactReal re, im;
};

// "a", "bi", "a+bi", "-i", "sqrt(2)i", "0"
ParsedComplex parse_complex(const std::string& s0) {
    const std::string s = strip(s0);
    if (s.empty()) throw std::invalid_argument("empty eigenvalue entry");
    ParsedComplex out;
    int depth = 0;
    size_t start = 0;
    bool neg = false;
    for (size_t i = 0; i <= s.size(); ++i) {
        const char c = i < s.size() ? s[i] : '\0';
        if (c == '(') ++depth;
        if (c == ')') --depth;
        const bool exp_sign = i >= 2 && (s[i - 1] == 'e' || s[i - 1] == 'E') &&
                              (std::isdigit(static_cast<unsigned char>(s[i - 2])) || s[i - 2] == '.');
        if (depth == 0 && (((c == '+' || c == '-') && !exp_sign) || c == '\0')) {
            std::string term = strip(s.substr(start, i - start));
            if (!term.empty()) {
                bool imag = false;
                if (term.back() == 'i') {
                    imag = true;
                    term.pop_back();
                    term = strip(term);
                    if (!term.empty() && term.back() == '*') term.pop_back();
                }
                const ExactReal v = term.empty() ? ExactReal(1) : ExactReal::parse(term);
                const ExactReal sv = neg ? -v : v;
                if (imag)
                    out.im = out.im + sv;
                else
                    out.re = out.re + sv;
            } else if (c == '\0') {
                throw std::invalid_argument("dangling sign in '" + s + "'");
            }
            neg = c == '-';
            start = i + 1;
        }
    }
    return out;
}

ExactReal abs_exact(const ExactReal& x) { return x.sign() < 0 ? -x : x; }

int kind_rank(Kind k) { return static_cast<int>(k); }

}  // namespace

std::string kind_name(Kind k) {
    switch (k) {
        case Kind::zero: return "zero";
        case Kind::real: return "real";
        case Kind::imag: return "imag";
        case Kind::quad: return "quad";
    }
    return "?";
}

int IndecomposableType::dimension() const {
    switch (kind) {
        case Kind::zero: return height + 1;
        case Kind::real:
        case Kind::imag: return 2 * (height + 1);
        case Kind::quad: return 4 * (height + 1);
    }
    return 0;
}

std::pair<int, int> IndecomposableType::signature() const {
    const int k = height;
    switch (kind) {
        case Kind::zero: {
            // k/2 hyperbolic pairs plus the middle vector N^{k/2} w of sign (-1)^{k/2} s
            const int mid = ((k / 2) % 2 == 0 ? 1 : -1) * sign;
            return {k / 2 + (mid > 0), k / 2 + (mid < 0)};
        }
        case Kind::real: return {k + 1, k + 1};
        case Kind::imag: {
            if (k % 2) return {k + 1, k + 1};
            const int mid = ((k / 2) % 2 == 0 ? 1 : -1) * sign;
            return {k + (mid > 0 ? 2 : 0), k + (mid < 0 ? 2 : 0)};
        }
        case Kind::quad: return {2 * (k + 1), 2 * (k + 1)};
    }
    return {0, 0};
}

std::vector<double> IndecomposableType::parameters() const {
    switch (kind) {
        case Kind::zero: return {};
        case Kind::real: return {zeta.real()};
        case Kind::imag: return {zeta.imag()};
        case Kind::quad: return {zeta.real(), zeta.imag()};
    }
    return {};
}

bool IndecomposableType::is_exact() const {
    switch (kind) {
        case Kind::zero: return true;
        case Kind::real: return exact_re.has_value();
        case Kind::imag: return exact_im.has_value();
        case Kind::quad: return exact_re.has_value() && exact_im.has_value();
    }
    return false;
}

std::vector<ExactReal> IndecomposableType::exact_parameters() const {
    if (!is_exact()) return {};
    switch (kind) {
        case Kind::zero: return {};
        case Kind::real: return {*exact_re};
        case Kind::imag: return {*exact_im};
        case Kind::quad: return {*exact_re, *exact_im};
    }
    return {};
}

std::string IndecomposableType::key() const {
    std::string s = "D" + std::to_string(height);
    if (sign > 0) s += "+";
    if (sign < 0) s += "-";
    s += "/" + kind_name(kind);
    return s;
}

std::string IndecomposableType::str() const {
    std::string head = "D" + std::to_string(height);
    if (sign > 0) head += "+";
    if (sign < 0) head += "-";
    switch (kind) {
        case Kind::zero: return head + "(0)";
        case Kind::real: {
            const std::string a = real_text(zeta.real(), exact_re);
            if (a == "0") return head + "(0,0)";
            const std::string na = exact_re ? (-*exact_re).str() : fmt(-zeta.real());
            return head + "(" + a + "," + na + ")";
        }
        case Kind::imag:
            return head + "(" + imag_text(zeta.imag(), exact_im, false) + "," + imag_text(zeta.imag(), exact_im, true) +
                   ")";
        case Kind::quad: {
            const std::string a = real_text(zeta.real(), exact_re);
            const std::string na = exact_re ? (-*exact_re).str() : fmt(-zeta.real());
            const std::string b = imag_text(zeta.imag(), exact_im, false);
            const std::string nb = imag_text(zeta.imag(), exact_im, true);
            auto join = [](const std::string& x, const std::string& y) {
                return x + (y[0] == '-' ? y : "+" + y);
            };
            return head + "(" + join(a, b) + "," + join(na, nb) + "," + join(a, nb) + "," + join(na, b) + ")";
        }
    }
    return head;
}

void validate(const IndecomposableType& t) {
    if (t.height < 0) throw std::domain_error("negative height");
    switch (t.kind) {
        case Kind::zero:
            if (t.height % 2) throw std::domain_error("zero types with sign need even height");
            if (t.sign != 1 && t.sign != -1) throw std::domain_error("zero type needs a sign");
            break;
        case Kind::real:
            if (t.sign != 0) throw std::domain_error("real pair type carries no sign");
            if (!(t.zeta.real() >= 0) || t.zeta.imag() != 0) throw std::domain_error("real pair needs real a >= 0");
            if (t.height % 2 == 0 && t.zeta.real() == 0) throw std::domain_error("even-height real pair needs a != 0");
            break;
        case Kind::imag:
            if (t.sign != 1 && t.sign != -1) throw std::domain_error("imaginary pair type needs a sign");
            if (t.zeta.real() != 0 || !(t.zeta.imag() > 0))
                throw std::domain_error("imaginary pair needs purely imaginary nonzero parameter");
            break;
        case Kind::quad:
            if (t.sign != 0) throw std::domain_error("quadruple type carries no sign");
            if (!(t.zeta.real() > 0) || !(t.zeta.imag() > 0))
                throw std::domain_error("quadruple needs a parameter off the real and imaginary axes");
            break;
    }
}

IndecomposableType make_zero(int height, int sign) {
    IndecomposableType t;
    t.kind = Kind::zero;
    t.height = height;
    t.sign = sign;
    validate(t);
    return t;
}

IndecomposableType make_real(int height, double a) {
    IndecomposableType t;
    t.kind = Kind::real;
    t.height = height;
    t.zeta = {std::abs(a), 0.0};
    validate(t);
    return t;
}

IndecomposableType make_real(int height, const ExactReal& a) {
    IndecomposableType t = make_real(height, a.to_double());
    t.exact_re = abs_exact(a);
    return t;
}

IndecomposableType make_imag(int height, int sign, double b) {
    IndecomposableType t;
    t.kind = Kind::imag;
    t.height = height;
    t.sign = sign;
    t.zeta = {0.0, std::abs(b)};
    validate(t);
    return t;
}

IndecomposableType make_imag(int height, int sign, const ExactReal& b) {
    IndecomposableType t = make_imag(height, sign, b.to_double());
    t.exact_im = abs_exact(b);
    return t;
}

IndecomposableType make_quad(int height, double a, double b) {
    IndecomposableType t;
    t.kind = Kind::quad;
    t.height = height;
    t.zeta = {std::abs(a), std::abs(b)};
    validate(t);
    return t;
}

void append_expanded(TypeSum& sum, const IndecomposableType& t) {
    const int k = t.height;
    switch (t.kind) {
        case Kind::zero: sum.summands.push_back(make_zero(k, t.sign)); return;
        case Kind::real:
            if (t.zeta.real() == 0.0 && k % 2 == 0) {
                sum.summands.push_back(make_zero(k, 1));
                sum.summands.push_back(make_zero(k, -1));
                return;
            }
            break;
        case Kind::imag:
            if (t.zeta.imag() == 0.0) {
                if (k % 2) throw std::domain_error("odd-height imaginary type with zero parameter");
                sum.summands.push_back(make_zero(k, t.sign));
                sum.summands.push_back(make_zero(k, t.sign));
                return;
            }
            break;
        case Kind::quad:
            if (t.zeta.imag() == 0.0) {
                IndecomposableType r = t;
                r.kind = Kind::real;
                r.exact_im.reset();
                append_expanded(sum, r);
                append_expanded(sum, r);
                return;
            }
            if (t.zeta.real() == 0.0) {
                for (int s : {1, -1}) {
                    IndecomposableType m = t;
                    m.kind = Kind::imag;
                    m.sign = s;
                    m.exact_re.reset();
                    append_expanded(sum, m);
                }
                return;
            }
            break;
    }
    validate(t);
    sum.summands.push_back(t);
}

int TypeSum::dimension() const {
    int d = 0;
    for (const auto& s : summands) d += s.dimension();
    return d;
}

std::pair<int, int> TypeSum::signature() const {
    std::pair<int, int> p{0, 0};
    for (const auto& s : summands) {
        const auto q = s.signature();
        p.first += q.first;
        p.second += q.second;
    }
    return p;
}

int TypeSum::height() const {
    int h = 0;
    for (const auto& s : summands) h = std::max(h, s.height);
    return h;
}

bool TypeSum::exact() const {
    return std::all_of(summands.begin(), summands.end(), [](const auto& s) { return s.is_exact(); });
}

void TypeSum::sort() {
    std::stable_sort(summands.begin(), summands.end(), [](const IndecomposableType& a, const IndecomposableType& b) {
        if (a.height != b.height) return a.height > b.height;
        if (a.kind != b.kind) return kind_rank(a.kind) < kind_rank(b.kind);
        if (a.sign != b.sign) return a.sign > b.sign;
        if (a.zeta.real() != b.zeta.real()) return a.zeta.real() < b.zeta.real();
        return a.zeta.imag() < b.zeta.imag();
    });
}

std::string TypeSum::str() const {
    if (summands.empty()) return "0";
    TypeSum t = *this;
    t.sort();
    std::ostringstream os;
    size_t i = 0;
    bool first = true;
    while (i < t.summands.size()) {
        const std::string s = t.summands[i].str();
        size_t j = i + 1;
        while (j < t.summands.size() && t.summands[j].str() == s) ++j;
        os << (first ? "" : " + ");
        if (j - i > 1) os << (j - i);
        os << s;
        first = false;
        i = j;
    }
    return os.str();
}

TypeSum type_sum(const TypeSum& a, const TypeSum& b) {
    TypeSum s = a;
    s.summands.insert(s.summands.end(), b.summands.begin(), b.summands.end());
    return s;
}

bool equivalent(const TypeSum& a, const TypeSum& b, double rel_tol) {
    if (a.summands.size() != b.summands.size()) return false;
    TypeSum x = a, y = b;
    x.sort();
    y.sort();
    std::vector<bool> used(y.summands.size(), false);
    for (const auto& s : x.summands) {
        bool found = false;
        for (size_t j = 0; j < y.summands.size() && !found; ++j) {
            if (used[j] || y.summands[j].key() != s.key()) continue;
            const double scale = std::max(1.0, std::abs(s.zeta));
            if (std::abs(y.summands[j].zeta - s.zeta) <= rel_tol * scale) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) return false;
    }
    return true;
}

TypeSum parse_type_sum(const std::string& text0) {
    // Normalize unicode spellings.
    std::string text;
    for (size_t i = 0; i < text0.size();) {
        if (text0.compare(i, 2, "\xCE\x94") == 0) {  // capital delta
            text += "D";
            i += 2;
        } else if (text0.compare(i, 3, "\xE2\x8A\x95") == 0) {  // circled plus
            text += " ; ";
            i += 3;
        } else if (text0.compare(i, 3, "\xE2\x88\x92") == 0 || text0.compare(i, 3, "\xE2\x81\xBB") == 0) {
            text += "-";  // minus sign, superscript minus
            i += 3;
        } else if (text0.compare(i, 3, "\xE2\x81\xBA") == 0) {  // superscript plus
            text += "+";
            i += 3;
        } else if (text0.compare(i, 2, "\xE2\x82") == 0 && i + 2 < text0.size() &&
                   static_cast<unsigned char>(text0[i + 2]) >= 0x80 && static_cast<unsigned char>(text0[i + 2]) <= 0x89) {
            text += static_cast<char>('0' + (static_cast<unsigned char>(text0[i + 2]) - 0x80));  // subscript digit
            i += 3;
        } else if (text0[i] == '_' || text0[i] == '^') {  // D_0^+ spelling
            ++i;
        } else {
            text += text0[i++];
        }
    }
    // Split summands: ';' or a '+' at depth 0 that follows a closing parenthesis.
    std::vector<std::string> parts;
    {
        int depth = 0;
        std::string cur;
        char last = '\0';
        for (char c : text) {
            if (c == '(') ++depth;
            if (c == ')') --depth;
            if (depth == 0 && (c == ';' || (c == '+' && last == ')'))) {
                parts.push_back(cur);
                cur.clear();
                last = '\0';
                continue;
            }
            cur += c;
            if (!std::isspace(static_cast<unsigned char>(c))) last = c;
        }
        parts.push_back(cur);
    }
    TypeSum sum;
    for (const auto& raw : parts) {
        const std::string p = strip(raw);
        if (p.empty()) throw std::invalid_argument("empty summand in type expression");
        size_t i = 0;
        int mult = 1;
        if (std::isdigit(static_cast<unsigned char>(p[0]))) {
            size_t used = 0;
            mult = std::stoi(p, &used);
            i = used;
        }
        while (i < p.size() && std::isspace(static_cast<unsigned char>(p[i]))) ++i;
        if (i >= p.size() || p[i] != 'D') throw std::invalid_argument("expected D in '" + p + "'");
        ++i;
        size_t used = 0;
        const int k = std::stoi(p.substr(i), &used);
        i += used;
        int sign = 0;
        if (i < p.size() && (p[i] == '+' || p[i] == '-')) sign = p[i++] == '+' ? 1 : -1;
        if (i >= p.size() || p[i] != '(' || p.back() != ')')
            throw std::invalid_argument("expected parenthesized eigenvalues in '" + p + "'");
        const std::string inside = p.substr(i + 1, p.size() - i - 2);
        std::vector<std::string> entries;
        {
            int depth = 0;
            std::string cur;
            for (char c : inside) {
                if (c == '(') ++depth;
                if (c == ')') --depth;
                if (c == ',' && depth == 0) {
                    entries.push_back(cur);
                    cur.clear();
                } else {
                    cur += c;
                }
            }
            entries.push_back(cur);
        }
        const ParsedComplex z = parse_complex(entries[0]);
        IndecomposableType t;
        t.height = k;
        t.sign = sign;
        if (entries.size() == 1) {
            if (!z.re.is_zero() || !z.im.is_zero() || sign == 0)
                throw std::invalid_argument("single-entry types must be D_k+(0) or D_k-(0): '" + p + "'");
            t.kind = Kind::zero;
        } else if (entries.size() == 2) {
            if (sign != 0) {
                if (!z.re.is_zero()) throw std::invalid_argument("signed pair needs imaginary entries: '" + p + "'");
                t.kind = Kind::imag;
                t.zeta = {0.0, std::abs(z.im.to_double())};
                t.exact_im = abs_exact(z.im);
            } else {
                if (!z.im.is_zero()) throw std::invalid_argument("unsigned pair needs real entries: '" + p + "'");
                t.kind = Kind::real;
                t.zeta = {std::abs(z.re.to_double()), 0.0};
                t.exact_re = abs_exact(z.re);
            }
        } else if (entries.size() == 4 && sign == 0) {
            t.kind = Kind::quad;
            t.zeta = {std::abs(z.re.to_double()), std::abs(z.im.to_double())};
            t.exact_re = abs_exact(z.re);
            t.exact_im = abs_exact(z.im);
        } else {
            throw std::invalid_argument("cannot read type '" + p + "'");
        }
        for (int m = 0; m < mult; ++m) append_expanded(sum, t);
    }
    sum.sort();
    return sum;
}

}  // namespace qkr
