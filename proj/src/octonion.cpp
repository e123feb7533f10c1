#include "qkr/octonion.hpp"

#include <cmath>
#include <sstream>

namespace qkr {

MultiplicationTable multiplication_table(AlgebraTag tag) {
    MultiplicationTable t{};
    for (int i = 0; i < 8; ++i) {
        for (int j = 0; j < 8; ++j) {
            const auto p = multiply(AlgebraElement<double>::basis(tag, i),
                                    AlgebraElement<double>::basis(tag, j));
            int found = -1;
            for (int k = 0; k < 8; ++k) {
                if (p.c[k] != 0.0) {
                    if (found >= 0) throw std::logic_error("basis product is not a signed basis element");
                    found = k;
                }
            }
            if (found < 0) throw std::logic_error("basis product vanished");
            t[i][j] = SignedBasis{p.c[found] > 0 ? 1 : -1, found};
        }
    }
    return t;
}

std::string to_string(const AlgebraElement<double>& x) {
    std::ostringstream os;
    os << x.tag.name() << "(";
    for (int i = 0; i < 8; ++i) os << (i ? ", " : "") << x.c[i];
    os << ")";
    return os.str();
}

namespace {

AlgebraElement<mpz_class> cleared(const AlgebraElement<mpq_class>& x, mpz_class& den) {
    den = 1;
    for (const auto& c : x.c) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    AlgebraElement<mpz_class> r;
    r.tag = x.tag;
    for (int i = 0; i < 8; ++i) r.c[i] = x.c[i].get_num() * (den / x.c[i].get_den());
    return r;
}

}  // namespace

AlgebraElement<mpq_class> multiply(const AlgebraElement<mpq_class>& x, const AlgebraElement<mpq_class>& y) {
    detail::require_same(x.tag, y.tag);
    mpz_class dx, dy;
    const AlgebraElement<mpz_class> p = multiply(cleared(x, dx), cleared(y, dy));
    const mpz_class d = dx * dy;
    AlgebraElement<mpq_class> r;
    r.tag = x.tag;
    for (int i = 0; i < 8; ++i) {
        r.c[i] = mpq_class(p.c[i], d);
        r.c[i].canonicalize();
    }
    return r;
}

}  // namespace qkr
