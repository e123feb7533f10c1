#include "qkr/properness.hpp"

#include <cmath>

namespace qkr {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::proper_free: return "proper_free";
        case Verdict::proper_iff_commensurable: return "proper_iff_commensurable";
        case Verdict::not_proper: return "not_proper";
    }
    return "?";
}

namespace {

// Integers proportional to the rationals r, divided by their gcd.
std::vector<mpz_class> integer_multiple(const std::vector<mpq_class>& r) {
    mpz_class l = 1;
    for (const auto& q : r) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
    std::vector<mpz_class> out;
    mpz_class g = 0;
    for (const auto& q : r) {
        out.push_back(q.get_num() * (l / q.get_den()));
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out.back().get_mpz_t());
    }
    if (g != 0)
        for (auto& z : out) z /= g;
    return out;
}

}  // namespace

ProperReport is_proper_free(const FamilyLabel& fl) {
    family_row(fl.name);  // validates the name
    ProperReport rep;
    if (fl.name != "IV_4") {
        rep.exact = true;
        return rep;
    }
    rep.verdict = Verdict::proper_iff_commensurable;
    if (fl.params.size() != 3) throw std::domain_error("IV_4 takes 3 parameters");

    std::vector<mpq_class> ratios;  // params relative to the first nonzero one
    bool all_zero = true;
    if (fl.exact_params) {
        rep.exact = true;
        const auto& p = *fl.exact_params;
        rep.commensurable = commensurable(p[0], p[1]) && commensurable(p[0], p[2]) && commensurable(p[1], p[2]);
        int ref = -1;
        for (int i = 0; i < 3; ++i)
            if (!p[i].is_zero() && ref < 0) ref = i;
        all_zero = ref < 0;
        if (rep.commensurable && !all_zero) {
            // p_i = r_i * p_ref, read off any common radicand
            const auto& [d, qref] = *p[ref].terms().begin();
            for (int i = 0; i < 3; ++i) {
                const auto& t = p[i].terms();
                ratios.push_back(t.empty() ? mpq_class(0) : mpq_class(t.at(d) / qref));
            }
        }
        rep.irregular_points = p[0] == p[1] || p[0] == p[2] || p[1] == p[2];
    } else {
        const auto& p = fl.params;
        int ref = -1;
        for (int i = 0; i < 3; ++i)
            if (p[i] != 0.0 && ref < 0) ref = i;
        all_zero = ref < 0;
        rep.commensurable = true;
        if (!all_zero) {
            for (int i = 0; i < 3; ++i) {
                RatioReconstruction rr;
                rr.value = p[i] / p[ref];
                rr.ratio = rational_reconstruction(rr.value, kRatioMaxDen, kRatioRelTol);
                if (rr.ratio) {
                    rr.error = std::abs(rr.ratio->get_d() - rr.value);
                    ratios.push_back(*rr.ratio);
                } else {
                    rep.commensurable = false;
                }
                rep.reconstruction.push_back(rr);
            }
        }
        auto same = [](double x, double y) { return std::abs(x - y) <= kRatioRelTol * std::max(1.0, std::abs(x)); };
        rep.irregular_points = same(p[0], p[1]) || same(p[0], p[2]) || same(p[1], p[2]);
    }
    rep.proper = rep.commensurable;
    if (!rep.proper) {
        rep.verdict = Verdict::not_proper;
        rep.irregular_points.reset();
        return rep;
    }
    if (!all_zero) {
        bool nonzero = true;
        for (const auto& r : ratios) nonzero = nonzero && sgn(r) != 0;
        if (nonzero) rep.integer_rates = integer_multiple(ratios);
    }
    return rep;
}

}  // namespace qkr
