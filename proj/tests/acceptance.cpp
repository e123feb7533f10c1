// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

#include "qkr/canonical.hpp"
#include "qkr/classify.hpp"
#include "qkr/g2.hpp"
#include "qkr/moment.hpp"
#include "qkr/properness.hpp"

using namespace qkr;

namespace {

const MetricSignature kSigs[] = {MetricSignature::compact(), MetricSignature::split()};

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok && pass) detail << "first failure: " << what << "; ";
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class T>
bool all_zero(const AlgebraElement<T>& x) {
    for (const auto& c : x.c)
        if (c != 0) return false;
    return true;
}

double max_abs(const AlgebraElement<double>& x) {
    double s = 0;
    for (double c : x.c) s = std::max(s, std::abs(c));
    return s;
}

SevenVector<double> random_unit(MetricSignature sig, int causal, std::mt19937_64& rng) {
    // causal: +1 timelike (norm 1), -1 spacelike (norm -1); compact ignores it
    std::normal_distribution<double> d;
    SevenVector<double> x;
    x.tag = sig.tag();
    double a2 = 0, b2 = 0;
    for (int i = 0; i < 7; ++i) {
        x[i] = d(rng);
        (i < 3 ? a2 : b2) += x[i] * x[i];
    }
    if (sig.epsilon == 1) {
        for (auto& c : x.c) c /= std::sqrt(a2 + b2);
    } else if (causal > 0) {
        for (int i = 0; i < 3; ++i) x[i] *= std::sqrt(1 + b2) / std::sqrt(a2);
    } else {
        for (int i = 3; i < 7; ++i) x[i] *= std::sqrt(1 + a2) / std::sqrt(b2);
    }
    return x;
}

// 1. Moufang, alternativity and norm multiplicativity, exact and float.
void algebra_identities(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    constexpr int n = 10000;
    std::mt19937_64 rng(1001);
    std::uniform_int_distribution<int> num(-9, 9), den(1, 4);
    std::normal_distribution<double> d;
    double worst = 0;
    for (int eps : {1, -1}) {
        const AlgebraTag t{eps};
        for (int k = 0; k < n; ++k) {
            AlgebraElement<mpq_class> x, y, z;
            x.tag = y.tag = z.tag = t;
            for (int i = 0; i < 8; ++i) {
                x.c[i] = mpq_class(num(rng), den(rng));
                y.c[i] = mpq_class(num(rng), den(rng));
                z.c[i] = mpq_class(num(rng), den(rng));
                x.c[i].canonicalize();
                y.c[i].canonicalize();
                z.c[i].canonicalize();
            }
            const auto r = moufang_residuals(x, y, z);
            o.require(all_zero(r.left) && all_zero(r.right) && all_zero(r.middle), "exact Moufang");
            o.require(all_zero(associator(x, x, y)) && all_zero(associator(y, x, x)), "exact alternativity");
            o.require(norm(x * y) == norm(x) * norm(y), "exact norm");

            AlgebraElement<double> p, q, s;
            p.tag = q.tag = s.tag = t;
            for (int i = 0; i < 8; ++i) {
                p.c[i] = d(rng);
                q.c[i] = d(rng);
                s.c[i] = d(rng);
            }
            const double P = max_abs(p), Q = max_abs(q), S = max_abs(s);
            const auto f = moufang_residuals(p, q, s);
            worst = std::max({worst, max_abs(f.left) / (P * P * Q * S), max_abs(f.right) / (P * P * Q * S),
                              max_abs(f.middle) / (P * P * Q * S), max_abs(associator(p, p, q)) / (P * P * Q),
                              max_abs(associator(q, p, p)) / (P * P * Q),
                              std::abs(norm(p * q) - norm(p) * norm(q)) / (P * P * Q * Q)});
        }
    }
    o.require(worst <= 1e-12, "float residual");  // relative to the product of the largest entries
    const double secs = seconds_since(t0);
    o.require(secs < 10.0, "runtime");
    o.detail << n << " exact + " << n << " float samples per algebra, worst float residual/scale " << worst
             << ", " << secs << " s";
}

// 2. g2 as the solution space of the seven linear equations.
void g2_dimension(Outcome& o) {
    double worst = 0;
    for (auto sig : kSigs) {
        const auto exact = g2_algebra_basis_exact(sig);
        o.require(exact.size() == 14, "exact dimension");
        for (const auto& X : exact)
            for (const auto& Y : exact)
                for (const auto& r : g2_equation_residuals(X * Y - Y * X, sig)) o.require(r == 0, "exact closure");
        const auto B = g2_algebra_basis(sig);
        o.require(B.size() == 14, "float dimension");
        for (const auto& X : B)
            for (const auto& Y : B)
                for (double r : g2_equation_residuals(bracket(X, Y), sig)) worst = std::max(worst, std::abs(r));
    }
    o.require(worst <= 1e-12, "float closure");
    o.detail << "dim 14 for eps = +1 and -1, exact closure, float bracket residual " << worst;
}

// 3. moment(F^-1(omega), g) against the explicit two-form formula.
void dual_path(Outcome& o) {
    std::mt19937_64 rng(1003);
    double worst = 0;
    for (auto sig : kSigs) {
        const double kappa = moment_convention(sig).kappa;
        for (int k = 0; k < 1000; ++k) {
            const Mat7 omega = matrix_to_two_form(random_algebra(sig, rng, 2.0));
            const auto g = random_group(sig, rng, 1.5);
            const Sp1Vector a = kappa * moment(two_form_to_matrix(omega, sig), g);
            const Sp1Vector b = moment_explicit(omega, g);
            worst = std::max(worst, (a - b).norm() / std::max(1.0, b.norm()));
        }
    }
    o.require(worst <= 1e-10, "agreement");
    o.detail << "2 x 1000 pairs, worst relative difference " << worst;
}

// 4. Sampled points of the canonical zero locus.
void zero_locus(Outcome& o) {
    std::mt19937_64 rng(1004);
    double worst = 0;
    int count = 0;
    for (auto sig : kSigs) {
        // half at a basis vector, half at a random unit (timelike) vector
        const auto e1 = SevenVector<double>::basis(sig.tag(), 1);
        const auto x = random_unit(sig, 1, rng);
        for (const auto& p : sample_zero_locus_canonical(e1, 500, 4001)) worst = std::max(worst, p.residual), ++count;
        for (const auto& p : sample_zero_locus_canonical(x, 500, 4002)) worst = std::max(worst, p.residual), ++count;
    }
    o.require(count == 2000, "sample count");
    o.require(worst <= 1e-9, "residual");
    o.detail << "1000 compact + 1000 split timelike points, worst residual " << worst;
}

// 5. A_x for the three causal classes of x.
void ax_types(Outcome& o) {
    const AlgebraTag t = AlgebraTag::split();
    struct Case {
        const char* name;
        std::array<int, 7> x;
        const char* want;
    };
    const Case cases[] = {{"timelike", {1, 0, 0, 0, 0, 0, 0}, "Δ₀⁺(i,−i) ⊕ 2Δ₀⁻(−i,i) ⊕ Δ₀⁺(0)"},
                          {"spacelike", {0, 0, 0, 1, 0, 0, 0}, "3Δ₀(1,−1) ⊕ Δ₀⁻(0)"},
                          {"lightlike", {1, 0, 0, 1, 0, 0, 0}, "Δ₁(0,0) ⊕ Δ₂⁺(0)"}};
    for (const auto& c : cases) {
        SevenVector<mpq_class> x;
        x.tag = t;
        for (int i = 0; i < 7; ++i) x.c[i] = c.x[i];
        const auto r = classify_exact(canonical_vector_field_exact(x), MetricSignature::split());
        const std::string want = parse_type_sum(c.want).str();
        const std::string got = r ? r->types.str() : std::string("(exact path declined)");
        o.require(got == want, c.name);
        o.detail << c.name << ": " << got << "; ";
    }
}

// 6. Family round trip under conjugation.
void round_trip(Outcome& o) {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(1006);
    std::uniform_real_distribution<double> U(0.5, 2.0), F(0.0, 2.0);
    int runs = 0;
    double worst = 0;
    std::string first_bad;
    for (const auto& row : family_table()) {
        for (int draw = 0; draw < 5; ++draw) {
            // admissible: parameters pairwise at least 0.05 apart, so no two eigenvalues collide
            FamilyLabel fl{row.name, {}, {}, {}};
            for (bool ok = false; !ok;) {
                fl.params.clear();
                for (int i = 0; i < row.nparams; ++i) fl.params.push_back(U(rng));
                ok = true;
                for (int i = 0; i < row.nparams; ++i)
                    for (int j = 0; j < i; ++j) ok = ok && std::abs(fl.params[i] - fl.params[j]) >= 0.05;
            }
            const FamilyLabel want = family_label(family_type_sum(fl));  // parameters in canonical order
            const auto A = canonical_representative(fl);
            for (int k = 0; k <= 100; ++k) {
                const auto B = k == 0 ? A : Ad(random_group(A.sig, rng, F(rng)), A);
                ++runs;
                try {
                    const FamilyLabel got = family_label(classify(B));
                    bool same = got.name == want.name && got.params.size() == want.params.size();
                    for (size_t i = 0; same && i < want.params.size(); ++i) {
                        const double e = std::abs(got.params[i] - want.params[i]);
                        worst = std::max(worst, e);
                        same = e <= 1e-6;
                    }
                    if (!same && first_bad.empty()) first_bad = row.name + " -> " + got.name;
                    o.require(same, "family or parameters changed");
                } catch (const std::exception& e) {
                    if (first_bad.empty()) first_bad = row.name + ": " + e.what();
                    o.require(false, "classification threw");
                }
            }
        }
    }
    const double secs = seconds_since(t0);
    o.require(secs < 60.0, "runtime");
    o.detail << runs << " classifications (24 x 5 draws x (1 + 100 conjugates)), worst parameter error " << worst
             << ", " << secs << " s";
    if (!first_bad.empty()) o.detail << "; " << first_bad;
}

// 7. Properness and freeness verdicts.
void properness(Outcome& o) {
    int non_iv4 = 0;
    for (const auto& row : family_table()) {
        if (row.name == "IV_4") continue;
        FamilyLabel fl{row.name, {}, {}, {}};
        for (int i = 0; i < row.nparams; ++i) fl.params.push_back(0.75 + 0.5 * i);
        const auto r = is_proper_free(fl);
        o.require(r.verdict == Verdict::proper_free && r.proper, row.name);
        ++non_iv4;
    }
    const auto iv4 = [](std::vector<const char*> p) {
        FamilyLabel fl{"IV_4", {}, std::vector<ExactReal>{}, {}};
        for (const char* s : p) {
            fl.exact_params->push_back(ExactReal::parse(s));
            fl.params.push_back(fl.exact_params->back().to_double());
        }
        return is_proper_free(fl);
    };
    const auto a = iv4({"1", "2", "3"});
    o.require(a.proper && a.irregular_points && !*a.irregular_points, "IV_4(1,2,3)");
    const auto b = iv4({"1", "1", "1"});
    o.require(b.proper && b.irregular_points && *b.irregular_points, "IV_4(1,1,1)");
    const auto c = iv4({"1", "sqrt(2)", "1"});
    o.require(!c.proper && c.exact && c.verdict == Verdict::not_proper, "IV_4(1,sqrt(2),1)");
    o.detail << non_iv4 << " non-IV_4 families proper_free; IV_4(1,2,3) proper, no irregular points; "
             << "IV_4(1,1,1) proper with irregular points; IV_4(1,sqrt(2),1) " << to_string(c.verdict)
             << (c.exact ? " (exact)" : "");
}

// 8. Finite differences and the energy flow.
void calculus(Outcome& o) {
    std::mt19937_64 rng(1008);
    const double h = 1e-5;
    double worst_mu = 0, worst_e = 0;
    for (int k = 0; k < 1000; ++k) {
        const auto sig = kSigs[k % 2];
        const auto v = random_algebra(sig, rng, 1.0);
        const auto g = random_group(sig, rng, 1.0);
        const auto w = random_algebra(sig, rng, 1.0);
        const auto gp = g * exp(w, h), gm = g * exp(w, -h);
        const Sp1Vector fd = (moment(v, gp) - moment(v, gm)) / (2 * h);
        const Sp1Vector an = moment_differential(v, g, w.a);
        worst_mu = std::max(worst_mu, (fd - an).norm() / std::max(1.0, an.norm()));
        const double efd = (energy(v, gp) - energy(v, gm)) / (2 * h);
        const double ean = plus_inner(energy_gradient(v, g), w.a);
        worst_e = std::max(worst_e, std::abs(efd - ean) / std::max(1.0, std::abs(ean)));
    }
    o.require(worst_mu <= 1e-6, "moment differential");
    o.require(worst_e <= 1e-6, "energy gradient");

    const auto sig = MetricSignature::compact();
    int converged = 0, monotone = 0;
    for (int k = 0; k < 100; ++k) {
        const auto v = random_algebra(sig, rng, 1.0);
        const auto g0 = random_group(sig, rng, 2.0);
        FlowOptions opt;
        opt.record_all = false;
        const FlowResult r = flow(v, g0, opt);
        monotone += r.monotone;
        converged += r.status == FlowStatus::converged && energy(v, r.trajectory.back().g) <= 1e-8;
    }
    o.require(monotone == 100, "monotone energy");
    o.require(converged >= 95, "flow convergence");
    o.detail << "1000 configurations, worst relative error d mu " << worst_mu << ", grad E " << worst_e
             << "; flow: " << converged << "/100 converged, " << monotone << "/100 monotone";
}

// 9. Rank of the differential drops exactly at irregular zero-locus points.
void critical_set(Outcome& o) {
    std::mt19937_64 rng(1009);
    std::uniform_real_distribution<double> logc(-4.0, 0.0);
    int agree = 0, irregular = 0, n = 0;
    for (int k = 0; k < 1000; ++k, ++n) {
        const auto sig = kSigs[k % 2];
        // Ad_g^-1 v = Y with no s part puts g in the zero locus; the m part decides regularity
        const Mat7 R = random_algebra_matrix(sig, rng, 1.0);
        const double c = (k / 2) % 2 == 0 ? 0.0 : std::pow(10.0, logc(rng));
        const SkewAdjointMatrix Y(h_prime_part(R, sig) + c * m_part(random_algebra_matrix(sig, rng, 1.0)), sig);
        const auto g = random_group(sig, rng, 1.0);
        const auto v = Ad(g, Y);
        const bool in_zero = moment(v, g).norm() <= kZeroLocusTol;
        const bool irr = m_component_norm(v, g) <= kZeroLocusTol;
        const bool low_rank = moment_differential_rank(v, g) < 3;
        irregular += irr;
        agree += in_zero && (irr == low_rank);
    }
    o.require(agree == n, "rank vs m-norm");
    o.require(irregular > 0 && irregular < n, "both kinds present");
    o.detail << n << " engineered points (" << irregular << " irregular), " << agree
             << " agree: rank < 3 iff |(Ad_g^-1 v)_m| <= " << kZeroLocusTol;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria = {
        {"1 algebra identities", algebra_identities}, {"2 g2 dimension and closure", g2_dimension},
        {"3 moment dual path", dual_path},            {"4 zero-locus samples", zero_locus},
        {"5 A_x type strings", ax_types},             {"6 family round trip", round_trip},
        {"7 properness predicates", properness},      {"8 calculus and flow", calculus},
        {"9 critical set", critical_set}};
    int failed = 0;
    for (const auto& [name, fn] : criteria) {
        Outcome o;
        try {
            fn(o);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail << "exception: " << e.what();
        }
        std::printf("%s  %s  %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.str().c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    return failed == 0 ? 0 : 1;
}
