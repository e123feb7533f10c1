#include <doctest.h>

#include "qkr/g2.hpp"
#include "qkr/moment.hpp"

using namespace qkr;

namespace {

const MetricSignature kSigs[] = {MetricSignature::compact(), MetricSignature::split()};

SevenVector<double> unit_x(MetricSignature sig, int k) { return SevenVector<double>::basis(sig.tag(), k); }

}  // namespace

TEST_CASE("convention self-test picks the plus factor") {
    for (auto sig : kSigs) {
        const MomentConvention& c = moment_convention(sig);
        CHECK(c.s == &sp1_factor_plus());
        CHECK(c.complement == &sp1_factor_minus());
        CHECK(c.kappa == -2.0 * sig.epsilon);
    }
}

TEST_CASE("moment and explicit moment agree") {
    std::mt19937_64 rng(41);
    for (auto sig : kSigs) {
        const double kappa = moment_convention(sig).kappa;
        for (int n = 0; n < 100; ++n) {
            const auto v = random_algebra(sig, rng, 2.0);
            const auto g = random_group(sig, rng, 1.5);
            const Sp1Vector a = kappa * moment(v, g), b = moment_explicit(matrix_to_two_form(v), g);
            CHECK((a - b).norm() <= 1e-10 * std::max(1.0, b.norm()));
        }
    }
}

TEST_CASE("moment at the identity vanishes on m") {
    std::mt19937_64 rng(42);
    for (auto sig : kSigs) {
        const auto A = random_algebra(sig, rng, 1.0);
        const SkewAdjointMatrix v(m_part(A.a), sig);
        CHECK(moment(v, GroupElement::identity(sig)).norm() <= 1e-15);
        CHECK(energy(v, GroupElement::identity(sig)) <= 1e-30);
    }
}

TEST_CASE("moment is invariant on the right under SO(3) x Sp(1)'") {
    std::mt19937_64 rng(43);
    std::normal_distribution<double> d;
    for (auto sig : kSigs) {
        const auto v = random_algebra(sig, rng, 1.0);
        const auto g = random_group(sig, rng, 1.0);
        Mat7 Y = Mat7::Zero();
        for (const auto& b : so3_basis()) Y += d(rng) * b;
        for (const auto& J : moment_convention(sig).complement->J) Y += d(rng) * J;
        const auto h = exp(SkewAdjointMatrix(Y, sig));
        CHECK((moment(v, g * h) - moment(v, g)).norm() <= 1e-10);
        // the s factor rotates the moment without changing its length
        Mat7 Z = Mat7::Zero();
        for (const auto& J : moment_convention(sig).s->J) Z += d(rng) * J;
        const auto k = exp(SkewAdjointMatrix(Z, sig));
        CHECK(moment(v, g * k).norm() == doctest::Approx(moment(v, g).norm()).epsilon(1e-10));
    }
}

TEST_CASE("equivariance under left translation") {
    std::mt19937_64 rng(44);
    for (auto sig : kSigs) {
        const auto v = random_algebra(sig, rng, 1.0);
        const auto g = random_group(sig, rng, 1.0), h = random_group(sig, rng, 1.0);
        CHECK((moment(Ad(h, v), h * g) - moment(v, g)).norm() <= 1e-10);
    }
}

TEST_CASE("differential and gradient against central differences") {
    std::mt19937_64 rng(45);
    const double h = 1e-5;
    for (auto sig : kSigs) {
        for (int n = 0; n < 20; ++n) {
            const auto v = random_algebra(sig, rng, 1.0);
            const auto g = random_group(sig, rng, 1.0);
            const auto w = random_algebra(sig, rng, 1.0);
            const Sp1Vector fd = (moment(v, g * exp(w, h)) - moment(v, g * exp(w, -h))) / (2 * h);
            const Sp1Vector an = moment_differential(v, g, w.a);
            CHECK((fd - an).norm() <= 1e-6 * std::max(1.0, an.norm()));
            const double efd = (energy(v, g * exp(w, h)) - energy(v, g * exp(w, -h))) / (2 * h);
            const double ean = plus_inner(energy_gradient(v, g), w.a);
            CHECK(std::abs(efd - ean) <= 1e-6 * std::max(1.0, std::abs(ean)));
        }
    }
}

TEST_CASE("gradient lies in m") {
    std::mt19937_64 rng(46);
    for (auto sig : kSigs) {
        const auto v = random_algebra(sig, rng, 1.0);
        const auto g = random_group(sig, rng, 1.0);
        const Mat7 G = energy_gradient(v, g);
        CHECK((m_part(G) - G).norm() <= 1e-14);
    }
}

TEST_CASE("canonical zero-locus samples") {
    SUBCASE("compact") {
        const auto pts = sample_zero_locus_canonical(unit_x(MetricSignature::compact(), 1), 50, 7);
        REQUIRE(pts.size() == 50);
        for (const auto& p : pts) {
            CHECK(p.residual <= 1e-9);
            CHECK(p.g.residual() <= 1e-9);
        }
    }
    SUBCASE("split, timelike / spacelike / lightlike") {
        SevenVector<double> light = unit_x(MetricSignature::split(), 1);
        light[3] = 1.0;
        for (const auto& x : {unit_x(MetricSignature::split(), 1), unit_x(MetricSignature::split(), 4), light})
            for (const auto& p : sample_zero_locus_canonical(x, 20, 8)) CHECK(p.residual <= 1e-9);
    }
    SUBCASE("bad inputs") {
        SevenVector<double> x = unit_x(MetricSignature::compact(), 1);
        x[0] = 2.0;
        CHECK_THROWS_AS(sample_zero_locus_canonical(x, 5, 1), std::invalid_argument);
        CHECK_THROWS_AS(sample_zero_locus_canonical(unit_x(MetricSignature::compact(), 1), 0, 1),
                        std::invalid_argument);
    }
    SUBCASE("same seed, same points") {
        const auto a = sample_zero_locus_canonical(unit_x(MetricSignature::compact(), 2), 3, 99);
        const auto b = sample_zero_locus_canonical(unit_x(MetricSignature::compact(), 2), 3, 99);
        for (int i = 0; i < 3; ++i) CHECK(a[i].g.g == b[i].g.g);
    }
}

TEST_CASE("rank of the differential drops exactly at irregular points") {
    std::mt19937_64 rng(47);
    for (auto sig : kSigs) {
        // v in s: (Ad v)_m = 0 at the identity
        const SkewAdjointMatrix v(moment_convention(sig).s->J[0], sig);
        const auto e = GroupElement::identity(sig);
        CHECK(m_component_norm(v, e) == 0.0);
        CHECK(moment_differential_rank(v, e) < 3);
        CHECK(classify_regularity(v, e) != Regularity::regular);
        CHECK_THROWS_AS(second_fundamental_form(v, e, Mat7::Zero(), Mat7::Zero()), DegenerateDenominator);
        const auto g = random_group(sig, rng, 1.0);
        CHECK(moment_differential_rank(v, g) == 3);
        CHECK(classify_regularity(v, g) == Regularity::regular);
    }
}

TEST_CASE("tangent directions of the zero locus") {
    const auto pts = sample_zero_locus_canonical(unit_x(MetricSignature::compact(), 1), 3, 5);
    for (const auto& p : pts) {
        const auto T = zero_locus_tangent_basis(p.v, p.g);
        CHECK(T.size() == 9);
        for (const auto& w : T) {
            CHECK(moment_differential(p.v, p.g, w).norm() <= 1e-9);
            CHECK(plus_norm(w) == doctest::Approx(1.0));
        }
        const auto II = second_fundamental_form(p.v, p.g, T[0], T[1]);
        CHECK((II - second_fundamental_form(p.v, p.g, T[1], T[0])).norm() <= 1e-10);
        const double K = sectional_curvature(p.v, p.g, T[0], T[1]);
        CHECK(std::isfinite(K));
        CHECK(sectional_curvature(p.v, p.g, T[1], T[0]) == doctest::Approx(K).epsilon(1e-10));
    }
}

TEST_CASE("quaternionic two-form is alternating") {
    std::mt19937_64 rng(48);
    for (auto sig : kSigs) {
        const auto a = random_algebra(sig, rng, 1.0), b = random_algebra(sig, rng, 1.0);
        const Mat7 u = m_part(a.a), w = m_part(b.a);
        CHECK((quaternionic_two_form(u, w, sig) + quaternionic_two_form(w, u, sig)).norm() <= 1e-15);
    }
}

TEST_CASE("flow decreases the energy") {
    std::mt19937_64 rng(49);
    const auto sig = MetricSignature::compact();
    for (int n = 0; n < 5; ++n) {
        const auto v = random_algebra(sig, rng, 1.0);
        const auto g = random_group(sig, rng, 2.0);
        FlowOptions opt;
        opt.max_steps = 3000;
        const FlowResult r = flow(v, g, opt);
        CHECK(r.monotone);
        CHECK(r.trajectory.front().energy >= r.trajectory.back().energy);
        if (r.status == FlowStatus::converged) CHECK(r.trajectory.back().energy <= 1e-8);
    }
    CHECK_THROWS_AS(MomentAction(SkewAdjointMatrix(Mat7::Zero(), sig)), std::invalid_argument);
}

TEST_CASE("extra symmetry: g Z(v) = Z(Ad_g v)") {
    std::mt19937_64 rng(50);
    const auto pts = sample_zero_locus_canonical(unit_x(MetricSignature::compact(), 1), 5, 3);
    for (const auto& p : pts) {
        const auto g = random_group(MetricSignature::compact(), rng, 1.0);
        CHECK(extra_symmetry_check(p.v, g, p.g));
        CHECK(extra_symmetry_check(p.v, g, random_group(MetricSignature::compact(), rng, 1.0)));
    }
}
