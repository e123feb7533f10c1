#include <doctest.h>

#include "qkr/classify.hpp"
#include "qkr/lie.hpp"

using namespace qkr;

namespace {

const MetricSignature kSigs[] = {MetricSignature::compact(), MetricSignature::split()};

}

TEST_CASE("signature parsing") {
    CHECK(MetricSignature::parse("7,0") == MetricSignature::compact());
    CHECK(MetricSignature::parse("3,4") == MetricSignature::split());
    CHECK_THROWS_AS(MetricSignature::parse("4,3"), std::invalid_argument);
    CHECK(MetricSignature::split().eta()(6, 6) == -1.0);
}

TEST_CASE("random algebra and group elements") {
    std::mt19937_64 rng(31);
    for (auto sig : kSigs) {
        for (int n = 0; n < 20; ++n) {
            const auto A = random_algebra(sig, rng, 2.0);
            CHECK(A.residual() <= 1e-14);
            CHECK(A.a.norm() == doctest::Approx(2.0));
            const auto g = random_group(sig, rng, 2.0);
            CHECK(g.residual() <= 1e-10);
            CHECK(g.in_identity_component());
            CHECK(g.g.determinant() == doctest::Approx(1.0));
            CHECK((g * g.inverse()).g.isIdentity(1e-10));
        }
    }
}

TEST_CASE("exp is a one-parameter group") {
    std::mt19937_64 rng(32);
    for (auto sig : kSigs) {
        const auto A = random_algebra(sig, rng, 1.5);
        const auto g = exp(A, 0.3) * exp(A, 0.7);
        CHECK((g.g - exp(A).g).norm() <= 1e-12);
        CHECK(exp(A, 0.0).g.isIdentity(0.0));
    }
}

TEST_CASE("bracket: antisymmetry and Jacobi") {
    std::mt19937_64 rng(33);
    for (auto sig : kSigs) {
        const auto A = random_algebra(sig, rng, 1), B = random_algebra(sig, rng, 1), C = random_algebra(sig, rng, 1);
        CHECK((bracket(A, B).a + bracket(B, A).a).norm() <= 1e-15);
        const Mat7 J = bracket(A, bracket(B, C)).a + bracket(B, bracket(C, A)).a + bracket(C, bracket(A, B)).a;
        CHECK(J.norm() <= 1e-14);
        CHECK(bracket(A, B).residual() <= 1e-14);
        CHECK((ad(A, B).a - bracket(A, B).a).norm() == 0.0);
    }
}

TEST_CASE("Ad preserves the bracket and the Killing form") {
    std::mt19937_64 rng(34);
    for (auto sig : kSigs) {
        const auto A = random_algebra(sig, rng, 1), B = random_algebra(sig, rng, 1);
        const auto g = random_group(sig, rng, 1.0);
        CHECK(killing(Ad(g, A), Ad(g, B)) == doctest::Approx(killing(A, B)).epsilon(1e-10));
        CHECK((Ad(g, bracket(A, B)).a - bracket(Ad(g, A), Ad(g, B)).a).norm() <= 1e-10);
        CHECK((Ad_inv(g, Ad(g, A)).a - A.a).norm() <= 1e-10);
    }
}

TEST_CASE("split into h', s, m") {
    std::mt19937_64 rng(35);
    for (auto sig : kSigs) {
        const auto A = random_algebra(sig, rng, 2.0);
        const SplitParts p = split(A);
        CHECK((p.reassemble() - A.a).norm() <= 1e-14);
        CHECK((p.m - m_part(A.a)).norm() == 0.0);
        CHECK(p.m.topLeftCorner<3, 3>().norm() == 0.0);
        CHECK(p.m.bottomRightCorner<4, 4>().norm() == 0.0);
        CHECK(p.h_prime.topRightCorner<3, 4>().norm() == 0.0);
        // s and h' are orthogonal pieces of h
        CHECK(killing(p.s_matrix, p.h_prime) == doctest::Approx(0.0).epsilon(1e-12));
        CHECK((p.s_matrix - moment_convention(sig).s->matrix(p.s)).norm() <= 1e-14);
    }
}

TEST_CASE("sp(1) factors commute and are normalized") {
    for (const Sp1Factor* f : {&sp1_factor_plus(), &sp1_factor_minus()})
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) CHECK((f->J[a] * f->J[b]).trace() == doctest::Approx(a == b ? -4.0 : 0.0));
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) CHECK(bracket(sp1_factor_plus().J[a], sp1_factor_minus().J[b]).norm() == 0.0);
    const Sp1Vector c(0.3, -1.0, 2.0);
    CHECK((sp1_factor_plus().coords(sp1_factor_plus().matrix(c)) - c).norm() <= 1e-15);
}

TEST_CASE("two-form correspondence") {
    std::mt19937_64 rng(36);
    for (auto sig : kSigs) {
        const auto A = random_algebra(sig, rng, 1.0);
        const Mat7 w = matrix_to_two_form(A);
        CHECK((w + w.transpose()).norm() == 0.0);
        CHECK((two_form_to_matrix(w, sig).a - A.a).norm() <= 1e-15);
    }
}

TEST_CASE("A_x annihilates x and is skew-adjoint") {
    std::mt19937_64 rng(37);
    std::normal_distribution<double> d;
    for (auto sig : kSigs) {
        SevenVector<double> x;
        x.tag = sig.tag();
        for (auto& c : x.c) c = d(rng);
        const auto A = canonical_vector_field(x);
        CHECK(A.residual() <= 1e-14);
        Vec7 v;
        for (int i = 0; i < 7; ++i) v(i) = x[i];
        CHECK((A.a * v).norm() <= 1e-14);
    }
}

TEST_CASE("rotation block form and compact rates") {
    std::mt19937_64 rng(38);
    const auto A = so7_block_form(1, 2, 3);
    CHECK(A.residual() == 0.0);
    const auto g = random_group(MetricSignature::compact(), rng, 2.0);
    const auto r = classify_compact(Ad(g, A));
    CHECK(r[0] == doctest::Approx(1.0));
    CHECK(r[1] == doctest::Approx(2.0));
    CHECK(r[2] == doctest::Approx(3.0));
    const auto z = classify_compact(SkewAdjointMatrix(Mat7::Zero(), MetricSignature::compact()));
    CHECK(z == std::array<double, 3>{0, 0, 0});
}

TEST_CASE("algebra bases") {
    for (auto sig : kSigs) {
        const auto B = algebra_basis(sig);
        Eigen::Matrix<double, 49, 21> M;
        for (int k = 0; k < 21; ++k) {
            CHECK(SkewAdjointMatrix(B[k], sig).residual() == 0.0);
            M.col(k) = Eigen::Map<const Eigen::Matrix<double, 49, 1>>(B[k].data());
        }
        CHECK(Eigen::FullPivLU<Eigen::MatrixXd>(M).rank() == 21);
        for (const Mat7& X : m_basis(sig)) CHECK((m_part(X) - X).norm() == 0.0);
    }
}
