#include <doctest.h>

#include "support.hpp"

using namespace weilcalc;
using weilcalc::test::P;

TEST_SUITE("algebroid") {

TEST_CASE("so(3) structure constants") {
    AlgebroidPresentation k = so3_bundle(0);
    CHECK(k.bracket(k.basis(0), k.basis(1)) == k.basis(2));
    CHECK(k.bracket(k.basis(1), k.basis(0)) == scale(Poly(0, -1), k.basis(2)));
    Report r = validate_algebroid(k);
    CHECK(r.ok());
}

TEST_CASE("bracket is alternating on random sections") {
    const auto& A = test::fixture("F2_semisimple_2d").algebroid;
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        Section a = random_section(2, A.rank(), 2, rng);
        Section zero = zero_section(2, A.rank());
        CHECK(A.bracket(a, a) == zero);
    }
}

TEST_CASE("Leibniz rule and anchor morphism on random sections") {
    const auto& A = test::fixture("F1_abelian_2d").algebroid;
    std::mt19937_64 rng(6);
    for (int t = 0; t < 10; ++t) {
        Section a = random_section(2, 3, 2, rng), b = random_section(2, 3, 2, rng);
        Poly f = random_poly(2, 2, rng);
        Section lhs = A.bracket(a, scale(f, b));
        Section rhs = add(scale(f, A.bracket(a, b)), scale(derivative(A.anchor_of(a), f), b));
        CHECK(lhs == rhs);
        CHECK(A.anchor_of(A.bracket(a, b)) == vf_bracket(A.anchor_of(a), A.anchor_of(b)));
    }
}

TEST_CASE("coupled bracket of the abelian fixture") {
    const auto& A = test::fixture("F1_abelian_2d").algebroid;
    Section expected = scale(P("-x"), A.basis(2));
    CHECK(A.bracket(A.basis(0), A.basis(1)) == expected);
}

TEST_CASE("validation of tampered so(3)") {
    AlgebroidPresentation scaled = so3_bundle(0);
    scaled.set_bracket(0, 1, 2, Poly(0, 2));
    // A rescaled basis of so(3) still satisfies Jacobi.
    CHECK(validate_algebroid(scaled).passed("Jacobi"));

    AlgebroidPresentation broken = so3_bundle(0);
    broken.set_bracket(0, 1, 0, Poly(0, 1));
    Report r = validate_algebroid(broken);
    CHECK_FALSE(r.passed("Jacobi"));
    CHECK(r.checks()[1].detail == "fails on (e1,e2,e3)");
    CHECK(r.passed("antisymmetry"));
}

TEST_CASE("coupled fixtures are Lie algebroids") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        CHECK(validate_algebroid(test::fixture(name).algebroid).ok());
    }
}

TEST_CASE("anchor morphism failure is named") {
    AlgebroidPresentation A(2, 2, test::kXY);
    A.anchor(0, 0) = Poly(2, 1);
    A.anchor(1, 1) = P("x");
    Report r = validate_algebroid(A);
    CHECK_FALSE(r.passed("anchor morphism"));
    CHECK(r.passed("Jacobi"));
}

}
