#include <doctest.h>

#include "support.hpp"

using namespace weilcalc;
using weilcalc::test::P;

namespace {

Form scalar(int degree, uint32_t mask, const Poly& f) {
    Form out(f.nvars(), degree, 1);
    out.comp(0, mask) = f;
    return out;
}

const Fixture& F1() { return test::fixture("F1_abelian_2d"); }

}  // namespace

TEST_SUITE("weil") {

TEST_CASE("antisymmetric and symmetric storage") {
    WeilCochain c(2, 3, 3, 2, 1);
    c.at(1, {0, 2}, {1}) = scalar(1, 0b01, P("x"));
    CHECK(c.value(1, {2, 0}, {1}) == -scalar(1, 0b01, P("x")));
    CHECK(c.value(1, {0, 0}, {1}).is_zero());
    WeilCochain s(2, 3, 2, 2, 1);
    s.at(2, {}, {0, 2}) = scalar(0, 0, P("y"));
    CHECK(s.value(2, {}, {2, 0}) == scalar(0, 0, P("y")));
    CHECK(s.kmin() == 0);
    CHECK(WeilCochain(2, 3, 2, 4, 1).kmin() == 2);
}

TEST_CASE("evaluation is forced by the Leibniz rule") {
    const auto& c = F1().connection->cochain();
    const auto& A = F1().algebroid;
    Section ye = scale(P("y"), A.basis(2));
    CHECK(evaluate(c, {ye}, {}) == scalar(1, 0b10, P("1")));
    CHECK(evaluate(c, {A.basis(0)}, {}) == c.entry(0, 0, 0));
    CHECK(evaluate(c, {}, {A.basis(2)}) == c.entry(1, 0, 2));

    std::mt19937_64 rng(2);
    WeilCochain r = random_cochain(2, 3, 1, 1, 1, 2, 8);
    for (int t = 0; t < 5; ++t) {
        Section a = random_section(2, 3, 1, rng), b = random_section(2, 3, 1, rng);
        Poly f = random_poly(2, 1, rng);
        Form lead = evaluate(r, {scale(f, a)}, {});
        CHECK(lead == f * evaluate(r, {a}, {}) + wedge(Form::differential(f), evaluate(r, {}, {a})));
        CHECK(evaluate(r, {add(a, b)}, {}) == evaluate(r, {a}, {}) + evaluate(r, {b}, {}));
        CHECK(evaluate(r, {}, {scale(f, a)}) == f * evaluate(r, {}, {a}));
    }
}

TEST_CASE("delta of the abelian curving") {
    const auto& A = F1().algebroid;
    WeilCochain dF = delta(A, F1().ideal->adjoint(), test::level0(scalar(2, 0b11, P("x")), 3));
    CHECK(dF.value(0, {0}, {}) == scalar(2, 0b11, P("1")));
    CHECK(dF.value(1, {}, {1}) == scalar(1, 0b01, P("-x")));
    CHECK(dF.value(0, {2}, {}).is_zero());
}

TEST_CASE("delta squares to zero on every fixture") {
    uint64_t seed = 100;
    for (const auto& name : fixture_names()) {
        const auto& f = test::fixture(name);
        ARep rep = f.ideal->adjoint();
        for (int p = 0; p <= 2; ++p)
            for (int q = 0; q <= 2; ++q) {
                CAPTURE(name);
                CAPTURE(p);
                CAPTURE(q);
                WeilCochain c = random_cochain(f.algebroid, rep, p, q, 1, ++seed);
                CHECK(delta(f.algebroid, rep, delta(f.algebroid, rep, c)).is_zero());
            }
    }
}

TEST_CASE("IM connections are cocycles") {
    for (const auto& name : fixture_names()) {
        const auto& f = test::fixture(name);
        CAPTURE(name);
        CHECK(delta(f.algebroid, f.ideal->adjoint(), f.connection->cochain()).is_zero());
        CHECK(check_IM(f.algebroid, f.ideal->adjoint(), f.connection->cochain()).ok());
    }
}

TEST_CASE("covariant derivative of cochains") {
    const auto& c = F1().connection->cochain();
    WeilCochain dc = dnabla_cochain(F1().connection->nabla(), c);
    CHECK(dc.value(1, {}, {0}) == scalar(1, 0b10, P("x")));
    WeilCochain zero(2, 3, 1, 1, 1);
    CHECK(dnabla_cochain(F1().connection->nabla(), zero).is_zero());
}

TEST_CASE("commutator of delta and the covariant derivative") {
    const auto& f = test::fixture("F2_semisimple_2d");
    ARep rep = f.ideal->adjoint();
    const LinearConnection& nabla = f.connection->nabla();
    InvarianceForm tt = invariance_form(f.algebroid, nabla, rep);
    for (int p = 0; p <= 1; ++p)
        for (int q = 0; q <= 1; ++q) {
            WeilCochain c = random_cochain(f.algebroid, rep, p, q, 1, 40 + p * 2 + q);
            WeilCochain lhs = dnabla_cochain(nabla, delta(f.algebroid, rep, c)) - delta(f.algebroid, rep, dnabla_cochain(nabla, c));
            CHECK(lhs == wedge_Ttheta(tt, c));
        }
    InvarianceForm none = invariance_form(F1().algebroid, F1().connection->nabla(), F1().ideal->adjoint());
    CHECK(wedge_Ttheta(none, random_cochain(2, 3, 1, 1, 1, 1, 3)).is_zero());
}

TEST_CASE("check_IM on cocycles and on a tampered connection") {
    const auto& A = F1().algebroid;
    ARep rep = F1().ideal->adjoint();
    std::mt19937_64 rng(4);
    Form gamma = random_form(2, 1, 1, 2, rng);
    CHECK(check_IM(A, rep, delta(A, rep, test::level0(gamma, 3))).ok());

    WeilCochain bad = F1().connection->cochain();
    bad.entry(0, 0, 0) = scalar(1, 0b10, P("x^2"));
    Report r = check_IM(A, rep, bad);
    CHECK_FALSE(r.ok());
    CHECK_FALSE(r.passed("C.2"));
}

TEST_CASE("horizontality") {
    const auto& K = *F1().ideal;
    CHECK_FALSE(is_horizontal(F1().connection->cochain(), K.indices()));
    WeilCochain dF = delta(F1().algebroid, K.adjoint(), test::level0(scalar(2, 0b11, P("x")), 3));
    CHECK(is_horizontal(dF, K.indices()));
}

TEST_CASE("coboundary solver") {
    const auto& A = F1().algebroid;
    ARep rep = F1().ideal->adjoint();
    WeilCochain b0 = random_cochain(2, 3, 1, 1, 1, 1, 77);
    WeilCochain target = delta(A, rep, b0);
    CoboundaryResult res = solve_coboundary(A, rep, target, 1);
    REQUIRE(res.solved);
    CHECK(delta(A, rep, *res.primitive) == target);

    WeilCochain omega = curvature(*F1().connection);
    CoboundaryResult curving = solve_coboundary(A, rep, omega, 1);
    REQUIRE(curving.solved);
    Form F = curving.primitive->form();
    Form diff = F - scalar(2, 0b11, P("x"));
    CHECK(delta(A, rep, test::level0(diff, 3)).is_zero());

    CHECK_THROWS_AS(solve_coboundary(A, rep, random_cochain(2, 3, 1, 1, 1, 1, 5), 1), ContractError);
    CHECK_THROWS_AS(solve_coboundary(A, rep, test::level0(F, 3), 1), ContractError);
}

TEST_CASE("first cohomology of so(3) vanishes") {
    const auto& f = test::fixture("F0_so3");
    ARep adj = f.ideal->adjoint();
    WeilCochain b(0, 3, 0, 0, 3);
    b.entry(0, 0, 0) = Form::function({Poly(0, 1), Poly(0, -2), Poly(0, 3)});
    WeilCochain cocycle = delta(f.algebroid, adj, b);
    REQUIRE_FALSE(cocycle.is_zero());
    CoboundaryResult res = solve_coboundary(f.algebroid, adj, cocycle, 0);
    REQUIRE(res.solved);
    CHECK(res.primitive->form() == b.form());
}

}
