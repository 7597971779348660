#include <doctest.h>

#include "support.hpp"

using namespace weilcalc;
using weilcalc::test::P;

namespace {

Form scalar(int dim, int degree, uint32_t mask, const Poly& f, int fibre = 1, int b = 0) {
    Form out(dim, degree, fibre);
    out.comp(b, mask) = f;
    return out;
}

const std::vector<std::string> kX4{"x1", "x2", "x3", "x4"};

AlgebroidPresentation line_algebroid() {
    AlgebroidPresentation B(4, 1, kX4);
    B.anchor(0, 0) = Poly(4, 1);
    return B;
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("coupled fixtures") {
    for (const char* name : {"F1_abelian_2d", "F2_semisimple_2d", "F3_foliation_4d"}) {
        CAPTURE(name);
        const auto& f = test::fixture(name);
        CHECK(coupling_preconditions(*f.base, *f.fibre, *f.fibre_connection, *f.curving).ok());
        CHECK(validate_algebroid(f.algebroid).ok());
        CHECK(coupling_checks(*f.connection).ok());
        CHECK(f.connection->nabla() == *f.fibre_connection);
    }
    const auto& A = test::fixture("F2_semisimple_2d").algebroid;
    CHECK(A.bracket(A.basis(1), A.basis(2)) == scale(P("x"), A.basis(3)));
    CHECK(A.bracket(A.basis(0), A.basis(1)) == A.basis(4));
}

TEST_CASE("broken preconditions break Jacobi") {
    const auto& f2 = test::fixture("F2_semisimple_2d");
    LinearConnection flat(2, 3);
    Report r = coupling_preconditions(*f2.base, *f2.fibre, flat, *f2.curving);
    CHECK_FALSE(r.passed("(ii) R = -ad F"));
    CHECK_THROWS_AS(build_coupled(*f2.base, *f2.fibre, flat, *f2.curving), ContractError);
    CHECK_FALSE(validate_algebroid(coupled_presentation(*f2.base, *f2.fibre, flat, *f2.curving)).passed("Jacobi"));

    std::vector<std::string> xyz{"x", "y", "z"};
    AlgebroidPresentation B = tangent_algebroid(3, xyz), fibre(3, 1, xyz);
    Form F = scalar(3, 2, 0b110, Poly::variable(3, 0));
    Report t = coupling_preconditions(B, fibre, LinearConnection(3, 1), F);
    CHECK_FALSE(t.passed("(iii) transversal dF"));
    CHECK(t.passed("(ii) R = -ad F"));
    CHECK_THROWS_AS(build_coupled(B, fibre, LinearConnection(3, 1), F), ContractError);
    CHECK_FALSE(validate_algebroid(coupled_presentation(B, fibre, LinearConnection(3, 1), F)).passed("Jacobi"));

    // On a rank-one base the same kind of F is harmless.
    AlgebroidPresentation line = line_algebroid(), k4(4, 1, kX4);
    Form F4 = scalar(4, 2, 0b1100, Poly::variable(4, 0));
    CHECK(validate_algebroid(coupled_presentation(line, k4, LinearConnection(4, 1), F4)).ok());
}

TEST_CASE("zero curving gives a flat semidirect product") {
    AlgebroidPresentation B = tangent_algebroid(2, test::kXY);
    AlgebroidPresentation fibre = so3_bundle(2, test::kXY);
    Coupled c = build_coupled(B, fibre, LinearConnection(2, 3), Form(2, 2, 3));
    CHECK(validate_algebroid(c.ideal.algebroid()).ok());
    CHECK(curvature(c.connection).is_zero());
}

TEST_CASE("curvings") {
    for (const char* name : {"F1_abelian_2d", "F2_semisimple_2d", "F3_foliation_4d"}) {
        CAPTURE(name);
        const auto& f = test::fixture(name);
        Report r = curving_suite(*f.connection, *f.curving);
        for (const auto& c : r.checks()) {
            CAPTURE(c.name);
            CHECK(c.pass);
        }
    }
    const auto& f1 = test::fixture("F1_abelian_2d");
    CHECK(dnabla_form(f1.connection->nabla(), *f1.curving).is_zero());
    Form shifted = *f1.curving + scalar(2, 2, 0b11, P("1"));
    CHECK_FALSE(curving_suite(*f1.connection, shifted).passed("delta F = Omega"));

    const auto& f3 = test::fixture("F3_foliation_4d");
    Form G = dnabla_form(f3.connection->nabla(), *f3.curving);
    CHECK(G == scalar(4, 3, 0b1110, Poly(4, 1)));
}

TEST_CASE("curving deformations") {
    std::mt19937_64 rng(41);
    for (const char* name : {"F1_abelian_2d", "F2_semisimple_2d", "F3_foliation_4d"}) {
        CAPTURE(name);
        const auto& f = test::fixture(name);
        int n = f.algebroid.dim(), m = f.ideal->rank();
        std::vector<Form> gammas;
        for (int t = 0; t < 3; ++t) gammas.push_back(random_form(n, 1, m, 1, rng));
        Report r = curving_suite(*f.connection, *f.curving, gammas);
        CHECK(r.passed("deformed connection"));
        CHECK(r.passed("deformed curving"));
        CHECK(r.passed("G unchanged"));
    }
    const auto& f2 = test::fixture("F2_semisimple_2d");
    Form g = random_form(2, 1, 3, 1, rng);
    LinearConnection moved = shifted_connection(*f2.ideal, f2.connection->nabla(), g);
    CHECK(curvature_R(moved) == -f2.ideal->ad_form(deformed_curving(*f2.ideal, f2.connection->nabla(), *f2.curving, g)));
}

TEST_CASE("semisimple fibres") {
    const auto& f2 = test::fixture("F2_semisimple_2d");
    const IdealBundle& K = *f2.ideal;
    CHECK(semisimple_fibre(K).ok());
    CHECK_FALSE(semisimple_fibre(*test::fixture("F1_abelian_2d").ideal).passed("zero center"));

    Form e3dx = scalar(2, 1, 0b01, P("1"), 3, 2);
    CHECK(ad_inverse(K, -K.ad_form(e3dx)) == e3dx);
    std::mt19937_64 rng(42);
    for (int q = 0; q <= 2; ++q)
        for (int t = 0; t < 4; ++t) {
            Form g = random_form(2, q, 3, 2, rng);
            CHECK(ad_inverse(K, -K.ad_form(g)) == g);
        }
    CHECK(unique_curving(*f2.connection) == scalar(2, 2, 0b11, P("-1"), 3, 2));
    CHECK_THROWS_AS(unique_curving(*test::fixture("F1_abelian_2d").connection), ContractError);

    Form outside(2, 1, 9);
    outside.comp(0, 0b01) = P("1");
    CHECK_THROWS_AS(ad_inverse(K, outside), ContractError);
}

TEST_CASE("primitive connections from a splitting and a connection") {
    const auto& f2 = test::fixture("F2_semisimple_2d");
    Primitive prim = primitive_from_pair(*f2.ideal, f2.connection->v(), f2.connection->nabla());
    CHECK(prim.connection.cochain() == f2.connection->cochain());
    CHECK(prim.curving == *f2.curving);
    CHECK_THROWS_AS(primitive_from_pair(*f2.ideal, f2.connection->v(), LinearConnection(2, 3)), ContractError);
}

TEST_CASE("abelian primitive connections") {
    const auto& f1 = test::fixture("F1_abelian_2d");
    Report r = abelian_primitive_check(*f1.ideal, f1.connection->v(), f1.connection->nabla(), *f1.curving);
    CHECK(r.ok());
    LinearConnection bent(2, 1);
    bent.gamma(1)(0, 0) = P("x");
    CHECK_FALSE(abelian_primitive_check(*f1.ideal, f1.connection->v(), bent, *f1.curving).passed("flat"));

    const auto& f3 = test::fixture("F3_foliation_4d");
    CHECK(abelian_primitive_check(*f3.ideal, f3.connection->v(), f3.connection->nabla(), *f3.curving).ok());
    CHECK_FALSE(dnabla_form(f3.connection->nabla(), *f3.curving).is_zero());

    const auto& f2 = test::fixture("F2_semisimple_2d");
    CHECK_THROWS_AS(abelian_primitive_check(*f2.ideal, f2.connection->v(), f2.connection->nabla(), *f2.curving),
                    ContractError);
}

}
