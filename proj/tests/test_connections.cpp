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

IdealBundle so3_fibre() { return IdealBundle(so3_bundle(2, test::kXY), {0, 1, 2}); }

}  // namespace

TEST_SUITE("connections") {

TEST_CASE("covariant exterior derivative") {
    LinearConnection flat(2, 1);
    CHECK(dnabla_form(flat, scalar(1, 0b10, P("x"))) == scalar(2, 0b11, P("1")));

    const LinearConnection& nabla = *test::fixture("F2_semisimple_2d").fibre_connection;
    Form u1 = Form::function({P("1"), P("0"), P("0")});
    Form expected(2, 1, 3);
    expected.comp(1, 0b10) = P("x");
    CHECK(dnabla_form(nabla, u1) == expected);
}

TEST_CASE("curvature of the so(3) fixture connection") {
    const LinearConnection& nabla = *test::fixture("F2_semisimple_2d").fibre_connection;
    IdealBundle K = so3_fibre();
    CHECK(curvature_R(nabla) == matrix_times(K.ad(2), scalar(2, 0b11, P("1"))));
    CHECK(curvature_R(LinearConnection(2, 3)).is_zero());
    CHECK(dnabla_form(induced_end_connection(nabla), curvature_R(nabla)).is_zero());
}

TEST_CASE("square of the covariant derivative is curvature") {
    std::mt19937_64 rng(21);
    for (int t = 0; t < 10; ++t) {
        LinearConnection nabla(3, 2);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) nabla.gamma(a)(b, c) = random_poly(3, 1, rng);
        Form w = random_form(3, 1, 2, 2, rng);
        CHECK(dnabla_form(nabla, dnabla_form(nabla, w)) == end_wedge(curvature_R(nabla), w));
        CHECK(dnabla_form(induced_end_connection(nabla), curvature_R(nabla)).is_zero());
    }
}

TEST_CASE("induced End connection") {
    const LinearConnection& nabla = *test::fixture("F2_semisimple_2d").fibre_connection;
    IdealBundle K = so3_fibre();
    Form got = dnabla_form(induced_end_connection(nabla), from_matrix(2, K.ad(0)));
    CHECK(got == matrix_times(P("x") * K.ad(1), scalar(1, 0b10, P("1"))));
    CHECK(induced_end_connection(LinearConnection(2, 2)) == LinearConnection(2, 4));
}

TEST_CASE("Lie derivative along sections") {
    const auto& f = test::fixture("F1_abelian_2d");
    ARep rep = f.ideal->adjoint();
    Form F = scalar(2, 0b11, P("x"));
    CHECK(lieA_derivative(f.algebroid, rep, f.algebroid.basis(0), F) == scalar(2, 0b11, P("1")));
    Form constant = scalar(1, 0b01, P("5"));
    CHECK(lieA_derivative(f.algebroid, rep, f.algebroid.basis(2), constant).is_zero());
}

TEST_CASE("invariance form and A-invariance") {
    const auto& f1 = test::fixture("F1_abelian_2d");
    InvarianceForm t1 = invariance_form(f1.algebroid, f1.connection->nabla(), f1.ideal->adjoint());
    for (const auto& T : t1.T) CHECK(T.is_zero());
    for (const auto& th : t1.theta) CHECK(th.is_zero());
    CHECK(is_A_invariant(f1.algebroid, f1.connection->nabla(), f1.ideal->adjoint()));

    const auto& f2 = test::fixture("F2_semisimple_2d");
    InvarianceForm t2 = invariance_form(f2.algebroid, f2.connection->nabla(), f2.ideal->adjoint());
    CHECK(t2.theta[4] == so3_fibre().ad(2));
    CHECK_FALSE(is_A_invariant(f2.algebroid, f2.connection->nabla(), f2.ideal->adjoint()));
}

TEST_CASE("flat connection along the anchor is invariant") {
    AlgebroidPresentation T = tangent_algebroid(2, test::kXY);
    LinearConnection nabla(2, 2);
    nabla.gamma(0)(0, 0) = P("1");
    nabla.gamma(0)(1, 1) = P("-2");
    ARep rep(2, 2, 2);
    for (int i = 0; i < 2; ++i) rep.psi(i) = nabla.gamma(i);
    CHECK(validate_rep(T, rep).ok());
    CHECK(curvature_R(nabla).is_zero());
    CHECK(is_A_invariant(T, nabla, rep));
}

TEST_CASE("induced End representation stays flat") {
    const auto& f = test::fixture("F2_semisimple_2d");
    ARep rep = f.ideal->adjoint();
    CHECK(validate_rep(f.algebroid, rep).ok());
    CHECK(validate_rep(f.algebroid, induced_end_rep(rep)).ok());
}

}
