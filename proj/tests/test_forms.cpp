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

const VField dx{Poly(2, 1), Poly(2)};

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("exterior calculus on the plane") {
    CHECK(d(scalar(1, 0b10, P("x"))) == scalar(2, 0b11, P("1")));
    CHECK(interior(dx, scalar(2, 0b11, P("x"))) == scalar(1, 0b10, P("x")));
    CHECK(lie(dx, scalar(2, 0b11, P("x"))) == scalar(2, 0b11, P("1")));
}

TEST_CASE("storage by increasing tuples and vanishing above the chart dimension") {
    Form w(2, 2, 1);
    CHECK(w.count() == 1);
    CHECK(w.masks() == std::vector<uint32_t>{0b11});
    Form top(2, 3, 2);
    CHECK_FALSE(top.in_range());
    CHECK(top.is_zero());
    CHECK(wedge(scalar(2, 0b11, P("1")), scalar(1, 0b01, P("x"))).is_zero());
    Form dxdy = scalar(2, 0b11, P("1"));
    CHECK(dxdy.comp_tuple(0, {1, 0}) == P("-1"));
}

TEST_CASE("randomized Cartan identities") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Form a = random_form(3, 1, 1, 2, rng), b = random_form(3, 1, 2, 2, rng);
        VField X = random_section(3, 3, 1, rng);
        CHECK(d(d(b)).is_zero());
        CHECK(d(wedge(a, b)) == wedge(d(a), b) - wedge(a, d(b)));
        CHECK(lie(X, b) == d(interior(X, b)) + interior(X, d(b)));
        CHECK(wedge(a, wedge(a, b)).is_zero());
    }
}

TEST_CASE("End-valued forms") {
    PolyMatrix M(2, 2, 2);
    M(0, 1) = P("x");
    Form u = Form::function({P("0"), P("1")});
    Form T = matrix_times(M, scalar(1, 0b10, P("1")));
    Form Tu = end_wedge(T, u);
    CHECK(Tu.comp(0, 0b10) == P("x"));
    CHECK(Tu.comp(1, 0b10).is_zero());
    CHECK(to_matrix(from_matrix(2, M), 2) == M);
}

}
