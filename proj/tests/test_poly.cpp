#include <doctest.h>

#include "support.hpp"

using namespace weilcalc;
using weilcalc::test::P;

TEST_SUITE("poly") {

TEST_CASE("products and exact scaling") {
    CHECK(P("x + 1") * P("x - 1") == P("x^2 - 1"));
    CHECK((P("x") * Poly(2)).is_zero());
    Poly half = P("1/2*x + 1/3") * Rational(3);
    CHECK(half == P("3/2*x + 1"));
    CHECK(half.to_string(test::kXY) == "3/2*x + 1");
}

TEST_CASE("no zero coefficients survive") {
    Poly p = P("x*y + 2") - P("x*y");
    REQUIRE(p.terms().size() == 1);
    CHECK(p.is_constant());
    CHECK(p.constant_term() == 2);
    CHECK((P("x") - P("x")).terms().empty());
}

TEST_CASE("partial derivatives") {
    CHECK(P("x^2*y").partial(0) == P("2*x*y"));
    CHECK(P("7").partial(1).is_zero());
    Poly f = P("x"), g = P("x*y");
    CHECK((f * g).partial(0) == f.partial(0) * g + f * g.partial(0));
}

TEST_CASE("graded lexicographic printing and parse round trip") {
    Poly p = P("y + x^2 - 3 + x*y^2");
    CHECK(p.to_string(test::kXY) == "x*y^2 + x^2 + y - 3");
    CHECK(Poly::parse(p.to_string(test::kXY), test::kXY) == p);
    CHECK(P("-x").to_string(test::kXY) == "-x");
    CHECK(Poly(2).to_string(test::kXY) == "0");
}

TEST_CASE("parse errors name the offset") {
    CHECK_THROWS_AS(P("x + "), std::invalid_argument);
    CHECK_THROWS_AS(P("z"), std::invalid_argument);
    CHECK_THROWS_AS(P("x**2"), std::invalid_argument);
}

TEST_CASE("variable counts must agree") {
    Poly a = Poly::variable(2, 0), b = Poly::variable(3, 0);
    CHECK_THROWS_AS(a + b, StructuralError);
    CHECK_THROWS_AS(Poly(9), StructuralError);
}

}
