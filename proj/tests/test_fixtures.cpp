#include <doctest.h>

#include "support.hpp"

using namespace weilcalc;

TEST_SUITE("fixtures") {

TEST_CASE("catalogue") {
    CHECK(fixture_names().size() == 4);
    CHECK_THROWS_AS(build_fixture("F9"), std::invalid_argument);
    const auto& f0 = test::fixture("F0_so3");
    CHECK(f0.algebroid.dim() == 0);
    CHECK(f0.ideal->rank() == 3);
    // Over a point only the correction term of order q survives.
    WeilCochain c = random_cochain(f0.algebroid, f0.ideal->adjoint(), 2, 1, 3, 1);
    CHECK(c.kmin() == 1);
    CHECK(c.kmax() == 1);
    CHECK_FALSE(c.stored(0));
    const auto& f2 = test::fixture("F2_semisimple_2d");
    CHECK(f2.algebroid.rank() == 5);
    CHECK(f2.ideal->indices() == std::vector<int>{2, 3, 4});
}

TEST_CASE("random data is seeded and small") {
    WeilCochain a = random_cochain(2, 3, 2, 1, 1, 2, 17), b = random_cochain(2, 3, 2, 1, 1, 2, 17);
    CHECK(a == b);
    CHECK_FALSE(a == random_cochain(2, 3, 2, 1, 1, 2, 18));
    WeilCochain f = random_cochain(2, 3, 0, 2, 1, 2, 3);
    CHECK(WeilCochain::from_form(f.form(), 3) == f);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 20; ++t) {
        Poly p = random_poly(3, 2, rng);
        CHECK(p.degree() <= 2);
        for (const auto& term : p.terms()) CHECK(abs(term.coeff) <= 3);
    }
}

TEST_CASE("delta squares to zero on the abelian fixture for 100 seeds") {
    const auto& f = test::fixture("F1_abelian_2d");
    ARep rep = f.ideal->adjoint();
    for (uint64_t seed = 0; seed < 100; ++seed) {
        WeilCochain c = random_cochain(f.algebroid, rep, int(seed % 3), int(seed / 3 % 3), 1, seed);
        CHECK(delta(f.algebroid, rep, delta(f.algebroid, rep, c)).is_zero());
    }
}

}
