#include "weilcalc/fixtures.hpp"

#include <stdexcept>

namespace weilcalc {

const std::vector<std::string>& fixture_names() {
    static const std::vector<std::string> names{"F0_so3", "F1_abelian_2d", "F2_semisimple_2d", "F3_foliation_4d"};
    return names;
}

AlgebroidPresentation so3_bundle(int dim, std::vector<std::string> variables) {
    AlgebroidPresentation k(dim, 3, std::move(variables));
    Poly one(dim, 1);
    k.set_bracket(0, 1, 2, one);
    k.set_bracket(1, 2, 0, one);
    k.set_bracket(2, 0, 1, one);
    return k;
}

AlgebroidPresentation tangent_algebroid(int dim, std::vector<std::string> variables) {
    AlgebroidPresentation T(dim, dim, std::move(variables));
    for (int a = 0; a < dim; ++a) T.anchor(a, a) = Poly(dim, 1);
    return T;
}

namespace {

Fixture from_coupling(std::string name, AlgebroidPresentation B, AlgebroidPresentation fibre,
                      LinearConnection nabla, Form F) {
    Coupled c = build_coupled(B, fibre, nabla, F);
    return Fixture{std::move(name), c.ideal.algebroid(), c.ideal, c.connection, c.curving,
                   std::move(B), std::move(fibre), std::move(nabla)};
}

Fixture f0() {
    AlgebroidPresentation A = so3_bundle(0);
    IdealBundle K(A, {0, 1, 2});
    WeilCochain c(0, 3, 1, 1, 3);
    for (int i = 0; i < 3; ++i) c.entry(1, 0, i) = Form::function(basis_section(0, 3, i));
    return Fixture{"F0_so3", A, K, IMConnection(K, c), Form(0, 2, 3), std::nullopt, std::nullopt, std::nullopt};
}

Fixture f1() {
    std::vector<std::string> xy{"x", "y"};
    AlgebroidPresentation fibre(2, 1, xy);
    Form F(2, 2, 1);
    F.comp(0, 0b11) = Poly::variable(2, 0);
    return from_coupling("F1_abelian_2d", tangent_algebroid(2, xy), fibre, LinearConnection(2, 1), F);
}

Fixture f2() {
    std::vector<std::string> xy{"x", "y"};
    AlgebroidPresentation fibre = so3_bundle(2, xy);
    IdealBundle Kf(fibre, {0, 1, 2});
    LinearConnection nabla(2, 3);
    nabla.gamma(1) = Poly::variable(2, 0) * Kf.ad(2);
    Form F(2, 2, 3);
    F.comp(2, 0b11) = Poly(2, -1);
    return from_coupling("F2_semisimple_2d", tangent_algebroid(2, xy), fibre, nabla, F);
}

Fixture f3() {
    std::vector<std::string> vars{"x1", "x2", "x3", "x4"};
    AlgebroidPresentation B(4, 1, vars);
    B.anchor(0, 0) = Poly(4, 1);
    AlgebroidPresentation fibre(4, 1, vars);
    Form F(4, 2, 1);
    F.comp(0, 0b1100) = Poly::variable(4, 1);
    return from_coupling("F3_foliation_4d", B, fibre, LinearConnection(4, 1), F);
}

}  // namespace

Fixture build_fixture(const std::string& name) {
    if (name == "F0_so3") return f0();
    if (name == "F1_abelian_2d") return f1();
    if (name == "F2_semisimple_2d") return f2();
    if (name == "F3_foliation_4d") return f3();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

Poly random_poly(int nvars, int degree_bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    Poly p(nvars);
    std::vector<Monomial> monos{Monomial()};
    for (size_t start = 0, deg = 0; int(deg) < degree_bound; ++deg) {
        size_t end = monos.size();
        for (size_t t = start; t < end; ++t)
            for (int i = 0; i < nvars; ++i) {
                // Extend only by variables at or after the last one used, so each monomial appears once.
                bool ok = true;
                for (int j = i + 1; j < nvars; ++j)
                    if (monos[t].exponent(j) > 0) ok = false;
                if (ok) monos.push_back(monos[t] * Monomial::variable(i));
            }
        start = end;
    }
    for (const auto& m : monos) {
        int c = coeff(rng);
        if (c) p += Poly::monomial(nvars, m, c);
    }
    return p;
}

Form random_form(int dim, int degree, int fibre, int degree_bound, std::mt19937_64& rng) {
    Form f(dim, degree, fibre);
    for (int b = 0; b < fibre; ++b)
        for (int x = 0; x < f.count(); ++x) f.at(b, x) = random_poly(dim, degree_bound, rng);
    return f;
}

Section random_section(int dim, int rank, int degree_bound, std::mt19937_64& rng) {
    Section s;
    for (int i = 0; i < rank; ++i) s.push_back(random_poly(dim, degree_bound, rng));
    return s;
}

WeilCochain random_cochain(int dim, int rank, int level, int degree, int fibre, int degree_bound, uint64_t seed) {
    std::mt19937_64 rng(seed);
    WeilCochain c(dim, rank, level, degree, fibre);
    c.for_each([&](Form& f) {
        for (int b = 0; b < f.fibre(); ++b)
            for (int x = 0; x < f.count(); ++x) f.at(b, x) = random_poly(dim, degree_bound, rng);
    });
    return c;
}

WeilCochain random_cochain(const AlgebroidPresentation& A, const ARep& rep, int level, int degree, int degree_bound,
                           uint64_t seed) {
    if (rep.algebroid_rank() != A.rank()) throw StructuralError("representation over a different algebroid");
    return random_cochain(A.dim(), A.rank(), level, degree, rep.rank(), degree_bound, seed);
}

}  // namespace weilcalc
