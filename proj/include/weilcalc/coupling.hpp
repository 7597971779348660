#pragma once

#include <vector>

#include "weilcalc/ideals.hpp"

namespace weilcalc {

// A bundle of Lie algebras is passed as a rank-m presentation with zero anchor
// over the same chart as B.
Report coupling_preconditions(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                              const LinearConnection& nabla, const Form& F);

// B + k with anchor rho_B o pr_B and bracket
// [(a,x),(b,y)] = ([a,b], nabla_{rho a} y - nabla_{rho b} x + [x,y] - F(rho a, rho b)).
// Frame: B's sections first, then k's. No precondition is checked.
AlgebroidPresentation coupled_presentation(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                                           const LinearConnection& nabla, const Form& F);

struct Coupled {
    IdealBundle ideal;
    IMConnection connection;  // v = pr_k, C(a, x) = nabla x + i_{rho a} F
    Form curving;
};

// Throws ContractError naming the first failed precondition.
Coupled build_coupled(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                      const LinearConnection& nabla, const Form& F);

// nabla + [., gamma] on k.
LinearConnection shifted_connection(const IdealBundle& K, const LinearConnection& nabla, const Form& gamma);
// F + d gamma - 1/2 [gamma, gamma].
Form deformed_curving(const IdealBundle& K, const LinearConnection& nabla, const Form& F, const Form& gamma);

// delta F = Omega, R = -ad F, U = -i_rho F, delta G = 0, dG = 0 and, for each
// gamma, the curving deformation identities including G^gamma = G.
Report curving_suite(const IMConnection& imc, const Form& F, const std::vector<Form>& gammas = {});

// Fibre checks: constant structure, zero center, every derivation inner.
Report semisimple_fibre(const IdealBundle& K);
// gamma with [xi, gamma] = D.xi for End(k)-valued D; unique when the center is zero.
Form ad_inverse(const IdealBundle& K, const Form& D);
Form unique_curving(const IMConnection& imc);

struct Primitive {
    IMConnection connection;
    Form curving;
};
// IM connection of a splitting v and a bracket-preserving nabla with
// nabla^A_{h a} = nabla_{rho a}, for a semisimple fibre.
Primitive primitive_from_pair(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla);

// Abelian k: flatness, nabla inducing nabla^B, F^v = rho_B^* F and transverse dF.
Report abelian_primitive_check(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla,
                               const Form& F);

}  // namespace weilcalc
