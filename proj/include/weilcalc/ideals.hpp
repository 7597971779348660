#pragma once

#include <string>
#include <vector>

#include "weilcalc/weil.hpp"

namespace weilcalc {

// Frame-aligned bundle of ideals k = span{e_i : i in indices} inside ker(rho).
// Values in k are stored as m-vectors in the order of `indices`.
class IdealBundle {
public:
    IdealBundle(AlgebroidPresentation A, std::vector<int> indices);

    const AlgebroidPresentation& algebroid() const { return A_; }
    const std::vector<int>& indices() const { return idx_; }
    int rank() const { return int(idx_.size()); }
    int dim() const { return A_.dim(); }
    // Position of A-index i inside k, or -1.
    int position(int i) const { return pos_[size_t(i)]; }

    // Fibre structure polynomial [xi_a, xi_b] = sum_c bracket(a, b, c) xi_c.
    const Poly& bracket(int a, int b, int c) const { return A_.structure(idx_[size_t(a)], idx_[size_t(b)], idx_[size_t(c)]); }
    bool abelian() const;
    // Matrix of xi -> [e_i, xi] restricted to k (frame part of the adjoint action).
    PolyMatrix ad(int i) const;
    ARep adjoint() const;

    Section embed(const std::vector<Poly>& xi) const;
    std::vector<Poly> project(const Section& s) const;

    // Pointwise graded bracket of k-valued forms.
    Form bracket(const Form& a, const Form& b) const;
    // End(k)-valued form xi -> [a, xi].
    Form ad_form(const Form& a) const;

private:
    AlgebroidPresentation A_;
    std::vector<int> idx_;
    std::vector<int> pos_;
};

// Level-1, degree-1 k-valued Weil cochain (C, v) whose symbol is the
// identity on k and which is a delta-cocycle.
class IMConnection {
public:
    IMConnection(IdealBundle K, WeilCochain cochain);

    const IdealBundle& ideal() const { return K_; }
    const AlgebroidPresentation& algebroid() const { return K_.algebroid(); }
    const WeilCochain& cochain() const { return c_; }

    // Symbol as an m x r matrix.
    const PolyMatrix& v() const { return v_; }
    Section h(const Section& alpha) const;
    Form C(const Section& alpha) const;
    // C(e_i) and h(e_i) on the frame.
    const Form& C_basis(int i) const { return C_[size_t(i)]; }
    const Section& h_basis(int i) const { return h_[size_t(i)]; }
    // Coupling data: nabla = C|_k and U(h alpha) = -C(h alpha).
    const LinearConnection& nabla() const { return nabla_; }
    Form U(const Section& alpha) const;

private:
    IdealBundle K_;
    WeilCochain c_;
    PolyMatrix v_;
    std::vector<Form> C_;
    std::vector<Section> h_;
    LinearConnection nabla_;
};

// Assembles (C, v) from a splitting v, a connection on k and U on H = ker v,
// with C = nabla(v .) - U(h .). U is given on the frame h(e_i); entries at
// ideal indices are ignored. No cocycle check is made.
WeilCochain coupled_cochain(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla,
                            const std::vector<Form>& U);

// gamma .^ (theta_1, ..., theta_l), pairing theta_l first. gamma has at least
// l symmetric slots; each theta is k-valued.
SymForm wedgedot(const IdealBundle& K, const SymForm& gamma, const std::vector<Form>& thetas);

// Any value bundle; the connection enters only through the pairing with C.
WeilCochain hstar(const IMConnection& imc, const WeilCochain& c);
WeilCochain Dhor(const IMConnection& imc, const WeilCochain& c);
WeilCochain curvature(const IMConnection& imc);
// (R.v(alpha) - d U(h alpha), -U(h alpha)) on the frame.
WeilCochain curvature_explicit(const IMConnection& imc);
bool bianchi_check(const IMConnection& imc);

// (C, v) + lambda (L, l); L must be a horizontal IM 1-form.
IMConnection deform(const IMConnection& imc, const WeilCochain& L, const Rational& lambda);
WeilCochain c2(const IMConnection& imc, const WeilCochain& L);

// delta(C, v) for C = nabla(v .) - U(h .); U as in coupled_cochain.
WeilCochain obstruction_cocycle(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla,
                                const std::vector<Form>& U);

// nabla[x, y] = [nabla x, y] + [x, nabla y] on frame pairs; empty when it holds,
// otherwise the failing pairs.
std::string bracket_preserving_failures(const IdealBundle& K, const LinearConnection& nabla);

// S.1-S.3, the orbit identities and abelian <=> A-invariant.
Report coupling_checks(const IMConnection& imc);

}  // namespace weilcalc
