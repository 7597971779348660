#include "weilcalc/ideals.hpp"

#include <algorithm>

namespace weilcalc {

IdealBundle::IdealBundle(AlgebroidPresentation A, std::vector<int> indices)
    : A_(std::move(A)), idx_(std::move(indices)), pos_(size_t(A_.rank()), -1) {
    if (idx_.empty()) throw StructuralError("ideal needs at least one index");
    for (size_t a = 0; a < idx_.size(); ++a) {
        int i = idx_[a];
        if (i < 0 || i >= A_.rank()) throw StructuralError("ideal index out of range");
        if (a > 0 && idx_[a - 1] >= i) throw StructuralError("ideal indices must be strictly increasing");
        pos_[size_t(i)] = int(a);
    }
    for (int j : idx_)
        for (int s = 0; s < A_.dim(); ++s)
            if (!A_.anchor(j, s).is_zero())
                throw ContractError("ideal is not inside ker(rho): anchor of e" + std::to_string(j + 1) + " is nonzero");
    for (int i = 0; i < A_.rank(); ++i)
        for (int j : idx_)
            for (int c = 0; c < A_.rank(); ++c)
                if (pos_[size_t(c)] < 0 && !A_.structure(i, j, c).is_zero())
                    throw ContractError("ideal is not closed: [e" + std::to_string(i + 1) + ",e" +
                                        std::to_string(j + 1) + "] leaves it");
}

bool IdealBundle::abelian() const {
    for (int a = 0; a < rank(); ++a)
        for (int b = 0; b < rank(); ++b)
            for (int c = 0; c < rank(); ++c)
                if (!bracket(a, b, c).is_zero()) return false;
    return true;
}

PolyMatrix IdealBundle::ad(int i) const {
    int m = rank();
    PolyMatrix M(dim(), m, m);
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) M(c, a) = A_.structure(i, idx_[size_t(a)], idx_[size_t(c)]);
    return M;
}

ARep IdealBundle::adjoint() const {
    ARep rep(dim(), A_.rank(), rank());
    for (int i = 0; i < A_.rank(); ++i) rep.psi(i) = ad(i);
    return rep;
}

Section IdealBundle::embed(const std::vector<Poly>& xi) const {
    if (int(xi.size()) != rank()) throw StructuralError("ideal vector length differs from its rank");
    Section s = zero_section(dim(), A_.rank());
    for (int a = 0; a < rank(); ++a) s[size_t(idx_[size_t(a)])] = xi[size_t(a)];
    return s;
}

std::vector<Poly> IdealBundle::project(const Section& s) const {
    std::vector<Poly> xi;
    for (int i : idx_) xi.push_back(s[size_t(i)]);
    return xi;
}

Form IdealBundle::bracket(const Form& a, const Form& b) const {
    int m = rank();
    if (a.fibre() != m || b.fibre() != m) throw StructuralError("bracket expects k-valued forms");
    Form out(dim(), a.degree() + b.degree(), m);
    for (int x = 0; x < m; ++x) {
        Form ax = a.slot(x);
        if (ax.is_zero()) continue;
        for (int y = 0; y < m; ++y) {
            Form w = wedge(ax, b.slot(y));
            if (w.is_zero()) continue;
            std::vector<Poly> col;
            for (int c = 0; c < m; ++c) col.push_back(bracket(x, y, c));
            out += Form::tensor(w, col);
        }
    }
    return out;
}

Form IdealBundle::ad_form(const Form& a) const {
    int m = rank();
    if (a.fibre() != m) throw StructuralError("ad expects a k-valued form");
    Form out(dim(), a.degree(), m * m);
    for (int x = 0; x < m; ++x) {
        Form ax = a.slot(x);
        for (int e = 0; e < m; ++e)
            for (int c = 0; c < m; ++c)
                if (!bracket(x, e, c).is_zero()) out.add_scaled(bracket(x, e, c), Form::tensor(ax, basis_section(dim(), m * m, c * m + e)));
    }
    return out;
}

IMConnection::IMConnection(IdealBundle K, WeilCochain cochain)
    : K_(std::move(K)), c_(std::move(cochain)), v_(K_.dim(), K_.rank(), K_.algebroid().rank()),
      nabla_(K_.dim(), K_.rank()) {
    const auto& A = K_.algebroid();
    int n = A.dim(), r = A.rank(), m = K_.rank();
    if (c_.level() != 1 || c_.degree() != 1 || c_.fibre() != m || c_.rank() != r || c_.dim() != n)
        throw StructuralError("IM connection must be a k-valued cochain of level 1 and degree 1");
    for (int i = 0; i < r; ++i) {
        Form vi = c_.value(1, {}, {i});
        for (int b = 0; b < m; ++b) v_(b, i) = vi.at(b, 0);
    }
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (!(v_(b, K_.indices()[size_t(a)]) == Poly(n, a == b ? 1 : 0)))
                throw ContractError("symbol does not restrict to the identity on the ideal");
    Report im = check_IM(A, K_.adjoint(), c_);
    for (const auto& ch : im.checks())
        if (!ch.pass) throw ContractError("not an IM form: " + ch.name + " " + ch.detail);
    for (int i = 0; i < r; ++i) {
        C_.push_back(c_.value(0, {i}, {}));
        h_.push_back(h(A.basis(i)));
    }
    for (int c = 0; c < m; ++c) {
        const Form& Cc = C_[size_t(K_.indices()[size_t(c)])];
        for (int s = 0; s < n; ++s)
            for (int b = 0; b < m; ++b) nabla_.gamma(s)(b, c) = Cc.comp(b, uint32_t(1) << s);
    }
}

Section IMConnection::h(const Section& alpha) const {
    return add(alpha, scale(Poly(K_.dim(), -1), K_.embed(v_.apply(alpha))));
}

Form IMConnection::C(const Section& alpha) const { return evaluate(c_, {alpha}, {}); }

Form IMConnection::U(const Section& alpha) const { return -C(h(alpha)); }

WeilCochain coupled_cochain(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla,
                            const std::vector<Form>& U) {
    int n = K.dim(), r = K.algebroid().rank(), m = K.rank();
    if (v.rows() != m || v.cols() != r) throw StructuralError("splitting must be an m x r matrix");
    if (nabla.rank() != m || nabla.dim() != n) throw StructuralError("connection does not act on the ideal");
    if (int(U.size()) != r) throw StructuralError("U needs one entry per frame section");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (!(v(b, K.indices()[size_t(a)]) == Poly(n, a == b ? 1 : 0)))
                throw ContractError("v is not a splitting: it does not restrict to the identity on the ideal");
    WeilCochain c(n, r, 1, 1, m);
    for (int i = 0; i < r; ++i) {
        std::vector<Poly> col;
        for (int b = 0; b < m; ++b) col.push_back(v(b, i));
        Form vi = Form::function(col);
        if (c.stored(1)) c.entry(1, 0, i) = vi;
        if (!c.stored(0)) continue;
        Form Ci = dnabla_form(nabla, vi);
        if (K.position(i) < 0) {
            if (U[size_t(i)].degree() != 1 || U[size_t(i)].fibre() != m || U[size_t(i)].dim() != n)
                throw StructuralError("U entries must be k-valued 1-forms");
            Ci -= U[size_t(i)];
        }
        c.entry(0, i, 0) = Ci;
    }
    return c;
}

SymForm wedgedot(const IdealBundle& K, const SymForm& gamma, const std::vector<Form>& thetas) {
    SymForm cur = gamma;
    int m = K.rank();
    for (auto it = thetas.rbegin(); it != thetas.rend(); ++it) {
        const Form& th = *it;
        if (th.fibre() != m || th.dim() != cur.dim()) throw StructuralError("pairing expects k-valued forms");
        if (cur.slots() == 0) throw StructuralError("pairing has no symmetric slot left");
        SymForm next(cur.dim(), cur.algebroid_rank(), cur.slots() - 1, cur.degree() + th.degree(), cur.fibre());
        const auto& sp = next.space();
        for (int a = 0; a < m; ++a) {
            Form ta = th.slot(a);
            if (ta.is_zero()) continue;
            for (int t = 0; t < sp.size(); ++t) {
                std::vector<int> J = sp[t];
                J.push_back(K.indices()[size_t(a)]);
                next.at(t) += wedge(ta, cur.get(J));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

WeilCochain hstar(const IMConnection& imc, const WeilCochain& c) {
    const IdealBundle& K = imc.ideal();
    int r = K.algebroid().rank(), p = c.level(), q = c.degree();
    if (c.rank() != r || c.dim() != K.dim()) throw StructuralError("cochain lives over a different algebroid");
    WeilCochain out(c.dim(), r, p, q, c.fibre());
    for (int k = out.kmin(); k <= out.kmax(); ++k) {
        const auto& Is = out.antis(k);
        const auto& Js = out.syms(k);
        for (int jj = 0; jj < Js.size(); ++jj) {
            std::vector<Section> fixed;
            for (int j : Js[jj]) fixed.push_back(imc.h_basis(j));
            for (int ii = 0; ii < Is.size(); ++ii) {
                const auto& I = Is[ii];
                Form acc(c.dim(), q - k, c.fibre());
                for (int j = k; j <= p; ++j) {
                    if (!c.stored(j)) continue;
                    int s = j - k;
                    for (const auto& sh : shuffles(s, p - k)) {
                        std::vector<Section> antis;
                        std::vector<Form> thetas;
                        for (int t = 0; t < p - k; ++t) {
                            int a = I[size_t(sh.perm[size_t(t)])];
                            if (t < s) thetas.push_back(imc.C_basis(a));
                            else antis.push_back(K.algebroid().basis(a));
                        }
                        SymForm g = partial_evaluate(c, antis, fixed, j);
                        Form term = wedgedot(K, g, thetas).at(0);
                        if ((sh.sign * (s % 2 ? -1 : 1)) < 0) acc -= term;
                        else acc += term;
                    }
                }
                out.entry(k, ii, jj) = std::move(acc);
            }
        }
    }
    return out;
}

WeilCochain Dhor(const IMConnection& imc, const WeilCochain& c) {
    return hstar(imc, dnabla_cochain(imc.nabla(), c));
}

WeilCochain curvature(const IMConnection& imc) { return Dhor(imc, imc.cochain()); }

WeilCochain curvature_explicit(const IMConnection& imc) {
    const auto& A = imc.algebroid();
    int n = A.dim(), r = A.rank(), m = imc.ideal().rank();
    WeilCochain out(n, r, 1, 2, m);
    Form R = curvature_R(imc.nabla());
    for (int i = 0; i < r; ++i) {
        Form Ui = imc.U(A.basis(i));
        if (out.stored(0)) {
            std::vector<Poly> col;
            for (int b = 0; b < m; ++b) col.push_back(imc.v()(b, i));
            out.entry(0, i, 0) = end_wedge(R, Form::function(col)) - dnabla_form(imc.nabla(), Ui);
        }
        if (out.stored(1)) out.entry(1, 0, i) = -Ui;
    }
    return out;
}

bool bianchi_check(const IMConnection& imc) { return Dhor(imc, curvature(imc)).is_zero(); }

static void require_horizontal_im(const IMConnection& imc, const WeilCochain& L) {
    const auto& K = imc.ideal();
    if (L.level() != 1 || L.degree() != 1 || L.fibre() != K.rank() || L.rank() != K.algebroid().rank() ||
        L.dim() != K.dim())
        throw StructuralError("deformation must be a k-valued cochain of level 1 and degree 1");
    if (!check_IM(K.algebroid(), K.adjoint(), L).ok()) throw ContractError("deformation is not an IM form");
    if (!is_horizontal(L, K.indices())) throw ContractError("deformation is not horizontal");
}

IMConnection deform(const IMConnection& imc, const WeilCochain& L, const Rational& lambda) {
    require_horizontal_im(imc, L);
    return IMConnection(imc.ideal(), imc.cochain() + L * lambda);
}

WeilCochain c2(const IMConnection& imc, const WeilCochain& L) {
    require_horizontal_im(imc, L);
    const auto& K = imc.ideal();
    int n = L.dim(), r = L.rank(), m = K.rank();
    WeilCochain out(n, r, 1, 2, m);
    std::vector<Form> Lk;
    for (int a = 0; a < m; ++a) Lk.push_back(L.value(0, {K.indices()[size_t(a)]}, {}));
    for (int i = 0; i < r; ++i) {
        Form Li = L.value(0, {i}, {});
        Form li = L.value(1, {}, {i});
        if (out.stored(0)) {
            Form acc(n, 2, m);
            for (int a = 0; a < m; ++a) acc += wedge(Li.slot(a), Lk[size_t(a)]);
            out.entry(0, i, 0) = -acc;
        }
        if (out.stored(1)) {
            Form acc(n, 1, m);
            for (int a = 0; a < m; ++a) acc.add_scaled(li.at(a, 0), Lk[size_t(a)]);
            out.entry(1, 0, i) = -acc;
        }
    }
    return out;
}

WeilCochain obstruction_cocycle(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla,
                                const std::vector<Form>& U) {
    return delta(K.algebroid(), K.adjoint(), coupled_cochain(K, v, nabla, U));
}

namespace {

std::string basis_pair(int i, int j) {
    return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")";
}

void note(std::string& s, const std::string& where) { s += (s.empty() ? "fails on " : ", ") + where; }

Form lie_nabla(const LinearConnection& nabla, const VField& X, const Form& w) {
    return interior(X, dnabla_form(nabla, w)) + dnabla_form(nabla, interior(X, w));
}

}  // namespace

std::string bracket_preserving_failures(const IdealBundle& K, const LinearConnection& nabla) {
    int n = K.dim(), m = K.rank();
    auto kbasis = [&](int a) { return Form::function(basis_section(n, m, a)); };
    std::string bad;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            Form lhs = dnabla_form(nabla, K.bracket(kbasis(a), kbasis(b)));
            Form rhs = K.bracket(dnabla_form(nabla, kbasis(a)), kbasis(b)) +
                       K.bracket(kbasis(a), dnabla_form(nabla, kbasis(b)));
            if (!(lhs == rhs)) note(bad, basis_pair(K.indices()[size_t(a)], K.indices()[size_t(b)]));
        }
    return bad;
}

Report coupling_checks(const IMConnection& imc) {
    const IdealBundle& K = imc.ideal();
    const auto& A = K.algebroid();
    const LinearConnection& nabla = imc.nabla();
    int n = A.dim(), r = A.rank(), m = K.rank();
    auto kbasis = [&](int a) { return Form::function(basis_section(n, m, a)); };
    auto kpart = [&](const Section& s) { return Form::function(K.project(s)); };

    std::string s1 = bracket_preserving_failures(K, nabla), s2, s3, orb, along;
    Form R = curvature_R(nabla);
    std::vector<Form> Uh;
    for (int i = 0; i < r; ++i) Uh.push_back(imc.U(A.basis(i)));
    for (int i = 0; i < r; ++i) {
        VField rho = A.anchor_basis(i);
        Form iR = interior(rho, R);
        for (int a = 0; a < m; ++a) {
            int ka = K.indices()[size_t(a)];
            if (!(end_wedge(iR, kbasis(a)) == K.bracket(Uh[size_t(i)], kbasis(a)))) note(s2, basis_pair(i, ka));
            Form lhs = interior(rho, dnabla_form(nabla, kbasis(a)));
            Form rhs = kpart(A.bracket(imc.h_basis(i), A.basis(ka)));
            if (!(lhs == rhs)) note(orb, basis_pair(i, ka));
        }
        for (int j = 0; j < r; ++j) {
            VField rj = A.anchor_basis(j);
            Form lhs = Form::function(imc.v().apply(A.bracket(imc.h_basis(i), imc.h_basis(j))));
            if (!(lhs == interior(rj, Uh[size_t(i)]))) note(along, basis_pair(i, j));
            if (j <= i) continue;
            Form l3 = imc.U(A.basis_bracket(i, j));
            Form r3 = lie_nabla(nabla, rho, Uh[size_t(j)]) - lie_nabla(nabla, rj, Uh[size_t(i)]) +
                      dnabla_form(nabla, interior(rj, Uh[size_t(i)]));
            if (!(l3 == r3)) note(s3, basis_pair(i, j));
        }
    }
    Report out;
    out.add("S.1", s1.empty(), s1);
    out.add("S.2", s2.empty(), s2);
    out.add("S.3", s3.empty(), s3);
    out.add("orbit connection", orb.empty(), orb);
    out.add("U along orbits", along.empty(), along);
    bool abel = K.abelian();
    bool inv = is_A_invariant(A, nabla, K.adjoint());
    out.add("abelian iff A-invariant", abel == inv,
            std::string(abel ? "abelian" : "nonabelian") + ", " + (inv ? "A-invariant" : "not A-invariant"));
    return out;
}

}  // namespace weilcalc
