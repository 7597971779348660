#include "weilcalc/coupling.hpp"

#include <map>

#include "weilcalc/linsolve.hpp"

namespace weilcalc {

namespace {

std::vector<int> range(int from, int to) {
    std::vector<int> v;
    for (int i = from; i < to; ++i) v.push_back(i);
    return v;
}

// Scalar F(X, Y) for a k-valued 2-form.
std::vector<Poly> pair_value(const Form& F, const VField& X, const VField& Y) {
    Form v = interior(Y, interior(X, F));
    std::vector<Poly> out;
    for (int c = 0; c < F.fibre(); ++c) out.push_back(v.count() ? v.at(c, 0) : Poly(F.dim()));
    return out;
}

void note(std::string& s, const std::string& where) { s += (s.empty() ? "fails on " : ", ") + where; }

std::string frame_name(int i) { return "e" + std::to_string(i + 1); }

void check_shapes(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                  const LinearConnection& nabla, const Form& F) {
    int n = B.dim(), m = fibre.rank();
    if (fibre.dim() != n || nabla.dim() != n || F.dim() != n) throw StructuralError("coupling inputs live on different charts");
    if (nabla.rank() != m || F.fibre() != m || F.degree() != 2)
        throw StructuralError("coupling expects a connection on k and a k-valued 2-form");
}

}  // namespace

Report coupling_preconditions(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                              const LinearConnection& nabla, const Form& F) {
    check_shapes(B, fibre, nabla, F);
    Report out;
    out.add("base algebroid", validate_algebroid(B).ok());
    bool anchorless = true;
    for (int i = 0; i < fibre.rank(); ++i)
        for (int s = 0; s < fibre.dim(); ++s)
            if (!fibre.anchor(i, s).is_zero()) anchorless = false;
    bool lie = anchorless && validate_algebroid(fibre).ok();
    out.add("fibre Lie algebra bundle", lie);
    if (!lie) return out;
    IdealBundle Kf(fibre, range(0, fibre.rank()));
    std::string bp = bracket_preserving_failures(Kf, nabla);
    out.add("(i) bracket-preserving", bp.empty(), bp);
    out.add("(ii) R = -ad F", curvature_R(nabla) == -Kf.ad_form(F));
    Form G = dnabla_form(nabla, F);
    std::string tr;
    for (int i = 0; i < B.rank(); ++i)
        if (!interior(B.anchor_basis(i), G).is_zero()) note(tr, frame_name(i));
    out.add("(iii) transversal dF", tr.empty(), tr);
    return out;
}

AlgebroidPresentation coupled_presentation(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                                           const LinearConnection& nabla, const Form& F) {
    check_shapes(B, fibre, nabla, F);
    int n = B.dim(), rb = B.rank(), m = fibre.rank();
    AlgebroidPresentation A(n, rb + m, B.variables());
    for (int i = 0; i < rb; ++i)
        for (int s = 0; s < n; ++s) A.anchor(i, s) = B.anchor(i, s);
    for (int i = 0; i < rb; ++i) {
        VField ri = B.anchor_basis(i);
        for (int j = i + 1; j < rb; ++j) {
            for (int k = 0; k < rb; ++k) A.set_bracket(i, j, k, B.structure(i, j, k));
            std::vector<Poly> f = pair_value(F, ri, B.anchor_basis(j));
            for (int c = 0; c < m; ++c) A.set_bracket(i, j, rb + c, -f[size_t(c)]);
        }
        for (int a = 0; a < m; ++a)
            for (int c = 0; c < m; ++c) {
                Poly g(n);
                for (int s = 0; s < n; ++s) g.add_product(ri[size_t(s)], nabla.gamma(s)(c, a));
                A.set_bracket(i, rb + a, rb + c, g);
            }
    }
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = 0; c < m; ++c) A.set_bracket(rb + a, rb + b, rb + c, fibre.structure(a, b, c));
    return A;
}

Coupled build_coupled(const AlgebroidPresentation& B, const AlgebroidPresentation& fibre,
                      const LinearConnection& nabla, const Form& F) {
    Report pre = coupling_preconditions(B, fibre, nabla, F);
    for (const auto& c : pre.checks())
        if (!c.pass)
            throw ContractError("coupling precondition " + c.name + " fails" + (c.detail.empty() ? "" : ": " + c.detail));
    int n = B.dim(), rb = B.rank(), m = fibre.rank();
    IdealBundle K(coupled_presentation(B, fibre, nabla, F), range(rb, rb + m));
    PolyMatrix v(n, m, rb + m);
    for (int a = 0; a < m; ++a) v(a, rb + a) = Poly(n, 1);
    std::vector<Form> U(size_t(rb + m), Form(n, 1, m));
    for (int i = 0; i < rb; ++i) U[size_t(i)] = -interior(B.anchor_basis(i), F);
    IMConnection imc(K, coupled_cochain(K, v, nabla, U));
    return {K, imc, F};
}

LinearConnection shifted_connection(const IdealBundle& K, const LinearConnection& nabla, const Form& gamma) {
    int n = K.dim(), m = K.rank();
    if (gamma.degree() != 1 || gamma.fibre() != m) throw StructuralError("shift expects a k-valued 1-form");
    LinearConnection out = nabla;
    for (int s = 0; s < n; ++s)
        for (int b = 0; b < m; ++b)
            for (int d = 0; d < m; ++d) {
                const Poly& g = gamma.comp(d, uint32_t(1) << s);
                if (g.is_zero()) continue;
                for (int c = 0; c < m; ++c)
                    if (!K.bracket(b, d, c).is_zero()) out.gamma(s)(c, b).add_product(g, K.bracket(b, d, c));
            }
    return out;
}

Form deformed_curving(const IdealBundle& K, const LinearConnection& nabla, const Form& F, const Form& gamma) {
    return F + dnabla_form(nabla, gamma) - K.bracket(gamma, gamma) * Rational(1, 2);
}

Report curving_suite(const IMConnection& imc, const Form& F, const std::vector<Form>& gammas) {
    const IdealBundle& K = imc.ideal();
    const auto& A = K.algebroid();
    ARep adj = K.adjoint();
    int r = A.rank();
    auto delta0 = [&](const Form& f) { return delta(A, adj, WeilCochain::from_form(f, r)); };
    Report out;
    out.add("delta F = Omega", delta0(F) == curvature(imc));
    out.add("R = -ad F", curvature_R(imc.nabla()) == -K.ad_form(F));
    std::string ub;
    for (int i = 0; i < r; ++i)
        if (K.position(i) < 0 && !(imc.U(A.basis(i)) == -interior(A.anchor_basis(i), F))) note(ub, frame_name(i));
    out.add("U = -i_rho F", ub.empty(), ub);
    Form G = dnabla_form(imc.nabla(), F);
    out.add("delta G = 0", delta0(G).is_zero());
    out.add("dG = 0", dnabla_form(imc.nabla(), G).is_zero());
    if (gammas.empty()) return out;
    std::string conn, curv, same;
    for (size_t t = 0; t < gammas.size(); ++t) {
        const Form& g = gammas[t];
        IMConnection moved(K, imc.cochain() + delta0(g));
        Form Fg = deformed_curving(K, imc.nabla(), F, g);
        std::string where = "gamma " + std::to_string(t + 1);
        if (!(moved.nabla() == shifted_connection(K, imc.nabla(), g))) note(conn, where);
        if (!(delta0(Fg) == curvature(moved))) note(curv, where);
        if (!(dnabla_form(moved.nabla(), Fg) == G)) note(same, where);
    }
    out.add("deformed connection", conn.empty(), conn);
    out.add("deformed curving", curv.empty(), curv);
    out.add("G unchanged", same.empty(), same);
    return out;
}

namespace {

// Rows sum_b g^b c^c_{e b} for the map g -> (e -> [e_e, g]), keyed (c, e).
std::vector<std::pair<int, SparseRow>> ad_rows(const IdealBundle& K) {
    int m = K.rank();
    std::vector<std::pair<int, SparseRow>> rows;
    for (int c = 0; c < m; ++c)
        for (int e = 0; e < m; ++e) {
            SparseRow row;
            for (int b = 0; b < m; ++b) {
                Rational v = K.bracket(e, b, c).constant_term();
                if (v != 0) row[b] = v;
            }
            rows.emplace_back(c * m + e, std::move(row));
        }
    return rows;
}

bool constant_structure(const IdealBundle& K) {
    int m = K.rank();
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c)
                if (!K.bracket(a, b, c).is_constant()) return false;
    return true;
}

}  // namespace

Report semisimple_fibre(const IdealBundle& K) {
    Report out;
    bool constant = constant_structure(K);
    out.add("constant structure", constant);
    if (!constant) return out;
    int m = K.rank();
    SparseSystem center(m);
    for (auto& [key, row] : ad_rows(K)) center.add(row, 0);
    int zdim = m - center.rank();
    out.add("zero center", zdim == 0, "center dimension " + std::to_string(zdim));
    // D[x_a, x_b] = [D x_a, x_b] + [x_a, D x_b], unknown D(c, d) at column c * m + d.
    SparseSystem der(m * m);
    auto cst = [&](int a, int b, int c) { return K.bracket(a, b, c).constant_term(); };
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b)
            for (int c = 0; c < m; ++c) {
                SparseRow row;
                for (int d = 0; d < m; ++d) {
                    row[c * m + d] += cst(a, b, d);
                    row[d * m + a] -= cst(d, b, c);
                    row[d * m + b] -= cst(a, d, c);
                }
                der.add(row, 0);
            }
    int ddim = m * m - der.rank();
    out.add("derivations inner", ddim == m - zdim, "derivation space dimension " + std::to_string(ddim));
    return out;
}

Form ad_inverse(const IdealBundle& K, const Form& D) {
    int n = K.dim(), m = K.rank();
    if (D.fibre() != m * m || D.dim() != n) throw StructuralError("ad_inverse expects an End(k)-valued form");
    Report ss = semisimple_fibre(K);
    if (!ss.ok()) throw ContractError("fibre is not semisimple: ad is not invertible onto derivations");
    auto rows = ad_rows(K);
    Form out(n, D.degree(), m);
    for (int x = 0; x < D.count(); ++x) {
        std::map<Monomial, std::map<int, Rational>> rhs;
        for (int s = 0; s < m * m; ++s)
            for (const auto& t : D.at(s, x).terms()) rhs[t.mono][s] = t.coeff;
        for (const auto& [mono, vals] : rhs) {
            SparseSystem sys(m);
            for (const auto& [slot, row] : rows) {
                auto it = vals.find(slot);
                sys.add(row, it == vals.end() ? Rational(0) : it->second);
            }
            auto g = sys.solve();
            if (!g) throw ContractError("form is not in the image of ad");
            for (int b = 0; b < m; ++b)
                if ((*g)[size_t(b)] != 0) out.at(b, x) += Poly::monomial(n, mono, (*g)[size_t(b)]);
        }
    }
    return out;
}

Form unique_curving(const IMConnection& imc) {
    const IdealBundle& K = imc.ideal();
    Form F = ad_inverse(K, curvature_R(imc.nabla()));
    WeilCochain d0 = delta(K.algebroid(), K.adjoint(), WeilCochain::from_form(F, K.algebroid().rank()));
    if (!(d0 == curvature(imc))) throw ContractError("solution of R = -ad F is not a curving");
    return F;
}

static std::string compatibility_failures(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla) {
    const auto& A = K.algebroid();
    int n = K.dim(), m = K.rank();
    std::string bad;
    for (int i = 0; i < A.rank(); ++i) {
        std::vector<Poly> vi;
        for (int b = 0; b < m; ++b) vi.push_back(v(b, i));
        Section hi = add(A.basis(i), scale(Poly(n, -1), K.embed(vi)));
        for (int a = 0; a < m; ++a) {
            int ka = K.indices()[size_t(a)];
            Form lhs = Form::function(K.project(A.bracket(hi, A.basis(ka))));
            Form rhs = interior(A.anchor_basis(i), dnabla_form(nabla, Form::function(basis_section(n, m, a))));
            if (!(lhs == rhs)) note(bad, "(" + frame_name(i) + "," + frame_name(ka) + ")");
        }
    }
    return bad;
}

Primitive primitive_from_pair(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla) {
    const auto& A = K.algebroid();
    int n = K.dim(), m = K.rank();
    std::string bp = bracket_preserving_failures(K, nabla);
    if (!bp.empty()) throw ContractError("connection is not bracket-preserving: " + bp);
    std::string comp = compatibility_failures(K, v, nabla);
    if (!comp.empty()) throw ContractError("splitting is not compatible with the connection: " + comp);
    Form F = ad_inverse(K, curvature_R(nabla));
    std::vector<Form> U(size_t(A.rank()), Form(n, 1, m));
    for (int i = 0; i < A.rank(); ++i) U[size_t(i)] = -interior(A.anchor_basis(i), F);
    IMConnection imc(K, coupled_cochain(K, v, nabla, U));
    return {imc, F};
}

Report abelian_primitive_check(const IdealBundle& K, const PolyMatrix& v, const LinearConnection& nabla,
                               const Form& F) {
    if (!K.abelian()) throw ContractError("ideal is not abelian");
    const auto& A = K.algebroid();
    int n = K.dim(), m = K.rank(), r = A.rank();
    if (v.rows() != m || v.cols() != r) throw StructuralError("splitting must be an m x r matrix");
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (!(v(b, K.indices()[size_t(a)]) == Poly(n, a == b ? 1 : 0)))
                throw ContractError("v is not a splitting: it does not restrict to the identity on the ideal");
    if (F.degree() != 2 || F.fibre() != m) throw StructuralError("curving must be a k-valued 2-form");
    Report out;
    out.add("flat", curvature_R(nabla).is_zero());
    std::string ind;
    for (int i = 0; i < r; ++i)
        for (int a = 0; a < m; ++a) {
            int ka = K.indices()[size_t(a)];
            Form lhs = Form::function(K.project(A.basis_bracket(i, ka)));
            Form rhs = interior(A.anchor_basis(i), dnabla_form(nabla, Form::function(basis_section(n, m, a))));
            if (!(lhs == rhs)) note(ind, "(" + frame_name(i) + "," + frame_name(ka) + ")");
        }
    out.add("induces nabla^B", ind.empty(), ind);
    std::vector<Section> hs;
    for (int i = 0; i < r; ++i) {
        std::vector<Poly> vi;
        for (int b = 0; b < m; ++b) vi.push_back(v(b, i));
        hs.push_back(add(A.basis(i), scale(Poly(n, -1), K.embed(vi))));
    }
    std::string sc;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            std::vector<Poly> Fv = v.apply(A.bracket(hs[size_t(i)], hs[size_t(j)]));
            for (auto& p : Fv) p = -p;
            if (Fv != pair_value(F, A.anchor_basis(i), A.anchor_basis(j)))
                note(sc, "(" + frame_name(i) + "," + frame_name(j) + ")");
        }
    out.add("splitting curvature", sc.empty(), sc);
    Form G = dnabla_form(nabla, F);
    std::string tr;
    for (int i = 0; i < r; ++i)
        if (!interior(A.anchor_basis(i), G).is_zero()) note(tr, frame_name(i));
    out.add("transverse dF", tr.empty(), tr);
    return out;
}

}  // namespace weilcalc
