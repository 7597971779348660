#include "weilcalc/weil.hpp"

#include <map>
#include <tuple>

#include "weilcalc/linsolve.hpp"

namespace weilcalc {

WeilCochain::WeilCochain(int dim, int rank, int level, int degree, int fibre)
    : dim_(dim), r_(rank), p_(level), q_(degree), m_(fibre) {
    if (level < 0 || degree < 0) throw StructuralError("negative level or degree");
    if (dim < 0 || dim > kMaxVars) throw StructuralError("chart dimension must be in 0..8");
    tables_.resize(size_t(p_ + 1));
    for (int k = kmin(); k <= kmax(); ++k)
        tables_[size_t(k)].assign(size_t(antis(k).size() * syms(k).size()), Form(dim, q_ - k, m_));
}

WeilCochain WeilCochain::from_form(const Form& f, int rank) {
    WeilCochain c(f.dim(), rank, 0, f.degree(), f.fibre());
    if (c.stored(0)) c.entry(0, 0, 0) = f;
    return c;
}

Form& WeilCochain::entry(int k, int i, int j) {
    if (!stored(k)) throw StructuralError("cochain table not stored");
    return tables_[size_t(k)][size_t(i * syms(k).size() + j)];
}

const Form& WeilCochain::entry(int k, int i, int j) const {
    if (!stored(k)) throw StructuralError("cochain table not stored");
    return tables_[size_t(k)][size_t(i * syms(k).size() + j)];
}

Form& WeilCochain::at(int k, const std::vector<int>& I, const std::vector<int>& J) {
    int i = antis(k).rank(I), j = syms(k).rank(J);
    if (i < 0 || j < 0) throw StructuralError("index tuple not canonical");
    return entry(k, i, j);
}

const Form& WeilCochain::at(int k, const std::vector<int>& I, const std::vector<int>& J) const {
    int i = antis(k).rank(I), j = syms(k).rank(J);
    if (i < 0 || j < 0) throw StructuralError("index tuple not canonical");
    return entry(k, i, j);
}

Form WeilCochain::value(int k, std::vector<int> I, std::vector<int> J) const {
    if (k < 0 || k > p_ || int(I.size()) != p_ - k || int(J.size()) != k)
        throw StructuralError("cochain arity mismatch");
    if (!stored(k)) return Form(dim_, q_ - k, m_);
    int sign = sort_with_sign(I);
    if (sign == 0) return Form(dim_, q_ - k, m_);
    std::sort(J.begin(), J.end());
    const Form& f = at(k, I, J);
    return sign > 0 ? f : -f;
}

bool WeilCochain::is_zero() const {
    for (const auto& t : tables_)
        for (const auto& f : t)
            if (!f.is_zero()) return false;
    return true;
}

void WeilCochain::check_like(const WeilCochain& o) const {
    if (dim_ != o.dim_ || r_ != o.r_ || p_ != o.p_ || q_ != o.q_ || m_ != o.m_)
        throw StructuralError("cochain shapes differ");
}

WeilCochain& WeilCochain::operator+=(const WeilCochain& o) {
    check_like(o);
    for (size_t k = 0; k < tables_.size(); ++k)
        for (size_t i = 0; i < tables_[k].size(); ++i) tables_[k][i] += o.tables_[k][i];
    return *this;
}

WeilCochain& WeilCochain::operator-=(const WeilCochain& o) {
    check_like(o);
    for (size_t k = 0; k < tables_.size(); ++k)
        for (size_t i = 0; i < tables_[k].size(); ++i) tables_[k][i] -= o.tables_[k][i];
    return *this;
}

WeilCochain& WeilCochain::operator*=(const Rational& c) {
    for_each([&](Form& f) { f *= c; });
    return *this;
}

WeilCochain WeilCochain::operator-() const {
    WeilCochain r = *this;
    r.for_each([](Form& f) { f = -f; });
    return r;
}

namespace {

// Leibniz expansion: antisymmetric arguments are split into frame components
// one at a time; a non-constant coefficient f moves e_a into a symmetric slot
// with df in front.
class Evaluator {
public:
    Evaluator(const WeilCochain& c, const std::vector<const Section*>& antis)
        : c_(c), antis_(antis) {
        for (int a = 0; a < c.rank(); ++a) basis_.push_back(basis_section(c.dim(), c.rank(), a));
    }

    Form run(int k, size_t t, std::vector<int>& P, std::vector<const Section*>& syms) {
        if (t == antis_.size()) return leaf(k, P, syms);
        Form out(c_.dim(), c_.degree() - k, c_.fibre());
        const Section& alpha = *antis_[t];
        for (int a = 0; a < c_.rank(); ++a) {
            const Poly& f = alpha[size_t(a)];
            if (f.is_zero()) continue;
            P.push_back(a);
            Form v = run(k, t + 1, P, syms);
            P.pop_back();
            out.add_scaled(f, v);
            if (f.is_constant() || k + 1 > c_.kmax()) continue;
            syms.insert(syms.begin(), &basis_[size_t(a)]);
            Form w = run(k + 1, t + 1, P, syms);
            syms.erase(syms.begin());
            Form dw = wedge(Form::differential(f), w);
            if (P.size() % 2) out -= dw;
            else out += dw;
        }
        return out;
    }

private:
    Form leaf(int k, const std::vector<int>& P, const std::vector<const Section*>& syms) {
        Form out(c_.dim(), c_.degree() - k, c_.fibre());
        if (!c_.stored(k)) return out;
        std::vector<int> I = P;
        int sign = sort_with_sign(I);
        if (sign == 0) return out;
        int irank = c_.antis(k).rank(I);
        std::vector<int> J(static_cast<size_t>(k));
        expand(k, irank, 0, Poly(c_.dim(), sign), J, syms, out);
        return out;
    }

    void expand(int k, int irank, size_t s, const Poly& coeff, std::vector<int>& J,
                const std::vector<const Section*>& syms, Form& out) {
        if (s == syms.size()) {
            std::vector<int> Js = J;
            std::sort(Js.begin(), Js.end());
            out.add_scaled(coeff, c_.entry(k, irank, c_.syms(k).rank(Js)));
            return;
        }
        const Section& beta = *syms[s];
        for (int i = 0; i < c_.rank(); ++i) {
            if (beta[size_t(i)].is_zero()) continue;
            J[s] = i;
            expand(k, irank, s + 1, coeff * beta[size_t(i)], J, syms, out);
        }
    }

    const WeilCochain& c_;
    const std::vector<const Section*>& antis_;
    std::vector<Section> basis_;
};

void check_sections(const WeilCochain& c, const std::vector<Section>& v) {
    for (const auto& s : v) {
        if (int(s.size()) != c.rank()) throw StructuralError("section length differs from rank");
        for (const auto& p : s)
            if (p.nvars() != c.dim()) throw StructuralError("section over a different chart");
    }
}

std::vector<int> without(const std::vector<int>& v, size_t i) {
    std::vector<int> r;
    for (size_t j = 0; j < v.size(); ++j)
        if (j != i) r.push_back(v[j]);
    return r;
}

}  // namespace

Form evaluate(const WeilCochain& c, const std::vector<Section>& antis, const std::vector<Section>& syms) {
    int k = int(syms.size());
    if (int(antis.size()) + k != c.level()) throw StructuralError("evaluation arity mismatch");
    check_sections(c, antis);
    check_sections(c, syms);
    std::vector<const Section*> a, s;
    for (const auto& x : antis) a.push_back(&x);
    for (const auto& x : syms) s.push_back(&x);
    Evaluator ev(c, a);
    std::vector<int> P;
    return ev.run(k, 0, P, s);
}

SymForm partial_evaluate(const WeilCochain& c, const std::vector<Section>& antis,
                         const std::vector<Section>& fixed, int k) {
    int open = k - int(fixed.size());
    if (open < 0) throw StructuralError("too many symmetric arguments");
    SymForm out(c.dim(), c.rank(), open, c.degree() - k, c.fibre());
    const auto& sp = out.space();
    for (int t = 0; t < sp.size(); ++t) {
        std::vector<Section> syms = fixed;
        for (int i : sp[t]) syms.push_back(basis_section(c.dim(), c.rank(), i));
        out.at(t) = evaluate(c, antis, syms);
    }
    return out;
}

WeilCochain delta(const AlgebroidPresentation& A, const ARep& rep, const WeilCochain& c) {
    if (A.rank() != c.rank() || A.dim() != c.dim() || rep.rank() != c.fibre() ||
        rep.algebroid_rank() != A.rank())
        throw StructuralError("delta: algebroid, representation and cochain do not match");
    int n = A.dim(), r = A.rank(), p = c.level(), q = c.degree(), m = c.fibre();
    WeilCochain out(n, r, p + 1, q, m);
    std::vector<VField> rho;
    for (int a = 0; a < r; ++a) rho.push_back(A.anchor_basis(a));

    for (int k = out.kmin(); k <= out.kmax(); ++k) {
        const auto& Is = out.antis(k);
        const auto& Js = out.syms(k);
        for (int ii = 0; ii < Is.size(); ++ii) {
            const auto& I = Is[ii];
            for (int jj = 0; jj < Js.size(); ++jj) {
                const auto& J = Js[jj];
                Form acc(n, q - k, m);
                if (c.stored(k)) {
                    for (size_t i = 0; i < I.size(); ++i) {
                        int a = I[i];
                        std::vector<int> rest = without(I, i);
                        Form g = c.value(k, rest, J);
                        Form term = lie(rho[size_t(a)], g) + act(rep.psi(a), g);
                        for (size_t t = 0; t < J.size(); ++t)
                            for (int mm = 0; mm < r; ++mm) {
                                const Poly& cf = A.structure(a, J[t], mm);
                                if (cf.is_zero()) continue;
                                std::vector<int> J2 = J;
                                J2[t] = mm;
                                term.add_scaled(-cf, c.value(k, rest, J2));
                            }
                        if (i % 2) acc -= term;
                        else acc += term;
                    }
                }
                std::vector<Section> syms;
                for (int j : J) syms.push_back(A.basis(j));
                for (size_t i = 0; i < I.size(); ++i)
                    for (size_t j = i + 1; j < I.size(); ++j) {
                        std::vector<Section> antis{A.basis_bracket(I[i], I[j])};
                        for (size_t t = 0; t < I.size(); ++t)
                            if (t != i && t != j) antis.push_back(A.basis(I[t]));
                        Form v = evaluate(c, antis, syms);
                        if ((i + j) % 2) acc -= v;
                        else acc += v;
                    }
                for (size_t t = 0; t < J.size(); ++t)
                    acc -= interior(rho[size_t(J[t])], c.value(k - 1, I, without(J, t)));
                out.entry(k, ii, jj) = k % 2 ? -acc : acc;
            }
        }
    }
    return out;
}

WeilCochain dnabla_cochain(const LinearConnection& nabla, const WeilCochain& c) {
    if (nabla.rank() != c.fibre() || nabla.dim() != c.dim())
        throw StructuralError("connection does not act on the cochain values");
    WeilCochain out(c.dim(), c.rank(), c.level(), c.degree() + 1, c.fibre());
    Form G = nabla.form();
    for (int k = out.kmin(); k <= out.kmax(); ++k) {
        const auto& Is = out.antis(k);
        const auto& Js = out.syms(k);
        for (int ii = 0; ii < Is.size(); ++ii)
            for (int jj = 0; jj < Js.size(); ++jj) {
                const auto& I = Is[ii];
                const auto& J = Js[jj];
                Form g = c.value(k, I, J);
                Form acc = d(g) + end_wedge(G, g);
                for (size_t i = 0; i < J.size(); ++i) {
                    std::vector<int> I2{J[i]};
                    I2.insert(I2.end(), I.begin(), I.end());
                    acc -= c.value(k - 1, I2, without(J, i));
                }
                out.entry(k, ii, jj) = k % 2 ? -acc : acc;
            }
    }
    return out;
}

WeilCochain invariance_cochain(const InvarianceForm& tt, int dim) {
    int r = int(tt.theta.size());
    int m = r ? tt.theta[0].rows() : 0;
    WeilCochain c(dim, r, 1, 1, m * m);
    for (int i = 0; i < r; ++i) {
        if (c.stored(0)) c.entry(0, i, 0) = tt.T[size_t(i)];
        if (c.stored(1)) c.entry(1, 0, i) = from_matrix(dim, tt.theta[size_t(i)]);
    }
    return c;
}

WeilCochain wedge_Ttheta(const InvarianceForm& tt, const WeilCochain& c) {
    int n = c.dim(), r = c.rank(), m = c.fibre();
    if (int(tt.T.size()) != r) throw StructuralError("invariance form over a different algebroid");
    WeilCochain out(n, r, c.level() + 1, c.degree() + 1, m);
    for (int k = out.kmin(); k <= out.kmax(); ++k) {
        const auto& Is = out.antis(k);
        const auto& Js = out.syms(k);
        for (int ii = 0; ii < Is.size(); ++ii)
            for (int jj = 0; jj < Js.size(); ++jj) {
                const auto& I = Is[ii];
                const auto& J = Js[jj];
                Form acc(n, c.degree() + 1 - k, m);
                for (size_t i = 0; i < I.size(); ++i) {
                    Form v = end_wedge(tt.T[size_t(I[i])], c.value(k, without(I, i), J));
                    if (i % 2) acc -= v;
                    else acc += v;
                }
                for (size_t j = 0; j < J.size(); ++j)
                    acc += act(tt.theta[size_t(J[j])], c.value(k - 1, I, without(J, j)));
                out.entry(k, ii, jj) = std::move(acc);
            }
    }
    return out;
}

static std::string pair_name(int i, int j) {
    return "(e" + std::to_string(i + 1) + ",e" + std::to_string(j + 1) + ")";
}

Report check_IM(const AlgebroidPresentation& A, const ARep& rep, const WeilCochain& c) {
    if (c.level() != 1) throw StructuralError("check_IM expects a level-1 cochain");
    int r = A.rank();
    std::string c1, c2, c3;
    auto note = [](std::string& s, int i, int j) { s += (s.empty() ? "fails on " : ", ") + pair_name(i, j); };
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Section ei = A.basis(i), ej = A.basis(j);
            Section br = A.bracket(ei, ej);
            if (i < j) {
                Form lhs = evaluate(c, {br}, {});
                Form rhs = lieA_derivative(A, rep, ei, c.value(0, {j}, {})) -
                           lieA_derivative(A, rep, ej, c.value(0, {i}, {}));
                if (!(lhs == rhs)) note(c1, i, j);
            }
            Form lhs = evaluate(c, {}, {br});
            Form rhs = lieA_derivative(A, rep, ei, c.value(1, {}, {j})) -
                       interior(A.anchor_basis(j), c.value(0, {i}, {}));
            if (!(lhs == rhs)) note(c2, i, j);
            if (i <= j) {
                Form a = interior(A.anchor_basis(i), c.value(1, {}, {j}));
                Form b = interior(A.anchor_basis(j), c.value(1, {}, {i}));
                if (!(a == -b)) note(c3, i, j);
            }
        }
    Report out;
    out.add("C.1", c1.empty(), c1);
    out.add("C.2", c2.empty(), c2);
    out.add("C.3", c3.empty(), c3);
    return out;
}

static bool meets(const std::vector<int>& J, const std::vector<int>& K) {
    for (int j : J)
        if (std::find(K.begin(), K.end(), j) != K.end()) return true;
    return false;
}

bool is_horizontal(const WeilCochain& c, const std::vector<int>& K) {
    for (int k = std::max(1, c.kmin()); k <= c.kmax(); ++k)
        for (int i = 0; i < c.antis(k).size(); ++i)
            for (int j = 0; j < c.syms(k).size(); ++j)
                if (meets(c.syms(k)[j], K) && !c.entry(k, i, j).is_zero()) return false;
    return true;
}

namespace {

using CoeffKey = std::tuple<int, int, int, int, uint64_t>;

std::map<CoeffKey, Rational> flatten(const WeilCochain& c) {
    std::map<CoeffKey, Rational> out;
    for (int k = c.kmin(); k <= c.kmax(); ++k) {
        int cells = c.antis(k).size() * c.syms(k).size();
        for (int e = 0; e < cells; ++e) {
            const Form& f = c.entry(k, e / c.syms(k).size(), e % c.syms(k).size());
            for (int b = 0; b < f.fibre(); ++b)
                for (int x = 0; x < f.count(); ++x)
                    for (const auto& t : f.at(b, x).terms())
                        out.emplace(CoeffKey{k, e, b, x, t.mono.packed()}, t.coeff);
        }
    }
    return out;
}

void monomials_upto(int n, int bound, int var, Monomial cur, std::vector<Monomial>& out) {
    if (var == n) {
        out.push_back(cur);
        return;
    }
    for (; cur.degree() <= bound; cur = cur * Monomial::variable(var)) monomials_upto(n, bound, var + 1, cur, out);
}

struct Unknown {
    int k, i, j, b, x;
    Monomial mono;
};

}  // namespace

CoboundaryResult solve_coboundary(const AlgebroidPresentation& A, const ARep& rep,
                                  const WeilCochain& target, int bound,
                                  const std::vector<int>* horizontal_on) {
    if (target.level() < 1) throw ContractError("coboundary target must have level >= 1");
    if (!delta(A, rep, target).is_zero()) throw ContractError("coboundary target is not a delta-cocycle");
    int n = A.dim();
    WeilCochain shape(n, A.rank(), target.level() - 1, target.degree(), target.fibre());
    std::vector<Monomial> monos;
    monomials_upto(n, bound, 0, Monomial(), monos);

    std::vector<Unknown> unknowns;
    for (int k = shape.kmin(); k <= shape.kmax(); ++k)
        for (int i = 0; i < shape.antis(k).size(); ++i)
            for (int j = 0; j < shape.syms(k).size(); ++j) {
                if (horizontal_on && k >= 1 && meets(shape.syms(k)[j], *horizontal_on)) continue;
                const Form& f = shape.entry(k, i, j);
                for (int b = 0; b < f.fibre(); ++b)
                    for (int x = 0; x < f.count(); ++x)
                        for (const auto& mo : monos) unknowns.push_back({k, i, j, b, x, mo});
            }

    std::map<CoeffKey, int> row_of;
    std::vector<SparseRow> rows;
    auto row_id = [&](const CoeffKey& key) {
        auto [it, fresh] = row_of.emplace(key, int(rows.size()));
        if (fresh) rows.emplace_back();
        return it->second;
    };
    for (size_t u = 0; u < unknowns.size(); ++u) {
        const Unknown& un = unknowns[u];
        WeilCochain unit = shape;
        unit.entry(un.k, un.i, un.j).at(un.b, un.x) = Poly::monomial(n, un.mono, 1);
        for (const auto& [key, v] : flatten(delta(A, rep, unit))) rows[size_t(row_id(key))][int(u)] = v;
    }
    std::vector<Rational> rhs(rows.size(), Rational(0));
    for (const auto& [key, v] : flatten(target)) {
        int id = row_id(key);
        if (size_t(id) >= rhs.size()) rhs.resize(rows.size(), Rational(0));
        rhs[size_t(id)] = v;
    }
    rhs.resize(rows.size(), Rational(0));

    SparseSystem sys(int(unknowns.size()));
    for (size_t i = 0; i < rows.size(); ++i) sys.add(std::move(rows[i]), rhs[i]);
    CoboundaryResult res{false, std::nullopt, int(unknowns.size())};
    auto x = sys.solve();
    if (!x) return res;
    WeilCochain b = shape;
    for (size_t u = 0; u < unknowns.size(); ++u) {
        if ((*x)[u] == 0) continue;
        const Unknown& un = unknowns[u];
        b.entry(un.k, un.i, un.j).at(un.b, un.x) += Poly::monomial(n, un.mono, (*x)[u]);
    }
    res.solved = true;
    res.primitive = std::move(b);
    return res;
}

}  // namespace weilcalc
