#include "weilcalc/connections.hpp"

#include <algorithm>

namespace weilcalc {

LinearConnection::LinearConnection(int dim, int m)
    : dim_(dim), m_(m), gamma_(size_t(dim), PolyMatrix(dim, m, m)) {}

Form LinearConnection::form() const {
    Form g(dim_, 1, m_ * m_);
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < m_; ++b)
            for (int c = 0; c < m_; ++c) g.comp(b * m_ + c, uint32_t(1) << a) = gamma(a)(b, c);
    return g;
}

LinearConnection LinearConnection::shifted(const Form& g) const {
    if (g.dim() != dim_ || g.degree() != 1 || g.fibre() != m_ * m_)
        throw StructuralError("connection shift must be an End-valued 1-form");
    LinearConnection out = *this;
    for (int a = 0; a < dim_; ++a)
        for (int b = 0; b < m_; ++b)
            for (int c = 0; c < m_; ++c) out.gamma(a)(b, c) += g.comp(b * m_ + c, uint32_t(1) << a);
    return out;
}

Form dnabla_form(const LinearConnection& nabla, const Form& omega) {
    if (omega.fibre() != nabla.rank() || omega.dim() != nabla.dim())
        throw StructuralError("connection does not act on this form");
    return d(omega) + end_wedge(nabla.form(), omega);
}

Form curvature_R(const LinearConnection& nabla) {
    int n = nabla.dim(), m = nabla.rank();
    Form R(n, 2, m * m);
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            PolyMatrix Rab = nabla.gamma(b).partial(a) - nabla.gamma(a).partial(b) +
                             commutator(nabla.gamma(a), nabla.gamma(b));
            uint32_t mask = (uint32_t(1) << a) | (uint32_t(1) << b);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) R.comp(i * m + j, mask) = Rab(i, j);
        }
    return R;
}

// Matrix of T -> [M, T] on row-major vectorized m x m matrices.
static PolyMatrix commutator_operator(const PolyMatrix& M) {
    int m = M.rows();
    PolyMatrix out(M.nvars(), m * m, m * m);
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c)
            for (int e = 0; e < m; ++e) {
                out(b * m + c, e * m + c) += M(b, e);
                out(b * m + c, b * m + e) -= M(e, c);
            }
    return out;
}

LinearConnection induced_end_connection(const LinearConnection& nabla) {
    int m = nabla.rank();
    LinearConnection out(nabla.dim(), m * m);
    for (int a = 0; a < nabla.dim(); ++a) out.gamma(a) = commutator_operator(nabla.gamma(a));
    return out;
}

ARep::ARep(int dim, int r, int m) : dim_(dim), r_(r), m_(m), psi_(size_t(r), PolyMatrix(dim, m, m)) {}

ARep ARep::trivial(const AlgebroidPresentation& A, int m) { return ARep(A.dim(), A.rank(), m); }

PolyMatrix ARep::at(const Section& alpha) const {
    if (int(alpha.size()) != r_) throw StructuralError("section length differs from rank");
    PolyMatrix M(dim_, m_, m_);
    for (int i = 0; i < r_; ++i)
        if (!alpha[size_t(i)].is_zero()) M += alpha[size_t(i)] * psi(i);
    return M;
}

std::vector<Poly> ARep::act(const AlgebroidPresentation& A, const Section& alpha,
                            const std::vector<Poly>& s) const {
    VField X = A.anchor_of(alpha);
    std::vector<Poly> out = at(alpha).apply(s);
    for (int b = 0; b < m_; ++b) out[size_t(b)] += derivative(X, s[size_t(b)]);
    return out;
}

ARep induced_end_rep(const ARep& rep) {
    ARep out(rep.dim(), rep.algebroid_rank(), rep.rank() * rep.rank());
    for (int i = 0; i < rep.algebroid_rank(); ++i) out.psi(i) = commutator_operator(rep.psi(i));
    return out;
}

static PolyMatrix apply_field(const VField& X, const PolyMatrix& M) {
    PolyMatrix out(M.nvars(), M.rows(), M.cols());
    for (int i = 0; i < M.rows(); ++i)
        for (int j = 0; j < M.cols(); ++j) out(i, j) = derivative(X, M(i, j));
    return out;
}

Report validate_rep(const AlgebroidPresentation& A, const ARep& rep) {
    Report out;
    if (rep.algebroid_rank() != A.rank() || rep.dim() != A.dim())
        throw StructuralError("representation does not match the algebroid");
    std::string bad;
    for (int i = 0; i < A.rank(); ++i)
        for (int j = i + 1; j < A.rank(); ++j) {
            PolyMatrix lhs = rep.at(A.basis_bracket(i, j));
            PolyMatrix rhs = apply_field(A.anchor_basis(i), rep.psi(j)) -
                             apply_field(A.anchor_basis(j), rep.psi(i)) +
                             commutator(rep.psi(i), rep.psi(j));
            if (!(lhs == rhs))
                bad += (bad.empty() ? "fails on " : ", ") + std::string("(e") + std::to_string(i + 1) +
                       ",e" + std::to_string(j + 1) + ")";
        }
    out.add("representation flatness", bad.empty(), bad);
    return out;
}

SymForm::SymForm(int dim, int r, int slots, int degree, int fibre)
    : dim_(dim), r_(r), k_(slots), q_(degree), m_(fibre) {
    f_.assign(size_t(IndexSpace::multisets(r, slots).size()), Form(dim, degree, fibre));
}

Form& SymForm::at(const std::vector<int>& J) {
    int i = space().rank(J);
    if (i < 0) throw StructuralError("multiset not in canonical form");
    return f_[size_t(i)];
}

const Form& SymForm::at(const std::vector<int>& J) const {
    int i = space().rank(J);
    if (i < 0) throw StructuralError("multiset not in canonical form");
    return f_[size_t(i)];
}

const Form& SymForm::get(std::vector<int> J) const {
    std::sort(J.begin(), J.end());
    return at(J);
}

bool SymForm::is_zero() const {
    for (const auto& f : f_)
        if (!f.is_zero()) return false;
    return true;
}

SymForm& SymForm::operator+=(const SymForm& o) {
    if (o.f_.size() != f_.size()) throw StructuralError("symmetric form shapes differ");
    for (size_t i = 0; i < f_.size(); ++i) f_[i] += o.f_[i];
    return *this;
}

SymForm& SymForm::operator-=(const SymForm& o) {
    if (o.f_.size() != f_.size()) throw StructuralError("symmetric form shapes differ");
    for (size_t i = 0; i < f_.size(); ++i) f_[i] -= o.f_[i];
    return *this;
}

SymForm SymForm::insert(const Section& beta) const {
    if (k_ == 0) throw StructuralError("no symmetric slot left");
    if (int(beta.size()) != r_) throw StructuralError("section length differs from rank");
    SymForm out(dim_, r_, k_ - 1, q_, m_);
    const auto& sp = out.space();
    for (int t = 0; t < sp.size(); ++t)
        for (int i = 0; i < r_; ++i) {
            if (beta[size_t(i)].is_zero()) continue;
            std::vector<int> J = sp[t];
            J.push_back(i);
            out.at(t).add_scaled(beta[size_t(i)], get(J));
        }
    return out;
}

SymForm SymForm::from_form(const Form& f, int r) {
    SymForm out(f.dim(), r, 0, f.degree(), f.fibre());
    out.at(0) = f;
    return out;
}

SymForm interior(const VField& X, const SymForm& g) {
    SymForm out(g.dim(), g.algebroid_rank(), g.slots(), g.degree() - 1, g.fibre());
    for (int t = 0; t < g.space().size(); ++t) out.at(t) = interior(X, g.at(t));
    return out;
}

SymForm lieA_derivative(const AlgebroidPresentation& A, const ARep& rep, const Section& alpha,
                        const SymForm& g) {
    VField X = A.anchor_of(alpha);
    PolyMatrix psi = rep.at(alpha);
    int r = A.rank();
    std::vector<Section> brackets;
    for (int j = 0; j < r; ++j) brackets.push_back(A.bracket(alpha, A.basis(j)));
    SymForm out(g.dim(), r, g.slots(), g.degree(), g.fibre());
    const auto& sp = g.space();
    for (int t = 0; t < sp.size(); ++t) {
        Form v = lie(X, g.at(t)) + act(psi, g.at(t));
        const auto& J = sp[t];
        for (size_t s = 0; s < J.size(); ++s) {
            const Section& br = brackets[size_t(J[s])];
            for (int k = 0; k < r; ++k) {
                if (br[size_t(k)].is_zero()) continue;
                std::vector<int> J2 = J;
                J2[s] = k;
                v.add_scaled(-br[size_t(k)], g.get(J2));
            }
        }
        out.at(t) = std::move(v);
    }
    return out;
}

Form lieA_derivative(const AlgebroidPresentation& A, const ARep& rep, const Section& alpha,
                     const Form& g) {
    return lie(A.anchor_of(alpha), g) + act(rep.at(alpha), g);
}

InvarianceForm invariance_form(const AlgebroidPresentation& A, const LinearConnection& nabla,
                               const ARep& rep) {
    int n = A.dim(), m = nabla.rank();
    if (rep.rank() != m || rep.algebroid_rank() != A.rank())
        throw StructuralError("connection and representation act on different bundles");
    InvarianceForm out;
    for (int i = 0; i < A.rank(); ++i) {
        PolyMatrix theta = rep.psi(i);
        for (int b = 0; b < n; ++b)
            if (!A.anchor(i, b).is_zero()) theta -= A.anchor(i, b) * nabla.gamma(b);
        out.theta.push_back(theta);

        VField X = A.anchor_basis(i);
        Form T(n, 1, m * m);
        for (int a = 0; a < n; ++a) {
            const PolyMatrix& Ga = nabla.gamma(a);
            PolyMatrix Ta = rep.psi(i).partial(a) + commutator(Ga, rep.psi(i)) - apply_field(X, Ga);
            for (int b = 0; b < n; ++b) {
                Poly dr = A.anchor(i, b).partial(a);
                if (!dr.is_zero()) Ta -= dr * nabla.gamma(b);
            }
            for (int b = 0; b < m; ++b)
                for (int c = 0; c < m; ++c) T.comp(b * m + c, uint32_t(1) << a) = Ta(b, c);
        }
        out.T.push_back(std::move(T));
    }
    return out;
}

bool is_A_invariant(const AlgebroidPresentation& A, const LinearConnection& nabla, const ARep& rep) {
    InvarianceForm tt = invariance_form(A, nabla, rep);
    for (const auto& th : tt.theta)
        if (!th.is_zero()) return false;
    Form R = curvature_R(nabla);
    for (int i = 0; i < A.rank(); ++i)
        if (!interior(A.anchor_basis(i), R).is_zero()) return false;
    return true;
}

}  // namespace weilcalc
