#include "weilcalc/algebroid.hpp"

namespace weilcalc {

AlgebroidPresentation::AlgebroidPresentation(int dim, int rank, std::vector<std::string> variables)
    : dim_(dim), rank_(rank), vars_(std::move(variables)) {
    if (dim < 0 || dim > kMaxVars) throw StructuralError("chart dimension must be in 0..8");
    if (rank < 0) throw StructuralError("negative rank");
    if (vars_.empty()) vars_ = Poly::default_names(dim);
    if (int(vars_.size()) != dim) throw StructuralError("variable names do not match chart dimension");
    c_.assign(size_t(rank * rank * rank), Poly(dim));
    rho_.assign(size_t(rank * dim), Poly(dim));
}

void AlgebroidPresentation::set_bracket(int i, int j, int k, const Poly& p) {
    structure(i, j, k) = p;
    structure(j, i, k) = -p;
}

void AlgebroidPresentation::check_section(const Section& s) const {
    if (int(s.size()) != rank_) throw StructuralError("section length differs from rank");
}

VField AlgebroidPresentation::anchor_basis(int i) const {
    VField X;
    for (int a = 0; a < dim_; ++a) X.push_back(anchor(i, a));
    return X;
}

VField AlgebroidPresentation::anchor_of(const Section& s) const {
    check_section(s);
    VField X(static_cast<size_t>(dim_), Poly(dim_));
    for (int i = 0; i < rank_; ++i) {
        if (s[size_t(i)].is_zero()) continue;
        for (int a = 0; a < dim_; ++a) X[size_t(a)].add_product(s[size_t(i)], anchor(i, a));
    }
    return X;
}

Section AlgebroidPresentation::basis_bracket(int i, int j) const {
    Section s;
    for (int k = 0; k < rank_; ++k) s.push_back(structure(i, j, k));
    return s;
}

Section AlgebroidPresentation::bracket(const Section& a, const Section& b) const {
    check_section(a);
    check_section(b);
    Section out = zero_section(dim_, rank_);
    for (int i = 0; i < rank_; ++i) {
        if (a[size_t(i)].is_zero()) continue;
        for (int j = 0; j < rank_; ++j) {
            if (b[size_t(j)].is_zero()) continue;
            Poly ab = a[size_t(i)] * b[size_t(j)];
            for (int k = 0; k < rank_; ++k)
                if (!structure(i, j, k).is_zero()) out[size_t(k)].add_product(ab, structure(i, j, k));
        }
    }
    VField ra = anchor_of(a), rb = anchor_of(b);
    for (int k = 0; k < rank_; ++k) {
        out[size_t(k)] += derivative(ra, b[size_t(k)]);
        out[size_t(k)] -= derivative(rb, a[size_t(k)]);
    }
    return out;
}

Section add(const Section& a, const Section& b) {
    if (a.size() != b.size()) throw StructuralError("section lengths differ");
    Section r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

Section scale(const Poly& f, const Section& a) {
    Section r;
    for (const auto& x : a) r.push_back(f * x);
    return r;
}

static std::string tuple_name(std::initializer_list<int> idx) {
    std::string s = "(";
    bool first = true;
    for (int i : idx) {
        s += (first ? "e" : ",e") + std::to_string(i + 1);
        first = false;
    }
    return s + ")";
}

static bool is_zero(const Section& s) {
    for (const auto& p : s)
        if (!p.is_zero()) return false;
    return true;
}

Report validate_algebroid(const AlgebroidPresentation& A) {
    Report rep;
    int r = A.rank();
    std::string bad;
    for (int i = 0; i < r && bad.empty(); ++i)
        for (int j = i; j < r && bad.empty(); ++j)
            for (int k = 0; k < r; ++k)
                if (!(A.structure(i, j, k) == -A.structure(j, i, k))) {
                    bad = "c^" + std::to_string(k + 1) + " on " + tuple_name({i, j});
                    break;
                }
    rep.add("antisymmetry", bad.empty(), bad.empty() ? "" : "fails at " + bad);

    std::vector<std::string> jacobi;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = j + 1; k < r; ++k) {
                Section ei = A.basis(i), ej = A.basis(j), ek = A.basis(k);
                Section jac = add(add(A.bracket(A.bracket(ei, ej), ek), A.bracket(A.bracket(ej, ek), ei)),
                                  A.bracket(A.bracket(ek, ei), ej));
                if (!is_zero(jac)) jacobi.push_back(tuple_name({i, j, k}));
            }
    std::string jd;
    for (const auto& t : jacobi) jd += (jd.empty() ? "fails on " : ", ") + t;
    rep.add("Jacobi", jacobi.empty(), jd);

    std::vector<std::string> morph;
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            VField lhs = A.anchor_of(A.basis_bracket(i, j));
            VField rhs = vf_bracket(A.anchor_basis(i), A.anchor_basis(j));
            if (lhs != rhs) morph.push_back(tuple_name({i, j}));
        }
    std::string md;
    for (const auto& t : morph) md += (md.empty() ? "fails on " : ", ") + t;
    rep.add("anchor morphism", morph.empty(), md);
    return rep;
}

}  // namespace weilcalc
