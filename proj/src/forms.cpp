#include "weilcalc/forms.hpp"

#include <algorithm>

namespace weilcalc {

Section zero_section(int nvars, int len) { return Section(size_t(len), Poly(nvars)); }

Section basis_section(int nvars, int len, int i) {
    Section s = zero_section(nvars, len);
    s[size_t(i)] = Poly(nvars, 1);
    return s;
}

Poly derivative(const VField& X, const Poly& f) {
    Poly r(f.nvars());
    if (f.is_constant()) return r;
    for (size_t a = 0; a < X.size(); ++a)
        if (!X[a].is_zero()) r.add_product(X[a], f.partial(int(a)));
    return r;
}

VField vf_bracket(const VField& X, const VField& Y) {
    VField Z;
    for (size_t a = 0; a < X.size(); ++a) Z.push_back(derivative(X, Y[a]) - derivative(Y, X[a]));
    return Z;
}

PolyMatrix::PolyMatrix(int nvars, int rows, int cols)
    : nvars_(nvars), rows_(rows), cols_(cols), e_(size_t(rows * cols), Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(int nvars, int m) {
    PolyMatrix I(nvars, m, m);
    for (int i = 0; i < m; ++i) I(i, i) = Poly(nvars, 1);
    return I;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](const Poly& p) { return p.is_zero(); });
}

PolyMatrix& PolyMatrix::operator+=(const PolyMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

PolyMatrix& PolyMatrix::operator-=(const PolyMatrix& o) {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw StructuralError("matrix shape mismatch");
    for (size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("matrix shape mismatch");
    PolyMatrix r(a.nvars_, a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
        for (int k = 0; k < a.cols_; ++k) {
            const Poly& x = a(i, k);
            if (x.is_zero()) continue;
            for (int j = 0; j < b.cols_; ++j) r(i, j).add_product(x, b(k, j));
        }
    return r;
}

PolyMatrix operator*(const Poly& f, PolyMatrix a) {
    for (auto& p : a.e_) p = f * p;
    return a;
}

std::vector<Poly> PolyMatrix::apply(const std::vector<Poly>& v) const {
    if (int(v.size()) != cols_) throw StructuralError("matrix-vector shape mismatch");
    std::vector<Poly> r(static_cast<size_t>(rows_), Poly(nvars_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r[size_t(i)].add_product((*this)(i, j), v[size_t(j)]);
    return r;
}

PolyMatrix PolyMatrix::partial(int a) const {
    PolyMatrix r(nvars_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].partial(a);
    return r;
}

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b) { return a * b - b * a; }

Form::Form(int dim, int degree, int fibre) : dim_(dim), degree_(degree), fibre_(fibre) {
    if (dim < 0 || dim > kMaxVars) throw StructuralError("chart dimension must be in 0..8");
    if (fibre < 0) throw StructuralError("negative fibre rank");
    count_ = in_range() ? int(binomial(dim, degree)) : 0;
    c_.assign(size_t(fibre_ * count_), Poly(dim));
}

Form Form::function(const std::vector<Poly>& values) {
    if (values.empty()) throw StructuralError("empty value vector");
    Form f(values[0].nvars(), 0, int(values.size()));
    for (size_t b = 0; b < values.size(); ++b) f.at(int(b), 0) = values[b];
    return f;
}

Form Form::differential(const Poly& f) {
    Form r(f.nvars(), 1, 1);
    for (int a = 0; a < f.nvars(); ++a) r.comp(0, uint32_t(1) << a) = f.partial(a);
    return r;
}

Poly Form::comp_tuple(int b, const std::vector<int>& idx) const {
    std::vector<int> s = idx;
    int sign = sort_with_sign(s);
    if (sign == 0 || int(s.size()) != degree_ || !in_range()) return Poly(dim_);
    uint32_t m = 0;
    for (int x : s) m |= uint32_t(1) << x;
    return sign > 0 ? comp(b, m) : -comp(b, m);
}

bool Form::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Poly& p) { return p.is_zero(); });
}

void Form::check_like(const Form& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_ || fibre_ != o.fibre_)
        throw StructuralError("form shapes differ");
}

Form& Form::operator+=(const Form& o) {
    check_like(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

Form& Form::operator-=(const Form& o) {
    check_like(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

Form& Form::operator*=(const Rational& c) {
    for (auto& p : c_) p *= c;
    return *this;
}

Form Form::operator-() const {
    Form r = *this;
    for (auto& p : r.c_) p = -p;
    return r;
}

Form operator*(const Poly& f, const Form& a) {
    Form r(a.dim_, a.degree_, a.fibre_);
    if (f.is_zero()) return r;
    for (size_t i = 0; i < a.c_.size(); ++i) r.c_[i] = f * a.c_[i];
    return r;
}

bool operator==(const Form& a, const Form& b) {
    return a.dim_ == b.dim_ && a.degree_ == b.degree_ && a.fibre_ == b.fibre_ && a.c_ == b.c_;
}

void Form::add_scaled(const Poly& f, const Form& o) {
    check_like(o);
    if (f.is_zero()) return;
    for (size_t i = 0; i < c_.size(); ++i)
        if (!o.c_[i].is_zero()) c_[i].add_product(f, o.c_[i]);
}

Form Form::slot(int b) const {
    Form r(dim_, degree_, 1);
    for (int i = 0; i < count_; ++i) r.at(0, i) = at(b, i);
    return r;
}

void Form::set_slot(int b, const Form& scalar) {
    if (scalar.dim_ != dim_ || scalar.degree_ != degree_ || scalar.fibre_ != 1)
        throw StructuralError("slot shape mismatch");
    for (int i = 0; i < count_; ++i) at(b, i) = scalar.at(0, i);
}

Form Form::tensor(const Form& scalar, const std::vector<Poly>& v) {
    if (scalar.fibre_ != 1) throw StructuralError("tensor expects a scalar form");
    Form r(scalar.dim_, scalar.degree_, int(v.size()));
    for (size_t b = 0; b < v.size(); ++b) {
        if (v[b].is_zero()) continue;
        for (int i = 0; i < scalar.count_; ++i) r.at(int(b), i) = v[b] * scalar.at(0, i);
    }
    return r;
}

namespace {

// Shared kernel for products: out^{o(b,c)}_{I|J} += sign * L^{l(b,e)}_I * R^{r(e,c)}_J.
template <class Index>
Form product(const Form& L, const Form& R, int fibre, Index index) {
    if (L.dim() != R.dim()) throw StructuralError("chart dimensions differ");
    Form out(L.dim(), L.degree() + R.degree(), fibre);
    if (!L.in_range() || !R.in_range() || !out.in_range()) return out;
    const auto& lm = L.masks();
    const auto& rm = R.masks();
    for (int i = 0; i < L.count(); ++i)
        for (int j = 0; j < R.count(); ++j) {
            if (lm[size_t(i)] & rm[size_t(j)]) continue;
            int k = out.rank(lm[size_t(i)] | rm[size_t(j)]);
            int sign = shuffle_sign(lm[size_t(i)], rm[size_t(j)]);
            index([&](int o, int l, int r) {
                const Poly& a = L.at(l, i);
                const Poly& b = R.at(r, j);
                if (a.is_zero() || b.is_zero()) return;
                if (sign > 0) out.at(o, k).add_product(a, b);
                else out.at(o, k) -= a * b;
            });
        }
    return out;
}

int end_rank(const Form& T) {
    int m = 0;
    while (m * m < T.fibre()) ++m;
    if (m * m != T.fibre()) throw StructuralError("End-valued form has non-square fibre");
    return m;
}

}  // namespace

Form wedge(const Form& alpha, const Form& omega) {
    if (alpha.fibre() != 1) throw StructuralError("wedge expects a scalar left factor");
    int m = omega.fibre();
    return product(alpha, omega, m, [m](auto emit) {
        for (int b = 0; b < m; ++b) emit(b, 0, b);
    });
}

Form end_wedge(const Form& T, const Form& omega) {
    int m = end_rank(T);
    if (omega.fibre() != m) throw StructuralError("End rank does not match fibre");
    return product(T, omega, m, [m](auto emit) {
        for (int b = 0; b < m; ++b)
            for (int c = 0; c < m; ++c) emit(b, b * m + c, c);
    });
}

Form end_compose(const Form& S, const Form& T) {
    int m = end_rank(S);
    if (T.fibre() != m * m) throw StructuralError("End ranks differ");
    return product(S, T, m * m, [m](auto emit) {
        for (int b = 0; b < m; ++b)
            for (int e = 0; e < m; ++e)
                for (int c = 0; c < m; ++c) emit(b * m + c, b * m + e, e * m + c);
    });
}

Form d(const Form& omega) {
    int n = omega.dim();
    Form out(n, omega.degree() + 1, omega.fibre());
    if (!omega.in_range() || !out.in_range()) return out;
    const auto& ms = omega.masks();
    for (int i = 0; i < omega.count(); ++i) {
        uint32_t I = ms[size_t(i)];
        for (int a = 0; a < n; ++a) {
            if (I & (uint32_t(1) << a)) continue;
            int k = out.rank(I | (uint32_t(1) << a));
            bool neg = bits_below(I, a) & 1;
            for (int b = 0; b < omega.fibre(); ++b) {
                const Poly& w = omega.at(b, i);
                if (w.is_zero()) continue;
                if (neg) out.at(b, k) -= w.partial(a);
                else out.at(b, k) += w.partial(a);
            }
        }
    }
    return out;
}

Form interior(const VField& X, const Form& omega) {
    int n = omega.dim();
    if (int(X.size()) != n) throw StructuralError("vector field length differs from chart dimension");
    Form out(n, omega.degree() - 1, omega.fibre());
    if (!omega.in_range() || !out.in_range()) return out;
    const auto& ms = out.masks();
    for (int i = 0; i < out.count(); ++i) {
        uint32_t I = ms[size_t(i)];
        for (int a = 0; a < n; ++a) {
            if ((I & (uint32_t(1) << a)) || X[size_t(a)].is_zero()) continue;
            int k = omega.rank(I | (uint32_t(1) << a));
            bool neg = bits_below(I, a) & 1;
            for (int b = 0; b < omega.fibre(); ++b) {
                const Poly& w = omega.at(b, k);
                if (w.is_zero()) continue;
                Poly t = X[size_t(a)] * w;
                if (neg) out.at(b, i) -= t;
                else out.at(b, i) += t;
            }
        }
    }
    return out;
}

Form lie(const VField& X, const Form& omega) {
    int n = omega.dim();
    if (int(X.size()) != n) throw StructuralError("vector field length differs from chart dimension");
    Form out(n, omega.degree(), omega.fibre());
    if (!omega.in_range()) return out;
    const auto& ms = omega.masks();
    for (int i = 0; i < omega.count(); ++i)
        for (int b = 0; b < omega.fibre(); ++b) out.at(b, i) = derivative(X, omega.at(b, i));
    // Replacing slot i_j of I by a contributes (d_{i_j} X^a) omega_{I[i_j -> a]}.
    for (int i = 0; i < omega.count(); ++i) {
        uint32_t I = ms[size_t(i)];
        for (uint32_t rest = I; rest; rest &= rest - 1) {
            int s = __builtin_ctz(rest);
            uint32_t base = I & ~(uint32_t(1) << s);
            for (int a = 0; a < n; ++a) {
                if (base & (uint32_t(1) << a)) continue;
                Poly dX = X[size_t(a)].partial(s);
                if (dX.is_zero()) continue;
                uint32_t J = base | (uint32_t(1) << a);
                int lo = std::min(a, s), hi = std::max(a, s);
                uint32_t between = base & ((uint32_t(1) << hi) - 1) & ~((uint32_t(2) << lo) - 1);
                bool neg = __builtin_popcount(between) & 1;
                int k = omega.rank(J);
                for (int b = 0; b < omega.fibre(); ++b) {
                    const Poly& w = omega.at(b, k);
                    if (w.is_zero()) continue;
                    if (neg) out.at(b, i) -= dX * w;
                    else out.at(b, i) += dX * w;
                }
            }
        }
    }
    return out;
}

Form act(const PolyMatrix& M, const Form& omega) {
    if (M.cols() != omega.fibre()) throw StructuralError("matrix does not act on this fibre");
    Form out(omega.dim(), omega.degree(), M.rows());
    for (int i = 0; i < omega.count(); ++i)
        for (int b = 0; b < M.rows(); ++b)
            for (int c = 0; c < M.cols(); ++c) out.at(b, i).add_product(M(b, c), omega.at(c, i));
    return out;
}

PolyMatrix to_matrix(const Form& T0, int m) {
    if (T0.degree() != 0 || T0.fibre() != m * m) throw StructuralError("not an End-valued 0-form");
    PolyMatrix M(T0.dim(), m, m);
    for (int b = 0; b < m; ++b)
        for (int c = 0; c < m; ++c) M(b, c) = T0.at(b * m + c, 0);
    return M;
}

Form from_matrix(int dim, const PolyMatrix& M) {
    Form T(dim, 0, M.rows() * M.cols());
    for (int b = 0; b < M.rows(); ++b)
        for (int c = 0; c < M.cols(); ++c) T.at(b * M.cols() + c, 0) = M(b, c);
    return T;
}

Form matrix_times(const PolyMatrix& M, const Form& scalar) {
    std::vector<Poly> flat;
    for (int b = 0; b < M.rows(); ++b)
        for (int c = 0; c < M.cols(); ++c) flat.push_back(M(b, c));
    return Form::tensor(scalar, flat);
}

}  // namespace weilcalc
