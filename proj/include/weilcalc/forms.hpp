#pragma once

#include <cstdint>
#include <vector>

#include "weilcalc/combinatorics.hpp"
#include "weilcalc/poly.hpp"

namespace weilcalc {

// Frame components of a section of A (length r) or of a vector field (length n).
using Section = std::vector<Poly>;
using VField = std::vector<Poly>;

Section zero_section(int nvars, int len);
Section basis_section(int nvars, int len, int i);

// Vector field acting on a function.
Poly derivative(const VField& X, const Poly& f);
VField vf_bracket(const VField& X, const VField& Y);

// Dense matrix of polynomials.
class PolyMatrix {
public:
    PolyMatrix(int nvars, int rows, int cols);
    static PolyMatrix identity(int nvars, int m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int nvars() const { return nvars_; }
    Poly& operator()(int i, int j) { return e_[size_t(i * cols_ + j)]; }
    const Poly& operator()(int i, int j) const { return e_[size_t(i * cols_ + j)]; }
    bool is_zero() const;

    PolyMatrix& operator+=(const PolyMatrix& o);
    PolyMatrix& operator-=(const PolyMatrix& o);
    friend PolyMatrix operator+(PolyMatrix a, const PolyMatrix& b) { return a += b; }
    friend PolyMatrix operator-(PolyMatrix a, const PolyMatrix& b) { return a -= b; }
    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b);
    friend PolyMatrix operator*(const Poly& f, PolyMatrix a);
    friend bool operator==(const PolyMatrix&, const PolyMatrix&) = default;

    std::vector<Poly> apply(const std::vector<Poly>& v) const;
    PolyMatrix partial(int a) const;

private:
    int nvars_, rows_, cols_;
    std::vector<Poly> e_;
};

PolyMatrix commutator(const PolyMatrix& a, const PolyMatrix& b);

// Differential q-form on the chart with values in a trivial bundle of rank
// `fibre`. Components are indexed by fibre slot and by a q-subset of the
// coordinates (bitmask); out-of-range degrees give the zero object.
class Form {
public:
    Form(int dim, int degree, int fibre);
    static Form function(const std::vector<Poly>& values);  // 0-form
    static Form differential(const Poly& f);                // df, scalar 1-form

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    int fibre() const { return fibre_; }
    bool in_range() const { return degree_ >= 0 && degree_ <= dim_; }
    int count() const { return count_; }
    const std::vector<uint32_t>& masks() const { return SubsetSpace::get(dim_, clamp()).masks(); }
    int rank(uint32_t mask) const { return SubsetSpace::get(dim_, clamp()).rank(mask); }

    Poly& at(int b, int idx) { return c_[size_t(b * count_ + idx)]; }
    const Poly& at(int b, int idx) const { return c_[size_t(b * count_ + idx)]; }
    Poly& comp(int b, uint32_t mask) { return at(b, rank(mask)); }
    const Poly& comp(int b, uint32_t mask) const { return at(b, rank(mask)); }
    // Component on an arbitrary ordered index tuple, with sign.
    Poly comp_tuple(int b, const std::vector<int>& idx) const;

    bool is_zero() const;
    void check_like(const Form& o) const;

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    Form& operator*=(const Rational& c);
    Form operator-() const;
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(Form a, const Rational& c) { return a *= c; }
    friend Form operator*(const Poly& f, const Form& a);
    friend bool operator==(const Form& a, const Form& b);

    // Add f * o; scalar o (fibre 1) is placed in slot `b`.
    void add_scaled(const Poly& f, const Form& o);
    // Fibre slot b as a scalar form, and its inverse.
    Form slot(int b) const;
    void set_slot(int b, const Form& scalar);
    // All fibre slots of a value vector v (fibre m) times a scalar form.
    static Form tensor(const Form& scalar, const std::vector<Poly>& v);

private:
    int clamp() const { return in_range() ? degree_ : 0; }

    int dim_, degree_, fibre_, count_;
    std::vector<Poly> c_;
};

// Scalar form alpha wedged with a vector-valued form.
Form wedge(const Form& alpha, const Form& omega);
Form d(const Form& omega);
Form interior(const VField& X, const Form& omega);
Form lie(const VField& X, const Form& omega);

// Pointwise fibre action of a matrix on a form.
Form act(const PolyMatrix& M, const Form& omega);
// End-valued form T (fibre m*m, slot b*m+c) wedged with a V-valued form.
Form end_wedge(const Form& T, const Form& omega);
// End-valued forms composed: (S ^ T)^{bc} = sum_e S^{be} ^ T^{ec}.
Form end_compose(const Form& S, const Form& T);

// Converts an End-valued 0-form to a matrix and back.
PolyMatrix to_matrix(const Form& T0, int m);
Form from_matrix(int dim, const PolyMatrix& M);
// The End-valued form with matrix M in every component weighted by scalar.
Form matrix_times(const PolyMatrix& M, const Form& scalar);

}  // namespace weilcalc
