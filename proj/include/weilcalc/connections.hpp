#pragma once

#include <vector>

#include "weilcalc/algebroid.hpp"
#include "weilcalc/forms.hpp"
#include "weilcalc/report.hpp"

namespace weilcalc {

// Linear connection on a trivial rank-m bundle: nabla_{d_a} u_c = gamma[a](b,c) u_b.
class LinearConnection {
public:
    LinearConnection(int dim, int m);

    int dim() const { return dim_; }
    int rank() const { return m_; }
    PolyMatrix& gamma(int a) { return gamma_[size_t(a)]; }
    const PolyMatrix& gamma(int a) const { return gamma_[size_t(a)]; }

    // Connection 1-form as an End-valued form.
    Form form() const;
    // The connection plus an End-valued 1-form.
    LinearConnection shifted(const Form& g) const;

    friend bool operator==(const LinearConnection&, const LinearConnection&) = default;

private:
    int dim_, m_;
    std::vector<PolyMatrix> gamma_;
};

Form dnabla_form(const LinearConnection& nabla, const Form& omega);
// Curvature as an End-valued 2-form.
Form curvature_R(const LinearConnection& nabla);
LinearConnection induced_end_connection(const LinearConnection& nabla);

// A-connection on a trivial rank-m bundle: nabla^A_{e_i} u_c = psi[i](b,c) u_b.
class ARep {
public:
    ARep(int dim, int r, int m);
    static ARep trivial(const AlgebroidPresentation& A, int m);

    int dim() const { return dim_; }
    int algebroid_rank() const { return r_; }
    int rank() const { return m_; }
    PolyMatrix& psi(int i) { return psi_[size_t(i)]; }
    const PolyMatrix& psi(int i) const { return psi_[size_t(i)]; }
    // psi(alpha) = alpha^i psi_i.
    PolyMatrix at(const Section& alpha) const;
    std::vector<Poly> act(const AlgebroidPresentation& A, const Section& alpha,
                          const std::vector<Poly>& s) const;

    friend bool operator==(const ARep&, const ARep&) = default;

private:
    int dim_, r_, m_;
    std::vector<PolyMatrix> psi_;
};

ARep induced_end_rep(const ARep& rep);
// Flatness on basis pairs.
Report validate_rep(const AlgebroidPresentation& A, const ARep& rep);

// Form with values in S^k(A^*) (x) V: one form per sorted multiset of length k.
class SymForm {
public:
    SymForm(int dim, int r, int slots, int degree, int fibre);

    int dim() const { return dim_; }
    int algebroid_rank() const { return r_; }
    int slots() const { return k_; }
    int degree() const { return q_; }
    int fibre() const { return m_; }
    const IndexSpace& space() const { return IndexSpace::multisets(r_, k_); }
    Form& at(int idx) { return f_[size_t(idx)]; }
    const Form& at(int idx) const { return f_[size_t(idx)]; }
    Form& at(const std::vector<int>& J);
    const Form& at(const std::vector<int>& J) const;
    // Component on an unsorted multiset.
    const Form& get(std::vector<int> J) const;

    bool is_zero() const;
    SymForm& operator+=(const SymForm& o);
    SymForm& operator-=(const SymForm& o);
    friend SymForm operator+(SymForm a, const SymForm& b) { return a += b; }
    friend SymForm operator-(SymForm a, const SymForm& b) { return a -= b; }
    friend bool operator==(const SymForm&, const SymForm&) = default;

    // Inserts a section into the first slot; C-infinity linear.
    SymForm insert(const Section& beta) const;
    static SymForm from_form(const Form& f, int r);

private:
    int dim_, r_, k_, q_, m_;
    std::vector<Form> f_;
};

SymForm interior(const VField& X, const SymForm& g);

// Lie derivative induced by the representation on S^k(A^*) (x) V-valued forms.
SymForm lieA_derivative(const AlgebroidPresentation& A, const ARep& rep, const Section& alpha,
                        const SymForm& g);
Form lieA_derivative(const AlgebroidPresentation& A, const ARep& rep, const Section& alpha,
                     const Form& g);

// theta(e_i) = psi_i - nabla_{rho e_i}; T(e_i) its companion End-valued 1-form.
struct InvarianceForm {
    std::vector<Form> T;
    std::vector<PolyMatrix> theta;
};

InvarianceForm invariance_form(const AlgebroidPresentation& A, const LinearConnection& nabla,
                               const ARep& rep);
bool is_A_invariant(const AlgebroidPresentation& A, const LinearConnection& nabla, const ARep& rep);

}  // namespace weilcalc
