#pragma once

#include <string>
#include <vector>

#include "weilcalc/forms.hpp"
#include "weilcalc/report.hpp"

namespace weilcalc {

// Rank-r Lie algebroid over an n-dimensional polynomial chart in a global
// frame e_0..e_{r-1}: [e_i, e_j] = c^k_ij e_k and rho(e_i) = rho^a_i d_a.
class AlgebroidPresentation {
public:
    AlgebroidPresentation(int dim, int rank, std::vector<std::string> variables = {});

    int dim() const { return dim_; }
    int rank() const { return rank_; }
    const std::vector<std::string>& variables() const { return vars_; }

    Poly& structure(int i, int j, int k) { return c_[idx(i, j, k)]; }
    const Poly& structure(int i, int j, int k) const { return c_[idx(i, j, k)]; }
    // Sets c^k_ij and c^k_ji = -c^k_ij.
    void set_bracket(int i, int j, int k, const Poly& p);

    Poly& anchor(int i, int a) { return rho_[size_t(i * dim_ + a)]; }
    const Poly& anchor(int i, int a) const { return rho_[size_t(i * dim_ + a)]; }

    VField anchor_basis(int i) const;
    VField anchor_of(const Section& s) const;
    Section basis_bracket(int i, int j) const;
    Section bracket(const Section& a, const Section& b) const;

    Poly zero() const { return Poly(dim_); }
    Section basis(int i) const { return basis_section(dim_, rank_, i); }
    void check_section(const Section& s) const;

    friend bool operator==(const AlgebroidPresentation&, const AlgebroidPresentation&) = default;

private:
    size_t idx(int i, int j, int k) const { return size_t((i * rank_ + j) * rank_ + k); }

    int dim_, rank_;
    std::vector<std::string> vars_;
    std::vector<Poly> c_;
    std::vector<Poly> rho_;
};

// Antisymmetry, Jacobi on basis triples, anchor morphism on basis pairs.
Report validate_algebroid(const AlgebroidPresentation& A);

// Sum of sections and scalar multiples, used throughout.
Section add(const Section& a, const Section& b);
Section scale(const Poly& f, const Section& a);

}  // namespace weilcalc
