#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "weilcalc/algebroid.hpp"
#include "weilcalc/connections.hpp"
#include "weilcalc/forms.hpp"
#include "weilcalc/report.hpp"

namespace weilcalc {

// Element of W^{p,q}(A;V): for each stored k a table c_k[I||J] of
// (q-k)-forms, I strictly increasing of length p-k, J a sorted multiset of
// length k. Values on arbitrary sections follow from the Leibniz rule.
class WeilCochain {
public:
    WeilCochain(int dim, int rank, int level, int degree, int fibre);
    static WeilCochain from_form(const Form& f, int rank);

    int dim() const { return dim_; }
    int rank() const { return r_; }
    int level() const { return p_; }
    int degree() const { return q_; }
    int fibre() const { return m_; }
    int kmin() const { return std::max(0, q_ - dim_); }
    int kmax() const { return std::min(p_, q_); }
    bool stored(int k) const { return k >= kmin() && k <= kmax(); }

    const IndexSpace& antis(int k) const { return IndexSpace::increasing(r_, p_ - k); }
    const IndexSpace& syms(int k) const { return IndexSpace::multisets(r_, k); }

    Form& entry(int k, int i, int j);
    const Form& entry(int k, int i, int j) const;
    Form& at(int k, const std::vector<int>& I, const std::vector<int>& J);
    const Form& at(int k, const std::vector<int>& I, const std::vector<int>& J) const;
    // Table value on basis sections in any order, signed; zero when absent.
    Form value(int k, std::vector<int> I, std::vector<int> J) const;
    // The leading form of a level-0 cochain.
    Form form() const { return value(0, {}, {}); }

    bool is_zero() const;
    void check_like(const WeilCochain& o) const;
    WeilCochain& operator+=(const WeilCochain& o);
    WeilCochain& operator-=(const WeilCochain& o);
    WeilCochain& operator*=(const Rational& c);
    WeilCochain operator-() const;
    friend WeilCochain operator+(WeilCochain a, const WeilCochain& b) { return a += b; }
    friend WeilCochain operator-(WeilCochain a, const WeilCochain& b) { return a -= b; }
    friend WeilCochain operator*(WeilCochain a, const Rational& c) { return a *= c; }
    friend bool operator==(const WeilCochain&, const WeilCochain&) = default;

    // Applies f to every stored form.
    template <class F>
    void for_each(F f) {
        for (int k = kmin(); k <= kmax(); ++k)
            for (auto& form : tables_[size_t(k)]) f(form);
    }

private:
    int dim_, r_, p_, q_, m_;
    std::vector<std::vector<Form>> tables_;  // [k][i * |J| + j]
};

// Value on arbitrary sections; |antis| + |syms| = p.
Form evaluate(const WeilCochain& c, const std::vector<Section>& antis, const std::vector<Section>& syms);
// c_k(antis || fixed, .) with the remaining k - |fixed| slots left open.
SymForm partial_evaluate(const WeilCochain& c, const std::vector<Section>& antis,
                         const std::vector<Section>& fixed, int k);

WeilCochain delta(const AlgebroidPresentation& A, const ARep& rep, const WeilCochain& c);
WeilCochain dnabla_cochain(const LinearConnection& nabla, const WeilCochain& c);
WeilCochain invariance_cochain(const InvarianceForm& tt, int dim);
WeilCochain wedge_Ttheta(const InvarianceForm& tt, const WeilCochain& c);

// Compatibility conditions of a level-1 cochain on all basis pairs.
Report check_IM(const AlgebroidPresentation& A, const ARep& rep, const WeilCochain& c);

// Correction terms vanish whenever a symmetric slot meets the index set K.
bool is_horizontal(const WeilCochain& c, const std::vector<int>& K);

struct CoboundaryResult {
    bool solved;
    std::optional<WeilCochain> primitive;
    int unknowns;
};

// Finds b at level p-1 with delta b = target and polynomial degree <= bound,
// optionally restricted to horizontal b (correction terms vanish on K).
CoboundaryResult solve_coboundary(const AlgebroidPresentation& A, const ARep& rep,
                                  const WeilCochain& target, int bound,
                                  const std::vector<int>* horizontal_on = nullptr);

}  // namespace weilcalc
