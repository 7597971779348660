#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace weilcalc {

using Rational = mpq_class;

// Malformed shapes: rank, degree or variable-count mismatches.
class StructuralError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Inputs that violate a mathematical precondition of an operation.
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

constexpr int kMaxVars = 8;
constexpr int kMaxDegree = 255;

// Exponent vector packed one byte per variable, x1 in the high byte, so that
// lexicographic comparison is integer comparison.
class Monomial {
public:
    Monomial() = default;

    static Monomial variable(int i);

    int exponent(int i) const { return int((packed_ >> shift(i)) & 0xff); }
    int degree() const { return int(degree_); }
    bool is_one() const { return degree_ == 0; }

    Monomial operator*(const Monomial& o) const;
    // Lowers the exponent of variable i by one; requires exponent(i) > 0.
    Monomial lowered(int i) const;

    // Graded lexicographic order.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        return a.packed_ <=> b.packed_;
    }
    friend bool operator==(const Monomial&, const Monomial&) = default;

    uint64_t packed() const { return packed_; }

private:
    static int shift(int i) { return 8 * (kMaxVars - 1 - i); }

    uint64_t packed_ = 0;
    uint32_t degree_ = 0;
};

struct Term {
    Monomial mono;
    Rational coeff;
};

// Sparse polynomial over Q in a fixed number of variables. Terms are kept in
// increasing graded-lex order with nonzero coefficients.
class Poly {
public:
    explicit Poly(int nvars = 0);
    Poly(int nvars, const Rational& c);

    static Poly variable(int nvars, int i);
    static Poly monomial(int nvars, const Monomial& m, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_term() const;
    int degree() const;
    const std::vector<Term>& terms() const { return terms_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& c);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
    friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
    friend bool operator==(const Poly& a, const Poly& b);

    // a += b * c without materializing the product.
    void add_product(const Poly& b, const Poly& c);

    Poly partial(int i) const;

    std::string to_string(const std::vector<std::string>& names) const;
    std::string to_string() const;

    static Poly parse(const std::string& text, const std::vector<std::string>& names);

    static std::vector<std::string> default_names(int nvars);

private:
    void check_same(const Poly& o) const;
    void add_scaled(const Poly& o, int sign);

    int nvars_;
    std::vector<Term> terms_;
};

}  // namespace weilcalc
