#include "weilcalc/poly.hpp"

#include <algorithm>
#include <cctype>

namespace weilcalc {

Monomial Monomial::variable(int i) {
    if (i < 0 || i >= kMaxVars) throw StructuralError("variable index out of range");
    Monomial m;
    m.packed_ = uint64_t(1) << shift(i);
    m.degree_ = 1;
    return m;
}

Monomial Monomial::operator*(const Monomial& o) const {
    // Bytes cannot carry while the total degree stays within one byte.
    if (degree_ + o.degree_ > uint32_t(kMaxDegree))
        throw StructuralError("monomial degree exceeds 255");
    Monomial m;
    m.packed_ = packed_ + o.packed_;
    m.degree_ = degree_ + o.degree_;
    return m;
}

Monomial Monomial::lowered(int i) const {
    Monomial m = *this;
    m.packed_ -= uint64_t(1) << shift(i);
    m.degree_ -= 1;
    return m;
}

Poly::Poly(int nvars) : nvars_(nvars) {
    if (nvars < 0 || nvars > kMaxVars) throw StructuralError("variable count must be in 0..8");
}

Poly::Poly(int nvars, const Rational& c) : Poly(nvars) {
    if (c != 0) terms_.push_back({Monomial(), c});
}

Poly Poly::variable(int nvars, int i) {
    if (i < 0 || i >= nvars) throw StructuralError("variable index out of range");
    return monomial(nvars, Monomial::variable(i), 1);
}

Poly Poly::monomial(int nvars, const Monomial& m, const Rational& c) {
    Poly p(nvars);
    if (c != 0) p.terms_.push_back({m, c});
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one());
}

Rational Poly::constant_term() const {
    if (!terms_.empty() && terms_[0].mono.is_one()) return terms_[0].coeff;
    return 0;
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.back().mono.degree(); }

void Poly::check_same(const Poly& o) const {
    if (nvars_ != o.nvars_) throw StructuralError("polynomial variable counts differ");
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
}

void Poly::add_scaled(const Poly& o, int sign) {
    check_same(o);
    if (o.terms_.empty()) return;
    if (terms_.empty()) {
        terms_ = o.terms_;
        if (sign < 0)
            for (auto& t : terms_) t.coeff = -t.coeff;
        return;
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
        if (j == o.terms_.size() || (i < terms_.size() && terms_[i].mono < o.terms_[j].mono)) {
            out.push_back(std::move(terms_[i++]));
        } else if (i == terms_.size() || o.terms_[j].mono < terms_[i].mono) {
            out.push_back(o.terms_[j++]);
            if (sign < 0) out.back().coeff = -out.back().coeff;
        } else {
            Rational c = terms_[i].coeff;
            if (sign > 0) c += o.terms_[j].coeff;
            else c -= o.terms_[j].coeff;
            if (c != 0) out.push_back({terms_[i].mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    terms_ = std::move(out);
}

Poly& Poly::operator+=(const Poly& o) {
    add_scaled(o, 1);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    add_scaled(o, -1);
    return *this;
}

Poly& Poly::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

static std::vector<Term> collect(std::vector<Term> raw) {
    std::sort(raw.begin(), raw.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    std::vector<Term> out;
    out.reserve(raw.size());
    for (auto& t : raw) {
        if (!out.empty() && out.back().mono == t.mono) {
            out.back().coeff += t.coeff;
        } else {
            if (!out.empty() && out.back().coeff == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().coeff == 0) out.pop_back();
    return out;
}

Poly operator*(const Poly& a, const Poly& b) {
    a.check_same(b);
    Poly r(a.nvars_);
    if (a.terms_.empty() || b.terms_.empty()) return r;
    if (b.terms_.size() == 1 && b.terms_[0].mono.is_one()) return a * b.terms_[0].coeff;
    if (a.terms_.size() == 1 && a.terms_[0].mono.is_one()) return b * a.terms_[0].coeff;
    std::vector<Term> raw;
    raw.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& s : a.terms_)
        for (const auto& t : b.terms_) raw.push_back({s.mono * t.mono, s.coeff * t.coeff});
    r.terms_ = collect(std::move(raw));
    return r;
}

void Poly::add_product(const Poly& b, const Poly& c) {
    if (b.is_zero() || c.is_zero()) {
        check_same(b);
        check_same(c);
        return;
    }
    *this += b * c;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff)
            return false;
    return true;
}

Poly Poly::partial(int i) const {
    if (i < 0 || i >= nvars_) throw StructuralError("partial derivative index out of range");
    Poly r(nvars_);
    for (const auto& t : terms_) {
        int e = t.mono.exponent(i);
        if (e == 0) continue;
        r.terms_.push_back({t.mono.lowered(i), t.coeff * e});
    }
    // Lowering one exponent can break the graded order across degrees.
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const Term& a, const Term& b) { return a.mono < b.mono; });
    return r;
}

std::vector<std::string> Poly::default_names(int nvars) {
    std::vector<std::string> names;
    for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));
    return names;
}

std::string Poly::to_string() const { return to_string(default_names(nvars_)); }

std::string Poly::to_string(const std::vector<std::string>& names) const {
    if (int(names.size()) != nvars_) throw StructuralError("variable name count mismatch");
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        Rational c = it->coeff;
        bool neg = c < 0;
        if (neg) c = -c;
        if (it == terms_.rbegin())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        std::string body;
        if (c != 1 || it->mono.is_one()) body = c.get_str();
        for (int v = 0; v < nvars_; ++v) {
            int e = it->mono.exponent(v);
            if (e == 0) continue;
            if (!body.empty()) body += "*";
            body += names[v];
            if (e > 1) body += "^" + std::to_string(e);
        }
        out += body;
    }
    return out;
}

namespace {

class PolyParser {
public:
    PolyParser(const std::string& s, const std::vector<std::string>& names)
        : s_(s), names_(names), n_(int(names.size())) {}

    Poly run() {
        Poly acc(n_);
        skip();
        if (pos_ == s_.size()) fail("empty polynomial");
        bool first = true;
        while (true) {
            skip();
            if (pos_ == s_.size()) break;
            int sign = 1;
            if (s_[pos_] == '+' || s_[pos_] == '-') {
                sign = s_[pos_] == '-' ? -1 : 1;
                ++pos_;
            } else if (!first) {
                fail("expected '+' or '-'");
            }
            Poly t = term();
            if (sign < 0) acc -= t;
            else acc += t;
            first = false;
        }
        return acc;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw std::invalid_argument("polynomial '" + s_ + "' at offset " + std::to_string(pos_) +
                                    ": " + why);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Poly term() {
        Poly t(n_, 1);
        while (true) {
            skip();
            t = t * factor();
            skip();
            if (pos_ < s_.size() && s_[pos_] == '*') {
                ++pos_;
                continue;
            }
            return t;
        }
    }

    std::string digits() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    Poly factor() {
        if (pos_ == s_.size()) fail("expected a factor");
        if (std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            std::string num = digits();
            if (pos_ < s_.size() && s_[pos_] == '/') {
                ++pos_;
                std::string den = digits();
                if (den.empty()) fail("expected denominator");
                if (mpz_class(den) == 0) fail("zero denominator");
                num += "/" + den;
            }
            Rational q(num);
            q.canonicalize();
            return Poly(n_, q);
        }
        size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name.empty()) fail("unexpected character");
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) fail("unknown variable '" + name + "'");
        int v = int(it - names_.begin());
        int e = 1;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip();
            std::string d = digits();
            if (d.empty() || d.size() > 3) fail("bad exponent");
            e = std::stoi(d);
        }
        Poly p(n_, 1);
        Poly x = Poly::variable(n_, v);
        for (int k = 0; k < e; ++k) p = p * x;
        return p;
    }

    const std::string& s_;
    const std::vector<std::string>& names_;
    int n_;
    size_t pos_ = 0;
};

}  // namespace

Poly Poly::parse(const std::string& text, const std::vector<std::string>& names) {
    return PolyParser(text, names).run();
}

}  // namespace weilcalc
