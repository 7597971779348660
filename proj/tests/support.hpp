#pragma once

#include <map>
#include <string>
#include <vector>

#include "weilcalc/fixtures.hpp"

namespace weilcalc::test {

inline const std::vector<std::string> kXY{"x", "y"};

inline Poly P(const std::string& text, const std::vector<std::string>& names = kXY) {
    return Poly::parse(text, names);
}

inline const Fixture& fixture(const std::string& name) {
    static std::map<std::string, Fixture> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, build_fixture(name)).first;
    return it->second;
}

// k-valued cochain of level 0 carrying a form.
inline WeilCochain level0(const Form& f, int rank) { return WeilCochain::from_form(f, rank); }

}  // namespace weilcalc::test
