#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "weilcalc/coupling.hpp"

namespace weilcalc {

struct Fixture {
    std::string name;
    AlgebroidPresentation algebroid;
    std::optional<IdealBundle> ideal;
    std::optional<IMConnection> connection;
    std::optional<Form> curving;
    // Ingredients of the coupling construction, when the fixture came from it.
    std::optional<AlgebroidPresentation> base;
    std::optional<AlgebroidPresentation> fibre;
    std::optional<LinearConnection> fibre_connection;
};

const std::vector<std::string>& fixture_names();
// Throws std::invalid_argument for an unknown name.
Fixture build_fixture(const std::string& name);

// Lie algebra so(3) as a presentation over an n-dimensional chart with zero anchor.
AlgebroidPresentation so3_bundle(int dim, std::vector<std::string> variables = {});
// Tangent algebroid of the chart.
AlgebroidPresentation tangent_algebroid(int dim, std::vector<std::string> variables = {});

// Small-integer random data; all coefficients lie in -3..3.
Poly random_poly(int nvars, int degree_bound, std::mt19937_64& rng);
Form random_form(int dim, int degree, int fibre, int degree_bound, std::mt19937_64& rng);
Section random_section(int dim, int rank, int degree_bound, std::mt19937_64& rng);
WeilCochain random_cochain(int dim, int rank, int level, int degree, int fibre, int degree_bound, uint64_t seed);
WeilCochain random_cochain(const AlgebroidPresentation& A, const ARep& rep, int level, int degree, int degree_bound,
                           uint64_t seed);

}  // namespace weilcalc
