#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "weilcalc/fixtures.hpp"

namespace weilcalc {

// Malformed spec input; `path` is a JSON pointer to the offending value.
class SpecError : public std::runtime_error {
public:
    SpecError(std::string path, const std::string& reason)
        : std::runtime_error(path + ": " + reason), path_(std::move(path)) {}
    const std::string& path() const { return path_; }

private:
    std::string path_;
};

// Parsed spec file. All indices are 1-based in JSON and 0-based here.
struct Spec {
    std::vector<std::string> variables;
    AlgebroidPresentation algebroid{0, 0};
    std::optional<std::vector<int>> ideal;
    std::optional<LinearConnection> connection;
    std::optional<ARep> representation;
    std::optional<WeilCochain> im_connection;
    std::vector<WeilCochain> cochains;
    std::optional<Form> curving;
    std::optional<PolyMatrix> splitting;
    std::optional<std::vector<Form>> coupling_tensor;

    int dim() const { return algebroid.dim(); }
    int rank() const { return algebroid.rank(); }
    int ideal_rank() const { return ideal ? int(ideal->size()) : 0; }
};

Spec parse_spec(const nlohmann::json& doc);
Spec parse_spec_text(const std::string& text);
nlohmann::json emit_spec(const Spec& spec);
Spec fixture_spec(const Fixture& f);

// {"b": {"a1a2...": poly}} with 1-based fibre and coordinate indices.
nlohmann::json form_to_json(const Form& f, const std::vector<std::string>& names);
Form form_from_json(const nlohmann::json& j, int dim, int degree, int fibre, const std::vector<std::string>& names,
                    const std::string& path);
// {"p", "q", "fibre", "tables": {"I|J": form}}.
nlohmann::json cochain_to_json(const WeilCochain& c, const std::vector<std::string>& names);
WeilCochain cochain_from_json(const nlohmann::json& j, int dim, int rank, const std::vector<std::string>& names,
                              const std::string& path);

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const nlohmann::json& j);

}  // namespace weilcalc
