#include <doctest.h>

#include "support.hpp"
#include "weilcalc/spec_io.hpp"

using namespace weilcalc;
using nlohmann::json;

namespace {

std::string error_path(const std::string& text) {
    try {
        parse_spec_text(text);
    } catch (const SpecError& e) {
        return e.path();
    }
    return "<none>";
}

const char* const kMinimal = R"({"chart": {"dim": 2, "variables": ["x", "y"]},
  "algebroid": {"rank": 2, "anchor": {"1,1": "1", "2,2": "1"}}})";

}  // namespace

TEST_SUITE("spec_io") {

TEST_CASE("fixtures round-trip canonically") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        const auto& f = test::fixture(name);
        std::string text = canonical_dump(emit_spec(fixture_spec(f)));
        Spec s = parse_spec_text(text);
        CHECK(canonical_dump(emit_spec(s)) == text);
        CHECK(s.algebroid.rank() == f.algebroid.rank());
        CHECK(*s.im_connection == f.connection->cochain());
        if (f.algebroid.dim() >= 2) CHECK(*s.curving == *f.curving);
    }
}

TEST_CASE("forms and cochains") {
    Form w(2, 2, 2);
    w.comp(1, 0b11) = Poly::parse("x^2 - 1/2", test::kXY);
    json j = form_to_json(w, test::kXY);
    CHECK(j == json::parse(R"({"2": {"12": "x^2 - 1/2"}})"));
    CHECK(form_from_json(j, 2, 2, 2, test::kXY, "/f") == w);

    WeilCochain c = random_cochain(2, 3, 2, 1, 2, 1, 4);
    json cj = cochain_to_json(c, test::kXY);
    CHECK(cj["p"] == 2);
    CHECK(cochain_from_json(cj, 2, 3, test::kXY, "/c") == c);
}

TEST_CASE("minimal spec") {
    Spec s = parse_spec_text(kMinimal);
    CHECK(s.dim() == 2);
    CHECK(s.rank() == 2);
    CHECK_FALSE(s.ideal);
    CHECK(validate_algebroid(s.algebroid).ok());
}

TEST_CASE("located diagnostics") {
    CHECK(error_path("{") == "");
    CHECK(error_path(R"({"chart": {"dim": 2}})") == "");
    CHECK(error_path(R"({"chart": {"dim": 2}, "algebroid": {"rank": 2, "structure": {"2,1,1": "x"}}})") ==
          "/algebroid/structure/2,1,1");
    CHECK(error_path(R"({"chart": {"dim": 2}, "algebroid": {"rank": 2, "anchor": {"1,3": "x"}}})") ==
          "/algebroid/anchor/1,3");
    CHECK(error_path(R"({"chart": {"dim": 2}, "algebroid": {"rank": 2, "anchor": {"1,1": "q"}}})") ==
          "/algebroid/anchor/1,1");
    CHECK(error_path(R"({"chart": {"dim": 2}, "algebroid": {"rank": 2}, "ideal": {"indices": [2, 1]}})") ==
          "/ideal/indices");
    CHECK(error_path(R"({"chart": {"dim": 2}, "algebroid": {"rank": 2},
        "cochains": [{"p": 1, "q": 1, "fibre": 1, "tables": {"1|": {"1": {"21": "1"}}}}]})") ==
          "/cochains/0/tables/1|/1/21");
    CHECK(error_path(R"({"chart": {"dim": 9}, "algebroid": {"rank": 2}})") == "/chart/dim");
}

}
