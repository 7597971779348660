#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"
#include "weilcalc/cli.hpp"
#include "weilcalc/spec_io.hpp"

using namespace weilcalc;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto path = std::filesystem::temp_directory_path() / ("weilcalc_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

bool has_line(const Run& r, const std::string& line) {
    json doc = json::parse(r.out);
    for (const auto& l : doc["checks"])
        if (l == line) return true;
    return false;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("emit, validate and re-emit") {
    for (const auto& name : fixture_names()) {
        CAPTURE(name);
        Run emitted = run({"fixture", "--name", name, "--emit"});
        REQUIRE(emitted.code == 0);
        std::string path = temp_file(name + ".json", emitted.out);
        Run v = run({"validate", path});
        CHECK(v.code == 0);
        CHECK(json::parse(v.out)["status"] == "pass");
        CHECK(run({"emit", path}).out == emitted.out);
    }
}

TEST_CASE("tampered so(3)") {
    json doc = json::parse(run({"fixture", "--name", "F0_so3", "--emit"}).out);
    doc["algebroid"]["structure"]["1,2,1"] = "1";
    Run r = run({"validate", temp_file("tampered.json", canonical_dump(doc))});
    CHECK(r.code == 1);
    CHECK(has_line(r, "Jacobi: fail (fails on (e1,e2,e3))"));
}

TEST_CASE("exit code two on input errors") {
    Run missing = run({"validate", "/nonexistent/spec.json"});
    CHECK(missing.code == 2);
    Run bad = run({"validate", temp_file("bad.json", R"({"chart": {"dim": 1}, "algebroid": {"rank": 1, "anchor": {"1,1": "x +"}}})")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("/algebroid/anchor/1,1") != std::string::npos);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"fixture", "--name", "F9"}).code == 2);
    std::string f1 = temp_file("f1.json", run({"fixture", "--name", "F1_abelian_2d", "--emit"}).out);
    CHECK(run({"delta", f1}).code == 2);
    CHECK(run({"delta", f1, "--cochain", "1"}).code == 2);
    CHECK(run({"curving", f1}).code == 2);
}

TEST_CASE("computations on exported fixtures") {
    std::string f1 = temp_file("f1.json", run({"fixture", "--name", "F1_abelian_2d", "--emit"}).out);
    std::string f2 = temp_file("f2.json", run({"fixture", "--name", "F2_semisimple_2d", "--emit"}).out);

    Run curv = run({"curvature", f1});
    REQUIRE(curv.code == 0);
    json tables = json::parse(curv.out)["result"]["curvature"]["tables"];
    CHECK(tables["1|"] == json::parse(R"({"1": {"12": "1"}})"));
    CHECK(tables["|1"] == json::parse(R"({"1": {"2": "x"}})"));

    Run b = run({"bianchi", f2});
    CHECK(b.code == 0);
    CHECK(has_line(b, "D(Omega) == 0: pass"));

    Run d = run({"delta", f2, "--random", "1,1", "--seed", "5", "--bound", "1"});
    CHECK(d.code == 0);
    CHECK(d.out == run({"delta", f2, "--random", "1,1", "--seed", "5", "--bound", "1"}).out);
    CHECK(json::parse(d.out)["result"]["representation"] == "adjoint");
    CHECK(run({"hproj", f2, "--random", "2,1", "--seed", "1"}).code == 0);
    CHECK(run({"dhor", f2, "--random", "1,1", "--seed", "1"}).code == 0);
    CHECK(run({"dnabla", f2, "--random", "1,1", "--seed", "1"}).code == 0);

    Run solve = run({"curving", f2, "--solve", "--bound", "0"});
    CHECK(solve.code == 0);
    CHECK(json::parse(solve.out)["result"]["curving"] == json::parse(R"({"3": {"12": "-1"}})"));
    CHECK(run({"curving", f1, "--check"}).code == 0);
    CHECK(run({"obstruction", f2, "--bound", "1"}).code == 0);
}

TEST_CASE("deformation and obstruction from spec data") {
    const auto& f1 = test::fixture("F1_abelian_2d");
    Spec s = fixture_spec(f1);
    Form g(2, 1, 1);
    g.comp(0, 0b01) = Poly::parse("y", test::kXY);
    s.cochains.push_back(delta(f1.algebroid, f1.ideal->adjoint(), WeilCochain::from_form(g, 3)));
    std::string path = temp_file("f1_deform.json", canonical_dump(emit_spec(s)));
    Run r = run({"deform", path, "--lambda", "1", "--with", "1"});
    CHECK(r.code == 0);
    CHECK(has_line(r, "expansion: pass"));
    CHECK(run({"deform", path, "--lambda", "1/0", "--with", "1"}).code == 2);

    s.coupling_tensor = std::vector<Form>(3, Form(2, 1, 1));
    std::string zeroU = temp_file("f1_zero_u.json", canonical_dump(emit_spec(s)));
    Run obs = run({"obstruction", zeroU, "--bound", "2"});
    CHECK(obs.code == 0);
    json res = json::parse(obs.out)["result"];
    CHECK(res["solved"] == true);
    CHECK_FALSE(res["obstruction"]["tables"].empty());

    Spec bad = fixture_spec(f1);
    bad.curving->comp(0, 0b11) = Poly::parse("x + 1", test::kXY);
    Run v = run({"validate", temp_file("f1_bad_curving.json", canonical_dump(emit_spec(bad)))});
    CHECK(v.code == 1);
    CHECK(has_line(v, "delta F = Omega: fail"));
}

}
