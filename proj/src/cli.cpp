#include "weilcalc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "weilcalc/spec_io.hpp"

namespace weilcalc {

using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string spec_path;
    int cochain = 0;
    std::string random;
    uint64_t seed = 0;
    int bound = 2;
    int fibre = 0;
    std::string lambda = "1";
    int with = 0;
    bool check = false;
    bool solve = false;
    std::string name;
    bool emit = false;
};

// Accumulates named checks and result tables for one command.
class Output {
public:
    void check(const std::string& name, bool pass, const std::string& detail = {}) {
        lines_.push_back(name + ": " + (pass ? "pass" : "fail") + (detail.empty() ? "" : " (" + detail + ")"));
        ok_ = ok_ && pass;
    }
    void merge(const Report& r) {
        for (const auto& c : r.checks()) check(c.name, c.pass, c.pass ? "" : c.detail);
    }
    json& result() { return result_; }
    bool ok() const { return ok_; }

    json document(const std::string& command) const {
        json doc{{"command", command}, {"checks", lines_}, {"status", ok_ ? "pass" : "fail"}};
        if (!result_.is_null()) doc["result"] = result_;
        return doc;
    }

private:
    std::vector<std::string> lines_;
    json result_;
    bool ok_ = true;
};

struct Context {
    Spec spec;
    std::optional<IdealBundle> K;
    std::optional<IMConnection> imc;

    const std::vector<std::string>& names() const { return spec.variables; }

    const IdealBundle& ideal() const {
        if (!K) throw InputError("this command needs an ideal");
        return *K;
    }
    const IMConnection& connection() const {
        if (!imc) throw InputError("this command needs an im_connection");
        return *imc;
    }
};

Spec load_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot read spec file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_spec_text(buf.str());
}

Context make_context(const std::string& path, bool need_connection) {
    Context ctx{load_spec(path), std::nullopt, std::nullopt};
    if (ctx.spec.ideal) ctx.K.emplace(ctx.spec.algebroid, *ctx.spec.ideal);
    if (need_connection && ctx.spec.im_connection) ctx.imc.emplace(*ctx.K, *ctx.spec.im_connection);
    return ctx;
}

int default_fibre(const Context& ctx) {
    if (ctx.K) return ctx.K->rank();
    if (ctx.spec.representation) return ctx.spec.representation->rank();
    return 1;
}

WeilCochain select_cochain(const Context& ctx, const Options& o, int fibre) {
    if (o.cochain > 0) {
        if (size_t(o.cochain) > ctx.spec.cochains.size())
            throw InputError("--cochain " + std::to_string(o.cochain) + " but the spec has " +
                             std::to_string(ctx.spec.cochains.size()) + " cochains");
        return ctx.spec.cochains[size_t(o.cochain - 1)];
    }
    if (o.random.empty()) throw InputError("pass --cochain i or --random p,q");
    int p = 0, q = 0;
    char comma = 0;
    std::istringstream in(o.random);
    if (!(in >> p >> comma >> q) || comma != ',' || !in.eof() || p < 0 || q < 0)
        throw InputError("--random expects p,q with p, q >= 0");
    int m = o.fibre > 0 ? o.fibre : fibre;
    return random_cochain(ctx.spec.dim(), ctx.spec.rank(), p, q, m, o.bound, o.seed);
}

// Explicit representation if its rank fits, then the adjoint action on the
// ideal, then the trivial representation.
std::pair<ARep, std::string> representation_for(const Context& ctx, int fibre) {
    if (ctx.spec.representation && ctx.spec.representation->rank() == fibre)
        return {*ctx.spec.representation, "explicit"};
    if (ctx.K && ctx.K->rank() == fibre) return {ctx.K->adjoint(), "adjoint"};
    return {ARep::trivial(ctx.spec.algebroid, fibre), "trivial"};
}

LinearConnection connection_for(const Context& ctx, int fibre) {
    if (ctx.spec.connection && ctx.spec.connection->rank() == fibre) return *ctx.spec.connection;
    if (ctx.imc && ctx.K->rank() == fibre) return ctx.imc->nabla();
    throw InputError("no connection of rank " + std::to_string(fibre) + " in the spec");
}

Rational parse_rational(const std::string& s) {
    Rational q;
    if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw InputError("invalid rational '" + s + "'");
    q.canonicalize();
    return q;
}

void validate(const Context& ctx, Output& out) {
    const Spec& s = ctx.spec;
    Report alg = validate_algebroid(s.algebroid);
    out.merge(alg);
    if (!alg.ok()) return;
    if (s.representation) out.merge(validate_rep(s.algebroid, *s.representation));
    if (!s.ideal) return;
    std::optional<IdealBundle> K;
    try {
        K.emplace(s.algebroid, *s.ideal);
        out.check("ideal", true);
    } catch (const ContractError& e) {
        out.check("ideal", false, e.what());
        return;
    }
    if (s.connection && s.connection->rank() == K->rank()) {
        std::string bp = bracket_preserving_failures(*K, *s.connection);
        out.check("bracket-preserving connection", bp.empty(), bp);
    }
    if (!s.im_connection) return;
    Report im = check_IM(s.algebroid, K->adjoint(), *s.im_connection);
    out.merge(im);
    if (!im.ok()) return;
    std::optional<IMConnection> imc;
    try {
        imc.emplace(*K, *s.im_connection);
    } catch (const ContractError& e) {
        out.check("IM connection", false, e.what());
        return;
    }
    out.merge(coupling_checks(*imc));
    out.check("D(Omega) == 0", bianchi_check(*imc));
    if (s.curving) out.merge(curving_suite(*imc, *s.curving));
}

int command_validate(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, false);
    validate(ctx, out);
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_delta(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, false);
    WeilCochain c = select_cochain(ctx, o, default_fibre(ctx));
    auto [rep, kind] = representation_for(ctx, c.fibre());
    WeilCochain dc = delta(ctx.spec.algebroid, rep, c);
    out.check("delta^2 == 0", delta(ctx.spec.algebroid, rep, dc).is_zero());
    out.result() = {{"representation", kind}, {"input", cochain_to_json(c, ctx.names())},
                    {"delta", cochain_to_json(dc, ctx.names())}};
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_dnabla(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    WeilCochain c = select_cochain(ctx, o, default_fibre(ctx));
    WeilCochain dc = dnabla_cochain(connection_for(ctx, c.fibre()), c);
    out.result() = {{"input", cochain_to_json(c, ctx.names())}, {"dnabla", cochain_to_json(dc, ctx.names())}};
    return kExitOk;
}

int command_hproj(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    const IMConnection& imc = ctx.connection();
    WeilCochain c = select_cochain(ctx, o, default_fibre(ctx));
    WeilCochain hc = hstar(imc, c);
    out.check("horizontal", is_horizontal(hc, imc.ideal().indices()));
    out.check("h* idempotent", hstar(imc, hc) == hc);
    out.result() = {{"input", cochain_to_json(c, ctx.names())}, {"hproj", cochain_to_json(hc, ctx.names())}};
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_dhor(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    const IMConnection& imc = ctx.connection();
    WeilCochain c = select_cochain(ctx, o, imc.ideal().rank());
    if (c.fibre() != imc.ideal().rank()) throw InputError("D needs a cochain with values in the ideal");
    WeilCochain Dc = Dhor(imc, c);
    out.check("horizontal", is_horizontal(Dc, imc.ideal().indices()));
    out.result() = {{"input", cochain_to_json(c, ctx.names())}, {"dhor", cochain_to_json(Dc, ctx.names())}};
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_curvature(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    const IMConnection& imc = ctx.connection();
    WeilCochain omega = curvature(imc);
    out.check("Omega == (R.v - dU(h), -U(h))", omega == curvature_explicit(imc));
    out.check("horizontal", is_horizontal(omega, imc.ideal().indices()));
    out.result() = {{"curvature", cochain_to_json(omega, ctx.names())}};
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_bianchi(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    out.check("D(Omega) == 0", bianchi_check(ctx.connection()));
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_deform(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    const IMConnection& imc = ctx.connection();
    if (o.with < 1 || size_t(o.with) > ctx.spec.cochains.size())
        throw InputError("--with must name one of the spec's cochains (1-based)");
    const WeilCochain& L = ctx.spec.cochains[size_t(o.with - 1)];
    Rational lambda = parse_rational(o.lambda);
    IMConnection moved = deform(imc, L, lambda);
    WeilCochain second = c2(imc, L);
    WeilCochain expected = curvature(imc) + Dhor(imc, L) * lambda + second * (lambda * lambda);
    WeilCochain omega = curvature(moved);
    out.check("expansion", omega == expected);
    out.result() = {{"lambda", lambda.get_str()},
                    {"im_connection", cochain_to_json(moved.cochain(), ctx.names())},
                    {"curvature", cochain_to_json(omega, ctx.names())},
                    {"c2", cochain_to_json(second, ctx.names())}};
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_obstruction(const Options& o, Output& out) {
    Context ctx = make_context(o.spec_path, true);
    const IdealBundle& K = ctx.ideal();
    const Spec& s = ctx.spec;
    int r = s.rank();
    PolyMatrix v = s.splitting ? *s.splitting : ctx.connection().v();
    LinearConnection nabla = connection_for(ctx, K.rank());
    std::vector<Form> U;
    if (s.coupling_tensor) {
        U = *s.coupling_tensor;
    } else {
        for (int i = 0; i < r; ++i) U.push_back(ctx.connection().U(s.algebroid.basis(i)));
    }
    WeilCochain obs = obstruction_cocycle(K, v, nabla, U);
    out.check("horizontal", is_horizontal(obs, K.indices()));
    out.check("delta-closed", delta(s.algebroid, K.adjoint(), obs).is_zero());
    json res{{"obstruction", cochain_to_json(obs, ctx.names())}, {"bound", o.bound}};
    if (out.ok()) {
        CoboundaryResult sol = solve_coboundary(s.algebroid, K.adjoint(), obs, o.bound, &K.indices());
        res["solved"] = sol.solved;
        res["unknowns"] = sol.unknowns;
        if (sol.solved) res["corrector"] = cochain_to_json(*sol.primitive, ctx.names());
    }
    out.result() = res;
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_curving(const Options& o, Output& out) {
    if (o.check == o.solve) throw InputError("pass exactly one of --check and --solve");
    Context ctx = make_context(o.spec_path, true);
    const IMConnection& imc = ctx.connection();
    if (o.check) {
        if (!ctx.spec.curving) throw InputError("--check needs a curving in the spec");
        out.merge(curving_suite(imc, *ctx.spec.curving));
        return out.ok() ? kExitOk : kExitMathFailure;
    }
    const auto& A = imc.algebroid();
    CoboundaryResult sol = solve_coboundary(A, imc.ideal().adjoint(), curvature(imc), o.bound);
    json res{{"bound", o.bound}, {"solved", sol.solved}, {"unknowns", sol.unknowns}};
    if (sol.solved) {
        Form F = sol.primitive->form();
        res["curving"] = form_to_json(F, ctx.names());
        out.merge(curving_suite(imc, F));
        if (semisimple_fibre(imc.ideal()).ok()) out.check("unique", F == unique_curving(imc));
    }
    out.result() = res;
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_fixture(const Options& o, Output& out, std::ostream& os) {
    std::optional<Fixture> built;
    try {
        built.emplace(build_fixture(o.name));
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
    const Fixture& f = *built;
    Spec s = fixture_spec(f);
    if (o.emit) {
        os << canonical_dump(emit_spec(s));
        return -1;
    }
    Context ctx{s, f.ideal, f.connection};
    validate(ctx, out);
    return out.ok() ? kExitOk : kExitMathFailure;
}

int command_emit(const Options& o, std::ostream& os) {
    os << canonical_dump(emit_spec(load_spec(o.spec_path)));
    return -1;
}

void add_cochain_options(CLI::App* sub, Options& o) {
    sub->add_option("--cochain", o.cochain, "Use the i-th cochain of the spec (1-based)")->check(CLI::PositiveNumber);
    sub->add_option("--random", o.random, "Use a random cochain of level p and form degree q, as p,q");
    sub->add_option("--seed", o.seed, "Seed for --random");
    sub->add_option("--bound", o.bound, "Polynomial degree bound for --random")->check(CLI::NonNegativeNumber);
    sub->add_option("--fibre", o.fibre, "Value rank for --random")->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& os, std::ostream& err) {
    Options o;
    CLI::App app{"Exact Weil-complex calculus on polynomial Lie algebroids", "weilcalc"};
    app.require_subcommand(1);
    std::vector<std::pair<CLI::App*, std::string>> subs;
    auto spec_command = [&](const std::string& name, const std::string& help) {
        CLI::App* sub = app.add_subcommand(name, help);
        sub->add_option("spec", o.spec_path, "Spec file (JSON)")->required();
        subs.emplace_back(sub, name);
        return sub;
    };
    spec_command("validate", "Run every checker the spec supports");
    add_cochain_options(spec_command("delta", "Weil differential of a cochain"), o);
    add_cochain_options(spec_command("dnabla", "Covariant derivative of a cochain"), o);
    add_cochain_options(spec_command("hproj", "Horizontal projection of a cochain"), o);
    add_cochain_options(spec_command("dhor", "Horizontal exterior covariant derivative of a cochain"), o);
    spec_command("curvature", "Curvature of the IM connection");
    spec_command("bianchi", "Bianchi identity D(Omega) = 0");
    CLI::App* deform_cmd = spec_command("deform", "Affine deformation by a horizontal IM form");
    deform_cmd->add_option("--lambda", o.lambda, "Rational deformation parameter");
    deform_cmd->add_option("--with", o.with, "Deforming cochain (1-based index into cochains)")->required();
    CLI::App* obs_cmd = spec_command("obstruction", "Obstruction cocycle of coupling data and a corrector");
    obs_cmd->add_option("--bound", o.bound, "Polynomial degree bound for the corrector")->check(CLI::NonNegativeNumber);
    CLI::App* curving_cmd = spec_command("curving", "Check or solve delta F = Omega");
    curving_cmd->add_flag("--check", o.check, "Check the spec's curving");
    curving_cmd->add_flag("--solve", o.solve, "Solve for a curving");
    curving_cmd->add_option("--bound", o.bound, "Polynomial degree bound for --solve")->check(CLI::NonNegativeNumber);
    spec_command("emit", "Re-emit the spec in canonical form");
    CLI::App* fixture_cmd = app.add_subcommand("fixture", "Validate or emit a built-in fixture");
    fixture_cmd->add_option("--name", o.name, "Fixture name")->required()->check(CLI::IsMember(fixture_names()));
    fixture_cmd->add_flag("--emit", o.emit, "Print the fixture as a spec file");
    subs.emplace_back(fixture_cmd, "fixture");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        os << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    std::string command;
    for (const auto& [sub, name] : subs)
        if (sub->parsed()) command = name;
    Output out;
    int code = kExitOk;
    try {
        if (command == "validate") code = command_validate(o, out);
        else if (command == "delta") code = command_delta(o, out);
        else if (command == "dnabla") code = command_dnabla(o, out);
        else if (command == "hproj") code = command_hproj(o, out);
        else if (command == "dhor") code = command_dhor(o, out);
        else if (command == "curvature") code = command_curvature(o, out);
        else if (command == "bianchi") code = command_bianchi(o, out);
        else if (command == "deform") code = command_deform(o, out);
        else if (command == "obstruction") code = command_obstruction(o, out);
        else if (command == "curving") code = command_curving(o, out);
        else if (command == "fixture") code = command_fixture(o, out, os);
        else if (command == "emit") code = command_emit(o, os);
    } catch (const SpecError& e) {
        err << "spec error at " << e.what() << "\n";
        return kExitInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const StructuralError& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const ContractError& e) {
        out.check("precondition", false, e.what());
        code = kExitMathFailure;
    }
    if (code < 0) return kExitOk;
    os << canonical_dump(out.document(command));
    return code;
}

}  // namespace weilcalc
