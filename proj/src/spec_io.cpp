#include "weilcalc/spec_io.hpp"

#include <sstream>

namespace weilcalc {

using nlohmann::json;

namespace {

std::string join(const std::vector<int>& v, const char* sep) {
    std::string s;
    for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i] + 1);
    return s;
}

std::vector<int> split_indices(const std::string& key, const std::string& path) {
    std::vector<int> out;
    if (key.empty()) return out;
    std::stringstream ss(key);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
            throw SpecError(path, "malformed index list '" + key + "'");
        out.push_back(std::stoi(part) - 1);
    }
    return out;
}

std::vector<int> key_indices(const std::string& key, size_t count, const std::vector<int>& limits,
                             const std::string& path) {
    std::vector<int> idx = split_indices(key, path);
    if (idx.size() != count)
        throw SpecError(path, "expected " + std::to_string(count) + " indices in '" + key + "'");
    for (size_t t = 0; t < count; ++t)
        if (idx[t] < 0 || idx[t] >= limits[t]) throw SpecError(path, "index out of range in '" + key + "'");
    return idx;
}

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object() || !j.contains(key)) throw SpecError(path, std::string("missing '") + key + "'");
    return j.at(key);
}

int require_int(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) throw SpecError(path + "/" + key, "expected an integer");
    return v.get<int>();
}

const json& require_object(const json& j, const std::string& path) {
    if (!j.is_object()) throw SpecError(path, "expected an object");
    return j;
}

Poly parse_poly(const json& j, int nvars, const std::vector<std::string>& names, const std::string& path) {
    if (!j.is_string()) throw SpecError(path, "expected a polynomial string");
    try {
        Poly p = Poly::parse(j.get<std::string>(), names);
        if (p.nvars() != nvars) throw SpecError(path, "polynomial over the wrong chart");
        return p;
    } catch (const std::invalid_argument& e) {
        throw SpecError(path, e.what());
    } catch (const StructuralError& e) {
        throw SpecError(path, e.what());
    }
}

std::string coordinate_key(uint32_t mask) {
    std::string s;
    for (int a = 0; a < 32; ++a)
        if (mask & (uint32_t(1) << a)) s += char('1' + a);
    return s;
}

std::string escape(const std::string& key) {
    std::string s;
    for (char ch : key) s += ch == '/' ? "~1" : ch == '~' ? "~0" : std::string(1, ch);
    return s;
}

}  // namespace

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

json form_to_json(const Form& f, const std::vector<std::string>& names) {
    json out = json::object();
    for (int b = 0; b < f.fibre(); ++b) {
        json comp = json::object();
        for (int x = 0; x < f.count(); ++x)
            if (!f.at(b, x).is_zero()) comp[coordinate_key(f.masks()[size_t(x)])] = f.at(b, x).to_string(names);
        if (!comp.empty()) out[std::to_string(b + 1)] = comp;
    }
    return out;
}

Form form_from_json(const json& j, int dim, int degree, int fibre, const std::vector<std::string>& names,
                    const std::string& path) {
    require_object(j, path);
    Form f(dim, degree, fibre);
    for (const auto& [bkey, comp] : j.items()) {
        std::string bpath = path + "/" + escape(bkey);
        int b = key_indices(bkey, 1, {fibre}, bpath)[0];
        require_object(comp, bpath);
        for (const auto& [ckey, poly] : comp.items()) {
            std::string cpath = bpath + "/" + escape(ckey);
            if (!f.in_range()) throw SpecError(cpath, "form degree exceeds the chart dimension");
            if (int(ckey.size()) != degree) throw SpecError(cpath, "expected " + std::to_string(degree) + " coordinate digits");
            uint32_t mask = 0;
            int last = -1;
            for (char ch : ckey) {
                int a = ch - '1';
                if (a < 0 || a >= dim || a <= last) throw SpecError(cpath, "coordinate indices must be increasing digits 1.." + std::to_string(dim));
                mask |= uint32_t(1) << a;
                last = a;
            }
            f.comp(b, mask) = parse_poly(poly, dim, names, cpath);
        }
    }
    return f;
}

json cochain_to_json(const WeilCochain& c, const std::vector<std::string>& names) {
    json tables = json::object();
    for (int k = c.kmin(); k <= c.kmax(); ++k)
        for (int i = 0; i < c.antis(k).size(); ++i)
            for (int j = 0; j < c.syms(k).size(); ++j) {
                const Form& f = c.entry(k, i, j);
                if (f.is_zero()) continue;
                tables[join(c.antis(k)[i], ",") + "|" + join(c.syms(k)[j], ",")] = form_to_json(f, names);
            }
    return json{{"p", c.level()}, {"q", c.degree()}, {"fibre", c.fibre()}, {"tables", tables}};
}

WeilCochain cochain_from_json(const json& j, int dim, int rank, const std::vector<std::string>& names,
                              const std::string& path) {
    int p = require_int(j, "p", path), q = require_int(j, "q", path), m = require_int(j, "fibre", path);
    if (p < 0 || q < 0 || m < 1) throw SpecError(path, "p and q must be >= 0 and fibre >= 1");
    WeilCochain c(dim, rank, p, q, m);
    const json& tables = require_object(require(j, "tables", path), path + "/tables");
    for (const auto& [key, form] : tables.items()) {
        std::string tpath = path + "/tables/" + escape(key);
        auto bar = key.find('|');
        if (bar == std::string::npos) throw SpecError(tpath, "table key must look like 'I|J'");
        std::vector<int> I = split_indices(key.substr(0, bar), tpath);
        std::vector<int> J = split_indices(key.substr(bar + 1), tpath);
        int k = int(J.size());
        if (int(I.size()) + k != p) throw SpecError(tpath, "index count does not match the level");
        for (int i : I)
            if (i < 0 || i >= rank) throw SpecError(tpath, "index out of range");
        for (int i : J)
            if (i < 0 || i >= rank) throw SpecError(tpath, "index out of range");
        int ii = c.antis(k).rank(I), jj = c.syms(k).rank(J);
        if (ii < 0 || jj < 0) throw SpecError(tpath, "indices must be increasing before '|' and sorted after it");
        if (!c.stored(k)) throw SpecError(tpath, "component degree is outside 0..dim");
        c.entry(k, ii, jj) = form_from_json(form, dim, q - k, m, names, tpath);
    }
    return c;
}

Spec parse_spec(const json& doc) {
    Spec s;
    require_object(doc, "");
    const json& chart = require(doc, "chart", "");
    int n = require_int(chart, "dim", "/chart");
    if (n < 0 || n > kMaxVars) throw SpecError("/chart/dim", "dimension must be in 0..8");
    if (chart.contains("variables")) {
        const json& vars = chart.at("variables");
        if (!vars.is_array() || int(vars.size()) != n) throw SpecError("/chart/variables", "expected " + std::to_string(n) + " names");
        for (const auto& v : vars) {
            if (!v.is_string() || v.get<std::string>().empty()) throw SpecError("/chart/variables", "names must be nonempty strings");
            s.variables.push_back(v.get<std::string>());
        }
    } else {
        s.variables = Poly::default_names(n);
    }
    const auto& names = s.variables;

    const json& alg = require(doc, "algebroid", "");
    int r = require_int(alg, "rank", "/algebroid");
    if (r < 1) throw SpecError("/algebroid/rank", "rank must be positive");
    s.algebroid = AlgebroidPresentation(n, r, names);
    if (alg.contains("structure"))
        for (const auto& [key, poly] : require_object(alg.at("structure"), "/algebroid/structure").items()) {
            std::string path = "/algebroid/structure/" + escape(key);
            auto ijk = key_indices(key, 3, {r, r, r}, path);
            if (ijk[0] >= ijk[1]) throw SpecError(path, "structure keys need i < j");
            s.algebroid.set_bracket(ijk[0], ijk[1], ijk[2], parse_poly(poly, n, names, path));
        }
    if (alg.contains("anchor"))
        for (const auto& [key, poly] : require_object(alg.at("anchor"), "/algebroid/anchor").items()) {
            std::string path = "/algebroid/anchor/" + escape(key);
            auto ia = key_indices(key, 2, {r, n}, path);
            s.algebroid.anchor(ia[0], ia[1]) = parse_poly(poly, n, names, path);
        }

    if (doc.contains("ideal")) {
        const json& ind = require(doc.at("ideal"), "indices", "/ideal");
        if (!ind.is_array() || ind.empty()) throw SpecError("/ideal/indices", "expected a nonempty array");
        std::vector<int> idx;
        for (const auto& v : ind) {
            if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > r)
                throw SpecError("/ideal/indices", "indices must be integers in 1.." + std::to_string(r));
            idx.push_back(v.get<int>() - 1);
        }
        for (size_t t = 1; t < idx.size(); ++t)
            if (idx[t - 1] >= idx[t]) throw SpecError("/ideal/indices", "indices must be strictly increasing");
        s.ideal = idx;
    }
    int m = s.ideal_rank();

    if (doc.contains("connection")) {
        const json& cj = doc.at("connection");
        int cm = cj.contains("rank") ? require_int(cj, "rank", "/connection") : m;
        if (cm < 1) throw SpecError("/connection/rank", "connection rank must be given or implied by the ideal");
        LinearConnection nabla(n, cm);
        if (cj.contains("christoffels"))
            for (const auto& [key, poly] : require_object(cj.at("christoffels"), "/connection/christoffels").items()) {
                std::string path = "/connection/christoffels/" + escape(key);
                auto abc = key_indices(key, 3, {n, cm, cm}, path);
                nabla.gamma(abc[0])(abc[1], abc[2]) = parse_poly(poly, n, names, path);
            }
        s.connection = nabla;
    }
    if (doc.contains("representation")) {
        const json& rj = doc.at("representation");
        int rm = require_int(rj, "rank", "/representation");
        if (rm < 1) throw SpecError("/representation/rank", "rank must be positive");
        ARep rep(n, r, rm);
        if (rj.contains("coefficients"))
            for (const auto& [key, poly] : require_object(rj.at("coefficients"), "/representation/coefficients").items()) {
                std::string path = "/representation/coefficients/" + escape(key);
                auto ibc = key_indices(key, 3, {r, rm, rm}, path);
                rep.psi(ibc[0])(ibc[1], ibc[2]) = parse_poly(poly, n, names, path);
            }
        s.representation = rep;
    }
    if (doc.contains("im_connection")) {
        if (!m) throw SpecError("/im_connection", "an IM connection needs an ideal");
        s.im_connection = cochain_from_json(doc.at("im_connection"), n, r, names, "/im_connection");
        const auto& c = *s.im_connection;
        if (c.level() != 1 || c.degree() != 1 || c.fibre() != m)
            throw SpecError("/im_connection", "expected level 1, degree 1 and fibre equal to the ideal rank");
    }
    if (doc.contains("cochains")) {
        const json& arr = doc.at("cochains");
        if (!arr.is_array()) throw SpecError("/cochains", "expected an array");
        for (size_t t = 0; t < arr.size(); ++t)
            s.cochains.push_back(cochain_from_json(arr[t], n, r, names, "/cochains/" + std::to_string(t)));
    }
    if (doc.contains("curving")) {
        if (!m) throw SpecError("/curving", "a curving needs an ideal");
        s.curving = form_from_json(doc.at("curving"), n, 2, m, names, "/curving");
    }
    if (doc.contains("splitting")) {
        if (!m) throw SpecError("/splitting", "a splitting needs an ideal");
        PolyMatrix v(n, m, r);
        for (const auto& [key, poly] : require_object(doc.at("splitting"), "/splitting").items()) {
            std::string path = "/splitting/" + escape(key);
            auto bi = key_indices(key, 2, {m, r}, path);
            v(bi[0], bi[1]) = parse_poly(poly, n, names, path);
        }
        s.splitting = v;
    }
    if (doc.contains("coupling_tensor")) {
        if (!m) throw SpecError("/coupling_tensor", "a coupling tensor needs an ideal");
        std::vector<Form> U(size_t(r), Form(n, 1, m));
        for (const auto& [key, form] : require_object(doc.at("coupling_tensor"), "/coupling_tensor").items()) {
            std::string path = "/coupling_tensor/" + escape(key);
            int i = key_indices(key, 1, {r}, path)[0];
            U[size_t(i)] = form_from_json(form, n, 1, m, names, path);
        }
        s.coupling_tensor = U;
    }
    return s;
}

Spec parse_spec_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SpecError("", std::string("invalid JSON: ") + e.what());
    }
    return parse_spec(doc);
}

json emit_spec(const Spec& s) {
    const auto& A = s.algebroid;
    const auto& names = s.variables;
    int n = A.dim(), r = A.rank();
    json doc;
    doc["chart"] = {{"dim", n}, {"variables", names}};
    json structure = json::object(), anchor = json::object();
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j)
            for (int k = 0; k < r; ++k)
                if (!A.structure(i, j, k).is_zero()) structure[join({i, j, k}, ",")] = A.structure(i, j, k).to_string(names);
    for (int i = 0; i < r; ++i)
        for (int a = 0; a < n; ++a)
            if (!A.anchor(i, a).is_zero()) anchor[join({i, a}, ",")] = A.anchor(i, a).to_string(names);
    doc["algebroid"] = {{"rank", r}, {"structure", structure}, {"anchor", anchor}};
    if (s.ideal) {
        std::vector<int> one;
        for (int i : *s.ideal) one.push_back(i + 1);
        doc["ideal"] = {{"indices", one}};
    }
    if (s.connection) {
        const auto& nb = *s.connection;
        json ch = json::object();
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < nb.rank(); ++b)
                for (int c = 0; c < nb.rank(); ++c)
                    if (!nb.gamma(a)(b, c).is_zero()) ch[join({a, b, c}, ",")] = nb.gamma(a)(b, c).to_string(names);
        doc["connection"] = {{"rank", nb.rank()}, {"christoffels", ch}};
    }
    if (s.representation) {
        const auto& rep = *s.representation;
        json co = json::object();
        for (int i = 0; i < r; ++i)
            for (int b = 0; b < rep.rank(); ++b)
                for (int c = 0; c < rep.rank(); ++c)
                    if (!rep.psi(i)(b, c).is_zero()) co[join({i, b, c}, ",")] = rep.psi(i)(b, c).to_string(names);
        doc["representation"] = {{"rank", rep.rank()}, {"coefficients", co}};
    }
    if (s.im_connection) doc["im_connection"] = cochain_to_json(*s.im_connection, names);
    if (!s.cochains.empty()) {
        json arr = json::array();
        for (const auto& c : s.cochains) arr.push_back(cochain_to_json(c, names));
        doc["cochains"] = arr;
    }
    if (s.curving) doc["curving"] = form_to_json(*s.curving, names);
    if (s.splitting) {
        json v = json::object();
        for (int b = 0; b < s.splitting->rows(); ++b)
            for (int i = 0; i < r; ++i)
                if (!(*s.splitting)(b, i).is_zero()) v[join({b, i}, ",")] = (*s.splitting)(b, i).to_string(names);
        doc["splitting"] = v;
    }
    if (s.coupling_tensor) {
        json u = json::object();
        for (int i = 0; i < r; ++i)
            if (!(*s.coupling_tensor)[size_t(i)].is_zero())
                u[std::to_string(i + 1)] = form_to_json((*s.coupling_tensor)[size_t(i)], names);
        doc["coupling_tensor"] = u;
    }
    return doc;
}

Spec fixture_spec(const Fixture& f) {
    Spec s;
    s.algebroid = f.algebroid;
    s.variables = f.algebroid.variables().empty() ? Poly::default_names(f.algebroid.dim()) : f.algebroid.variables();
    if (f.ideal) s.ideal = f.ideal->indices();
    if (f.connection) {
        if (f.algebroid.dim() > 0) s.connection = f.connection->nabla();
        s.im_connection = f.connection->cochain();
    }
    if (f.curving && f.algebroid.dim() >= 2) s.curving = f.curving;
    return s;
}

}  // namespace weilcalc
