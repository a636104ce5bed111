#ifndef CATMT_IO_HPP
#define CATMT_IO_HPP

#include <chrono>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "amalgams.hpp"
#include "concrete.hpp"
#include "core.hpp"
#include "structure.hpp"

namespace catmt {

using json = nlohmann::json;

// Malformed input. line/column are 1-based; 0 when the problem is semantic
// rather than syntactic.
struct InputError : std::runtime_error {
    int line = 0, column = 0;
    InputError(const std::string& what, int l = 0, int c = 0) : std::runtime_error(what), line(l), column(c) {}
};

inline json parse_json(const std::string& text, const std::string& origin = "input") {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // e.byte is one past the offending character.
        std::size_t upto = e.byte ? e.byte - 1 : 0;
        int line = 1, col = 1;
        for (std::size_t i = 0; i < upto && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        std::string msg = e.what();
        auto p = msg.find("; ");
        if (p != std::string::npos) msg = msg.substr(p + 2);
        throw InputError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg, line, col);
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_json(ss.str(), path);
}

namespace detail {

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
    return j.at(key);
}

template <class T>
T get_as(const json& j, const char* what) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        throw InputError(std::string("field \"") + what + "\" has the wrong type");
    }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Loaders.

inline Graph graph_from_json(const json& j) {
    int n = detail::get_as<int>(detail::field(j, "vertices"), "vertices");
    if (n < 0 || n > 31) throw InputError("vertices must be in 0..31");
    Graph g(n);
    if (j.contains("edges"))
        for (const auto& e : j.at("edges")) {
            auto uv = detail::get_as<std::vector<int>>(e, "edges");
            if (uv.size() != 2 || uv[0] < 0 || uv[1] < 0 || uv[0] >= n || uv[1] >= n)
                throw InputError("edge " + e.dump() + " is not a pair of vertices");
            g.add_edge(uv[0], uv[1]);
        }
    return g;
}

inline Arrow<FinSet> set_morphism_from_json(const json& j) {
    auto dom = detail::get_as<std::vector<int>>(detail::field(j, "dom"), "dom");
    auto cod = detail::get_as<std::vector<int>>(detail::field(j, "cod"), "cod");
    const auto& mp = detail::field(j, "map");
    auto index_in = [](const std::vector<int>& v, int x) {
        auto it = std::find(v.begin(), v.end(), x);
        return it == v.end() ? -1 : static_cast<int>(it - v.begin());
    };
    Arrow<FinSet> f{FinSet{static_cast<int>(dom.size())}, FinSet{static_cast<int>(cod.size())},
                    std::vector<int>(dom.size(), -1)};
    for (auto it = mp.begin(); it != mp.end(); ++it) {
        int x;
        try {
            x = std::stoi(it.key());
        } catch (const std::exception&) {
            throw InputError("map key \"" + it.key() + "\" is not an integer");
        }
        int i = index_in(dom, x), y = index_in(cod, detail::get_as<int>(it.value(), "map"));
        if (i < 0 || y < 0) throw InputError("map entry " + it.key() + " leaves dom or cod");
        f.map[i] = y;
    }
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (f.map[i] < 0) throw InputError("map is undefined at " + std::to_string(dom[i]));
    return f;
}

inline Arrow<VecSpace> vec_morphism_from_json(const json& j, const VecCat& cat) {
    int p = j.contains("p") ? detail::get_as<int>(j.at("p"), "p") : 2;
    if (p != cat.prime()) throw InputError("morphism over F" + std::to_string(p) + " in a category over F" +
                                           std::to_string(cat.prime()));
    int d1 = detail::get_as<int>(detail::field(j, "dom"), "dom");
    int d2 = detail::get_as<int>(detail::field(j, "cod"), "cod");
    auto rows = detail::get_as<std::vector<std::vector<int>>>(detail::field(j, "matrix"), "matrix");
    if (static_cast<int>(rows.size()) != d2) throw InputError("matrix needs one row per codomain dimension");
    linalg::Mat m(d2, d1);
    for (int i = 0; i < d2; ++i) {
        if (static_cast<int>(rows[i].size()) != d1) throw InputError("matrix row " + std::to_string(i) + " has the wrong length");
        for (int c = 0; c < d1; ++c) m.at(i, c) = linalg::mod(rows[i][c], p);
    }
    return cat.from_matrix(VecSpace{d1}, VecSpace{d2}, m);
}

inline FinStructure structure_from_json(const json& j) {
    int n = detail::get_as<int>(detail::field(j, "universe"), "universe");
    if (n < 0) throw InputError("universe must be non-negative");
    FinStructure s(n);
    if (!j.contains("relations")) return s;
    for (auto it = j.at("relations").begin(); it != j.at("relations").end(); ++it) {
        int ar = detail::get_as<int>(detail::field(it.value(), "arity"), "arity");
        s.declare(it.key(), ar);
        if (!it.value().contains("tuples")) continue;
        for (const auto& t : it.value().at("tuples")) {
            auto tup = detail::get_as<std::vector<int>>(t, "tuples");
            if (static_cast<int>(tup.size()) != ar) throw InputError("tuple " + t.dump() + " has the wrong arity for " + it.key());
            for (int x : tup)
                if (x < 0 || x >= n) throw InputError("tuple " + t.dump() + " leaves the universe");
            s.set(it.key(), tup);
        }
    }
    return s;
}

inline std::string name_of(const json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

inline FinCategory poset_from_json(const json& j) {
    std::vector<std::string> elems;
    for (const auto& e : detail::field(j, "elements")) elems.push_back(name_of(e));
    std::vector<std::pair<std::string, std::string>> leq;
    if (j.contains("leq"))
        for (const auto& p : j.at("leq")) {
            if (!p.is_array() || p.size() != 2) throw InputError("leq entry " + p.dump() + " is not a pair");
            leq.emplace_back(name_of(p[0]), name_of(p[1]));
        }
    try {
        return FinCategory::poset(elems, leq);
    } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
    }
}

// {"objects": [...], "homs": [{"dom","cod","name"}], "compose": [[g,f,gf],...]}.
// Identities are implicit.
inline FinCategory category_from_json(const json& j) {
    FinCategory c;
    for (const auto& o : detail::field(j, "objects")) c.add_object(name_of(o));
    auto obj = [&](const json& x) {
        auto o = c.find_object(name_of(x));
        if (!o) throw InputError("unknown object " + x.dump());
        return *o;
    };
    auto mor = [&](const json& x) {
        auto m = c.find_morphism(name_of(x));
        if (!m) throw InputError("unknown morphism " + x.dump());
        return *m;
    };
    if (j.contains("homs"))
        for (const auto& h : j.at("homs"))
            c.add_morphism(obj(detail::field(h, "dom")), obj(detail::field(h, "cod")),
                           detail::get_as<std::string>(detail::field(h, "name"), "name"));
    if (j.contains("compose"))
        for (const auto& t : j.at("compose")) {
            if (!t.is_array() || t.size() != 3) throw InputError("compose entry " + t.dump() + " is not [g,f,gf]");
            try {
                c.set_composite(mor(t[0]), mor(t[1]), mor(t[2]));
            } catch (const std::invalid_argument& e) {
                throw InputError(e.what());
            }
        }
    return c;
}

// {"A": [[...],...], "B": [[...],...]}: stage sets of two filtrations.
inline std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> filtration_from_json(const json& j) {
    auto a = detail::get_as<std::vector<std::vector<int>>>(detail::field(j, "A"), "A");
    auto b = detail::get_as<std::vector<std::vector<int>>>(detail::field(j, "B"), "B");
    if (a.size() != b.size()) throw InputError("filtrations A and B have different lengths");
    return {a, b};
}

// ---------------------------------------------------------------------------
// Serialisation.

inline json to_json(const FinSet& s) { return {{"size", s.n}}; }
inline json to_json(const VecSpace& v) { return {{"dim", v.dim}}; }
inline json to_json(const Graph& g) {
    json e = json::array();
    for (auto [u, v] : g.edges()) e.push_back({u, v});
    return {{"vertices", g.n}, {"edges", e}};
}

template <class Obj>
json to_json(const Arrow<Obj>& f) {
    return {{"dom", to_json(f.dom)}, {"cod", to_json(f.cod)}, {"map", f.map}};
}

inline json to_json(const FinStructure& s) {
    json rels = json::object();
    for (const auto& [name, r] : s.relations()) rels[name] = {{"arity", r.arity}, {"tuples", s.tuples(name)}};
    return {{"universe", s.size()}, {"relations", rels}};
}

template <class Mor>
json to_json(const Square<Mor>& s) {
    return {{"f", to_json(s.f)}, {"g", to_json(s.g)}, {"h", to_json(s.h)}, {"k", to_json(s.k)}};
}

template <class Mor>
json to_json(const std::vector<Square<Mor>>& v) {
    json a = json::array();
    for (const auto& s : v) a.push_back(to_json(s));
    return a;
}

// ---------------------------------------------------------------------------
// Reports.

struct Check {
    std::string name;
    std::string verdict = "pass";  // pass | fail | inconclusive
    json witness;                  // null when there is nothing to show
    bool exhaustive = true;
};

struct Report {
    std::string version = "0.1.0";
    std::string command;
    std::vector<Check> checks;
    json result;  // command-specific payload
    std::uint64_t seed = 0;
    long elapsed_ms = 0;

    void add(std::string name, bool pass, json witness = nullptr, bool exhaustive = true) {
        checks.push_back({std::move(name), pass ? "pass" : "fail", std::move(witness), exhaustive});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (c.verdict != "pass") return false;
        return true;
    }
    int exit_code() const { return all_pass() ? 0 : 1; }

    json to_json() const {
        json cs = json::array();
        for (const auto& c : checks)
            cs.push_back({{"name", c.name}, {"verdict", c.verdict}, {"witness", c.witness}, {"exhaustive", c.exhaustive}});
        return {{"version", version}, {"command", command}, {"checks", cs}, {"result", result},
                {"seed", seed},       {"elapsed_ms", elapsed_ms}};
    }

    std::string table() const {
        std::ostringstream os;
        os << command << "\n";
        std::size_t w = 4;
        for (const auto& c : checks) w = std::max(w, c.name.size());
        for (const auto& c : checks) {
            os << "  " << c.name << std::string(w - c.name.size() + 2, ' ') << c.verdict
               << (c.exhaustive ? "" : " (bounded)");
            if (!c.witness.is_null()) {
                auto s = c.witness.dump();
                if (s.size() > 160) s = s.substr(0, 157) + "...";
                os << "  " << s;
            }
            os << "\n";
        }
        if (!result.is_null()) os << "  result: " << result.dump() << "\n";
        os << "  " << elapsed_ms << " ms\n";
        return os.str();
    }
};

}  // namespace catmt

#endif
