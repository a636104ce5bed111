#include <CLI11.hpp>

#include <catmt/catmt.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace catmt;

namespace {

struct UnknownName : std::runtime_error {
    using std::runtime_error::runtime_error;
};

int edit_distance(const std::string& a, const std::string& b) {
    std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
    std::iota(prev.begin(), prev.end(), 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

[[noreturn]] void unknown(const std::string& kind, const std::string& name, const std::vector<std::string>& known) {
    std::string best;
    int bd = 1 << 30;
    for (const auto& k : known)
        if (int d = edit_distance(name, k); d < bd) {
            bd = d;
            best = k;
        }
    std::string msg = "unknown " + kind + " '" + name + "'";
    if (!best.empty() && bd <= std::max<int>(2, static_cast<int>(best.size()) / 2)) msg += "; did you mean '" + best + "'?";
    msg += " (known:";
    for (const auto& k : known) msg += " " + k;
    throw UnknownName(msg + ")");
}

std::vector<int> parse_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            out.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw InputError("'" + item + "' is not an integer in list '" + s + "'");
        }
    }
    return out;
}

const std::vector<std::string> category_names = {"set-mono", "set",     "graph-hom",  "graph-sub",
                                                  "graph-full", "vec-f2", "vec-f2-all", "vec-f3"};

// Calls fn with a memoising wrapper around the named category.
template <class F>
Report with_category(const std::string& name, int carrier_bound, F&& fn) {
    if (name == "set-mono") return fn(Cached<SetCat>(SetCat(true, carrier_bound)));
    if (name == "set") return fn(Cached<SetCat>(SetCat(false, carrier_bound)));
    if (name == "graph-hom") return fn(Cached<GraphCat>(GraphCat(GraphKind::homomorphism, carrier_bound)));
    if (name == "graph-sub") return fn(Cached<GraphCat>(GraphCat(GraphKind::subgraph_embedding, carrier_bound)));
    if (name == "graph-full") return fn(Cached<GraphCat>(GraphCat(GraphKind::full_embedding, carrier_bound)));
    if (name.rfind("vec-f", 0) == 0) {
        std::string rest = name.substr(5);
        bool all = rest.size() > 4 && rest.substr(rest.size() - 4) == "-all";
        if (all) rest = rest.substr(0, rest.size() - 4);
        int p = 0;
        try {
            p = std::stoi(rest);
        } catch (const std::exception&) {
        }
        if (p >= 2 && linalg::is_prime(p) && p <= 7) return fn(Cached<VecCat>(VecCat(p, !all, carrier_bound)));
    }
    unknown("category", name, category_names);
}

FinSet base_object(const Cached<SetCat>&, int n) { return FinSet{n}; }
Graph base_object(const Cached<GraphCat>&, int n) { return Graph(n); }
VecSpace base_object(const Cached<VecCat>&, int n) { return VecSpace{n}; }

template <class Cat>
Predicate<typename Cat::Mor> resolve_predicate(const Cat& cat, const std::string& name) {
    std::vector<std::string> known;
    for (const auto& p : builtin_predicates(cat)) {
        if (p.name == name) return p;
        known.push_back(p.name);
    }
    for (const auto& p : control_predicates(cat)) {
        if (p.name == name) return p;
        known.push_back(p.name);
    }
    unknown("predicate for " + cat.name(), name, known);
}

template <class Mor>
void add_fragments(Report& r, const AxiomReport<Mor>& ar) {
    for (const auto& f : ar.fragments) {
        json w = nullptr;
        if (!f.witness.empty()) w = {{"squares", to_json(f.witness)}, {"note", f.note}};
        r.checks.push_back({ar.predicate + "/" + f.axiom, f.verdict, w, f.exhaustive});
    }
}

FinStructure load_structure(const std::string& path) { return structure_from_json(load_json_file(path)); }

struct Options {
    std::string category = "set-mono", predicate = "effective", demo, structure, poset, category_file, filtration,
                formula, base, model, tuple, canon_category = "graph-full", rivals, sizes = "1,2,3", family = "triangle-free", space = "graph", out;
    std::vector<std::string> formulas;
    int bound = 4, ext_bound = 0, steps = 3, s = 2, length = 3, arity = 1, base_size = 1, size = 3, target = 0,
        k = 3, cap = 5;
    std::uint64_t seed = 0;
    bool table = false;
};

Report indep_suite(const Options& o) {
    return with_category(o.category, std::max(o.bound, 6), [&](const auto& cat) {
        Report r;
        auto u = square_universe(cat, o.bound);
        std::vector<std::string> names;
        if (o.predicate == "all")
            for (const auto& p : builtin_predicates(cat)) names.push_back(p.name);
        else
            names.push_back(o.predicate);
        for (const auto& n : names) add_fragments(r, run_axiom_suite(cat, resolve_predicate(cat, n), u));
        r.result = {{"spans", u.spans.size()}, {"squares", u.squares()}};
        return r;
    });
}

Report indep_canonicity(const Options& o) {
    return with_category(o.canon_category, std::max(o.bound, 6), [&](const auto& cat) {
        Report r;
        auto u = square_universe(cat, o.bound);
        std::vector<std::string> names;
        if (!o.rivals.empty()) {
            std::stringstream ss(o.rivals);
            std::string x;
            while (std::getline(ss, x, ',')) names.push_back(x);
        } else {
            for (const auto& p : builtin_predicates(cat))
                if (p.name != "effective") names.push_back(p.name);
        }
        if (names.size() < 2) throw InputError("canonicity needs two rival predicates, e.g. --predicate a,b");
        auto p1 = resolve_predicate(cat, names[0]), p2 = resolve_predicate(cat, names[1]);
        bool rivals_ok = true;
        for (const auto* p : {&p1, &p2}) {
            auto ar = run_axiom_suite(cat, *p, u);
            std::erase_if(ar.fragments, [](const auto& f) { return f.axiom == "witness-property"; });
            rivals_ok = rivals_ok && ar.all_pass();
            add_fragments(r, ar);
        }
        auto c = canonicity_compare(cat, p1, p2, u);
        json w = nullptr;
        if (!c.agree) {
            // Show the smallest disagreement, preferring one whose apex has edges.
            auto rank = [&](const auto& sq) {
                int edges = 0;
                if constexpr (std::is_same_v<typename std::decay_t<decltype(cat)>::Obj, Graph>)
                    edges = static_cast<int>(sq.h.cod.edges().size());
                return std::make_tuple(cat.size(sq.f.dom), cat.size(sq.h.cod), -edges);
            };
            auto best = c.disagreements.front();
            for (const auto& sq : c.disagreements)
                if (rank(sq) < rank(best)) best = sq;
            w = {{"square", to_json(best)}, {"disagreements", c.disagreements.size()}};
        }
        r.checks.push_back({"rivals-agree", c.agree ? "pass" : "fail", w, true});
        r.result = {{"squares", c.checked},
                    {"no_stable_independence_at_bound", rivals_ok && !c.agree}};
        return r;
    });
}

Report amalg_check(const Options& o) {
    return with_category(o.category, std::max(o.bound, 6), [&](const auto& cat) {
        Report r;
        auto a = base_object(cat, o.base_size);
        auto br = is_amalgamation_base(cat, a, o.bound);
        json w = nullptr;
        if (br.failing) w = {{"f", to_json(br.failing->f)}, {"g", to_json(br.failing->g)}};
        r.add("amalgamation-base", br.pass, w);
        r.result = {{"spans", br.spans}};
        return r;
    });
}

Report amalg_types(const Options& o) {
    return with_category(o.category, std::max(o.bound, 6), [&](const auto& cat) {
        Report r;
        auto tl = enumerate_types(cat, base_object(cat, o.base_size), o.bound);
        json cls = json::array();
        for (const auto& c : tl.classes)
            cls.push_back({{"rep", {{"f", to_json(c.rep.f)}, {"b", c.rep.b}}}, {"members", c.members.size()}});
        r.add("types-enumerated", true, nullptr, tl.exhaustive);
        r.result = {{"types", tl.classes.size()}, {"points", tl.points}, {"classes", cls}};
        return r;
    });
}

Report amalg_universal(const Options& o) {
    return with_category(o.category, 8, [&](const auto& cat) {
        Report r;
        auto ch = universal_extension_build(cat, base_object(cat, o.base_size), o.steps);
        int eb = o.ext_bound ? o.ext_bound : o.base_size + o.steps;
        auto ur = is_universal_over(cat, ch.composite(cat), eb);
        json w = nullptr;
        if (ur.witness) w = to_json(*ur.witness);
        r.add("universal-over-base", ur.pass, w);
        json sizes = json::array();
        for (const auto& ob : ch.objects) sizes.push_back(cat.size(ob));
        r.result = {{"chain_sizes", sizes}, {"ext_bound", eb}, {"extensions", ur.extensions}};
        return r;
    });
}

template <class Obj>
void diagram_checks(Report& r, const ConstructionCategory<Obj>& k, const FullDiagram<Obj>& d) {
    auto bad = verify_full_diagram(k, d);
    r.add("diagram-complete", d.complete);
    r.add("full-diagram-conditions", bad.empty(), bad.empty() ? json(nullptr) : json(bad));
    auto col = colimit_full_check(k, d, d.terminal());
    r.add("colimit-full", col.pass, col.pass ? json(nullptr) : json(col.witness));
}

std::vector<std::vector<char>> order_matrix(const FinCategory& c) {
    int n = static_cast<int>(c.objects().size());
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) le[a][b] = !c.homs(a, b).empty();
    return le;
}

Report exhaust_run(const Options& o) {
    Report r;
    const std::vector<std::string> demos = {"zorn", "generic", "filtration", "universal-extension"};
    if (o.demo == "zorn") {
        if (o.poset.empty()) throw InputError("zorn demo needs --poset");
        auto c = poset_from_json(load_json_file(o.poset));
        std::vector<std::string> names;
        for (int i : c.objects()) names.push_back(c.object_name(i));
        ZornDemo z(names, order_matrix(c));
        auto d = build_full_diagram(z, o.steps > 0 ? o.steps * static_cast<int>(names.size()) * 4 : 1000);
        diagram_checks(r, z, d);
        r.add("maximal", z.maximal(d.terminal()), json(z.describe(d.terminal())));
        r.result = {{"full_object", z.describe(d.terminal())}, {"steps", d.trace.size()}};
    } else if (o.demo == "generic") {
        GenericDemo g(o.size);
        auto d = build_full_diagram(g, o.size * (o.size + 2));
        diagram_checks(r, g, d);
        const auto& f = d.terminal();
        bool total = std::none_of(f.begin(), f.end(), [](int v) { return v < 0; });
        r.add("total-function", total, json(f));
        r.result = {{"function", f}, {"steps", d.trace.size()}};
    } else if (o.demo == "filtration") {
        if (o.filtration.empty()) throw InputError("filtration demo needs --filtration");
        auto [a, b] = filtration_from_json(load_json_file(o.filtration));
        FiltrationDemo fd(a, b);
        auto d = build_full_diagram(fd, 100000);
        diagram_checks(r, fd, d);
        r.result = {{"full_object", fd.describe(d.terminal())}, {"steps", d.trace.size()}};
    } else if (o.demo == "universal-extension") {
        auto sizes = parse_list(o.sizes);
        if (sizes.empty()) throw InputError("--sizes must list the chain sizes");
        int target = o.target ? o.target : sizes.back();
        try {
            auto e = demo_universal_extension(sizes, target);
            r.add("embedding-found", e.found, e.found ? json(e.embedding) : json(e.failure));
            r.result = {{"embedding", e.embedding}, {"steps", e.steps}};
        } catch (const InsufficientChain& ex) {
            r.add("embedding-found", false, json(ex.what()));
        }
    } else {
        unknown("demo", o.demo, demos);
    }
    return r;
}

Report exhaust_club(const Options& o) {
    if (o.filtration.empty()) throw InputError("club needs --filtration");
    auto [a, b] = filtration_from_json(load_json_file(o.filtration));
    FiltrationDemo fd(a, b);
    auto rep = full_indices(fd.chain());
    Report r;
    r.add("closure", rep.closure_ok, rep.closure_ok ? json(nullptr) : json(rep.closure_violations));
    r.result = {{"full_indices", rep.indices}, {"strict_indices", rep.strict_indices}};
    return r;
}

Report fo_order(const Options& o) {
    auto n = load_structure(o.structure);
    Report r;
    OrderWitness w;
    if (!o.formula.empty())
        w = order_property_witness(parse_formula(o.formula), n, o.length);
    else
        w = order_property_any(n, o.arity, o.length);
    r.add("order-property", true, w.sequence ? json(*w.sequence) : json(nullptr), w.exhaustive);
    if (!w.exhaustive) r.checks.back().verdict = "inconclusive";
    r.result = {{"found", w.sequence.has_value()}, {"nodes", w.nodes}};
    if (w.sequence) {
        // Single-element tuples print flat.
        json flat = json::array();
        for (const auto& t : *w.sequence) flat.push_back(t.size() == 1 ? json(t[0]) : json(t));
        r.result["witness"] = flat;
    }
    return r;
}

Report fo_types(const Options& o) {
    auto n = load_structure(o.structure);
    auto b = parse_list(o.base);
    for (int x : b)
        if (x < 0 || x >= n.size()) throw InputError("base element " + std::to_string(x) + " outside the universe");
    Report r;
    int c = count_types(b, n, o.arity);
    r.add("types-counted", true);
    r.result = {{"types", c}};
    return r;
}

Report fo_independent(const Options& o) {
    auto n = load_structure(o.structure);
    auto a = parse_list(o.tuple), m = parse_list(o.model), b = parse_list(o.base);
    for (const auto* v : {&a, &m, &b})
        for (int x : *v)
            if (x < 0 || x >= n.size()) throw InputError("element " + std::to_string(x) + " outside the universe");
    Report r;
    bool ind = is_independent(a, m, b, n, o.s);
    r.add("independent", true);
    r.result = {{"independent", ind}, {"s", o.s}};
    return r;
}

Report fo_indiscernibles(const Options& o) {
    auto n = load_structure(o.structure);
    std::vector<QFFormula> delta;
    for (const auto& f : o.formulas) delta.push_back(parse_formula(f));
    if (delta.empty()) delta = all_atoms(n, o.arity);
    std::vector<std::vector<int>> seq;
    if (o.tuple.empty()) {
        if (o.arity != 1) throw InputError("give --tuple as a ';'-separated sequence for arity above 1");
        for (int i = 0; i < n.size(); ++i) seq.push_back({i});
    } else {
        std::stringstream ss(o.tuple);
        std::string part;
        while (std::getline(ss, part, ';')) seq.push_back(parse_list(part));
    }
    auto res = extract_indiscernibles(seq, delta, n, o.length);
    Report r;
    bool replay = res.witness && is_indiscernible(seq, res.witness->indices, delta, n);
    r.add("indiscernible-found", res.witness.has_value(), res.witness ? json(res.witness->indices) : json(nullptr),
          res.exhaustive);
    if (res.witness) r.add("replay", replay);
    r.result = {{"method", res.method}};
    return r;
}

Report fo_axiomatize(const Options& o) {
    auto names = family_names();
    if (std::find(names.begin(), names.end(), o.family) == names.end()) unknown("family", o.family, names);
    StructureSpace sp;
    if (o.space == "graph") sp = StructureSpace::graph;
    else if (o.space == "binary") sp = StructureSpace::binary;
    else unknown("structure space", o.space, {"graph", "binary"});
    Report r;
    try {
        auto rep = universal_class_axiomatize(family_oracle(o.family), sp, o.k, o.cap);
        json forb = json::array(), mins = json::array();
        for (const auto& s : rep.forbidden) forb.push_back(to_json(s));
        for (const auto& s : rep.minimal) mins.push_back(to_json(s));
        r.add("membership-agrees", rep.agree, rep.disagreement ? to_json(*rep.disagreement) : json(nullptr));
        r.result = {{"forbidden", forb}, {"minimal", mins}, {"checked", rep.checked}};
    } catch (const ClosureViolation& e) {
        r.add("closure", false, {{"whole", to_json(e.whole)}, {"part", to_json(e.part)}, {"reason", e.what()}});
    }
    return r;
}

Report cat_embed(const Options& o) {
    FinCategory c;
    if (!o.poset.empty()) c = poset_from_json(load_json_file(o.poset));
    else if (!o.category_file.empty()) c = category_from_json(load_json_file(o.category_file));
    else throw InputError("cat embed needs --poset or --category");
    Report r;
    auto bad = c.check_laws();
    r.add("category-laws", !bad, bad ? json(*bad) : json(nullptr));
    auto rep = check_embedding_full_faithful(c, c.objects());
    r.add("full-faithful", rep.pass, rep.pass ? json(nullptr) : json({{"failure", rep.failure}, {"detail", rep.witness}}));
    r.result = {{"pairs", rep.pairs_checked}};
    return r;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"catmt: finite checks for categorical model theory"};
    app.require_subcommand(1);
    Options o;
    std::string cmd;

    auto common = [&](CLI::App* s) {
        s->add_option("--out", o.out, "write the report to this file");
        s->add_option("--seed", o.seed, "seed recorded in the report");
        s->add_flag("--table", o.table, "human-readable output");
        s->add_flag_function("--json", [&](std::int64_t) { o.table = false; }, "JSON output (default)");
    };
    auto group = [&](const std::string& name, const std::string& desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        return g;
    };
    std::vector<std::pair<CLI::App*, std::function<Report(const Options&)>>> leaves;
    auto leaf = [&](CLI::App* g, const std::string& name, const std::string& desc, auto fn) {
        auto* s = g->add_subcommand(name, desc);
        common(s);
        leaves.emplace_back(s, fn);
        return s;
    };

    auto* indep = group("indep", "independence notions on squares");
    auto* s = leaf(indep, "suite", "run the axiom fragments for a predicate", indep_suite);
    s->add_option("--category", o.category);
    s->add_option("--predicate", o.predicate, "predicate name, or 'all'");
    s->add_option("--bound", o.bound)->check(CLI::PositiveNumber);
    s = leaf(indep, "canonicity", "compare two rival predicates", indep_canonicity);
    s->add_option("--category", o.canon_category);
    s->add_option("--predicate", o.rivals, "two names separated by a comma");
    s->add_option("--bound", o.bound)->check(CLI::PositiveNumber);

    auto* am = group("amalg", "amalgamation, types and universality");
    s = leaf(am, "check", "is the discrete object of --base-size an amalgamation base", amalg_check);
    s->add_option("--category", o.category);
    s->add_option("--base-size", o.base_size)->check(CLI::NonNegativeNumber);
    s->add_option("--bound", o.bound)->check(CLI::PositiveNumber);
    s = leaf(am, "types", "Galois types over the discrete object of --base-size", amalg_types);
    s->add_option("--category", o.category);
    s->add_option("--base-size", o.base_size)->check(CLI::NonNegativeNumber);
    s->add_option("--bound", o.bound)->check(CLI::PositiveNumber);
    s = leaf(am, "universal", "build a universal extension and check it", amalg_universal);
    s->add_option("--category", o.category);
    s->add_option("--base-size", o.base_size)->check(CLI::NonNegativeNumber);
    s->add_option("--steps", o.steps)->check(CLI::NonNegativeNumber);
    s->add_option("--ext-bound", o.ext_bound)->check(CLI::NonNegativeNumber);

    auto* ex = group("exhaust", "construction categories");
    s = leaf(ex, "run", "build a full diagram for a demo", exhaust_run);
    s->add_option("--demo", o.demo)->required();
    s->add_option("--poset", o.poset)->check(CLI::ExistingFile);
    s->add_option("--filtration", o.filtration)->check(CLI::ExistingFile);
    s->add_option("--size", o.size, "domain size of the generic demo")->check(CLI::PositiveNumber);
    s->add_option("--sizes", o.sizes, "chain sizes for universal-extension, e.g. 1,2,3");
    s->add_option("--target", o.target, "target size for universal-extension");
    s->add_option("--steps", o.steps);
    s = leaf(ex, "club", "full indices of a filtration pair", exhaust_club);
    s->add_option("--filtration", o.filtration)->required()->check(CLI::ExistingFile);

    auto* fo = group("fo", "quantifier-free finite model theory");
    s = leaf(fo, "order-property", "search for an ordered sequence", fo_order);
    s->add_option("--structure", o.structure)->required()->check(CLI::ExistingFile);
    s->add_option("--formula", o.formula, "omit to search over all quantifier-free formulas");
    s->add_option("--length", o.length)->check(CLI::PositiveNumber);
    s->add_option("--arity", o.arity)->check(CLI::PositiveNumber);
    s = leaf(fo, "types", "count quantifier-free types over a base", fo_types);
    s->add_option("--structure", o.structure)->required()->check(CLI::ExistingFile);
    s->add_option("--base", o.base);
    s->add_option("--arity", o.arity)->check(CLI::NonNegativeNumber);
    s = leaf(fo, "independent", "bounded finite satisfiability of a tuple", fo_independent);
    s->add_option("--structure", o.structure)->required()->check(CLI::ExistingFile);
    s->add_option("--tuple", o.tuple)->required();
    s->add_option("--model", o.model)->required();
    s->add_option("--base", o.base);
    s->add_option("--s", o.s)->check(CLI::PositiveNumber);
    s = leaf(fo, "indiscernibles", "extract an indiscernible subsequence", fo_indiscernibles);
    s->add_option("--structure", o.structure)->required()->check(CLI::ExistingFile);
    s->add_option("--formula", o.formulas, "repeatable; default is every atom");
    s->add_option("--tuple", o.tuple, "sequence as 'a,b;c,d;...'; default is every element");
    s->add_option("--arity", o.arity)->check(CLI::PositiveNumber);
    s->add_option("--length", o.length)->check(CLI::PositiveNumber);
    s = leaf(fo, "axiomatize", "forbidden induced substructures of a family", fo_axiomatize);
    s->add_option("--family", o.family);
    s->add_option("--space", o.space, "graph or binary");
    s->add_option("--k", o.k)->check(CLI::NonNegativeNumber);
    s->add_option("--cap", o.cap)->check(CLI::NonNegativeNumber);

    auto* ct = group("cat", "finite categories");
    s = leaf(ct, "embed", "check the structure embedding is full and faithful", cat_embed);
    s->add_option("--poset", o.poset)->check(CLI::ExistingFile);
    s->add_option("--category", o.category_file)->check(CLI::ExistingFile);

    // Unknown subcommand names get a suggestion and the usage of their parent.
    CLI::App* level = &app;
    for (int i = 1; i < argc && level && !level->get_subcommands({}).empty(); ++i) {
        std::string a = argv[i];
        if (a.empty() || a[0] == '-') break;
        CLI::App* next = nullptr;
        std::vector<std::string> names;
        for (auto* sc : level->get_subcommands({})) {
            names.push_back(sc->get_name());
            if (sc->get_name() == a) next = sc;
        }
        if (!next) {
            try {
                unknown("subcommand", a, names);
            } catch (const UnknownName& e) {
                std::cerr << "error: " << e.what() << "\n\n" << level->help();
            }
            return 2;
        }
        level = next;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto& [sub, fn] : leaves) {
        if (!sub->parsed()) continue;
        cmd = sub->get_parent()->get_name() + " " + sub->get_name();
        try {
            auto t0 = std::chrono::steady_clock::now();
            Report r = fn(o);
            r.elapsed_ms = static_cast<long>(
                std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count());
            std::string args;
            for (int i = 1; i < argc; ++i) args += (i > 1 ? " " : "") + std::string(argv[i]);
            r.command = args;
            r.seed = o.seed;
            std::string text = o.table ? r.table() : r.to_json().dump(2) + "\n";
            if (!o.out.empty()) {
                std::ofstream f(o.out);
                if (!f) {
                    std::cerr << "error: cannot write " << o.out << "\n";
                    return 2;
                }
                f << text;
            } else {
                std::cout << text;
            }
            return r.exit_code();
        } catch (const ParseError& e) {
            std::cerr << "error: formula: " << e.what() << "\n";
            return 2;
        } catch (const InputError& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const UnknownName& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return 2;
        } catch (const std::exception& e) {
            std::cerr << "error: " << cmd << ": " << e.what() << "\n";
            return 1;
        }
    }
    return 2;
}
