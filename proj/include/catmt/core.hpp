#ifndef CATMT_CORE_HPP
#define CATMT_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "structure.hpp"

namespace catmt {

struct EndpointMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct BoundExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct Unsupported : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonCommuting : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Morphism of a concrete category: endpoints plus the action on carriers.
// Carriers are {0..size-1}; equality is extensional.
template <class Obj>
struct Arrow {
    Obj dom{}, cod{};
    std::vector<int> map;
    auto operator<=>(const Arrow&) const = default;
    bool operator==(const Arrow&) const = default;
    int operator()(int x) const { return map[static_cast<std::size_t>(x)]; }
};

template <class Obj>
Arrow<Obj> compose(const Arrow<Obj>& g, const Arrow<Obj>& f) {
    if (!(f.cod == g.dom)) throw EndpointMismatch("compose: cod(f) != dom(g)");
    Arrow<Obj> r{f.dom, g.cod, std::vector<int>(f.map.size())};
    for (std::size_t i = 0; i < f.map.size(); ++i) r.map[i] = g.map[static_cast<std::size_t>(f.map[i])];
    return r;
}

inline bool injective(const std::vector<int>& m) {
    std::vector<int> s(m);
    std::sort(s.begin(), s.end());
    return std::adjacent_find(s.begin(), s.end()) == s.end();
}

inline std::vector<int> image(const std::vector<int>& m) {
    std::vector<int> s(m);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// Span B <-f- A -g-> C completed by B -h-> D <-k- C.
template <class Mor>
struct Square {
    Mor f, g, h, k;
};

template <class Cat>
bool commutes(const Cat& cat, const Square<typename Cat::Mor>& s) {
    return cat.compose(s.h, s.f) == cat.compose(s.k, s.g);
}

// ---------------------------------------------------------------------------
// Abstract finite category given by a composition table.

class FinCategory {
public:
    using Obj = int;
    using Mor = int;

    int add_object(std::string name) {
        obj_names_.push_back(std::move(name));
        int o = static_cast<int>(obj_names_.size()) - 1;
        ids_.push_back(add_morphism(o, o, "id_" + obj_names_.back()));
        return o;
    }

    int add_morphism(int dom, int cod, std::string name) {
        check_obj(dom);
        check_obj(cod);
        doms_.push_back(dom);
        cods_.push_back(cod);
        mor_names_.push_back(std::move(name));
        int m = static_cast<int>(doms_.size()) - 1;
        for (auto& row : table_) row.push_back(-1);
        table_.emplace_back(doms_.size(), -1);
        return m;
    }

    // Records g∘f = gf. Composites with identities are implicit.
    void set_composite(int g, int f, int gf) {
        check_mor(g);
        check_mor(f);
        check_mor(gf);
        if (cods_[f] != doms_[g]) throw EndpointMismatch("set_composite: cod(f) != dom(g)");
        if (doms_[gf] != doms_[f] || cods_[gf] != cods_[g])
            throw EndpointMismatch("set_composite: composite has the wrong endpoints");
        table_[g][f] = gf;
    }

    int num_objects() const { return static_cast<int>(obj_names_.size()); }
    int num_morphisms() const { return static_cast<int>(doms_.size()); }
    const std::string& object_name(int o) const { return obj_names_.at(o); }
    const std::string& morphism_name(int m) const { return mor_names_.at(m); }
    std::optional<int> find_object(const std::string& n) const {
        auto it = std::find(obj_names_.begin(), obj_names_.end(), n);
        if (it == obj_names_.end()) return std::nullopt;
        return static_cast<int>(it - obj_names_.begin());
    }
    std::optional<int> find_morphism(const std::string& n) const {
        auto it = std::find(mor_names_.begin(), mor_names_.end(), n);
        if (it == mor_names_.end()) return std::nullopt;
        return static_cast<int>(it - mor_names_.begin());
    }

    std::vector<int> objects(int = 0) const {
        std::vector<int> v(obj_names_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
        return v;
    }
    int dom(int f) const { return doms_.at(f); }
    int cod(int f) const { return cods_.at(f); }
    int id(int o) const { return ids_.at(o); }

    std::vector<int> homs(int a, int b) const {
        std::vector<int> v;
        for (int m = 0; m < num_morphisms(); ++m)
            if (doms_[m] == a && cods_[m] == b) v.push_back(m);
        return v;
    }

    int compose(int g, int f) const {
        check_mor(g);
        check_mor(f);
        if (cods_[f] != doms_[g])
            throw EndpointMismatch("compose: cod(" + mor_names_[f] + ") != dom(" + mor_names_[g] + ")");
        int t = table_[g][f];
        if (t >= 0) return t;
        if (g == ids_[doms_[g]]) return f;
        if (f == ids_[cods_[f]]) return g;
        throw std::logic_error("composite " + mor_names_[g] + "∘" + mor_names_[f] + " missing from table");
    }

    // First violation of the identity or associativity laws, if any.
    std::optional<std::string> check_laws() const {
        for (int f = 0; f < num_morphisms(); ++f) {
            if (compose(ids_[cods_[f]], f) != f) return "left identity fails for " + mor_names_[f];
            if (compose(f, ids_[doms_[f]]) != f) return "right identity fails for " + mor_names_[f];
        }
        for (int f = 0; f < num_morphisms(); ++f)
            for (int g = 0; g < num_morphisms(); ++g) {
                if (doms_[g] != cods_[f]) continue;
                for (int h = 0; h < num_morphisms(); ++h) {
                    if (doms_[h] != cods_[g]) continue;
                    if (compose(h, compose(g, f)) != compose(compose(h, g), f))
                        return "associativity fails for " + mor_names_[h] + "," + mor_names_[g] + "," +
                               mor_names_[f];
                }
            }
        return std::nullopt;
    }

    // Poset category: a unique arrow a->b iff a <= b in the reflexive-transitive closure.
    static FinCategory poset(const std::vector<std::string>& elems,
                             const std::vector<std::pair<std::string, std::string>>& leq) {
        FinCategory c;
        for (const auto& e : elems) c.add_object(e);
        int n = c.num_objects();
        std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
        for (int i = 0; i < n; ++i) le[i][i] = 1;
        for (const auto& [a, b] : leq) {
            auto ia = c.find_object(a), ib = c.find_object(b);
            if (!ia || !ib) throw std::invalid_argument("leq mentions unknown element " + (ia ? b : a));
            le[*ia][*ib] = 1;
        }
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (le[i][k] && le[k][j]) le[i][j] = 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && le[i][j] && le[j][i])
                    throw std::invalid_argument("leq is not antisymmetric: " + elems[i] + ", " + elems[j]);
        std::vector<std::vector<int>> arrow(n, std::vector<int>(n, -1));
        for (int i = 0; i < n; ++i) arrow[i][i] = c.id(i);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j && le[i][j]) arrow[i][j] = c.add_morphism(i, j, elems[i] + "<=" + elems[j]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (arrow[i][j] >= 0 && arrow[j][k] >= 0) c.set_composite(arrow[j][k], arrow[i][j], arrow[i][k]);
        return c;
    }

private:
    void check_obj(int o) const {
        if (o < 0 || o >= num_objects()) throw std::out_of_range("object id out of range");
    }
    void check_mor(int m) const {
        if (m < 0 || m >= num_morphisms()) throw std::out_of_range("morphism id out of range");
    }

    std::vector<std::string> obj_names_, mor_names_;
    std::vector<int> doms_, cods_, ids_;
    std::vector<std::vector<int>> table_;
};

// ---------------------------------------------------------------------------
// Generic operations. A category type provides objects(bound), homs(a,b),
// compose(g,f), id(a), dom(f), cod(f); morphisms compare with ==.

template <class Cat>
bool is_mono(const Cat& cat, const typename Cat::Mor& f, int bound = 6) {
    auto a = cat.dom(f);
    for (const auto& x : cat.objects(bound)) {
        auto hs = cat.homs(x, a);
        std::vector<typename Cat::Mor> comp;
        comp.reserve(hs.size());
        for (const auto& g : hs) comp.push_back(cat.compose(f, g));
        for (std::size_t i = 0; i < hs.size(); ++i)
            for (std::size_t j = i + 1; j < hs.size(); ++j)
                if (comp[i] == comp[j]) return false;
    }
    return true;
}

template <class Cat>
std::vector<std::pair<typename Cat::Mor, typename Cat::Mor>> section_retraction_pairs(
    const Cat& cat, const typename Cat::Obj& a, const typename Cat::Obj& b) {
    std::vector<std::pair<typename Cat::Mor, typename Cat::Mor>> out;
    auto ida = cat.id(a);
    auto rs = cat.homs(b, a);
    for (const auto& i : cat.homs(a, b))
        for (const auto& r : rs)
            if (cat.compose(r, i) == ida) out.emplace_back(i, r);
    return out;
}

template <class Cat>
bool is_iso(const Cat& cat, const typename Cat::Mor& f) {
    for (const auto& g : cat.homs(cat.cod(f), cat.dom(f)))
        if (cat.compose(g, f) == cat.id(cat.dom(f)) && cat.compose(f, g) == cat.id(cat.cod(f))) return true;
    return false;
}

// The structure E M: universe = morphisms g: M0 -> M with M0 in small,
// unary predicates S_<M0>, and for every f: M0 -> M1 between small objects a
// unary function (stored as its graph, relation F_<f>) sending g to g∘f when
// dom g = M1 and fixing g otherwise.
template <class Cat>
struct HomStructure {
    FinStructure structure;
    std::vector<typename Cat::Mor> elements;
    std::vector<typename Cat::Obj> small;
    std::vector<typename Cat::Mor> functions;  // the f's, in relation order
    std::vector<std::vector<int>> fn_table;    // fn_table[i][e] = index of f_i-bar(e)
    std::vector<int> sort;                     // small-object index of each element
};

template <class Cat>
std::vector<typename Cat::Mor> small_arrows(const Cat& cat, const std::vector<typename Cat::Obj>& small) {
    std::vector<typename Cat::Mor> fs;
    for (const auto& a : small)
        for (const auto& b : small)
            for (const auto& f : cat.homs(a, b)) fs.push_back(f);
    return fs;
}

template <class Cat>
HomStructure<Cat> hom_embed(const Cat& cat, const std::vector<typename Cat::Obj>& small,
                            const typename Cat::Obj& m) {
    HomStructure<Cat> hs;
    hs.small = small;
    for (std::size_t s = 0; s < small.size(); ++s)
        for (const auto& g : cat.homs(small[s], m)) {
            hs.elements.push_back(g);
            hs.sort.push_back(static_cast<int>(s));
        }
    int n = static_cast<int>(hs.elements.size());
    auto index_of = [&](const typename Cat::Mor& g) {
        for (int i = 0; i < n; ++i)
            if (hs.elements[i] == g) return i;
        throw std::logic_error("hom_embed: composite outside the universe");
    };
    hs.structure = FinStructure(n);
    for (std::size_t s = 0; s < small.size(); ++s) {
        std::string name = "S" + std::to_string(s);
        hs.structure.declare(name, 1);
        for (int e = 0; e < n; ++e)
            if (hs.sort[e] == static_cast<int>(s)) hs.structure.set(name, {e});
    }
    hs.functions = small_arrows(cat, small);
    for (std::size_t i = 0; i < hs.functions.size(); ++i) {
        const auto& f = hs.functions[i];
        std::string name = "F" + std::to_string(i);
        hs.structure.declare(name, 2);
        std::vector<int> row(n);
        for (int e = 0; e < n; ++e) {
            const auto& g = hs.elements[e];
            row[e] = cat.dom(g) == cat.cod(f) ? index_of(cat.compose(g, f)) : e;
            hs.structure.set(name, {e, row[e]});
        }
        hs.fn_table.push_back(std::move(row));
    }
    return hs;
}

struct EmbedReport {
    bool pass = true;
    std::string failure;  // "not-faithful" | "not-full" | "not-functorial" | "laws"
    std::string witness;
    int pairs_checked = 0;
};

// Checks that E is faithful and full between every pair of objects of
// `objs` (default: the small objects). Structure homomorphisms must preserve
// each S and commute with each marked function.
template <class Cat>
EmbedReport check_embedding_full_faithful(const Cat& cat, const std::vector<typename Cat::Obj>& small,
                                          std::vector<typename Cat::Obj> objs = {}) {
    using Mor = typename Cat::Mor;
    if (objs.empty()) objs = small;
    EmbedReport rep;
    std::vector<HomStructure<Cat>> es;
    for (const auto& o : objs) es.push_back(hom_embed(cat, small, o));

    auto fmt = [&](const auto& x) -> std::string {
        if constexpr (std::is_same_v<Cat, FinCategory>) return cat.morphism_name(x);
        else return "morphism";
    };

    for (std::size_t a = 0; a < objs.size(); ++a)
        for (std::size_t b = 0; b < objs.size(); ++b) {
            ++rep.pairs_checked;
            const auto& ea = es[a];
            const auto& eb = es[b];
            int na = static_cast<int>(ea.elements.size());
            int nb = static_cast<int>(eb.elements.size());
            auto idx_b = [&](const Mor& g) -> int {
                for (int i = 0; i < nb; ++i)
                    if (eb.elements[i] == g) return i;
                return -1;
            };
            // Image of each morphism under E, as a map on universes.
            std::vector<std::vector<int>> images;
            std::vector<Mor> morphs = cat.homs(objs[a], objs[b]);
            for (const auto& f : morphs) {
                std::vector<int> img(na);
                for (int e = 0; e < na; ++e) {
                    img[e] = idx_b(cat.compose(f, ea.elements[e]));
                    if (img[e] < 0) {
                        rep.pass = false;
                        rep.failure = "not-functorial";
                        rep.witness = fmt(f) + " sends an element outside E of its codomain";
                        return rep;
                    }
                }
                for (std::size_t fi = 0; fi < ea.fn_table.size(); ++fi)
                    for (int e = 0; e < na; ++e)
                        if (img[ea.fn_table[fi][e]] != eb.fn_table[fi][img[e]]) {
                            rep.pass = false;
                            rep.failure = "not-functorial";
                            rep.witness = "E(" + fmt(f) + ") does not commute with the function of " +
                                          fmt(ea.functions[fi]) + " at element " + fmt(ea.elements[e]);
                            return rep;
                        }
                images.push_back(std::move(img));
            }
            for (std::size_t i = 0; i < images.size(); ++i)
                for (std::size_t j = i + 1; j < images.size(); ++j)
                    if (images[i] == images[j]) {
                        rep.pass = false;
                        rep.failure = "not-faithful";
                        rep.witness = fmt(morphs[i]) + " and " + fmt(morphs[j]) + " induce the same map";
                        return rep;
                    }
            // Enumerate structure homomorphisms by backtracking over sorts.
            std::vector<int> phi(na, -1);
            std::optional<std::vector<int>> stray;
            auto consistent = [&](int upto) {
                for (std::size_t fi = 0; fi < ea.fn_table.size(); ++fi)
                    for (int e = 0; e <= upto; ++e) {
                        int fe = ea.fn_table[fi][e];
                        if (fe <= upto && eb.fn_table[fi][phi[e]] != phi[fe]) return false;
                    }
                return true;
            };
            std::function<void(int)> rec = [&](int e) {
                if (stray) return;
                if (e == na) {
                    if (std::find(images.begin(), images.end(), phi) == images.end()) stray = phi;
                    return;
                }
                for (int t = 0; t < nb; ++t) {
                    if (eb.sort[t] != ea.sort[e]) continue;
                    phi[e] = t;
                    if (consistent(e)) rec(e + 1);
                    if (stray) return;
                }
                phi[e] = -1;
            };
            rec(0);
            if (stray) {
                rep.pass = false;
                rep.failure = "not-full";
                std::string w = "structure map E(" + std::to_string(a) + ")->E(" + std::to_string(b) + ") [";
                for (int e = 0; e < na; ++e) w += (e ? "," : "") + fmt(ea.elements[e]) + "->" + fmt(eb.elements[(*stray)[e]]);
                rep.witness = w + "] is not induced by a morphism";
                return rep;
            }
        }
    return rep;
}

}  // namespace catmt

#endif
