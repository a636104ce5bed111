#ifndef CATMT_AMALGAMS_HPP
#define CATMT_AMALGAMS_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "concrete.hpp"

namespace catmt {

template <class Mor>
struct Span {
    Mor f, g;  // f: A -> B, g: A -> C
};

template <class Mor>
struct Amalgam {
    Mor h, k;  // h: B -> D, k: C -> D
};

template <class Mor>
Square<Mor> make_square(const Span<Mor>& s, const Amalgam<Mor>& a) {
    return {s.f, s.g, a.h, a.k};
}

enum class AmalgamMode {
    generated,  // jointly surjective cocones, one per isomorphism class
    all         // every apex up to the bound, one per isomorphism class of cocone
};

template <class Mor>
struct AmalgamList {
    std::vector<Amalgam<Mor>> items;
    bool exhaustive = true;  // false when some amalgam exceeded the apex bound
};

template <class Cat>
AmalgamList<typename Cat::Mor> amalgamate(const Cat& cat, const Span<typename Cat::Mor>& s, int bound,
                                          AmalgamMode mode = AmalgamMode::generated) {
    using Mor = typename Cat::Mor;
    AmalgamList<Mor> out;
    if (mode == AmalgamMode::generated) {
        auto po = cat.pushout(s.f, s.g);
        cat.for_each_generated(po, [&](const Mor& e) {
            if (cat.size(e.cod) > bound) {
                out.exhaustive = false;
                return true;
            }
            out.items.push_back({cat.compose(e, po.left), cat.compose(e, po.right)});
            return true;
        });
        return out;
    }
    for (const auto& d : cat.objects(bound)) {
        const auto& hs = cat.homs(cat.cod(s.f), d);
        const auto& ks = cat.homs(cat.cod(s.g), d);
        auto auts = automorphisms(cat, d);
        std::set<std::pair<Mor, Mor>> seen;
        for (const auto& h : hs) {
            auto hf = cat.compose(h, s.f);
            for (const auto& k : ks) {
                if (seen.count({h, k}) || !(cat.compose(k, s.g) == hf)) continue;
                for (const auto& a : auts) seen.insert({cat.compose(a, h), cat.compose(a, k)});
                out.items.push_back({h, k});
            }
        }
    }
    return out;
}

// Spans with ears (and base) of size <= bound, one per isomorphism class of
// span diagrams.
template <class Cat>
std::vector<Span<typename Cat::Mor>> spans_up_to_iso(const Cat& cat, int bound) {
    using Mor = typename Cat::Mor;
    std::vector<Span<Mor>> out;
    auto objs = cat.objects(bound);
    for (const auto& a : objs) {
        auto aa = automorphisms(cat, a);
        for (const auto& b : objs) {
            const auto& fs = cat.homs(a, b);
            if (fs.empty()) continue;
            auto ab = automorphisms(cat, b);
            // f up to Aut(B) x Aut(A), then g up to Aut(C) x Stab(f).
            std::set<Mor> fseen;
            std::vector<std::pair<Mor, std::vector<Mor>>> freps;
            for (const auto& f : fs) {
                if (fseen.count(f)) continue;
                std::vector<Mor> stab;
                for (const auto& al : aa) {
                    auto fa = cat.compose(f, al);
                    bool fixes = false;
                    for (const auto& be : ab) {
                        auto x = cat.compose(be, fa);
                        fseen.insert(x);
                        fixes = fixes || x == f;
                    }
                    if (fixes) stab.push_back(al);
                }
                freps.emplace_back(f, std::move(stab));
            }
            for (const auto& c : objs) {
                const auto& gs = cat.homs(a, c);
                if (gs.empty()) continue;
                auto ac = automorphisms(cat, c);
                for (const auto& [f, stab] : freps) {
                    std::set<Mor> gseen;
                    for (const auto& g : gs) {
                        if (gseen.count(g)) continue;
                        for (const auto& al : stab) {
                            auto ga = cat.compose(g, al);
                            for (const auto& ga2 : ac) gseen.insert(cat.compose(ga2, ga));
                        }
                        out.push_back({f, g});
                    }
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Joint connectedness.

template <class Mor>
struct JointWitness {
    Mor u1, u2;  // u1: D1 -> E, u2: D2 -> E with u1 h1 = u2 h2, u1 k1 = u2 k2
};

template <class Mor>
struct JointResult {
    std::optional<JointWitness<Mor>> witness;
    bool exhaustive = true;
    bool within_bound = true;  // witness apex fits the requested bound
};

// Two amalgams are jointly connected iff the pushout of their mediators out
// of the span's pushout has legs in the class. This uses that the built-in
// classes are left-cancellative (v∘u in class implies u in class).
template <class Cat>
JointResult<typename Cat::Mor> jointly_connected(const Cat& cat, const Span<typename Cat::Mor>& s,
                                                 const Amalgam<typename Cat::Mor>& a1,
                                                 const Amalgam<typename Cat::Mor>& a2, int bound) {
    JointResult<typename Cat::Mor> r;
    auto po = cat.pushout(s.f, s.g);
    auto m1 = cat.mediator(po, a1.h, a1.k);
    auto m2 = cat.mediator(po, a2.h, a2.k);
    auto q = cat.pushout(m1, m2);
    if (cat.in_class(q.left) && cat.in_class(q.right)) {
        r.witness = JointWitness<typename Cat::Mor>{q.left, q.right};
        r.within_bound = cat.size(q.apex) <= bound;
    }
    return r;
}

// Plain search over apexes up to the bound; used as an independent check.
template <class Cat>
std::optional<JointWitness<typename Cat::Mor>> jointly_connected_search(const Cat& cat,
                                                                       const Amalgam<typename Cat::Mor>& a1,
                                                                       const Amalgam<typename Cat::Mor>& a2,
                                                                       int bound) {
    for (const auto& e : cat.objects(bound)) {
        const auto& u1s = cat.homs(cat.cod(a1.h), e);
        const auto& u2s = cat.homs(cat.cod(a2.h), e);
        for (const auto& u1 : u1s) {
            auto x = cat.compose(u1, a1.h), y = cat.compose(u1, a1.k);
            for (const auto& u2 : u2s)
                if (cat.compose(u2, a2.h) == x && cat.compose(u2, a2.k) == y)
                    return JointWitness<typename Cat::Mor>{u1, u2};
        }
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Galois types: connected components of the category of points over M.

template <class Mor>
struct Point {
    Mor f;      // M -> B
    int b = 0;  // element of the carrier of B
    auto operator<=>(const Point&) const = default;
};

template <class Mor>
struct TypeClass {
    int index = 0;
    Point<Mor> rep;
    std::vector<Point<Mor>> members;
};

template <class Mor>
struct TypeList {
    std::vector<TypeClass<Mor>> classes;
    int points = 0;
    bool exhaustive = true;
};

template <class Cat>
TypeList<typename Cat::Mor> enumerate_types(const Cat& cat, const typename Cat::Obj& m, int bound) {
    using Mor = typename Cat::Mor;
    if (cat.size(m) > bound) throw BoundExceeded("base larger than the type bound");
    std::vector<Point<Mor>> pts;
    std::map<Point<Mor>, int> idx;
    auto objs = cat.objects(bound);
    std::vector<std::vector<Mor>> into(objs.size());
    for (std::size_t i = 0; i < objs.size(); ++i) {
        into[i] = cat.homs(m, objs[i]);
        for (const auto& f : into[i])
            for (int b = 0; b < cat.size(objs[i]); ++b) {
                idx.emplace(Point<Mor>{f, b}, static_cast<int>(pts.size()));
                pts.push_back({f, b});
            }
    }
    std::vector<int> par(pts.size());
    for (std::size_t i = 0; i < par.size(); ++i) par[i] = static_cast<int>(i);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (std::size_t i = 0; i < objs.size(); ++i)
        for (std::size_t j = 0; j < objs.size(); ++j) {
            if (into[i].empty() || into[j].empty()) continue;
            for (const auto& h : cat.homs(objs[i], objs[j]))
                for (const auto& f : into[i]) {
                    auto hf = cat.compose(h, f);
                    for (int b = 0; b < cat.size(objs[i]); ++b) {
                        int x = find(idx.at({f, b})), y = find(idx.at({hf, h.map[b]}));
                        if (x != y) par[std::max(x, y)] = std::min(x, y);
                    }
                }
        }
    TypeList<Mor> out;
    out.points = static_cast<int>(pts.size());
    std::map<int, int> cls;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        int r = find(static_cast<int>(i));
        auto it = cls.find(r);
        if (it == cls.end()) {
            it = cls.emplace(r, static_cast<int>(out.classes.size())).first;
            out.classes.push_back({it->second, pts[i], {}});
        }
        out.classes[it->second].members.push_back(pts[i]);
    }
    return out;
}

// N realises the type over incl: M -> N when some member point (f, b) factors
// as g∘f = incl for a class morphism g: B -> N.
template <class Cat>
std::optional<int> realizes(const Cat& cat, const typename Cat::Mor& incl, const TypeClass<typename Cat::Mor>& t) {
    for (const auto& p : t.members) {
        if (cat.size(cat.cod(p.f)) > cat.size(cat.cod(incl))) continue;
        for (const auto& g : cat.homs(cat.cod(p.f), cat.cod(incl)))
            if (cat.compose(g, p.f) == incl) return g.map[p.b];
    }
    return std::nullopt;
}

template <class Mor>
struct BaseReport {
    bool pass = true;
    std::optional<Span<Mor>> failing;
    int spans = 0;
};

template <class Cat>
BaseReport<typename Cat::Mor> is_amalgamation_base(const Cat& cat, const typename Cat::Obj& a, int bound) {
    using Mor = typename Cat::Mor;
    BaseReport<Mor> rep;
    for (const auto& b : cat.objects(bound))
        for (const auto& c : cat.objects(bound)) {
            const auto& fs = cat.homs(a, b);
            const auto& gs = cat.homs(a, c);
            for (const auto& f : fs)
                for (const auto& g : gs) {
                    ++rep.spans;
                    auto po = cat.pushout(f, g);
                    if (cat.in_class(po.left) && cat.in_class(po.right)) continue;
                    bool found = false;
                    cat.for_each_generated(po, [&](const Mor&) {
                        found = true;
                        return false;
                    });
                    if (!found) {
                        rep.pass = false;
                        rep.failing = Span<Mor>{f, g};
                        return rep;
                    }
                }
        }
    return rep;
}

template <class Mor>
struct UniversalReport {
    bool pass = true;
    std::optional<Mor> witness;  // an extension M -> M' that does not factor
    int extensions = 0;
};

// Every extension e: M -> M' with |M'| <= ext_bound admits g: M' -> N over M.
template <class Cat>
UniversalReport<typename Cat::Mor> is_universal_over(const Cat& cat, const typename Cat::Mor& incl, int ext_bound) {
    UniversalReport<typename Cat::Mor> rep;
    auto m = cat.dom(incl);
    auto n = cat.cod(incl);
    for (const auto& mp : cat.objects(ext_bound))
        for (const auto& e : cat.homs(m, mp)) {
            ++rep.extensions;
            bool ok = false;
            for (const auto& g : cat.homs(mp, n))
                if (cat.compose(g, e) == incl) {
                    ok = true;
                    break;
                }
            if (!ok) {
                rep.pass = false;
                rep.witness = e;
                return rep;
            }
        }
    return rep;
}

template <class Cat>
struct UniversalChain {
    std::vector<typename Cat::Obj> objects;
    std::vector<typename Cat::Mor> links;  // links[i]: objects[i] -> objects[i+1]

    typename Cat::Mor composite(const Cat& cat) const {
        auto c = cat.id(objects.front());
        for (const auto& l : links) c = cat.compose(l, c);
        return c;
    }
};

// Grows N over M by one pushout per unrealised type, returning the new object
// and the map from the old N.
template <class Cat>
std::pair<typename Cat::Obj, typename Cat::Mor> realize_all_types(const Cat& cat, const typename Cat::Mor& incl) {
    auto m = cat.dom(incl);
    auto types = enumerate_types(cat, m, cat.grow(cat.size(m)));
    auto cur = incl;
    auto total = cat.id(cat.cod(incl));
    for (const auto& t : types.classes) {
        if (realizes(cat, cur, t)) continue;
        auto po = cat.pushout(t.rep.f, cur);
        if (!cat.in_class(po.right) || !cat.in_class(po.left))
            throw Unsupported("pushout leaves the morphism class; cannot realise types");
        cur = cat.compose(po.right, cur);
        total = cat.compose(po.right, total);
    }
    return {cat.cod(total), total};
}

template <class Cat>
UniversalChain<Cat> universal_extension_build(const Cat& cat, const typename Cat::Obj& m, int steps) {
    UniversalChain<Cat> ch;
    ch.objects.push_back(m);
    for (int i = 0; i < steps; ++i) {
        auto [n, link] = realize_all_types(cat, cat.id(ch.objects.back()));
        ch.objects.push_back(n);
        ch.links.push_back(link);
    }
    return ch;
}

template <class Mor>
struct SubobjectOutcome {
    Mor incl;
    bool realizes_all = true;
    bool universal = true;
    std::optional<Mor> witness;
};

template <class Mor>
struct SaturationReport {
    bool hypothesis_met = true;
    bool pass = true;
    int ext_bound = 0;
    std::vector<SubobjectOutcome<Mor>> subobjects;
    std::string status() const {
        if (!hypothesis_met) return "hypothesis-not-met";
        return pass ? "pass" : "fail";
    }
};

// Subobjects of N generated by at most sub_bound elements; one inclusion
// per distinct image.
template <class Cat>
std::vector<typename Cat::Mor> small_subobjects(const Cat& cat, const typename Cat::Obj& n, int sub_bound) {
    std::vector<typename Cat::Mor> out;
    std::set<std::vector<int>> seen;
    int size = cat.size(n);
    std::vector<int> gens;
    auto rec = [&](auto&& self, int from) -> void {
        auto incl = cat.subobject(n, gens);
        if (seen.insert(image(incl.map)).second) out.push_back(incl);
        if (static_cast<int>(gens.size()) == sub_bound) return;
        for (int x = from; x < size; ++x) {
            gens.push_back(x);
            self(self, x + 1);
            gens.pop_back();
        }
    };
    rec(rec, 0);
    return out;
}

template <class Cat>
SaturationReport<typename Cat::Mor> saturated_implies_universal_check(const Cat& cat, const typename Cat::Obj& n,
                                                                      int sub_bound) {
    SaturationReport<typename Cat::Mor> rep;
    auto subs = small_subobjects(cat, n, sub_bound);
    int largest = 0;
    for (const auto& s : subs) largest = std::max(largest, cat.size(cat.dom(s)));
    rep.ext_bound = cat.grow(largest);
    for (const auto& s : subs) {
        SubobjectOutcome<typename Cat::Mor> o{s, true, true, std::nullopt};
        auto m = cat.dom(s);
        for (const auto& t : enumerate_types(cat, m, cat.grow(cat.size(m))).classes)
            if (!realizes(cat, s, t)) {
                o.realizes_all = false;
                break;
            }
        auto u = is_universal_over(cat, s, rep.ext_bound);
        o.universal = u.pass;
        o.witness = u.witness;
        rep.hypothesis_met = rep.hypothesis_met && o.realizes_all;
        rep.subobjects.push_back(std::move(o));
    }
    if (rep.hypothesis_met)
        for (const auto& o : rep.subobjects) rep.pass = rep.pass && o.universal;
    return rep;
}

}  // namespace catmt

#endif
