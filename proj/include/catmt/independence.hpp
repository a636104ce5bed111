#ifndef CATMT_INDEPENDENCE_HPP
#define CATMT_INDEPENDENCE_HPP

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "amalgams.hpp"

namespace catmt {

template <class Mor>
struct Predicate {
    std::string name;
    std::string doc;
    std::function<bool(const Square<Mor>&)> decide;
};

// The mediator out of the pushout of the span lies in the class.
template <class Cat>
bool effective_square(const Cat& cat, const Square<typename Cat::Mor>& s) {
    auto po = cat.pushout(s.f, s.g);
    return cat.in_class(cat.mediator(po, s.h, s.k));
}

namespace detail {

template <class Mor>
bool images_meet_in_base(const Square<Mor>& s) {
    auto ih = image(s.h.map), ik = image(s.k.map), ia = image(compose(s.h, s.f).map);
    std::vector<int> both;
    std::set_intersection(ih.begin(), ih.end(), ik.begin(), ik.end(), std::back_inserter(both));
    return both == ia;
}

// Vertices of D coming only from B, and only from C.
inline std::pair<std::vector<int>, std::vector<int>> private_parts(const Square<Arrow<Graph>>& s) {
    auto ia = image(compose(s.h, s.f).map);
    std::vector<int> pb, pc;
    for (int x : image(s.h.map))
        if (!std::binary_search(ia.begin(), ia.end(), x)) pb.push_back(x);
    for (int x : image(s.k.map))
        if (!std::binary_search(ia.begin(), ia.end(), x)) pc.push_back(x);
    return {pb, pc};
}

inline int cross_edges(const Square<Arrow<Graph>>& s, bool count_missing) {
    auto [pb, pc] = private_parts(s);
    int n = 0;
    for (int x : pb)
        for (int y : pc) n += s.h.cod.edge(x, y) != count_missing;
    return n;
}

}  // namespace detail

inline std::vector<Predicate<Arrow<FinSet>>> builtin_predicates(const SetCat& cat) {
    using M = Arrow<FinSet>;
    return {
        {"disjoint-sets", "images of the ears meet exactly in the image of the base",
         [](const Square<M>& s) { return detail::images_meet_in_base(s); }},
        {"effective", "mediator from the pushout lies in the class",
         [cat](const Square<M>& s) { return effective_square(cat, s); }},
    };
}

inline std::vector<Predicate<Arrow<VecSpace>>> builtin_predicates(const VecCat& cat) {
    using M = Arrow<VecSpace>;
    return {
        {"disjoint-subspaces", "image subspaces of the ears meet exactly in the image of the base",
         [](const Square<M>& s) { return detail::images_meet_in_base(s); }},
        {"effective", "mediator from the pushout lies in the class",
         [cat](const Square<M>& s) { return effective_square(cat, s); }},
    };
}

inline std::vector<Predicate<Arrow<Graph>>> builtin_predicates(const GraphCat& cat) {
    using M = Arrow<Graph>;
    std::vector<Predicate<M>> v{
        {"cross-edge-free", "vertex images meet in the base and no edge joins the two private parts",
         [](const Square<M>& s) { return detail::images_meet_in_base(s) && detail::cross_edges(s, false) == 0; }},
    };
    if (cat.kind() == GraphKind::full_embedding)
        v.push_back({"cross-edges-present",
                     "vertex images meet in the base and every pair across the private parts is an edge",
                     [](const Square<M>& s) {
                         return detail::images_meet_in_base(s) && detail::cross_edges(s, true) == 0;
                     }});
    v.push_back({"effective", "mediator from the pushout lies in the class",
                 [cat](const Square<M>& s) { return effective_square(cat, s); }});
    return v;
}

template <class Cat>
auto builtin_predicates(const Cached<Cat>& cat) {
    return builtin_predicates(cat.base());
}

// Deliberately broken predicates for exercising the harness.
template <class Cat>
std::vector<Predicate<typename Cat::Mor>> control_predicates(const Cat& cat) {
    using M = typename Cat::Mor;
    auto sz = [cat](const auto& o) { return cat.size(o); };
    return {
        {"never", "no square is independent", [](const Square<M>&) { return false; }},
        {"always", "every square is independent", [](const Square<M>&) { return true; }},
        {"left-larger", "the first ear is strictly larger than the second",
         [sz](const Square<M>& s) { return sz(s.f.cod) > sz(s.g.cod); }},
        {"small-growth", "the apex adds at most two elements to the base",
         [sz](const Square<M>& s) { return sz(s.h.cod) - sz(s.f.dom) <= 2; }},
        {"parity", "dependent exactly when the ears add an odd number (at least five) of new elements",
         [sz](const Square<M>& s) {
             int added = sz(s.f.cod) + sz(s.g.cod) - 2 * sz(s.f.dom);
             return !(added >= 5 && added % 2 == 1);
         }},
    };
}

// ---------------------------------------------------------------------------

template <class Mor>
struct SquareUniverse {
    int bound = 0;
    std::vector<Span<Mor>> spans;
    std::vector<std::vector<Amalgam<Mor>>> amalgams;  // per span, every apex <= bound

    std::size_t squares() const {
        std::size_t n = 0;
        for (const auto& a : amalgams) n += a.size();
        return n;
    }
    template <class F>
    void each(F&& fn) const {
        for (std::size_t i = 0; i < spans.size(); ++i)
            for (const auto& a : amalgams[i]) fn(spans[i], a);
    }
};

template <class Cat>
SquareUniverse<typename Cat::Mor> square_universe(const Cat& cat, int bound) {
    SquareUniverse<typename Cat::Mor> u;
    u.bound = bound;
    u.spans = spans_up_to_iso(cat, bound);
    for (const auto& s : u.spans) u.amalgams.push_back(amalgamate(cat, s, bound, AmalgamMode::all).items);
    return u;
}

template <class Mor>
struct Fragment {
    explicit Fragment(std::string a = {}) : axiom(std::move(a)) {}
    std::string axiom;
    std::string verdict = "pass";  // pass | fail | inconclusive
    std::vector<Square<Mor>> witness;
    std::string note;
    bool exhaustive = true;
    long checked = 0;
    bool passed() const { return verdict == "pass"; }
};

template <class Mor>
struct AxiomReport {
    std::string predicate;
    int bound = 0;
    std::vector<Fragment<Mor>> fragments;
    bool all_pass() const {
        for (const auto& f : fragments)
            if (!f.passed()) return false;
        return true;
    }
    const Fragment<Mor>* find(const std::string& axiom) const {
        for (const auto& f : fragments)
            if (f.axiom == axiom) return &f;
        return nullptr;
    }
};

template <class Cat>
Fragment<typename Cat::Mor> check_existence(const Cat& cat, const Predicate<typename Cat::Mor>& p,
                                            const SquareUniverse<typename Cat::Mor>& u) {
    using Mor = typename Cat::Mor;
    Fragment<Mor> fr{"existence"};
    for (std::size_t i = 0; i < u.spans.size(); ++i) {
        const auto& s = u.spans[i];
        ++fr.checked;
        bool found = false;
        auto po = cat.pushout(s.f, s.g);
        cat.for_each_generated(po, [&](const Mor& e) {
            found = p.decide({s.f, s.g, cat.compose(e, po.left), cat.compose(e, po.right)});
            return !found;
        });
        for (std::size_t j = 0; !found && j < u.amalgams[i].size(); ++j)
            found = p.decide(make_square(s, u.amalgams[i][j]));
        if (!found) {
            fr.verdict = "fail";
            fr.witness.push_back({s.f, s.g, po.left, po.right});
            fr.note = "span has no independent amalgam (pushout shown as its canonical completion)";
            return fr;
        }
    }
    return fr;
}

template <class Cat>
Fragment<typename Cat::Mor> check_uniqueness(const Cat& cat, const Predicate<typename Cat::Mor>& p,
                                             const SquareUniverse<typename Cat::Mor>& u) {
    using Mor = typename Cat::Mor;
    Fragment<Mor> fr{"uniqueness"};
    for (std::size_t i = 0; i < u.spans.size(); ++i) {
        const auto& s = u.spans[i];
        std::vector<const Amalgam<Mor>*> ind;
        for (const auto& a : u.amalgams[i])
            if (p.decide(make_square(s, a))) ind.push_back(&a);
        for (std::size_t x = 0; x < ind.size(); ++x)
            for (std::size_t y = x + 1; y < ind.size(); ++y) {
                ++fr.checked;
                auto r = jointly_connected(cat, s, *ind[x], *ind[y], u.bound);
                if (!r.exhaustive) fr.exhaustive = false;
                if (!r.witness) {
                    fr.verdict = "fail";
                    fr.witness = {make_square(s, *ind[x]), make_square(s, *ind[y])};
                    fr.note = "two independent amalgams of one span are not jointly connected";
                    return fr;
                }
            }
    }
    return fr;
}

template <class Mor>
Square<Mor> swapped(const Square<Mor>& s) {
    return {s.g, s.f, s.k, s.h};
}

template <class Cat>
Fragment<typename Cat::Mor> check_symmetry(const Cat&, const Predicate<typename Cat::Mor>& p,
                                           const SquareUniverse<typename Cat::Mor>& u) {
    Fragment<typename Cat::Mor> fr{"symmetry"};
    u.each([&](const auto& s, const auto& a) {
        if (!fr.passed()) return;
        ++fr.checked;
        auto sq = make_square(s, a);
        if (p.decide(sq) != p.decide(swapped(sq))) {
            fr.verdict = "fail";
            fr.witness = {sq, swapped(sq)};
            fr.note = "verdict changes when the ears are swapped";
        }
    });
    return fr;
}

// Left square (f, g, h, k) and right square (k, g2, h2, k2) glued along k;
// the outer square is (f, g2∘g, h2∘h, k2).
template <class Cat>
Fragment<typename Cat::Mor> check_transitivity(const Cat& cat, const Predicate<typename Cat::Mor>& p,
                                               const SquareUniverse<typename Cat::Mor>& u) {
    using Mor = typename Cat::Mor;
    Fragment<Mor> fr{"transitivity"};
    auto objs = cat.objects(u.bound);
    for (std::size_t i = 0; i < u.spans.size(); ++i) {
        const auto& s = u.spans[i];
        for (const auto& a : u.amalgams[i]) {
            Square<Mor> left = make_square(s, a);
            if (!p.decide(left)) continue;
            auto c = cat.cod(s.g);
            for (const auto& e : objs) {
                auto auts = automorphisms(cat, e);
                std::set<Mor> seen;
                for (const auto& g2 : cat.homs(c, e)) {
                    if (seen.count(g2)) continue;
                    for (const auto& al : auts) seen.insert(cat.compose(al, g2));
                    Span<Mor> rs{a.k, g2};
                    for (const auto& b : amalgamate(cat, rs, u.bound, AmalgamMode::all).items) {
                        Square<Mor> right = make_square(rs, b);
                        if (!p.decide(right)) continue;
                        ++fr.checked;
                        Square<Mor> outer{s.f, cat.compose(g2, s.g), cat.compose(b.h, a.h), b.k};
                        if (!p.decide(outer)) {
                            fr.verdict = "fail";
                            fr.witness = {left, right, outer};
                            fr.note = "left and right squares independent, outer square not";
                            return fr;
                        }
                    }
                }
            }
        }
    }
    return fr;
}

template <class Cat>
Fragment<typename Cat::Mor> check_invariance(const Cat& cat, const Predicate<typename Cat::Mor>& p,
                                             const SquareUniverse<typename Cat::Mor>& u) {
    using Mor = typename Cat::Mor;
    Fragment<Mor> fr{"invariance"};
    for (std::size_t i = 0; i < u.spans.size(); ++i) {
        const auto& s = u.spans[i];
        std::vector<const Amalgam<Mor>*> ind, dep;
        for (const auto& a : u.amalgams[i]) (p.decide(make_square(s, a)) ? ind : dep).push_back(&a);
        for (auto x : ind)
            for (auto y : dep) {
                ++fr.checked;
                if (jointly_connected(cat, s, *x, *y, u.bound).witness) {
                    fr.verdict = "fail";
                    fr.witness = {make_square(s, *x), make_square(s, *y)};
                    fr.note = "an independent amalgam is connected to a dependent one";
                    return fr;
                }
            }
    }
    return fr;
}

namespace detail {

// Restricts a square to sub-ears generated by the base image plus extra
// generators; the apex is unchanged.
template <class Cat>
Square<typename Cat::Mor> restrict_square(const Cat& cat, const Square<typename Cat::Mor>& sq,
                                          const typename Cat::Mor& ib, const typename Cat::Mor& ic) {
    auto through = [&](const typename Cat::Mor& incl, const typename Cat::Mor& f) {
        std::map<int, int> back;
        for (std::size_t x = 0; x < incl.map.size(); ++x) back[incl.map[x]] = static_cast<int>(x);
        typename Cat::Mor r{f.dom, incl.dom, std::vector<int>(f.map.size())};
        for (std::size_t a = 0; a < f.map.size(); ++a) r.map[a] = back.at(f.map[a]);
        return r;
    };
    return {through(ib, sq.f), through(ic, sq.g), cat.compose(sq.h, ib), cat.compose(sq.k, ic)};
}

template <class Cat>
std::vector<typename Cat::Mor> sub_ears(const Cat& cat, const typename Cat::Mor& f, int extra) {
    std::vector<typename Cat::Mor> out;
    std::set<std::vector<int>> seen;
    auto base = image(f.map);
    int n = cat.size(f.cod);
    std::vector<int> gens = base;
    auto rec = [&](auto&& self, int from, int left) -> void {
        auto incl = cat.subobject(f.cod, gens);
        if (seen.insert(image(incl.map)).second) out.push_back(incl);
        if (left == 0) return;
        for (int x = from; x < n; ++x) {
            gens.push_back(x);
            self(self, x + 1, left - 1);
            gens.pop_back();
        }
    };
    rec(rec, 0, extra);
    return out;
}

}  // namespace detail

// Every dependent square has a dependent sub-square whose ears are generated
// by the base image and at most `extra` further elements each.
template <class Cat>
Fragment<typename Cat::Mor> check_witness_property(const Cat& cat, const Predicate<typename Cat::Mor>& p,
                                                   const SquareUniverse<typename Cat::Mor>& u, int extra = 2) {
    using Mor = typename Cat::Mor;
    Fragment<Mor> fr{"witness-property"};
    for (std::size_t i = 0; i < u.spans.size(); ++i) {
        const auto& s = u.spans[i];
        std::vector<Mor> bs, cs;
        bool ready = false;
        for (const auto& a : u.amalgams[i]) {
            auto sq = make_square(s, a);
            if (p.decide(sq)) continue;
            ++fr.checked;
            if (!ready) {
                bs = detail::sub_ears(cat, s.f, extra);
                cs = detail::sub_ears(cat, s.g, extra);
                ready = true;
            }
            bool found = false;
            for (std::size_t x = 0; x < bs.size() && !found; ++x)
                for (std::size_t y = 0; y < cs.size() && !found; ++y)
                    found = !p.decide(detail::restrict_square(cat, sq, bs[x], cs[y]));
            if (!found) {
                fr.verdict = "fail";
                fr.witness = {sq};
                fr.note = "dependent square whose small sub-squares are all independent";
                return fr;
            }
        }
    }
    return fr;
}

template <class Cat>
AxiomReport<typename Cat::Mor> run_axiom_suite(const Cat& cat, const Predicate<typename Cat::Mor>& p,
                                               const SquareUniverse<typename Cat::Mor>& u) {
    AxiomReport<typename Cat::Mor> r{p.name, u.bound, {}};
    r.fragments.push_back(check_existence(cat, p, u));
    r.fragments.push_back(check_uniqueness(cat, p, u));
    r.fragments.push_back(check_symmetry(cat, p, u));
    r.fragments.push_back(check_transitivity(cat, p, u));
    r.fragments.push_back(check_invariance(cat, p, u));
    r.fragments.push_back(check_witness_property(cat, p, u));
    return r;
}

template <class Cat>
AxiomReport<typename Cat::Mor> run_axiom_suite(const Cat& cat, const Predicate<typename Cat::Mor>& p, int bound) {
    return run_axiom_suite(cat, p, square_universe(cat, bound));
}

template <class Mor>
struct Canonicity {
    bool agree = true;
    long checked = 0;
    std::vector<Square<Mor>> disagreements;  // every square on which the verdicts differ
};

template <class Cat>
Canonicity<typename Cat::Mor> canonicity_compare(const Cat&, const Predicate<typename Cat::Mor>& p1,
                                                 const Predicate<typename Cat::Mor>& p2,
                                                 const SquareUniverse<typename Cat::Mor>& u) {
    Canonicity<typename Cat::Mor> c;
    u.each([&](const auto& s, const auto& a) {
        ++c.checked;
        auto sq = make_square(s, a);
        if (p1.decide(sq) != p2.decide(sq)) c.disagreements.push_back(sq);
    });
    c.agree = c.disagreements.empty();
    return c;
}

}  // namespace catmt

#endif
