#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace catmt;

namespace {

using SetMor = Arrow<FinSet>;
using GraphMor = Arrow<Graph>;

SetMor set_arrow(int a, int b, std::vector<int> m) { return {FinSet{a}, FinSet{b}, std::move(m)}; }

template <class Cat>
Predicate<typename Cat::Mor> named(const Cat& cat, const std::string& name) {
    for (const auto& p : builtin_predicates(cat))
        if (p.name == name) return p;
    for (const auto& p : control_predicates(cat))
        if (p.name == name) return p;
    throw std::invalid_argument(name);
}

Square<GraphMor> edge_over_empty(bool edge) {
    Graph e0(0), k1(1), d = edge ? Graph::make(2, {{0, 1}}) : Graph(2);
    return {{e0, k1, {}}, {e0, k1, {}}, {k1, d, {0}}, {k1, d, {1}}};
}

}  // namespace

TEST(Effective, SetExamples) {
    SetCat cat(true, 6);
    Square<SetMor> sep{set_arrow(1, 2, {0}), set_arrow(1, 2, {0}), set_arrow(2, 3, {0, 1}), set_arrow(2, 3, {0, 2})};
    Square<SetMor> glued{set_arrow(1, 2, {0}), set_arrow(1, 2, {0}), set_arrow(2, 3, {0, 1}), set_arrow(2, 3, {0, 1})};
    EXPECT_TRUE(effective_square(cat, sep));
    EXPECT_FALSE(effective_square(cat, glued));
    EXPECT_TRUE(named(cat, "disjoint-sets").decide(sep));
}

TEST(Effective, SubgraphEdgeApex) {
    GraphCat cat(GraphKind::subgraph_embedding, 6);
    EXPECT_TRUE(effective_square(cat, edge_over_empty(true)));
}

TEST(Effective, FullEmbeddingRivals) {
    GraphCat cat(GraphKind::full_embedding, 6);
    EXPECT_FALSE(named(cat, "cross-edge-free").decide(edge_over_empty(true)));
    EXPECT_TRUE(named(cat, "cross-edges-present").decide(edge_over_empty(true)));
    EXPECT_TRUE(named(cat, "cross-edge-free").decide(edge_over_empty(false)));
    EXPECT_FALSE(named(cat, "cross-edges-present").decide(edge_over_empty(false)));
}

TEST(Effective, SetsAgreeWithIntersectionOracle) {
    Cached<SetCat> cat(SetCat(true, 6));
    auto u = square_universe(cat, 4);
    long n = 0;
    u.each([&](const auto& s, const auto& a) {
        ++n;
        EXPECT_EQ(effective_square(cat, make_square(s, a)), oracle::meet_in_base(s.f.map, s.g.map, a.h.map, a.k.map));
    });
    EXPECT_EQ(n, 334);
}

TEST(Effective, InvariantUnderApexRelabelling) {
    Cached<GraphCat> cat(GraphCat(GraphKind::subgraph_embedding, 6));
    auto u = square_universe(cat, 3);
    u.each([&](const auto& s, const auto& a) {
        auto sq = make_square(s, a);
        bool base = effective_square(cat, sq);
        for (const auto& g : cat.automorphisms(sq.h.cod)) {
            Square<GraphMor> moved{sq.f, sq.g, cat.compose(g, sq.h), cat.compose(g, sq.k)};
            EXPECT_EQ(effective_square(cat, moved), base);
        }
    });
}

TEST(Suite, DisjointSetsPassesAll) {
    Cached<SetCat> cat(SetCat(true, 6));
    auto rep = run_axiom_suite(cat, named(cat, "disjoint-sets"), 4);
    for (const auto& f : rep.fragments) {
        EXPECT_TRUE(f.passed()) << f.axiom << ": " << f.note;
        EXPECT_TRUE(f.exhaustive) << f.axiom;
    }
}

TEST(Suite, ControlsFailTheirAxiom) {
    Cached<SetCat> cat(SetCat(true, 6));
    auto u = square_universe(cat, 4);
    const std::vector<std::pair<std::string, std::string>> expect = {{"never", "existence"},
                                                                     {"always", "uniqueness"},
                                                                     {"left-larger", "symmetry"},
                                                                     {"small-growth", "transitivity"},
                                                                     {"parity", "witness-property"}};
    for (const auto& [name, axiom] : expect) {
        auto rep = run_axiom_suite(cat, named(cat, name), u);
        const auto* f = rep.find(axiom);
        ASSERT_NE(f, nullptr);
        EXPECT_FALSE(f->passed()) << name;
        EXPECT_FALSE(f->witness.empty()) << name;
    }
}

TEST(Suite, VectorSpacesPass) {
    Cached<VecCat> cat(VecCat(2, true, 8));
    for (const auto& name : {"disjoint-subspaces", "effective"}) {
        auto rep = run_axiom_suite(cat, named(cat, name), 4);
        EXPECT_TRUE(rep.all_pass()) << name;
    }
}

TEST(Suite, FullEmbeddingsAtBound3) {
    Cached<GraphCat> cat(GraphCat(GraphKind::full_embedding, 6));
    auto u = square_universe(cat, 3);
    for (const auto& name : {"cross-edge-free", "cross-edges-present", "effective"}) {
        auto rep = run_axiom_suite(cat, named(cat, name), u);
        for (const auto& f : rep.fragments) EXPECT_TRUE(f.passed()) << name << "/" << f.axiom << ": " << f.note;
    }
}

TEST(Suite, CrossEdgeFreeFailsUnderSubgraphEmbeddings) {
    Cached<GraphCat> cat(GraphCat(GraphKind::subgraph_embedding, 6));
    auto u = square_universe(cat, 3);
    auto rep = run_axiom_suite(cat, named(cat, "cross-edge-free"), u);
    EXPECT_FALSE(rep.find("invariance")->passed());
    EXPECT_TRUE(run_axiom_suite(cat, named(cat, "effective"), u).all_pass());
}

TEST(Canonicity, RivalsDisagreeOnEdgeSquare) {
    Cached<GraphCat> cat(GraphCat(GraphKind::full_embedding, 6));
    auto u = square_universe(cat, 3);
    auto c = canonicity_compare(cat, named(cat, "cross-edge-free"), named(cat, "cross-edges-present"), u);
    EXPECT_FALSE(c.agree);
    auto target = edge_over_empty(true);
    bool found = false;
    for (const auto& sq : c.disagreements)
        found = found || (sq.f.dom.n == 0 && sq.h.cod == target.h.cod && sq.f.cod.n == 1 && sq.g.cod.n == 1);
    EXPECT_TRUE(found);
}

TEST(Canonicity, SetsAgree) {
    Cached<SetCat> cat(SetCat(true, 6));
    auto u = square_universe(cat, 5);
    EXPECT_TRUE(canonicity_compare(cat, named(cat, "disjoint-sets"), named(cat, "effective"), u).agree);
    auto p = named(cat, "parity");
    EXPECT_TRUE(canonicity_compare(cat, p, p, u).agree);
}
