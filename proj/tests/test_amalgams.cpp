#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace catmt;

namespace {

Arrow<FinSet> set_arrow(int a, int b, std::vector<int> m) { return {FinSet{a}, FinSet{b}, std::move(m)}; }

Span<Arrow<FinSet>> point_span() { return {set_arrow(1, 2, {0}), set_arrow(1, 2, {0})}; }

// Connected components of the points over M under the maps between
// codomains that commute over M: a plain flood fill used as the oracle.
template <class Cat>
int type_count_oracle(const Cat& cat, const typename Cat::Obj& m, int bound) {
    using Mor = typename Cat::Mor;
    std::vector<Point<Mor>> pts;
    for (const auto& b : cat.objects(bound))
        for (const auto& f : cat.homs(m, b))
            for (int x = 0; x < cat.size(b); ++x) pts.push_back({f, x});
    int n = static_cast<int>(pts.size());
    std::vector<int> comp(n, -1);
    int c = 0;
    for (int s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<int> stack{s};
        comp[s] = c;
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (comp[j] >= 0) continue;
                auto linked = [&](int p, int q) {
                    for (const auto& u : cat.homs(pts[p].f.cod, pts[q].f.cod))
                        if (cat.compose(u, pts[p].f) == pts[q].f && u.map[pts[p].b] == pts[q].b) return true;
                    return false;
                };
                if (linked(i, j) || linked(j, i)) {
                    comp[j] = c;
                    stack.push_back(j);
                }
            }
        }
        ++c;
    }
    return c;
}

}  // namespace

TEST(Amalgamate, SetsSeparatingAndIdentifying) {
    SetCat cat(true, 4);
    auto list = amalgamate(cat, point_span(), 3);
    ASSERT_EQ(list.items.size(), 2u);
    std::set<int> apex_sizes;
    for (const auto& a : list.items) apex_sizes.insert(a.h.cod.n);
    EXPECT_EQ(apex_sizes, (std::set<int>{2, 3}));
    EXPECT_TRUE(list.exhaustive);
}

TEST(Amalgamate, SpanWithIdentity) {
    SetCat cat(true, 4);
    Span<Arrow<FinSet>> s{cat.id(FinSet{2}), set_arrow(2, 3, {0, 1})};
    EXPECT_GE(amalgamate(cat, s, 4).items.size(), 1u);
}

TEST(Amalgamate, GraphCrossEdge) {
    GraphCat cat(GraphKind::full_embedding, 4);
    Graph e0(0), k1(1);
    Span<Arrow<Graph>> s{{e0, k1, {}}, {e0, k1, {}}};
    auto list = amalgamate(cat, s, 2);
    // Two separating amalgams (with and without the cross-edge) and the one
    // identifying both vertices.
    ASSERT_EQ(list.items.size(), 3u);
    int separating = 0, with_edge = 0;
    for (const auto& a : list.items)
        if (a.h.cod.n == 2) {
            ++separating;
            with_edge += a.h.cod.edges().size() == 1;
        }
    EXPECT_EQ(separating, 2);
    EXPECT_EQ(with_edge, 1);
}

TEST(Amalgamate, AllModeMatchesBruteForce) {
    // Count cocones up to isomorphism of the apex by brute force.
    SetCat cat(true, 4);
    auto s = point_span();
    auto list = amalgamate(cat, s, 4, AmalgamMode::all);
    std::size_t brute = 0;
    for (int d = 0; d <= 4; ++d) {
        std::set<std::pair<std::vector<int>, std::vector<int>>> classes;
        for (const auto& h : oracle::injections(2, d))
            for (const auto& k : oracle::injections(2, d)) {
                if (h[0] != k[0]) continue;
                // Canonical relabelling: order apex points by first appearance in h then k.
                std::vector<int> lab(d, -1);
                int next = 0;
                for (int x : h)
                    if (lab[x] < 0) lab[x] = next++;
                for (int x : k)
                    if (lab[x] < 0) lab[x] = next++;
                std::vector<int> ch, ck;
                for (int x : h) ch.push_back(lab[x]);
                for (int x : k) ck.push_back(lab[x]);
                classes.insert({ch, ck});
            }
        brute += classes.size();
    }
    EXPECT_EQ(list.items.size(), brute);
}

TEST(JointlyConnected, ReflexiveAndSeparatingVsIdentifying) {
    SetCat cat(true, 5);
    auto s = point_span();
    auto list = amalgamate(cat, s, 3);
    const auto& a = list.items[0];
    const auto& b = list.items[1];
    EXPECT_TRUE(jointly_connected(cat, s, a, a, 3).witness.has_value());
    EXPECT_FALSE(jointly_connected(cat, s, a, b, 5).witness.has_value());
    EXPECT_FALSE(jointly_connected_search(cat, a, b, 5).has_value());
}

TEST(JointlyConnected, SubgraphEdgeVsEdgeless) {
    GraphCat cat(GraphKind::subgraph_embedding, 4);
    Graph e0(0), k1(1), e2(2), k2 = Graph::make(2, {{0, 1}});
    Span<Arrow<Graph>> s{{e0, k1, {}}, {e0, k1, {}}};
    Amalgam<Arrow<Graph>> edgeless{{k1, e2, {0}}, {k1, e2, {1}}}, edge{{k1, k2, {0}}, {k1, k2, {1}}};
    auto r = jointly_connected(cat, s, edgeless, edge, 4);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(jointly_connected_search(cat, edgeless, edge, 4).has_value());
}

TEST(JointlyConnected, AgreesWithSearch) {
    for (auto kind : {GraphKind::subgraph_embedding, GraphKind::full_embedding}) {
        // Amalgams of at most 2 vertices keep every joint witness within 4.
        Cached<GraphCat> cat(GraphCat(kind, 6));
        for (const auto& s : spans_up_to_iso(cat, 2)) {
            auto list = amalgamate(cat, s, 2, AmalgamMode::all);
            for (const auto& a : list.items)
                for (const auto& b : list.items) {
                    auto fast = jointly_connected(cat, s, a, b, 4);
                    EXPECT_TRUE(!fast.witness || fast.within_bound);
                    EXPECT_EQ(fast.witness.has_value(), jointly_connected_search(cat, a, b, 4).has_value());
                }
        }
    }
}

TEST(JointlyConnected, EquivalenceRelation) {
    SetCat cat(true, 6);
    for (const auto& s : spans_up_to_iso(cat, 3)) {
        auto items = amalgamate(cat, s, 3, AmalgamMode::all).items;
        int n = static_cast<int>(items.size());
        std::vector<std::vector<char>> rel(n, std::vector<char>(n));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) rel[i][j] = jointly_connected(cat, s, items[i], items[j], 6).witness.has_value();
        for (int i = 0; i < n; ++i) {
            EXPECT_TRUE(rel[i][i]);
            for (int j = 0; j < n; ++j) {
                EXPECT_EQ(rel[i][j], rel[j][i]);
                for (int k = 0; k < n; ++k)
                    if (rel[i][j] && rel[j][k]) {
                        EXPECT_TRUE(rel[i][k]);
                    }
            }
        }
    }
}

TEST(Types, SetsHaveMPlusOne) {
    SetCat cat(true, 6);
    for (int m = 0; m <= 3; ++m) {
        auto tl = enumerate_types(cat, FinSet{m}, m + 1);
        EXPECT_EQ(static_cast<int>(tl.classes.size()), m + 1);
        EXPECT_EQ(type_count_oracle(cat, FinSet{m}, m + 1), m + 1);
    }
}

TEST(Types, GraphOverVertex) {
    GraphCat cat(GraphKind::full_embedding, 4);
    auto tl = enumerate_types(cat, Graph(1), 2);
    EXPECT_EQ(tl.classes.size(), 3u);
    EXPECT_EQ(type_count_oracle(cat, Graph(1), 2), 3);
}

TEST(Types, GraphMatchesOracle) {
    for (auto kind : {GraphKind::subgraph_embedding, GraphKind::full_embedding}) {
        GraphCat cat(kind, 4);
        for (const auto& m : cat.objects(2))
            EXPECT_EQ(static_cast<int>(enumerate_types(cat, m, 3).classes.size()), type_count_oracle(cat, m, 3));
    }
}

TEST(Types, OldPointNeverMergesWithFresh) {
    SetCat cat(true, 4);
    auto tl = enumerate_types(cat, FinSet{2}, 3);
    for (const auto& c : tl.classes) {
        std::set<bool> in_image;
        for (const auto& p : c.members) {
            bool old = std::find(p.f.map.begin(), p.f.map.end(), p.b) != p.f.map.end();
            in_image.insert(old);
        }
        EXPECT_EQ(in_image.size(), 1u);
    }
}

TEST(Types, InvariantUnderBaseIso) {
    GraphCat cat(GraphKind::full_embedding, 4);
    Graph p = Graph::make(2, {{0, 1}});
    Graph q = Graph::make(2, {{1, 0}});
    EXPECT_EQ(enumerate_types(cat, p, 3).classes.size(), enumerate_types(cat, q, 3).classes.size());
}

TEST(AmalgamationBase, BuiltinCategories) {
    SetCat sets(true, 6);
    for (int n = 0; n <= 2; ++n) EXPECT_TRUE(is_amalgamation_base(sets, FinSet{n}, 4).pass);
    GraphCat graphs(GraphKind::full_embedding, 6);
    for (const auto& g : graphs.objects(2)) EXPECT_TRUE(is_amalgamation_base(graphs, g, 4).pass);
    VecCat vecs(2, true, 16);
    for (int d = 0; d <= 1; ++d) EXPECT_TRUE(is_amalgamation_base(vecs, VecSpace{d}, 8).pass);
}

TEST(Universal, Examples) {
    SetCat cat(true, 6);
    EXPECT_TRUE(is_universal_over(cat, cat.id(FinSet{1}), 1).pass);
    EXPECT_TRUE(is_universal_over(cat, set_arrow(1, 3, {0}), 3).pass);
    auto r = is_universal_over(cat, set_arrow(1, 2, {0}), 3);
    EXPECT_FALSE(r.pass);
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_EQ(r.witness->cod.n, 3);
}

TEST(Universal, ChainSizes) {
    SetCat cat(true, 6);
    auto ch = universal_extension_build(cat, FinSet{1}, 2);
    ASSERT_EQ(ch.objects.size(), 3u);
    EXPECT_EQ(ch.objects[0].n, 1);
    EXPECT_EQ(ch.objects[1].n, 2);
    EXPECT_EQ(ch.objects[2].n, 3);
    EXPECT_TRUE(is_universal_over(cat, ch.composite(cat), 3).pass);
    EXPECT_EQ(universal_extension_build(cat, FinSet{2}, 0).objects.size(), 1u);
}

TEST(Universal, MonotoneInBound) {
    SetCat cat(true, 6);
    auto ch = universal_extension_build(cat, FinSet{1}, 3);
    auto incl = ch.composite(cat);
    for (int k = 6; k >= 1; --k)
        if (is_universal_over(cat, incl, k).pass) {
            for (int j = 1; j <= k; ++j) EXPECT_TRUE(is_universal_over(cat, incl, j).pass);
        }
}

TEST(Universal, GraphSuccessorRealisesAllTypes) {
    GraphCat cat(GraphKind::full_embedding, 6);
    Graph k1(1);
    auto ch = universal_extension_build(cat, k1, 1);
    auto incl = ch.composite(cat);
    auto tl = enumerate_types(cat, k1, cat.grow(1));
    ASSERT_EQ(tl.classes.size(), 3u);
    for (const auto& t : tl.classes) EXPECT_TRUE(realizes(cat, incl, t).has_value());
}

TEST(Saturation, SetsPass) {
    SetCat cat(true, 8);
    std::vector<int> id6{0, 1, 2, 3, 4, 5};
    auto rep = saturated_implies_universal_check(cat, FinSet{6}, 2);
    EXPECT_TRUE(rep.hypothesis_met);
    EXPECT_TRUE(rep.pass);
}

TEST(Saturation, TooSmall) {
    SetCat cat(true, 8);
    auto rep = saturated_implies_universal_check(cat, FinSet{2}, 2);
    EXPECT_EQ(rep.status(), "hypothesis-not-met");
}

TEST(Saturation, PathReportsPerSubobject) {
    GraphCat cat(GraphKind::full_embedding, 6);
    auto rep = saturated_implies_universal_check(cat, Graph::make(3, {{0, 1}, {1, 2}}), 1);
    EXPECT_FALSE(rep.subobjects.empty());
}
