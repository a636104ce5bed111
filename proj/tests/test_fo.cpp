#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace catmt;

namespace {

// Random quantifier-free formula in k variables with constants drawn from b.
Formula random_formula(std::mt19937& rng, const FinStructure& n, int k, const std::vector<int>& b, int depth) {
    auto term = [&]() {
        int pick = std::uniform_int_distribution<int>(0, k + static_cast<int>(b.size()) - 1)(rng);
        return pick < k ? pick : -(b[pick - k] + 1);
    };
    int choice = std::uniform_int_distribution<int>(0, depth > 0 ? 4 : 1)(rng);
    switch (choice) {
        case 0: return Formula::eq(term(), term());
        case 1: {
            auto it = n.relations().begin();
            std::advance(it, std::uniform_int_distribution<int>(0, static_cast<int>(n.relations().size()) - 1)(rng));
            std::vector<int> args;
            for (int i = 0; i < it->second.arity; ++i) args.push_back(term());
            return Formula::atom(it->first, args);
        }
        case 2: return Formula::negate(random_formula(rng, n, k, b, depth - 1));
        case 3:
            return Formula::conj({random_formula(rng, n, k, b, depth - 1), random_formula(rng, n, k, b, depth - 1)});
        default:
            return Formula::disj({random_formula(rng, n, k, b, depth - 1), random_formula(rng, n, k, b, depth - 1)});
    }
}

QFFormula wrap(Formula f, int k) {
    std::vector<std::string> vars;
    for (int i = 0; i < k; ++i) vars.push_back("v" + std::to_string(i));
    return {std::move(f), vars, ""};
}

// With no bound on conjunction length, a is independent iff some tuple of M
// has the same quantifier-free type over M ∪ B.
bool independent_unbounded(const std::vector<int>& a, const std::vector<int>& m, const std::vector<int>& b,
                           const FinStructure& n) {
    std::vector<int> params = m;
    params.insert(params.end(), b.begin(), b.end());
    auto target = qf_type(a, params, n);
    bool found = false;
    each_tuple(static_cast<int>(m.size()), static_cast<int>(a.size()), [&](const std::vector<int>& t) {
        std::vector<int> c;
        for (int i : t) c.push_back(m[i]);
        found = found || qf_type(c, params, n) == target;
    });
    return found;
}

std::vector<std::vector<int>> subsets(int n) {
    std::vector<std::vector<int>> out;
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1) s.push_back(i);
        out.push_back(s);
    }
    return out;
}

}  // namespace

TEST(Types, SameTypeSatisfiesSameFormulas) {
    std::mt19937 rng(424242);
    std::vector<FinStructure> structures = {linear_order(5), equivalence_structure({2, 2, 1}),
                                            graph_structure(Graph::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}))};
    for (int trial = 0; trial < 1000; ++trial) {
        const auto& n = structures[trial % structures.size()];
        int k = 1 + trial % 2;
        std::vector<int> b;
        for (int x = 0; x < n.size(); ++x)
            if (rng() % 3 == 0) b.push_back(x);
        auto phi = wrap(random_formula(rng, n, k, b, 3), k);
        std::map<QFType, bool> seen;
        each_tuple(n.size(), k, [&](const std::vector<int>& t) {
            bool v = eval(phi, t, n);
            auto [it, fresh] = seen.emplace(qf_type(t, b, n), v);
            if (!fresh) {
                ASSERT_EQ(it->second, v) << "trial " << trial;
            }
        });
    }
}

TEST(Types, DistinctTypesAreSeparated) {
    // Tuples of different types differ on some atom, so the count of types
    // equals the number of distinct atom profiles.
    auto n = linear_order(4);
    std::vector<int> b{1, 2};
    auto atoms = all_atoms(n, 1);
    std::set<std::vector<char>> profiles;
    for (int x = 0; x < 4; ++x) {
        std::vector<char> p;
        for (int c : b) p.push_back(x == c), p.push_back(n.holds("lt", {x, c})), p.push_back(n.holds("lt", {c, x}));
        profiles.insert(p);
    }
    EXPECT_EQ(count_types(b, n, 1), static_cast<int>(profiles.size()));
}

TEST(Types, CountMonotoneInParameters) {
    for (const auto& n : {linear_order(5), equivalence_structure({3, 2})})
        for (const auto& b : subsets(n.size()))
            for (int extra = 0; extra < n.size(); ++extra) {
                auto bigger = b;
                bigger.push_back(extra);
                EXPECT_LE(count_types(b, n, 1), count_types(bigger, n, 1));
            }
    auto lin = linear_order(5);
    EXPECT_EQ(count_types({0, 1, 2, 3, 4}, lin, 1), 5);
    EXPECT_EQ(count_types({}, lin, 1), 1);
    EXPECT_EQ(count_types({}, lin, 2), 3);
}

TEST(OrderProperty, LinearOrderWitness) {
    auto lin = linear_order(5);
    auto w = order_property_witness(parse_formula("lt(x,y)"), lin, 5);
    ASSERT_TRUE(w.sequence.has_value());
    EXPECT_EQ(*w.sequence, (std::vector<std::vector<int>>{{0}, {1}, {2}, {3}, {4}}));
    EXPECT_FALSE(order_property_witness(parse_formula("lt(x,y)"), lin, 6).sequence.has_value());
}

TEST(OrderProperty, PureEqualityHasNone) {
    auto w = order_property_any(pure_equality(5), 1, 2);
    EXPECT_FALSE(w.sequence.has_value());
    EXPECT_TRUE(w.exhaustive);
    auto eq = equivalence_structure({2, 2, 2});
    EXPECT_FALSE(order_property_any(eq, 1, 2).sequence.has_value());
}

TEST(OrderProperty, AnyMatchesDirectSearch) {
    auto lin = linear_order(4);
    auto w = order_property_any(lin, 1, 4);
    ASSERT_TRUE(w.sequence.has_value());
    auto& s = *w.sequence;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = 0; j < s.size(); ++j)
            if (i < j)
                for (std::size_t p = 0; p < s.size(); ++p)
                    for (std::size_t q = 0; q <= p; ++q) {
                        auto t1 = s[i], t2 = s[p];
                        t1.insert(t1.end(), s[j].begin(), s[j].end());
                        t2.insert(t2.end(), s[q].begin(), s[q].end());
                        EXPECT_NE(qf_type(t1, {}, lin), qf_type(t2, {}, lin));
                    }
}

TEST(OrderProperty, CutsGiveManyTypes) {
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(cut_types_demo(n), 2 * n + 1);
        std::vector<int> odd;
        for (int i = 1; i < 2 * n + 1; i += 2) odd.push_back(i);
        EXPECT_EQ(count_types(odd, linear_order(2 * n + 1), 1), 2 * n + 1);
    }
    // Without the order the same parameters give only n + 1 types.
    EXPECT_EQ(count_types({1, 3, 5}, pure_equality(7), 1), 4);
}

TEST(Independence, MatchesUnboundedOracle) {
    for (const auto& n : {linear_order(5), equivalence_structure({2, 2, 2})}) {
        int big = 64;
        for (const auto& m : subsets(n.size())) {
            if (m.empty()) continue;
            for (int c = 0; c < n.size(); ++c)
                for (int d = -1; d < n.size(); ++d) {
                    std::vector<int> b;
                    if (d >= 0) b.push_back(d);
                    EXPECT_EQ(is_independent({c}, m, b, n, big), independent_unbounded({c}, m, b, n));
                }
        }
    }
}

TEST(Independence, MonotoneInBoundAntitoneInParameters) {
    auto n = equivalence_structure({3, 2, 1});
    for (const auto& m : subsets(6)) {
        if (m.empty()) continue;
        for (int c = 0; c < 6; ++c)
            for (const auto& b : subsets(6)) {
                if (b.size() > 2) continue;
                for (int s = 1; s <= 3; ++s)
                    if (is_independent({c}, m, b, n, s + 1)) {
                        EXPECT_TRUE(is_independent({c}, m, b, n, s));
                    }
                for (int extra = 0; extra < 6; ++extra) {
                    auto bigger = b;
                    bigger.push_back(extra);
                    if (is_independent({c}, m, bigger, n, 2)) {
                        EXPECT_TRUE(is_independent({c}, m, b, n, 2));
                    }
                }
            }
    }
}

TEST(Independence, ElementsOfModelAreIndependent) {
    auto n = linear_order(6);
    EXPECT_TRUE(is_independent({2}, {1, 2, 4}, {0, 5}, n, 3));
    EXPECT_TRUE(is_rich({0, 1, 2, 3, 4, 5}, n, 3));
    EXPECT_FALSE(is_rich({0, 5}, n, 2));
}

TEST(Automorphisms, Counts) {
    EXPECT_EQ(automorphism_group(linear_order(4)).size(), 1u);
    EXPECT_EQ(automorphism_group(pure_equality(4)).size(), 24u);
    EXPECT_EQ(automorphism_group(equivalence_structure({2, 2})).size(), 8u);
    auto c5 = graph_structure(Graph::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}));
    EXPECT_EQ(automorphism_group(c5).size(), 10u);
}

TEST(Automorphisms, GeneratorsGenerate) {
    for (const auto& n : {equivalence_structure({2, 2, 1}), pure_equality(4),
                          graph_structure(Graph::make(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}}))}) {
        auto gens = automorphism_generators(n);
        std::set<std::vector<int>> closure;
        std::vector<int> id(n.size());
        std::iota(id.begin(), id.end(), 0);
        std::vector<std::vector<int>> todo{id};
        closure.insert(id);
        while (!todo.empty()) {
            auto p = todo.back();
            todo.pop_back();
            for (const auto& g : gens) {
                std::vector<int> q(p.size());
                for (std::size_t i = 0; i < p.size(); ++i) q[i] = g[p[i]];
                if (closure.insert(q).second) todo.push_back(q);
            }
        }
        EXPECT_EQ(closure.size(), automorphism_group(n).size());
    }
}

TEST(Forking, StableStructuresSatisfyAll) {
    for (const auto& n : {pure_equality(6), equivalence_structure({2, 2, 2})}) {
        auto rep = check_forking_properties(n, 2, 4);
        EXPECT_TRUE(rep.pass());
        EXPECT_GT(rep.rich_models, 0);
        // Uniqueness can be vacuous: with three pairs and |M| >= 4 every
        // outside element shares a class with M.
        for (const auto& [name, r] : rep.properties) {
            if (name != "uniqueness") {
                EXPECT_GT(r.checked, 0) << name;
            }
            EXPECT_EQ(r.violations, 0) << name << ": " << r.witness;
        }
    }
}

TEST(Forking, LinearOrderBreaksUniqueness) {
    auto rep = check_forking_properties(linear_order(5), 1, 2);
    EXPECT_FALSE(rep.pass());
    const auto& u = rep.properties.at("uniqueness");
    EXPECT_GT(u.violations, 0);
    EXPECT_FALSE(u.witness.empty());
    EXPECT_GT(rep.properties.at("symmetry").violations + rep.properties.at("symmetry").diagnostics, 0);
}

TEST(Indiscernibles, WitnessReplays) {
    std::mt19937 rng(99);
    auto g = graph_structure(Graph::make(6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {0, 3}}));
    auto delta = all_atoms(g, 1);
    for (int trial = 0; trial < 40; ++trial) {
        int len = 6 + trial % 5;
        std::vector<std::vector<int>> seq;
        for (int i = 0; i < len; ++i) seq.push_back({static_cast<int>(rng() % 6)});
        auto r = extract_indiscernibles(seq, delta, g, 1);
        EXPECT_EQ(r.method, "trivial");
        int best = 0;
        for (int mask = 1; mask < (1 << len); ++mask) {
            std::vector<int> sub;
            for (int i = 0; i < len; ++i)
                if ((mask >> i) & 1) sub.push_back(i);
            if (static_cast<int>(sub.size()) > best && is_indiscernible(seq, sub, delta, g)) best = static_cast<int>(sub.size());
        }
        auto hit = extract_indiscernibles(seq, delta, g, best);
        ASSERT_TRUE(hit.witness.has_value()) << trial;
        EXPECT_EQ(hit.method, best <= 1 ? "trivial" : "ramsey");
        EXPECT_TRUE(is_indiscernible(seq, hit.witness->indices, delta, g));
        EXPECT_FALSE(extract_indiscernibles(seq, delta, g, best + 1).witness.has_value()) << trial;
    }
}

TEST(Indiscernibles, ConstantAndIncreasingSequences) {
    auto lin = linear_order(6);
    auto delta = all_atoms(lin, 1);
    std::vector<std::vector<int>> constant(5, std::vector<int>{3});
    EXPECT_TRUE(is_indiscernible(constant, {0, 1, 2, 3, 4}, delta, lin));
    std::vector<std::vector<int>> up{{0}, {1}, {2}, {3}, {4}, {5}};
    EXPECT_TRUE(is_indiscernible(up, {0, 2, 5}, delta, lin));
    std::vector<std::vector<int>> zig{{0}, {5}, {1}, {4}, {2}};
    EXPECT_FALSE(is_indiscernible(zig, {0, 1, 2}, delta, lin));
}

TEST(Indiscernibles, HigherArityUsesExhaustiveSearch) {
    auto lin = linear_order(5);
    auto phi = parse_formula("lt(x,y) & lt(y,z)");
    std::vector<std::vector<int>> seq{{0}, {3}, {1}, {4}, {2}};
    auto r = extract_indiscernibles(seq, {phi}, lin, 3);
    EXPECT_EQ(r.method, "exhaustive");
    ASSERT_TRUE(r.witness.has_value());
    EXPECT_TRUE(is_indiscernible(seq, r.witness->indices, {phi}, lin));
}

TEST(Axiomatize, AllHasNoForbidden) {
    auto r = universal_class_axiomatize(family_oracle("all"), StructureSpace::graph, 3, 5);
    EXPECT_TRUE(r.forbidden.empty());
    EXPECT_TRUE(r.agree);
}

TEST(Axiomatize, TriangleFreeForbidsTriangle) {
    auto r = universal_class_axiomatize(family_oracle("triangle-free"), StructureSpace::graph, 3, 6);
    ASSERT_EQ(r.minimal.size(), 1u);
    EXPECT_EQ(r.minimal[0].size(), 3);
    EXPECT_TRUE(r.agree);
    EXPECT_EQ(r.checked, 1 + 1 + 2 + 4 + 11 + 34 + 156);
}

TEST(Axiomatize, EquivalenceRelations) {
    auto g = universal_class_axiomatize(family_oracle("equivalence"), StructureSpace::graph, 3, 5);
    ASSERT_EQ(g.minimal.size(), 1u);  // the path on three vertices
    EXPECT_EQ(g.minimal[0].tuples("E").size(), 7u);
    auto b = universal_class_axiomatize(family_oracle("equivalence"), StructureSpace::binary, 3, 3);
    EXPECT_TRUE(b.agree);
    EXPECT_EQ(b.minimal.size(), 3u);
}

TEST(Axiomatize, NonClosedFamilyRejected) {
    Membership even = [](const FinStructure& s) { return s.size() % 2 == 0; };
    EXPECT_THROW(universal_class_axiomatize(even, StructureSpace::graph, 3, 4), ClosureViolation);
    Membership has_zero_loop = [](const FinStructure& s) { return s.size() == 0 || s.holds("R", {0, 0}); };
    EXPECT_THROW(universal_class_axiomatize(has_zero_loop, StructureSpace::binary, 2, 2), ClosureViolation);
}
