#ifndef CATMT_FO_HPP
#define CATMT_FO_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "concrete.hpp"
#include "structure.hpp"

namespace catmt {

// ---------------------------------------------------------------------------
// Small structure families.

inline FinStructure pure_equality(int n) { return FinStructure(n); }

inline FinStructure linear_order(int n) {
    FinStructure s(n);
    s.declare("lt", 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) s.set("lt", {i, j});
    return s;
}

// Equivalence relation E with the given class sizes, elements numbered class by class.
inline FinStructure equivalence_structure(const std::vector<int>& classes) {
    int n = std::accumulate(classes.begin(), classes.end(), 0);
    FinStructure s(n);
    s.declare("E", 2);
    std::vector<int> cls;
    for (std::size_t c = 0; c < classes.size(); ++c) cls.insert(cls.end(), classes[c], static_cast<int>(c));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cls[i] == cls[j]) s.set("E", {i, j});
    return s;
}

// Graphs as structures: E symmetric and reflexive.
inline FinStructure graph_structure(const Graph& g) {
    FinStructure s(g.n);
    s.declare("E", 2);
    for (int u = 0; u < g.n; ++u)
        for (int v = 0; v < g.n; ++v)
            if (g.adjacent_or_equal(u, v)) s.set("E", {u, v});
    return s;
}

// ---------------------------------------------------------------------------
// Quantifier-free types.

// Atomic diagram of (B sorted, a) with elements replaced by the position of
// their first occurrence. Two tuples over the same B get equal keys iff they
// satisfy the same quantifier-free formulas with parameters from B.
struct QFType {
    std::vector<int> pattern;
    std::vector<std::vector<char>> rels;  // per relation, truth over position tuples
    auto operator<=>(const QFType&) const = default;
};

inline QFType qf_type(const std::vector<int>& a, std::vector<int> b, const FinStructure& n) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    std::vector<int> seq = b;
    seq.insert(seq.end(), a.begin(), a.end());
    QFType t;
    std::vector<int> distinct;
    for (int x : seq) {
        auto it = std::find(distinct.begin(), distinct.end(), x);
        t.pattern.push_back(static_cast<int>(it - distinct.begin()));
        if (it == distinct.end()) distinct.push_back(x);
    }
    int m = static_cast<int>(distinct.size());
    for (const auto& [name, r] : n.relations()) {
        std::vector<char> row;
        std::vector<int> idx(r.arity, 0), tup(r.arity);
        while (true) {
            for (int i = 0; i < r.arity; ++i) tup[i] = distinct[idx[i]];
            row.push_back(n.holds(name, tup) ? 1 : 0);
            int i = 0;
            while (i < r.arity && ++idx[i] == m) idx[i++] = 0;
            if (i == r.arity) break;
        }
        t.rels.push_back(std::move(row));
    }
    return t;
}

template <class F>
void each_tuple(int n, int k, F&& fn) {
    std::vector<int> t(k, 0);
    if (k > 0 && n == 0) return;
    while (true) {
        fn(t);
        int i = k - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) return;
    }
}

inline int count_types(const std::vector<int>& b, const FinStructure& n, int k) {
    std::set<QFType> seen;
    each_tuple(n.size(), k, [&](const std::vector<int>& t) { seen.insert(qf_type(t, b, n)); });
    return static_cast<int>(seen.size());
}

// ---------------------------------------------------------------------------
// Order property.

struct OrderWitness {
    std::optional<std::vector<std::vector<int>>> sequence;
    bool exhaustive = true;
    long nodes = 0;
};

namespace detail {

// DFS for a length-L sequence with rel(a_i, a_j) <=> i < j (diagonal included).
inline OrderWitness order_search(int n, int m, int length,
                                 const std::function<bool(const std::vector<int>&, const std::vector<int>&)>& rel,
                                 long node_limit) {
    OrderWitness w;
    std::vector<std::vector<int>> all;
    each_tuple(n, m, [&](const std::vector<int>& t) { all.push_back(t); });
    std::vector<int> pick;
    bool done = false;
    auto rec = [&](auto&& self) -> void {
        if (done) return;
        if (static_cast<int>(pick.size()) == length) {
            std::vector<std::vector<int>> seq;
            for (int i : pick) seq.push_back(all[i]);
            w.sequence = seq;
            done = true;
            return;
        }
        for (int c = 0; c < static_cast<int>(all.size()) && !done; ++c) {
            if (++w.nodes > node_limit) {
                w.exhaustive = false;
                done = true;
                return;
            }
            const auto& t = all[c];
            if (rel(t, t)) continue;
            bool ok = true;
            for (std::size_t i = 0; i < pick.size() && ok; ++i)
                ok = rel(all[pick[i]], t) && !rel(t, all[pick[i]]);
            if (!ok) continue;
            pick.push_back(c);
            self(self);
            pick.pop_back();
        }
    };
    rec(rec);
    return w;
}

}  // namespace detail

// phi's variables split into x (first half) and y (second half).
inline OrderWitness order_property_witness(const QFFormula& phi, const FinStructure& n, int length,
                                           long node_limit = 20'000'000) {
    if (phi.vars.size() % 2 != 0) throw std::invalid_argument("formula needs two variable blocks of equal length");
    int m = static_cast<int>(phi.vars.size()) / 2;
    auto rel = [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> t = a;
        t.insert(t.end(), b.begin(), b.end());
        return eval(phi, t, n);
    };
    return detail::order_search(n.size(), m, length, rel, node_limit);
}

// Some quantifier-free formula orders a sequence iff the types of the pairs
// (a_i, a_j) for i < j never occur for i >= j.
inline OrderWitness order_property_any(const FinStructure& n, int arity, int length, long node_limit = 20'000'000) {
    OrderWitness w;
    std::vector<std::vector<int>> all;
    each_tuple(n.size(), arity, [&](const std::vector<int>& t) { all.push_back(t); });
    auto pt = [&](int i, int j) {
        auto t = all[i];
        t.insert(t.end(), all[j].begin(), all[j].end());
        return qf_type(t, {}, n);
    };
    std::vector<int> pick;
    std::set<QFType> below, above;
    bool done = false;
    auto rec = [&](auto&& self) -> void {
        if (done) return;
        if (static_cast<int>(pick.size()) == length) {
            std::vector<std::vector<int>> seq;
            for (int i : pick) seq.push_back(all[i]);
            w.sequence = seq;
            done = true;
            return;
        }
        for (int c = 0; c < static_cast<int>(all.size()) && !done; ++c) {
            if (++w.nodes > node_limit) {
                w.exhaustive = false;
                done = true;
                return;
            }
            std::vector<QFType> lo, hi{pt(c, c)};
            for (int p : pick) {
                lo.push_back(pt(p, c));
                hi.push_back(pt(c, p));
            }
            bool ok = true;
            for (const auto& t : lo) ok = ok && !above.count(t) && std::find(hi.begin(), hi.end(), t) == hi.end();
            for (const auto& t : hi) ok = ok && !below.count(t);
            if (!ok) continue;
            auto b0 = below, a0 = above;
            below.insert(lo.begin(), lo.end());
            above.insert(hi.begin(), hi.end());
            pick.push_back(c);
            self(self);
            pick.pop_back();
            below = std::move(b0);
            above = std::move(a0);
        }
    };
    rec(rec);
    return w;
}

// Linear order on 2n+1 points with the originals at odd positions; returns
// the number of 1-types over the originals realised in the extension.
inline int cut_types_demo(int n) {
    if (n < 1) throw std::invalid_argument("cut demo needs n >= 1");
    auto ext = linear_order(2 * n + 1);
    std::vector<int> orig;
    for (int i = 0; i < n; ++i) orig.push_back(2 * i + 1);
    return count_types(orig, ext, 1);
}

// ---------------------------------------------------------------------------
// Bounded finite satisfiability.

namespace detail {

// Candidate sets (as bitmasks over M^k) of the literals true of a that
// mention at least one variable, with parameters from params.
inline std::vector<std::uint64_t> literal_masks(const std::vector<int>& a, const std::vector<int>& m,
                                                const std::vector<int>& params, const FinStructure& n) {
    int k = static_cast<int>(a.size());
    std::vector<std::vector<int>> cands;
    each_tuple(static_cast<int>(m.size()), k, [&](const std::vector<int>& t) {
        std::vector<int> c(k);
        for (int i = 0; i < k; ++i) c[i] = m[t[i]];
        cands.push_back(c);
    });
    if (cands.size() > 64) throw BoundExceeded("more than 64 candidate tuples in M");
    // Terms: variables 0..k-1, then parameters.
    int nt = k + static_cast<int>(params.size());
    auto val = [&](int term, const std::vector<int>& x) { return term < k ? x[term] : params[term - k]; };
    std::set<std::uint64_t> masks;
    std::uint64_t full = cands.size() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cands.size()) - 1);
    auto add = [&](const std::function<bool(const std::vector<int>&)>& atom) {
        bool truth = atom(a);
        std::uint64_t mk = 0;
        for (std::size_t c = 0; c < cands.size(); ++c)
            if (atom(cands[c]) == truth) mk |= std::uint64_t{1} << c;
        if (mk != full) masks.insert(mk);
    };
    for (int i = 0; i < k; ++i)
        for (int t = 0; t < nt; ++t)
            if (t != i) add([&, i, t](const std::vector<int>& x) { return x[i] == val(t, x); });
    for (const auto& [name, r] : n.relations()) {
        std::vector<int> idx(r.arity, 0), tup(r.arity);
        if (r.arity == 0) continue;
        while (true) {
            bool has_var = false;
            for (int v : idx) has_var = has_var || v < k;
            if (has_var) {
                auto atom = [&, idx, nm = name](const std::vector<int>& x) {
                    std::vector<int> tt(idx.size());
                    for (std::size_t j = 0; j < idx.size(); ++j) tt[j] = val(idx[j], x);
                    return n.holds(nm, tt);
                };
                add(atom);
            }
            int i = 0;
            while (i < r.arity && ++idx[i] == nt) idx[i++] = 0;
            if (i == r.arity) break;
        }
    }
    return {masks.begin(), masks.end()};
}

inline bool hits_empty(const std::vector<std::uint64_t>& masks, std::uint64_t cur, std::size_t from, int left,
                       std::vector<int>* chosen) {
    if (cur == 0) return true;
    if (left == 0) return false;
    for (std::size_t i = from; i < masks.size(); ++i) {
        std::uint64_t nxt = cur & masks[i];
        if (nxt == cur) continue;
        if (chosen) chosen->push_back(static_cast<int>(i));
        if (hits_empty(masks, nxt, i + 1, left - 1, chosen)) return true;
        if (chosen) chosen->pop_back();
    }
    return false;
}

}  // namespace detail

// a is s-independent from B over M: every conjunction of at most s literals
// over M ∪ B true of a is realised by some a' in M.
inline bool is_independent(const std::vector<int>& a, const std::vector<int>& m, const std::vector<int>& b,
                           const FinStructure& n, int s) {
    if (m.empty()) return a.empty();
    std::vector<int> params = m;
    params.insert(params.end(), b.begin(), b.end());
    std::sort(params.begin(), params.end());
    params.erase(std::unique(params.begin(), params.end()), params.end());
    auto masks = detail::literal_masks(a, m, params, n);
    std::size_t cands = 1;
    for (std::size_t i = 0; i < a.size(); ++i) cands *= m.size();
    std::uint64_t full = cands == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << cands) - 1);
    return !detail::hits_empty(masks, full, 0, s, nullptr);
}

// M is rich when it is s-elementary in N: every element of N is
// s-independent from the empty set over M.
inline bool is_rich(const std::vector<int>& m, const FinStructure& n, int s) {
    for (int c = 0; c < n.size(); ++c)
        if (!is_independent({c}, m, {}, n, s)) return false;
    return true;
}

inline std::vector<std::vector<int>> automorphism_group(const FinStructure& n) {
    std::vector<std::vector<int>> out;
    std::vector<int> p(n.size());
    std::iota(p.begin(), p.end(), 0);
    do {
        if (n.permuted(p) == n) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Greedy generating set: keep an automorphism when it is not yet generated.
inline std::vector<std::vector<int>> automorphism_generators(const FinStructure& n) {
    std::vector<std::vector<int>> gens;
    std::vector<int> id(n.size());
    std::iota(id.begin(), id.end(), 0);
    std::set<std::vector<int>> group{id};
    for (const auto& g : automorphism_group(n)) {
        if (group.count(g)) continue;
        gens.push_back(g);
        std::vector<std::vector<int>> frontier(group.begin(), group.end());
        while (!frontier.empty()) {
            std::vector<std::vector<int>> next;
            for (const auto& h : frontier)
                for (const auto& x : gens) {
                    std::vector<int> c(h.size());
                    for (std::size_t i = 0; i < h.size(); ++i) c[i] = x[h[i]];
                    if (group.insert(c).second) next.push_back(c);
                }
            frontier = std::move(next);
        }
    }
    return gens;
}

struct PropertyResult {
    long checked = 0;
    long violations = 0;      // over rich M
    long diagnostics = 0;     // violations over M below the richness threshold
    std::string witness;      // first rich violation
    std::string diagnostic;   // first non-rich violation
};

struct ForkingReport {
    int s = 0;
    int min_model = 0;
    int models = 0;
    int rich_models = 0;
    std::map<std::string, PropertyResult> properties;
    bool pass() const {
        for (const auto& [k, v] : properties)
            if (v.violations) return false;
        return true;
    }
};

namespace detail {

inline std::string set_str(const std::vector<int>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "}";
}

inline std::vector<std::vector<int>> subsets_of(const std::vector<int>& u) {
    std::vector<std::vector<int>> out;
    for (std::uint32_t mask = 0; mask < (1u << u.size()); ++mask) {
        std::vector<int> s;
        for (std::size_t i = 0; i < u.size(); ++i)
            if ((mask >> i) & 1u) s.push_back(u[i]);
        out.push_back(s);
    }
    return out;
}

inline std::vector<int> set_union(std::vector<int> a, const std::vector<int>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline std::vector<int> set_minus(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r;
    for (int x : a)
        if (std::find(b.begin(), b.end(), x) == b.end()) r.push_back(x);
    return r;
}

}  // namespace detail

// Exhaustive check over M ⊆ N with |M| >= min_model, B ⊆ N \ M, single
// elements a. Violations are split by whether M is rich.
inline ForkingReport check_forking_properties(const FinStructure& n, int s, int min_model = 4) {
    using detail::set_str;
    ForkingReport rep;
    rep.s = s;
    rep.min_model = min_model;
    std::vector<int> all(n.size());
    std::iota(all.begin(), all.end(), 0);
    auto gens = automorphism_generators(n);
    std::map<std::vector<int>, bool> rich_cache;
    auto rich = [&](const std::vector<int>& m) {
        auto it = rich_cache.find(m);
        if (it != rich_cache.end()) return it->second;
        return rich_cache[m] = is_rich(m, n, s);
    };
    auto record = [&](const std::string& prop, bool ok, const std::vector<int>& m, const std::string& what) {
        auto& r = rep.properties[prop];
        ++r.checked;
        if (ok) return;
        if (rich(m)) {
            if (!r.violations++) r.witness = what;
        } else if (!r.diagnostics++) {
            r.diagnostic = what;
        }
    };
    for (const char* p : {"invariance", "monotonicity", "normality", "symmetry", "transitivity", "uniqueness",
                          "split-consequence"})
        rep.properties[p];

    std::map<std::tuple<int, std::vector<int>, std::vector<int>>, bool> memo;
    auto ind = [&](int a, const std::vector<int>& m, std::vector<int> b) {
        std::sort(b.begin(), b.end());
        auto key = std::make_tuple(a, m, b);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        return memo[key] = is_independent({a}, m, b, n, s);
    };

    for (const auto& m : detail::subsets_of(all)) {
        if (static_cast<int>(m.size()) < min_model) continue;
        ++rep.models;
        if (rich(m)) ++rep.rich_models;
        auto rest = detail::set_minus(all, m);
        auto bs = detail::subsets_of(rest);
        for (int a = 0; a < n.size(); ++a)
            for (const auto& b : bs) {
                bool i = ind(a, m, b);
                std::string ctx = "a=" + std::to_string(a) + " M=" + set_str(m) + " B=" + set_str(b);
                for (const auto& g : gens) {
                    std::vector<int> gm, gb;
                    for (int x : m) gm.push_back(g[x]);
                    for (int x : b) gb.push_back(g[x]);
                    std::sort(gm.begin(), gm.end());
                    record("invariance", i == ind(g[a], gm, gb), m, ctx + " moved by an automorphism");
                }
                record("normality", i == ind(a, m, detail::set_union(b, m)), m, ctx + " with M added to B");
                if (i)
                    for (const auto& b2 : detail::subsets_of(b))
                        record("monotonicity", ind(a, m, b2), m, ctx + " but not over B'=" + set_str(b2));
            }
        // Symmetry on single elements outside M.
        for (int a : rest)
            for (int b : rest) {
                if (a == b) continue;
                record("symmetry", ind(a, m, {b}) == ind(b, m, {a}), m,
                       "a=" + std::to_string(a) + " b=" + std::to_string(b) + " M=" + set_str(m));
            }
        // Transitivity through M ⊆ M'.
        for (const auto& extra : detail::subsets_of(rest)) {
            if (extra.empty()) continue;
            auto m2 = detail::set_union(m, extra);
            auto rest2 = detail::set_minus(all, m2);
            for (int a = 0; a < n.size(); ++a) {
                if (!ind(a, m, extra)) continue;
                for (const auto& b : detail::subsets_of(rest2)) {
                    if (!ind(a, m2, b)) continue;
                    record("transitivity", ind(a, m, detail::set_union(b, extra)), m,
                           "a=" + std::to_string(a) + " M=" + set_str(m) + " M'=" + set_str(m2) + " B=" + set_str(b));
                }
            }
        }
        // Uniqueness and the split consequence.
        for (const auto& b : bs) {
            auto mb = detail::set_union(m, b);
            for (int a1 = 0; a1 < n.size(); ++a1)
                for (int a2 = a1 + 1; a2 < n.size(); ++a2) {
                    if (!(qf_type({a1}, m, n) == qf_type({a2}, m, n))) continue;
                    if (!ind(a1, m, b) || !ind(a2, m, b)) continue;
                    record("uniqueness", qf_type({a1}, mb, n) == qf_type({a2}, mb, n), m,
                           "a1=" + std::to_string(a1) + " a2=" + std::to_string(a2) + " M=" + set_str(m) +
                               " B=" + set_str(b));
                }
            for (int a = 0; a < n.size(); ++a) {
                if (!ind(a, m, b)) continue;
                for (int b1 : b)
                    for (int b2 : b) {
                        if (b1 >= b2 || !(qf_type({b1}, m, n) == qf_type({b2}, m, n))) continue;
                        record("split-consequence", qf_type({b1, a}, m, n) == qf_type({b2, a}, m, n), m,
                               "a=" + std::to_string(a) + " b1=" + std::to_string(b1) + " b2=" + std::to_string(b2) +
                                   " M=" + set_str(m));
                    }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Indiscernible extraction.

struct SequenceWitness {
    std::vector<int> indices;
};

namespace detail {

inline int pattern_arity(const QFFormula& f, int m) {
    int v = static_cast<int>(f.vars.size());
    if (m <= 0 || v % m != 0) throw std::invalid_argument("formula variables are not a multiple of the tuple arity");
    return v / m;
}

inline std::vector<char> pattern(const std::vector<QFFormula>& delta, const std::vector<int>& ar, int p,
                                 const std::vector<std::vector<int>>& seq, const std::vector<int>& idx,
                                 const FinStructure& n) {
    std::vector<char> out;
    std::vector<int> t;
    for (int i : idx) t.insert(t.end(), seq[i].begin(), seq[i].end());
    for (std::size_t d = 0; d < delta.size(); ++d)
        if (ar[d] == p) out.push_back(eval(delta[d], t, n) ? 1 : 0);
    return out;
}

}  // namespace detail

inline bool is_indiscernible(const std::vector<std::vector<int>>& seq, const std::vector<int>& sub,
                             const std::vector<QFFormula>& delta, const FinStructure& n) {
    int m = seq.empty() ? 1 : static_cast<int>(seq[0].size());
    std::vector<int> ar;
    int maxp = 0;
    for (const auto& f : delta) {
        ar.push_back(detail::pattern_arity(f, m));
        maxp = std::max(maxp, ar.back());
    }
    for (int p = 1; p <= maxp; ++p) {
        std::optional<std::vector<char>> ref;
        std::vector<int> comb(p);
        std::function<bool(int, int)> rec = [&](int pos, int from) {
            if (pos == p) {
                std::vector<int> idx;
                for (int c : comb) idx.push_back(sub[c]);
                auto pat = detail::pattern(delta, ar, p, seq, idx, n);
                if (!ref) ref = pat;
                return *ref == pat;
            }
            for (int c = from; c < static_cast<int>(sub.size()); ++c) {
                comb[pos] = c;
                if (!rec(pos + 1, c + 1)) return false;
            }
            return true;
        };
        if (!rec(0, 0)) return false;
    }
    return true;
}

struct IndiscernibleResult {
    std::optional<SequenceWitness> witness;
    bool exhaustive = true;
    std::string method;
};

// Pattern arity <= 2: split by the unary pattern, colour pairs by the binary
// pattern and take a largest monochromatic clique (exact). Higher arity:
// exhaustive search over index subsets of the target length.
inline IndiscernibleResult extract_indiscernibles(const std::vector<std::vector<int>>& seq,
                                                  const std::vector<QFFormula>& delta, const FinStructure& n, int k,
                                                  long subset_limit = 2'000'000) {
    IndiscernibleResult res;
    int len = static_cast<int>(seq.size());
    int m = seq.empty() ? 1 : static_cast<int>(seq[0].size());
    std::vector<int> ar;
    int maxp = 0;
    for (const auto& f : delta) {
        ar.push_back(detail::pattern_arity(f, m));
        maxp = std::max(maxp, ar.back());
    }
    if (k <= 1) {
        res.method = "trivial";
        if (len >= k) {
            SequenceWitness w;
            for (int i = 0; i < std::min(len, std::max(k, 1)); ++i) w.indices.push_back(i);
            if (len == 0) w.indices.clear();
            res.witness = w;
        }
        return res;
    }
    if (maxp <= 2) {
        res.method = "ramsey";
        if (len > 62) throw BoundExceeded("sequence longer than 62 for the clique search");
        std::map<std::vector<char>, std::vector<int>> classes;
        for (int i = 0; i < len; ++i) classes[detail::pattern(delta, ar, 1, seq, {i}, n)].push_back(i);
        std::vector<int> best;
        for (const auto& [pat, members] : classes) {
            if (members.size() <= best.size()) continue;
            std::map<std::vector<char>, std::vector<std::uint64_t>> adj;  // colour -> adjacency within members
            int c = static_cast<int>(members.size());
            for (int x = 0; x < c; ++x)
                for (int y = x + 1; y < c; ++y) {
                    auto col = detail::pattern(delta, ar, 2, seq, {members[x], members[y]}, n);
                    auto& a = adj[col];
                    if (a.empty()) a.assign(c, 0);
                    a[x] |= std::uint64_t{1} << y;
                    a[y] |= std::uint64_t{1} << x;
                }
            if (c == 1 && best.empty()) best = members;
            for (const auto& [col, a] : adj) {
                std::uint64_t bestmask = 0;
                int bestsize = 0;
                auto rec = [&](auto&& self, std::uint64_t r, std::uint64_t p, int size) -> void {
                    if (!p) {
                        if (size > bestsize) {
                            bestsize = size;
                            bestmask = r;
                        }
                        return;
                    }
                    if (size + __builtin_popcountll(p) <= bestsize) return;
                    int v = __builtin_ctzll(p);
                    self(self, r | (std::uint64_t{1} << v), p & a[v], size + 1);
                    self(self, r, p & ~(std::uint64_t{1} << v), size);
                };
                rec(rec, 0, c == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << c) - 1), 0);
                if (bestsize > static_cast<int>(best.size())) {
                    best.clear();
                    for (int x = 0; x < c; ++x)
                        if ((bestmask >> x) & 1u) best.push_back(members[x]);
                }
            }
        }
        if (static_cast<int>(best.size()) >= k) res.witness = SequenceWitness{best};
        return res;
    }
    res.method = "exhaustive";
    std::vector<int> comb(k);
    long tried = 0;
    std::function<bool(int, int)> rec = [&](int pos, int from) {
        if (pos == k) {
            if (++tried > subset_limit) {
                res.exhaustive = false;
                return true;
            }
            if (is_indiscernible(seq, comb, delta, n)) {
                res.witness = SequenceWitness{comb};
                return true;
            }
            return false;
        }
        for (int c = from; c < len; ++c) {
            comb[pos] = c;
            if (rec(pos + 1, c + 1)) return true;
        }
        return false;
    };
    rec(0, 0);
    return res;
}

// All atoms R(v..) and v = w over 2m variables named x1..xm, y1..ym.
inline std::vector<QFFormula> all_atoms(const FinStructure& n, int m) {
    std::vector<std::string> vars;
    for (int i = 1; i <= m; ++i) vars.push_back("x" + std::to_string(i));
    for (int i = 1; i <= m; ++i) vars.push_back("y" + std::to_string(i));
    int v = 2 * m;
    std::vector<QFFormula> out;
    for (int i = 0; i < v; ++i)
        for (int j = i + 1; j < v; ++j) out.push_back({Formula::eq(i, j), vars, vars[i] + "=" + vars[j]});
    for (const auto& [name, r] : n.relations()) {
        std::vector<int> idx(r.arity, 0);
        if (r.arity == 0) continue;
        while (true) {
            std::string text = name + "(";
            for (int i = 0; i < r.arity; ++i) text += (i ? "," : "") + vars[idx[i]];
            out.push_back({Formula::atom(name, idx), vars, text + ")"});
            int i = 0;
            while (i < r.arity && ++idx[i] == v) idx[i++] = 0;
            if (i == r.arity) break;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Universal classes by forbidden induced substructures.

enum class StructureSpace { graph, binary };

struct ClosureViolation : std::runtime_error {
    FinStructure whole, part;
    ClosureViolation(FinStructure w, FinStructure p, const std::string& what)
        : std::runtime_error(what), whole(std::move(w)), part(std::move(p)) {}
};

inline std::string canonical_key(const FinStructure& s) {
    std::vector<int> p(s.size());
    std::iota(p.begin(), p.end(), 0);
    std::string best;
    bool first = true;
    do {
        auto k = s.permuted(p).key();
        if (first || k < best) {
            best = k;
            first = false;
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

// One structure per isomorphism type on exactly n elements.
inline std::vector<FinStructure> structure_types(StructureSpace space, int n) {
    std::vector<FinStructure> out;
    if (space == StructureSpace::graph) {
        for (const auto& g : detail::graph_reps(n)) out.push_back(graph_structure(g));
        return out;
    }
    if (n * n > 20) throw BoundExceeded("binary relation space limited to 4 elements");
    std::set<std::string> seen;
    for (std::uint32_t mask = 0; mask < (1u << (n * n)); ++mask) {
        FinStructure s(n);
        s.declare("R", 2);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((mask >> (i * n + j)) & 1u) s.set("R", {i, j});
        if (seen.insert(canonical_key(s)).second) out.push_back(s);
    }
    return out;
}

using Membership = std::function<bool(const FinStructure&)>;

struct AxiomatizeReport {
    std::vector<FinStructure> forbidden;  // every non-member with at most k elements
    std::vector<FinStructure> minimal;    // non-members all of whose proper substructures are members
    bool agree = true;
    long checked = 0;
    std::optional<FinStructure> disagreement;
};

inline bool avoids(const FinStructure& s, const std::set<std::string>& forbidden_keys, int k) {
    int n = s.size();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        if (__builtin_popcount(mask) > k) continue;
        std::vector<int> el;
        for (int i = 0; i < n; ++i)
            if ((mask >> i) & 1u) el.push_back(i);
        if (forbidden_keys.count(canonical_key(s.induced(el)))) return false;
    }
    return true;
}

inline AxiomatizeReport universal_class_axiomatize(const Membership& member, StructureSpace space, int k, int cap) {
    AxiomatizeReport rep;
    // Closure under isomorphism and induced substructures, up to the cap.
    for (int n = 0; n <= cap; ++n)
        for (const auto& s : structure_types(space, n)) {
            bool in = member(s);
            std::vector<int> p(n);
            std::iota(p.begin(), p.end(), 0);
            do {
                auto t = s.permuted(p);
                if (member(t) != in) throw ClosureViolation(s, t, "membership is not isomorphism invariant");
            } while (std::next_permutation(p.begin(), p.end()));
            if (!in) continue;
            for (int drop = 0; drop < n; ++drop) {
                std::vector<int> el;
                for (int i = 0; i < n; ++i)
                    if (i != drop) el.push_back(i);
                auto sub = s.induced(el);
                if (!member(sub)) throw ClosureViolation(s, sub, "family is not closed under substructures");
            }
        }
    std::set<std::string> keys, minimal_keys;
    for (int n = 0; n <= k; ++n)
        for (const auto& s : structure_types(space, n)) {
            if (member(s)) continue;
            rep.forbidden.push_back(s);
            keys.insert(canonical_key(s));
            bool minimal = true;
            for (int drop = 0; drop < n && minimal; ++drop) {
                std::vector<int> el;
                for (int i = 0; i < n; ++i)
                    if (i != drop) el.push_back(i);
                minimal = member(s.induced(el));
            }
            if (minimal) {
                rep.minimal.push_back(s);
                minimal_keys.insert(canonical_key(s));
            }
        }
    for (int n = 0; n <= cap; ++n)
        for (const auto& s : structure_types(space, n)) {
            ++rep.checked;
            if (member(s) != avoids(s, minimal_keys, k)) {
                rep.agree = false;
                if (!rep.disagreement) rep.disagreement = s;
            }
        }
    return rep;
}

// Built-in families. Graph-space structures are reflexive and symmetric.
inline Membership family_oracle(const std::string& name) {
    auto rel = [](const FinStructure& s) -> std::string {
        if (s.has("E")) return "E";
        if (s.has("R")) return "R";
        return "";
    };
    if (name == "all") return [](const FinStructure&) { return true; };
    if (name == "triangle-free")
        return [rel](const FinStructure& s) {
            auto r = rel(s);
            if (r.empty()) return true;
            int n = s.size();
            for (int a = 0; a < n; ++a)
                for (int b = a + 1; b < n; ++b)
                    for (int c = b + 1; c < n; ++c)
                        if (s.holds(r, {a, b}) && s.holds(r, {b, c}) && s.holds(r, {a, c})) return false;
            return true;
        };
    if (name == "equivalence")
        return [rel](const FinStructure& s) {
            auto r = rel(s);
            if (r.empty()) return true;
            int n = s.size();
            for (int a = 0; a < n; ++a) {
                if (!s.holds(r, {a, a})) return false;
                for (int b = 0; b < n; ++b) {
                    if (s.holds(r, {a, b}) != s.holds(r, {b, a})) return false;
                    for (int c = 0; c < n; ++c)
                        if (s.holds(r, {a, b}) && s.holds(r, {b, c}) && !s.holds(r, {a, c})) return false;
                }
            }
            return true;
        };
    throw std::invalid_argument("unknown family " + name);
}

inline std::vector<std::string> family_names() { return {"all", "triangle-free", "equivalence"}; }

}  // namespace catmt

#endif
