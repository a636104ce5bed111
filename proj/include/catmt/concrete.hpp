#ifndef CATMT_CONCRETE_HPP
#define CATMT_CONCRETE_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "linalg.hpp"

namespace catmt {

struct FinSet {
    int n = 0;
    auto operator<=>(const FinSet&) const = default;
};

// Simple graph on {0..n-1}. Edges are stored irreflexively; every vertex is
// treated as adjacent to itself.
struct Graph {
    int n = 0;
    std::vector<std::uint32_t> adj;

    Graph() = default;
    explicit Graph(int n_) : n(n_), adj(static_cast<std::size_t>(n_), 0u) {}
    static Graph make(int n, const std::vector<std::pair<int, int>>& es) {
        Graph g(n);
        for (auto [u, v] : es) g.add_edge(u, v);
        return g;
    }
    void add_edge(int u, int v) {
        if (u < 0 || v < 0 || u >= n || v >= n) throw std::out_of_range("edge endpoint outside graph");
        if (u == v) return;
        adj[u] |= 1u << v;
        adj[v] |= 1u << u;
    }
    bool edge(int u, int v) const { return u != v && ((adj[u] >> v) & 1u); }
    bool adjacent_or_equal(int u, int v) const { return u == v || edge(u, v); }
    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> es;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (edge(u, v)) es.emplace_back(u, v);
        return es;
    }
    auto operator<=>(const Graph&) const = default;
};

struct VecSpace {
    int dim = 0;
    auto operator<=>(const VecSpace&) const = default;
};

template <class Obj>
struct Pushout {
    Obj apex;
    Arrow<Obj> left, right;
};

namespace detail {

template <class F>
bool each_injection(int m, int n, F&& fn) {
    if (m > n) return true;
    std::vector<int> cur(m, -1);
    std::vector<char> used(n, 0);
    bool go = true;
    auto rec = [&](auto&& self, int i) -> void {
        if (!go) return;
        if (i == m) {
            go = fn(cur);
            return;
        }
        for (int t = 0; t < n && go; ++t) {
            if (used[t]) continue;
            used[t] = 1;
            cur[i] = t;
            self(self, i + 1);
            used[t] = 0;
        }
    };
    rec(rec, 0);
    return go;
}

template <class F>
bool each_function(int m, int n, F&& fn) {
    if (m > 0 && n == 0) return true;
    std::vector<int> cur(m, 0);
    while (true) {
        if (!fn(cur)) return false;
        int i = 0;
        while (i < m && ++cur[i] == n) cur[i++] = 0;
        if (i == m) return true;
    }
}

// Restricted growth strings: every set partition of {0..n-1} once.
template <class F>
bool each_partition(int n, F&& fn) {
    std::vector<int> a(n, 0);
    bool go = true;
    auto rec = [&](auto&& self, int i, int blocks) -> void {
        if (!go) return;
        if (i == n) {
            go = fn(a, blocks);
            return;
        }
        for (int b = 0; b <= blocks && go; ++b) {
            a[i] = b;
            self(self, i + 1, std::max(blocks, b + 1));
        }
    };
    rec(rec, 0, 0);
    return go;
}

inline std::vector<int> perm_inverse(const std::vector<int>& p) {
    std::vector<int> q(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
    return q;
}

// Union-find gluing of B and C along A; labels are in order of first appearance.
inline std::pair<std::vector<int>, int> glue(int nb, int nc, const std::vector<int>& f, const std::vector<int>& g) {
    std::vector<int> par(nb + nc);
    std::iota(par.begin(), par.end(), 0);
    auto find = [&](int x) {
        while (par[x] != x) x = par[x] = par[par[x]];
        return x;
    };
    for (std::size_t a = 0; a < f.size(); ++a) {
        int x = find(f[a]), y = find(nb + g[a]);
        if (x != y) par[std::max(x, y)] = std::min(x, y);
    }
    std::vector<int> label(nb + nc, -1), root_label(nb + nc, -1);
    int next = 0;
    for (int x = 0; x < nb + nc; ++x) {
        int r = find(x);
        if (root_label[r] < 0) root_label[r] = next++;
        label[x] = root_label[r];
    }
    return {label, next};
}

// Mediator from a set-like pushout: every apex point comes from B or C.
template <class Obj>
Arrow<Obj> set_like_mediator(const Pushout<Obj>& po, const Arrow<Obj>& h, const Arrow<Obj>& k, int apex_size) {
    if (!(h.dom == po.left.dom) || !(k.dom == po.right.dom) || !(h.cod == k.cod))
        throw NonCommuting("mediator: cocone does not match the pushout");
    std::vector<int> m(apex_size, -1);
    auto put = [&](int z, int v) {
        if (m[z] >= 0 && m[z] != v) throw NonCommuting("mediator: cocone does not commute over the span");
        m[z] = v;
    };
    for (std::size_t b = 0; b < po.left.map.size(); ++b) put(po.left.map[b], h.map[b]);
    for (std::size_t c = 0; c < po.right.map.size(); ++c) put(po.right.map[c], k.map[c]);
    return {po.apex, h.cod, m};
}

}  // namespace detail

template <class Cat>
std::vector<typename Cat::Mor> automorphisms(const Cat& cat, const typename Cat::Obj& o) {
    std::vector<typename Cat::Mor> out;
    for (auto& f : cat.homs(o, o))
        if (injective(f.map)) out.push_back(std::move(f));
    return out;
}

// ---------------------------------------------------------------------------

class SetCat {
public:
    using Obj = FinSet;
    using Mor = Arrow<FinSet>;

    explicit SetCat(bool injective_only = true, int carrier_bound = 6)
        : inj_(injective_only), bound_(carrier_bound) {}

    std::string name() const { return inj_ ? "set-mono" : "set"; }
    bool injective_only() const { return inj_; }
    int carrier_bound() const { return bound_; }
    int size(const Obj& o) const { return o.n; }
    int grow(int s) const { return s + 1; }

    std::vector<Obj> objects(int bound) const {
        std::vector<Obj> v;
        for (int n = 0; n <= bound; ++n) v.push_back({n});
        return v;
    }

    std::vector<Mor> homs(const Obj& a, const Obj& b) const {
        if (a.n > bound_ || b.n > bound_)
            throw BoundExceeded("set carrier above bound " + std::to_string(bound_));
        std::vector<Mor> out;
        auto push = [&](const std::vector<int>& m) {
            out.push_back({a, b, m});
            return true;
        };
        if (inj_) detail::each_injection(a.n, b.n, push);
        else detail::each_function(a.n, b.n, push);
        return out;
    }

    bool in_class(const Mor& f) const { return !inj_ || injective(f.map); }
    Mor id(const Obj& a) const {
        Mor f{a, a, std::vector<int>(a.n)};
        std::iota(f.map.begin(), f.map.end(), 0);
        return f;
    }
    Mor compose(const Mor& g, const Mor& f) const { return catmt::compose(g, f); }
    Obj dom(const Mor& f) const { return f.dom; }
    Obj cod(const Mor& f) const { return f.cod; }

    Pushout<Obj> pushout(const Mor& f, const Mor& g) const {
        if (!(f.dom == g.dom)) throw EndpointMismatch("pushout: span legs have different domains");
        auto [label, n] = detail::glue(f.cod.n, g.cod.n, f.map, g.map);
        Pushout<Obj> po;
        po.apex = {n};
        po.left = {f.cod, po.apex, std::vector<int>(label.begin(), label.begin() + f.cod.n)};
        po.right = {g.cod, po.apex, std::vector<int>(label.begin() + f.cod.n, label.end())};
        return po;
    }

    Mor mediator(const Pushout<Obj>& po, const Mor& h, const Mor& k) const {
        return detail::set_like_mediator(po, h, k, po.apex.n);
    }

    std::pair<Obj, Mor> canonical(const Obj& o) const { return {o, id(o)}; }

    Mor subobject(const Obj& b, const std::vector<int>& gens) const {
        auto s = image(gens);
        return {Obj{static_cast<int>(s.size())}, b, s};
    }

    // Visits every quotient e: P -> D (one per kernel) keeping e∘left and
    // e∘right in the class.
    template <class F>
    void for_each_generated(const Pushout<Obj>& po, F&& visit) const {
        int n = po.apex.n;
        std::vector<int> tag(n, 0);
        for (int x : po.left.map) tag[x] |= 1;
        for (int x : po.right.map) tag[x] |= 2;
        detail::each_partition(n, [&](const std::vector<int>& a, int blocks) {
            if (inj_) {
                std::vector<int> seen(blocks, 0);
                for (int x = 0; x < n; ++x) {
                    if (seen[a[x]] & tag[x]) return true;
                    seen[a[x]] |= tag[x];
                }
            }
            return visit(Mor{po.apex, Obj{blocks}, a});
        });
    }

private:
    bool inj_;
    int bound_;
};

// ---------------------------------------------------------------------------

enum class GraphKind { homomorphism, subgraph_embedding, full_embedding };

inline std::string to_string(GraphKind k) {
    switch (k) {
        case GraphKind::homomorphism: return "homomorphism";
        case GraphKind::subgraph_embedding: return "subgraph-embedding";
        case GraphKind::full_embedding: return "full-embedding";
    }
    return "?";
}

inline bool is_morphism(const Arrow<Graph>& f, GraphKind kind) {
    const auto& a = f.dom;
    const auto& b = f.cod;
    if (static_cast<int>(f.map.size()) != a.n) return false;
    for (int x : f.map)
        if (x < 0 || x >= b.n) return false;
    if (kind != GraphKind::homomorphism && !injective(f.map)) return false;
    for (int u = 0; u < a.n; ++u)
        for (int v = u + 1; v < a.n; ++v) {
            bool e = a.edge(u, v);
            bool fe = b.adjacent_or_equal(f.map[u], f.map[v]);
            if (e && !fe) return false;
            if (kind == GraphKind::full_embedding && !e && fe) return false;
        }
    return true;
}

namespace detail {

inline std::uint64_t graph_code(const Graph& g, const std::vector<int>& perm) {
    // Bit string of the relabelled upper triangle.
    std::uint64_t code = 0;
    int bit = 0;
    std::vector<int> inv = perm_inverse(perm);
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v, ++bit)
            if (g.edge(inv[u], inv[v])) code |= std::uint64_t{1} << bit;
    return code;
}

inline Graph from_code(int n, std::uint64_t code) {
    Graph g(n);
    int bit = 0;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v, ++bit)
            if ((code >> bit) & 1u) g.add_edge(u, v);
    return g;
}

// Canonical relabelling by brute force over vertex permutations; the
// returned perm sends vertex v of g to perm[v] of the canonical graph.
inline std::pair<Graph, std::vector<int>> canonical_graph(const Graph& g) {
    if (g.n > 8) throw BoundExceeded("graph canonical form limited to 8 vertices");
    std::vector<int> perm(g.n);
    std::iota(perm.begin(), perm.end(), 0);
    std::uint64_t best = 0;
    std::vector<int> best_perm = perm;
    bool first = true;
    do {
        auto c = graph_code(g, perm);
        if (first || c > best) {
            best = c;
            best_perm = perm;
            first = false;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {from_code(g.n, best), best_perm};
}

inline const std::vector<Graph>& graph_reps(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Graph>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Orderly augmentation: add one vertex to every smaller representative.
    std::vector<Graph> prev{Graph(0)};
    for (int m = 1; m <= n; ++m) {
        std::vector<int> idp(m);
        std::iota(idp.begin(), idp.end(), 0);
        std::set<std::uint64_t> seen;
        std::vector<Graph> cur;
        for (const auto& h : prev)
            for (std::uint32_t mask = 0; mask < (1u << (m - 1)); ++mask) {
                Graph g(m);
                for (int u = 0; u < m - 1; ++u) g.adj[u] = h.adj[u];
                for (int u = 0; u < m - 1; ++u)
                    if ((mask >> u) & 1u) g.add_edge(u, m - 1);
                auto c = canonical_graph(g).first;
                if (seen.insert(graph_code(c, idp)).second) cur.push_back(c);
            }
        std::sort(cur.begin(), cur.end(), [](const Graph& x, const Graph& y) {
            auto ex = x.edges().size(), ey = y.edges().size();
            if (ex != ey) return ex < ey;
            return x.adj < y.adj;
        });
        prev = std::move(cur);
    }
    std::vector<Graph> reps = std::move(prev);
    return cache.emplace(n, std::move(reps)).first->second;
}

}  // namespace detail

class GraphCat {
public:
    using Obj = Graph;
    using Mor = Arrow<Graph>;

    explicit GraphCat(GraphKind kind = GraphKind::full_embedding, int carrier_bound = 6)
        : kind_(kind), bound_(carrier_bound) {}

    GraphKind kind() const { return kind_; }
    std::string name() const {
        switch (kind_) {
            case GraphKind::homomorphism: return "graph-hom";
            case GraphKind::subgraph_embedding: return "graph-sub";
            case GraphKind::full_embedding: return "graph-full";
        }
        return "graph";
    }
    int carrier_bound() const { return bound_; }
    int size(const Obj& o) const { return o.n; }
    int grow(int s) const { return s + 1; }

    std::vector<Obj> objects(int bound) const {
        std::vector<Obj> v;
        for (int n = 0; n <= bound; ++n) {
            const auto& r = detail::graph_reps(n);
            v.insert(v.end(), r.begin(), r.end());
        }
        return v;
    }

    std::vector<Mor> homs(const Obj& a, const Obj& b) const {
        if (a.n > bound_ || b.n > bound_)
            throw BoundExceeded("graph carrier above bound " + std::to_string(bound_));
        std::vector<Mor> out;
        std::vector<int> cur(a.n, -1);
        std::uint32_t used = 0;
        bool inj = kind_ != GraphKind::homomorphism;
        auto rec = [&](auto&& self, int v) -> void {
            if (v == a.n) {
                out.push_back({a, b, cur});
                return;
            }
            for (int t = 0; t < b.n; ++t) {
                if (inj && ((used >> t) & 1u)) continue;
                bool ok = true;
                for (int u = 0; u < v && ok; ++u) {
                    bool e = a.edge(u, v);
                    bool fe = b.adjacent_or_equal(cur[u], t);
                    if (e && !fe) ok = false;
                    if (kind_ == GraphKind::full_embedding && !e && fe) ok = false;
                }
                if (!ok) continue;
                cur[v] = t;
                used |= 1u << t;
                self(self, v + 1);
                used &= ~(1u << t);
            }
            cur[v] = -1;
        };
        rec(rec, 0);
        return out;
    }

    bool in_class(const Mor& f) const { return is_morphism(f, kind_); }
    Mor id(const Obj& a) const {
        Mor f{a, a, std::vector<int>(a.n)};
        std::iota(f.map.begin(), f.map.end(), 0);
        return f;
    }
    Mor compose(const Mor& g, const Mor& f) const { return catmt::compose(g, f); }
    Obj dom(const Mor& f) const { return f.dom; }
    Obj cod(const Mor& f) const { return f.cod; }

    // Vertex pushout; edges are the images of the edges of both ears.
    Pushout<Obj> pushout(const Mor& f, const Mor& g) const {
        if (!(f.dom == g.dom)) throw EndpointMismatch("pushout: span legs have different domains");
        const auto& b = f.cod;
        const auto& c = g.cod;
        auto [label, n] = detail::glue(b.n, c.n, f.map, g.map);
        Pushout<Obj> po;
        po.apex = Graph(n);
        for (auto [u, v] : b.edges()) po.apex.add_edge(label[u], label[v]);
        for (auto [u, v] : c.edges()) po.apex.add_edge(label[b.n + u], label[b.n + v]);
        po.left = {b, po.apex, std::vector<int>(label.begin(), label.begin() + b.n)};
        po.right = {c, po.apex, std::vector<int>(label.begin() + b.n, label.end())};
        return po;
    }

    Mor mediator(const Pushout<Obj>& po, const Mor& h, const Mor& k) const {
        return detail::set_like_mediator(po, h, k, po.apex.n);
    }

    std::pair<Obj, Mor> canonical(const Obj& o) const {
        auto [c, perm] = detail::canonical_graph(o);
        return {c, Mor{o, c, perm}};
    }

    Mor subobject(const Obj& g, const std::vector<int>& gens) const {
        auto s = image(gens);
        Graph sub(static_cast<int>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i)
            for (std::size_t j = i + 1; j < s.size(); ++j)
                if (g.edge(s[i], s[j])) sub.add_edge(static_cast<int>(i), static_cast<int>(j));
        return {sub, g, s};
    }

    // Quotients of the pushout apex by vertex partitions, then any set of
    // extra edges that keeps both legs in the class.
    template <class F>
    void for_each_generated(const Pushout<Obj>& po, F&& visit) const {
        const Graph& p = po.apex;
        int n = p.n;
        std::vector<int> tag(n, 0);
        for (int x : po.left.map) tag[x] |= 1;
        for (int x : po.right.map) tag[x] |= 2;
        bool inj = kind_ != GraphKind::homomorphism;
        detail::each_partition(n, [&](const std::vector<int>& a, int blocks) {
            std::vector<int> btag(blocks, 0);
            for (int x = 0; x < n; ++x) {
                if (inj && (btag[a[x]] & tag[x])) return true;
                btag[a[x]] |= tag[x];
            }
            Graph q(blocks);
            for (auto [u, v] : p.edges()) q.add_edge(a[u], a[v]);
            std::vector<std::pair<int, int>> extra;
            for (int u = 0; u < blocks; ++u)
                for (int v = u + 1; v < blocks; ++v) {
                    if (q.edge(u, v)) continue;
                    if (kind_ == GraphKind::full_embedding &&
                        (((btag[u] & 1) && (btag[v] & 1)) || ((btag[u] & 2) && (btag[v] & 2))))
                        continue;
                    extra.push_back({u, v});
                }
            if (extra.size() > 40) throw BoundExceeded("too many candidate cross-edges");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << extra.size()); ++mask) {
                Graph d = q;
                for (std::size_t i = 0; i < extra.size(); ++i)
                    if ((mask >> i) & 1u) d.add_edge(extra[i].first, extra[i].second);
                Mor e{p, d, a};
                if (!in_class(catmt::compose(e, po.left)) || !in_class(catmt::compose(e, po.right))) continue;
                if (!visit(e)) return false;
            }
            return true;
        });
    }

private:
    GraphKind kind_;
    int bound_;
};

// ---------------------------------------------------------------------------

class VecCat {
public:
    using Obj = VecSpace;
    using Mor = Arrow<VecSpace>;

    explicit VecCat(int p = 2, bool injective_only = true, int carrier_bound = 6)
        : p_(p), inj_(injective_only), bound_(carrier_bound) {
        if (!linalg::is_prime(p)) throw std::invalid_argument("field size must be prime");
    }

    int prime() const { return p_; }
    std::string name() const { return "vec-f" + std::to_string(p_) + (inj_ ? "" : "-all"); }
    int carrier_bound() const { return bound_; }
    int size(const Obj& o) const { return linalg::ipow(p_, o.dim); }
    int grow(int s) const { return s * p_; }

    std::vector<Obj> objects(int bound) const {
        std::vector<Obj> v;
        for (int d = 0; linalg::ipow(p_, d) <= bound; ++d) v.push_back({d});
        return v;
    }

    linalg::Mat matrix(const Mor& f) const {
        linalg::Mat m(f.cod.dim, f.dom.dim);
        for (int j = 0; j < f.dom.dim; ++j) {
            auto col = linalg::decode(f.map[linalg::ipow(p_, j)], f.cod.dim, p_);
            for (int i = 0; i < f.cod.dim; ++i) m.at(i, j) = col[i];
        }
        return m;
    }

    Mor from_matrix(const Obj& a, const Obj& b, const linalg::Mat& m) const {
        if (m.rows != b.dim || m.cols != a.dim) throw std::invalid_argument("matrix shape does not match dimensions");
        Mor f{a, b, std::vector<int>(size(a))};
        for (int x = 0; x < size(a); ++x)
            f.map[x] = linalg::encode(linalg::apply(m, linalg::decode(x, a.dim, p_), p_), p_);
        return f;
    }

    std::vector<Mor> homs(const Obj& a, const Obj& b) const {
        if (size(a) > bound_ || size(b) > bound_)
            throw BoundExceeded("vector space carrier above bound " + std::to_string(bound_));
        std::vector<Mor> out;
        int cells = a.dim * b.dim;
        linalg::Mat m(b.dim, a.dim);
        detail::each_function(cells, p_, [&](const std::vector<int>& v) {
            m.a = v;
            if (!inj_ || linalg::rank(m, p_) == a.dim) out.push_back(from_matrix(a, b, m));
            return true;
        });
        return out;
    }

    bool in_class(const Mor& f) const { return !inj_ || injective(f.map); }
    Mor id(const Obj& a) const {
        Mor f{a, a, std::vector<int>(size(a))};
        std::iota(f.map.begin(), f.map.end(), 0);
        return f;
    }
    Mor compose(const Mor& g, const Mor& f) const { return catmt::compose(g, f); }
    Obj dom(const Mor& f) const { return f.dom; }
    Obj cod(const Mor& f) const { return f.cod; }

    // (B ⊕ C) / {(f a, -g a)}; the quotient map is a basis of the annihilator.
    Pushout<Obj> pushout(const Mor& f, const Mor& g) const {
        if (!(f.dom == g.dom)) throw EndpointMismatch("pushout: span legs have different domains");
        int da = f.dom.dim, db = f.cod.dim, dc = g.cod.dim;
        auto fm = matrix(f), gm = matrix(g);
        linalg::Mat rt(da, db + dc);  // rows: (f e_j, -g e_j)
        for (int j = 0; j < da; ++j) {
            for (int i = 0; i < db; ++i) rt.at(j, i) = fm.at(i, j);
            for (int i = 0; i < dc; ++i) rt.at(j, db + i) = linalg::mod(-gm.at(i, j), p_);
        }
        auto q = linalg::nullspace(rt, p_);
        Pushout<Obj> po;
        po.apex = {q.rows};
        linalg::Mat l(q.rows, db), r(q.rows, dc);
        for (int i = 0; i < q.rows; ++i) {
            for (int j = 0; j < db; ++j) l.at(i, j) = q.at(i, j);
            for (int j = 0; j < dc; ++j) r.at(i, j) = q.at(i, db + j);
        }
        po.left = from_matrix(f.cod, po.apex, l);
        po.right = from_matrix(g.cod, po.apex, r);
        return po;
    }

    Mor mediator(const Pushout<Obj>& po, const Mor& h, const Mor& k) const {
        if (!(h.dom == po.left.dom) || !(k.dom == po.right.dom) || !(h.cod == k.cod))
            throw NonCommuting("mediator: cocone does not match the pushout");
        int np = size(po.apex);
        std::vector<int> m(np, -1);
        int dp = po.apex.dim, dd = h.cod.dim;
        for (int b = 0; b < size(h.dom); ++b)
            for (int c = 0; c < size(k.dom); ++c) {
                int z = linalg::add(po.left.map[b], po.right.map[c], dp, p_);
                int v = linalg::add(h.map[b], k.map[c], dd, p_);
                if (m[z] >= 0 && m[z] != v) throw NonCommuting("mediator: cocone does not commute over the span");
                m[z] = v;
            }
        return {po.apex, h.cod, m};
    }

    std::pair<Obj, Mor> canonical(const Obj& o) const { return {o, id(o)}; }

    Mor subobject(const Obj& v, const std::vector<int>& gens) const {
        linalg::Mat g(static_cast<int>(gens.size()), v.dim);
        for (std::size_t i = 0; i < gens.size(); ++i) {
            auto c = linalg::decode(gens[i], v.dim, p_);
            for (int j = 0; j < v.dim; ++j) g.at(static_cast<int>(i), j) = c[j];
        }
        auto basis = linalg::row_space(g, p_);
        return from_matrix(Obj{basis.rows}, v, linalg::transpose(basis));
    }

    // Quotients by subspaces K meeting both leg images trivially.
    template <class F>
    void for_each_generated(const Pushout<Obj>& po, F&& visit) const {
        int n = po.apex.dim;
        int np = size(po.apex);
        std::vector<char> in_img(np, 0);
        if (inj_) {
            for (int x : po.left.map) in_img[x] |= 1;
            for (int x : po.right.map) in_img[x] |= 2;
        }
        std::set<std::vector<int>> seen;
        std::vector<linalg::Mat> frontier{linalg::Mat(0, n)};
        seen.insert({});
        while (!frontier.empty()) {
            std::vector<linalg::Mat> next;
            for (const auto& kb : frontier) {
                linalg::Mat q = kb.rows == 0 ? [&] {
                    linalg::Mat idm(n, n);
                    for (int i = 0; i < n; ++i) idm.at(i, i) = 1;
                    return idm;
                }()
                                             : linalg::nullspace(kb, p_);
                Mor e = from_matrix(po.apex, Obj{q.rows}, q);
                if (in_class(catmt::compose(e, po.left)) && in_class(catmt::compose(e, po.right)))
                    if (!visit(e)) return;
                for (int x = 1; x < np; ++x) {
                    linalg::Mat ext(kb.rows + 1, n);
                    for (int i = 0; i < kb.rows; ++i)
                        for (int j = 0; j < n; ++j) ext.at(i, j) = kb.at(i, j);
                    auto c = linalg::decode(x, n, p_);
                    for (int j = 0; j < n; ++j) ext.at(kb.rows, j) = c[j];
                    auto rs = linalg::row_space(ext, p_);
                    if (rs.rows != kb.rows + 1) continue;
                    // Prune kernels that already hit a leg image.
                    if (inj_ && kernel_hits(rs, in_img)) continue;
                    if (seen.insert(rs.a).second) next.push_back(rs);
                }
            }
            frontier = std::move(next);
        }
    }

private:
    bool kernel_hits(const linalg::Mat& basis, const std::vector<char>& in_img) const {
        int k = basis.rows, n = basis.cols;
        bool hit = false;
        detail::each_function(k, p_, [&](const std::vector<int>& c) {
            bool zero = std::all_of(c.begin(), c.end(), [](int v) { return v == 0; });
            if (zero) return true;
            std::vector<int> v(n, 0);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n; ++j) v[j] = (v[j] + c[i] * basis.at(i, j)) % p_;
            if (in_img[linalg::encode(v, p_)]) {
                hit = true;
                return false;
            }
            return true;
        });
        return hit;
    }

    int p_;
    bool inj_;
    int bound_;
};

// Memoises homs and automorphisms of an underlying category.
template <class Cat>
class Cached {
public:
    using Obj = typename Cat::Obj;
    using Mor = typename Cat::Mor;

    explicit Cached(Cat c) : cat_(std::move(c)) {}
    const Cat& base() const { return cat_; }

    std::string name() const { return cat_.name(); }
    int size(const Obj& o) const { return cat_.size(o); }
    int grow(int s) const { return cat_.grow(s); }
    std::vector<Obj> objects(int bound) const { return cat_.objects(bound); }
    const std::vector<Mor>& homs(const Obj& a, const Obj& b) const {
        std::lock_guard<std::mutex> lock(*mu_);
        auto key = std::make_pair(a, b);
        auto it = homs_->find(key);
        if (it != homs_->end()) return it->second;
        return homs_->emplace(key, cat_.homs(a, b)).first->second;
    }
    const std::vector<Mor>& automorphisms(const Obj& a) const {
        {
            std::lock_guard<std::mutex> lock(*mu_);
            auto it = auts_->find(a);
            if (it != auts_->end()) return it->second;
        }
        std::vector<Mor> v;
        for (const auto& f : homs(a, a))
            if (injective(f.map)) v.push_back(f);
        std::lock_guard<std::mutex> lock(*mu_);
        return auts_->emplace(a, std::move(v)).first->second;
    }
    bool in_class(const Mor& f) const { return cat_.in_class(f); }
    Mor id(const Obj& a) const { return cat_.id(a); }
    Mor compose(const Mor& g, const Mor& f) const { return cat_.compose(g, f); }
    Obj dom(const Mor& f) const { return f.dom; }
    Obj cod(const Mor& f) const { return f.cod; }
    Pushout<Obj> pushout(const Mor& f, const Mor& g) const { return cat_.pushout(f, g); }
    Mor mediator(const Pushout<Obj>& po, const Mor& h, const Mor& k) const { return cat_.mediator(po, h, k); }
    std::pair<Obj, Mor> canonical(const Obj& o) const { return cat_.canonical(o); }
    Mor subobject(const Obj& o, const std::vector<int>& g) const { return cat_.subobject(o, g); }
    template <class F>
    void for_each_generated(const Pushout<Obj>& po, F&& visit) const {
        cat_.for_each_generated(po, std::forward<F>(visit));
    }

private:
    Cat cat_;
    std::shared_ptr<std::mutex> mu_ = std::make_shared<std::mutex>();
    std::shared_ptr<std::map<std::pair<Obj, Obj>, std::vector<Mor>>> homs_ =
        std::make_shared<std::map<std::pair<Obj, Obj>, std::vector<Mor>>>();
    std::shared_ptr<std::map<Obj, std::vector<Mor>>> auts_ = std::make_shared<std::map<Obj, std::vector<Mor>>>();
};

}  // namespace catmt

#endif
