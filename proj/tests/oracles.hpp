// Brute-force reference implementations used to cross-check the library.
#ifndef CATMT_TESTS_ORACLES_HPP
#define CATMT_TESTS_ORACLES_HPP

#include <algorithm>
#include <functional>
#include <set>
#include <vector>

#include <catmt/catmt.hpp>

namespace oracle {

// Every function {0..a-1} -> {0..b-1}.
inline std::vector<std::vector<int>> functions(int a, int b) {
    std::vector<std::vector<int>> out;
    std::vector<int> f(a, 0);
    if (a == 0) return {{}};
    if (b == 0) return {};
    while (true) {
        out.push_back(f);
        int i = 0;
        while (i < a && ++f[i] == b) f[i++] = 0;
        if (i == a) break;
    }
    return out;
}

inline std::vector<std::vector<int>> injections(int a, int b) {
    std::vector<std::vector<int>> out;
    for (auto& f : functions(a, b))
        if (catmt::injective(f)) out.push_back(f);
    return out;
}

// Images of B and C in D meet exactly in the image of A.
inline bool meet_in_base(const std::vector<int>& f, const std::vector<int>& g, const std::vector<int>& h,
                         const std::vector<int>& k) {
    std::set<int> ib(h.begin(), h.end()), ic(k.begin(), k.end()), ia;
    for (int x : f) ia.insert(h[x]);
    for (int x : g) ia.insert(k[x]);
    std::set<int> meet;
    for (int x : ib)
        if (ic.count(x)) meet.insert(x);
    return meet == ia;
}

inline bool graph_edge_preserved(const catmt::Graph& a, const catmt::Graph& b, const std::vector<int>& m) {
    for (auto [u, v] : a.edges())
        if (m[u] != m[v] && !b.edge(m[u], m[v])) return false;
    return true;
}

// Row space of a set of vectors over F_p, as encoded integers.
inline std::set<int> span(const std::vector<std::vector<int>>& vs, int dim, int p) {
    std::set<int> out{0};
    bool grew = true;
    while (grew) {
        grew = false;
        std::set<int> next = out;
        for (int x : out)
            for (const auto& v : vs)
                for (int c = 1; c < p; ++c) {
                    auto xv = catmt::linalg::decode(x, dim, p);
                    for (int i = 0; i < dim; ++i) xv[i] = (xv[i] + c * v[i]) % p;
                    if (next.insert(catmt::linalg::encode(xv, p)).second) grew = true;
                }
        out = std::move(next);
    }
    return out;
}

// {i | A ∩ B_i = A_i} for a filtration pair, with A the union of the A_i.
inline std::vector<int> club(const std::vector<std::vector<int>>& a, const std::vector<std::vector<int>>& b) {
    std::set<int> all;
    for (const auto& s : a) all.insert(s.begin(), s.end());
    std::vector<int> out;
    for (std::size_t i = 0; i < a.size(); ++i) {
        std::set<int> lhs, rhs(a[i].begin(), a[i].end());
        for (int x : b[i])
            if (all.count(x)) lhs.insert(x);
        if (lhs == rhs) out.push_back(static_cast<int>(i));
    }
    return out;
}

// Maximal elements of a finite order given by a relation matrix.
inline std::set<int> maximal(const std::vector<std::vector<char>>& le) {
    std::set<int> out;
    int n = static_cast<int>(le.size());
    for (int p = 0; p < n; ++p) {
        bool top = true;
        for (int q = 0; q < n; ++q)
            if (q != p && le[p][q]) top = false;
        if (top) out.insert(p);
    }
    return out;
}

// All partial orders on n labelled points, as relation matrices. Pairs are
// decided in lexicographic order; a triple a<b<c is checked once (b,c) is set.
inline std::vector<std::vector<std::vector<char>>> partial_orders(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    std::vector<std::vector<std::vector<char>>> out;
    std::vector<std::vector<char>> le(n, std::vector<char>(n, 0));
    for (int i = 0; i < n; ++i) le[i][i] = 1;
    auto ok = [&](int a, int b, int c) {
        int t[3] = {a, b, c};
        std::sort(t, t + 3);
        do {
            if (le[t[0]][t[1]] && le[t[1]][t[2]] && !le[t[0]][t[2]]) return false;
        } while (std::next_permutation(t, t + 3));
        return true;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == pairs.size()) {
            out.push_back(le);
            return;
        }
        auto [i, j] = pairs[k];
        for (int c = 0; c < 3; ++c) {
            le[i][j] = c == 1;
            le[j][i] = c == 2;
            bool good = true;
            for (int a = 0; a < i && good; ++a) good = ok(a, i, j);
            if (good) rec(k + 1);
        }
        le[i][j] = le[j][i] = 0;
    };
    rec(0);
    return out;
}

}  // namespace oracle

#endif
