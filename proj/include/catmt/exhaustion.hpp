#ifndef CATMT_EXHAUSTION_HPP
#define CATMT_EXHAUSTION_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "amalgams.hpp"

namespace catmt {

struct ElementNotInU : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct OracleFailure : std::runtime_error {
    int step;
    OracleFailure(int s, const std::string& what) : std::runtime_error(what), step(s) {}
};

struct InsufficientChain : std::runtime_error {
    int stage;
    InsufficientChain(int s, const std::string& what) : std::runtime_error(what), stage(s) {}
};

// Objects carry a finite set U of labels and the constructed subset U0.
// Morphisms act on labels as inclusions, so d_ij(x) = x throughout.
template <class Obj>
class ConstructionCategory {
public:
    using Object = Obj;
    virtual ~ConstructionCategory() = default;
    virtual std::string name() const = 0;
    virtual Obj initial() const = 0;
    virtual std::vector<int> U(const Obj&) const = 0;
    virtual std::vector<int> U0(const Obj&) const = 0;
    // Some B >= A with x constructed by stage B, if the oracle finds one.
    virtual std::optional<Obj> extend(const Obj& a, int x) const = 0;
    virtual bool leq(const Obj& a, const Obj& b) const = 0;
    virtual std::optional<int> rank(const Obj&) const { return std::nullopt; }
    virtual std::string describe(const Obj&) const = 0;
};

template <class Obj>
bool constructed_by_stage(const ConstructionCategory<Obj>& k, const Obj& a, int x) {
    auto u = k.U(a);
    if (std::find(u.begin(), u.end(), x) == u.end())
        throw ElementNotInU("element " + std::to_string(x) + " is not in U of " + k.describe(a));
    auto u0 = k.U0(a);
    return std::find(u0.begin(), u0.end(), x) != u0.end();
}

// Repeatedly asks the extender, at most search_bound times.
template <class Obj>
std::optional<Obj> constructible_from(const ConstructionCategory<Obj>& k, const Obj& a, int x, int search_bound = 1) {
    if (constructed_by_stage(k, a, x)) return a;
    Obj cur = a;
    for (int i = 0; i < search_bound; ++i) {
        auto b = k.extend(cur, x);
        if (!b) return std::nullopt;
        if (constructed_by_stage(k, *b, x)) return b;
        cur = *b;
    }
    return std::nullopt;
}

template <class Obj>
std::optional<int> is_full_for(const ConstructionCategory<Obj>& k, const Obj& a, const std::vector<int>& xs,
                               int search_bound = 1) {
    for (int x : xs)
        if (!constructed_by_stage(k, a, x) && constructible_from(k, a, x, search_bound)) return x;
    return std::nullopt;
}

using Pair = std::pair<int, int>;

// Round robin over the pair space: pair t sits at every index congruent to t.
inline std::vector<Pair> make_bookkeeper(int n, const std::vector<Pair>& pairs) {
    if (n < 1) throw std::invalid_argument("bookkeeper length must be positive");
    if (pairs.empty()) throw std::invalid_argument("empty pair space");
    std::vector<Pair> f(n);
    for (int i = 0; i < n; ++i) f[i] = pairs[i % pairs.size()];
    return f;
}

struct DiagramStep {
    int anchor = 0;  // alpha
    int beta = 0;
    int x = 0;
    bool extended = false;
};

template <class Obj>
struct FullDiagram {
    std::vector<Obj> stages;
    std::vector<DiagramStep> trace;
    bool complete = false;  // a whole pass added nothing
    const Obj& terminal() const { return stages.back(); }
};

// Passes are anchored at the current stage alpha; the bookkeeper walks beta
// over the enumeration of U D_alpha. Each step appends either an extension
// that constructs d_{alpha,i}(x_{alpha,beta}) or an identity copy.
template <class Obj>
FullDiagram<Obj> build_full_diagram(const ConstructionCategory<Obj>& k, int n) {
    FullDiagram<Obj> d;
    d.stages.push_back(k.initial());
    int steps = 0;
    while (true) {
        int alpha = static_cast<int>(d.stages.size()) - 1;
        auto xs = k.U(d.stages[alpha]);
        if (xs.empty()) {
            d.complete = true;
            break;
        }
        std::vector<Pair> pairs;
        for (int b = 0; b < static_cast<int>(xs.size()); ++b) pairs.emplace_back(alpha, b);
        bool added = false, finished = true;
        for (auto [a, beta] : make_bookkeeper(static_cast<int>(pairs.size()), pairs)) {
            if (steps >= n) {
                finished = false;
                break;
            }
            int x = xs[beta];
            const Obj cur = d.stages.back();
            DiagramStep st{a, beta, x, false};
            if (!constructed_by_stage(k, cur, x)) {
                if (auto b = k.extend(cur, x)) {
                    if (!constructed_by_stage(k, *b, x) || !k.leq(cur, *b))
                        throw OracleFailure(steps, "extender returned a stage that does not construct " +
                                                       std::to_string(x));
                    d.stages.push_back(*b);
                    st.extended = added = true;
                }
            }
            if (!st.extended) d.stages.push_back(cur);
            d.trace.push_back(st);
            ++steps;
        }
        if (finished && !added) {
            d.complete = true;
            break;
        }
        if (steps >= n) break;
    }
    return d;
}

template <class Obj>
std::vector<std::string> verify_full_diagram(const ConstructionCategory<Obj>& k, const FullDiagram<Obj>& d,
                                             int search_bound = 1) {
    std::vector<std::string> bad;
    int n = static_cast<int>(d.stages.size());
    auto subset = [](std::vector<int> a, std::vector<int> b) {
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    for (int i = 0; i < n; ++i) {
        int r = k.rank(d.stages[i]).value_or(i);
        if (r > i) bad.push_back("rank of stage " + std::to_string(i) + " is " + std::to_string(r));
        for (int j = i + 1; j < n; ++j)
            if (!k.leq(d.stages[i], d.stages[j]) || !subset(k.U(d.stages[i]), k.U(d.stages[j])) ||
                !subset(k.U0(d.stages[i]), k.U0(d.stages[j])))
                bad.push_back("no inclusion from stage " + std::to_string(i) + " to " + std::to_string(j));
        for (int x : k.U(d.stages[i])) {
            bool persistent = true, built = false;
            for (int j = i; j < n && persistent && !built; ++j) {
                if (constructed_by_stage(k, d.stages[j], x)) built = true;
                else if (!constructible_from(k, d.stages[j], x, search_bound)) persistent = false;
            }
            if (persistent && !built)
                bad.push_back("element " + std::to_string(x) + " of stage " + std::to_string(i) +
                              " stays constructible but is never constructed");
        }
    }
    return bad;
}

struct ColimitReport {
    bool pass = true;
    std::string witness;
};

// The cocone apex must sit above every stage and be full for the union of
// the stages' U.
template <class Obj>
ColimitReport colimit_full_check(const ConstructionCategory<Obj>& k, const FullDiagram<Obj>& d, const Obj& apex,
                                 int search_bound = 1) {
    std::set<int> all;
    for (std::size_t i = 0; i < d.stages.size(); ++i) {
        if (!k.leq(d.stages[i], apex))
            return {false, "stage " + std::to_string(i) + " (" + k.describe(d.stages[i]) + ") has no leg to the apex"};
        for (int x : k.U(d.stages[i])) all.insert(x);
    }
    auto u = k.U(apex);
    for (int x : all)
        if (std::find(u.begin(), u.end(), x) == u.end())
            return {false, "element " + std::to_string(x) + " is missing from the apex"};
    if (auto x = is_full_for(k, apex, std::vector<int>(all.begin(), all.end()), search_bound))
        return {false, "element " + std::to_string(*x) + " is constructible from the apex but not constructed"};
    return {};
}

// ---------------------------------------------------------------------------
// Chains of stages given directly as (U_i, U0_i).

struct FullIndexReport {
    std::vector<int> indices;         // j full for the union of U_i over i <= j
    std::vector<int> strict_indices;  // j full for the union over i < j
    bool closure_ok = true;
    std::vector<int> closure_violations;
};

inline FullIndexReport full_indices(const std::vector<std::pair<std::vector<int>, std::vector<int>>>& chain) {
    FullIndexReport r;
    int n = static_cast<int>(chain.size());
    // later[j]: everything constructed at some stage >= j.
    std::vector<std::set<int>> later(n + 1);
    for (int j = n - 1; j >= 0; --j) {
        later[j] = later[j + 1];
        later[j].insert(chain[j].second.begin(), chain[j].second.end());
    }
    auto full_for = [&](int j, const std::set<int>& xs) {
        std::set<int> u0(chain[j].second.begin(), chain[j].second.end());
        for (int x : xs)
            if (later[j].count(x) && !u0.count(x)) return false;
        return true;
    };
    std::set<int> prior;
    std::vector<char> in(n, 0);
    for (int j = 0; j < n; ++j) {
        if (full_for(j, prior)) r.strict_indices.push_back(j);
        std::set<int> upto = prior;
        upto.insert(chain[j].first.begin(), chain[j].first.end());
        if (full_for(j, upto)) {
            r.indices.push_back(j);
            in[j] = 1;
        }
        // A stage adding nothing to U is a limit of the earlier ones.
        if (j > 0 && upto == prior && in[j - 1] && !in[j]) {
            r.closure_ok = false;
            r.closure_violations.push_back(j);
        }
        prior = std::move(upto);
    }
    return r;
}

// ---------------------------------------------------------------------------
// Demos.

// Elements of a finite poset; U0 p is the down-set of p.
class ZornDemo : public ConstructionCategory<int> {
public:
    ZornDemo(std::vector<std::string> names, std::vector<std::vector<char>> le)
        : names_(std::move(names)), le_(std::move(le)) {}

    std::string name() const override { return "zorn"; }
    int initial() const override { return 0; }
    std::vector<int> U(const int&) const override {
        std::vector<int> v(names_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<int>(i);
        return v;
    }
    std::vector<int> U0(const int& p) const override {
        std::vector<int> v;
        for (std::size_t q = 0; q < names_.size(); ++q)
            if (le_[q][p]) v.push_back(static_cast<int>(q));
        return v;
    }
    // Common upper bound of smallest index.
    std::optional<int> extend(const int& p, int q) const override {
        for (std::size_t r = 0; r < names_.size(); ++r)
            if (le_[p][r] && le_[q][r]) return static_cast<int>(r);
        return std::nullopt;
    }
    bool leq(const int& a, const int& b) const override { return le_[a][b]; }
    std::string describe(const int& p) const override { return names_[p]; }

    const std::vector<std::vector<char>>& order() const { return le_; }
    bool maximal(int p) const {
        for (std::size_t r = 0; r < names_.size(); ++r)
            if (static_cast<int>(r) != p && le_[p][r]) return false;
        return true;
    }

private:
    std::vector<std::string> names_;
    std::vector<std::vector<char>> le_;
};

// Finite partial functions m -> 2 ordered by extension; U0 s = dom s.
class GenericDemo : public ConstructionCategory<std::vector<int>> {
public:
    explicit GenericDemo(int m) : m_(m) {}
    std::string name() const override { return "generic"; }
    std::vector<int> initial() const override { return std::vector<int>(m_, -1); }
    std::vector<int> U(const std::vector<int>&) const override {
        std::vector<int> v(m_);
        for (int i = 0; i < m_; ++i) v[i] = i;
        return v;
    }
    std::vector<int> U0(const std::vector<int>& s) const override {
        std::vector<int> v;
        for (int i = 0; i < m_; ++i)
            if (s[i] >= 0) v.push_back(i);
        return v;
    }
    std::optional<std::vector<int>> extend(const std::vector<int>& s, int x) const override {
        auto t = s;
        if (t[x] < 0) t[x] = x % 2;
        return t;
    }
    bool leq(const std::vector<int>& s, const std::vector<int>& t) const override {
        for (int i = 0; i < m_; ++i)
            if (s[i] >= 0 && s[i] != t[i]) return false;
        return true;
    }
    std::optional<int> rank(const std::vector<int>& s) const override {
        return static_cast<int>(U0(s).size());
    }
    std::string describe(const std::vector<int>& s) const override {
        std::string out = "{";
        bool first = true;
        for (int i = 0; i < m_; ++i)
            if (s[i] >= 0) {
                out += (first ? "" : ",") + std::to_string(i) + ":" + std::to_string(s[i]);
                first = false;
            }
        return out + "}";
    }
    int size() const { return m_; }

private:
    int m_;
};

// Stage i has U = B_i and U0 = A_i; x is constructed from i at the first
// later stage containing it in A.
class FiltrationDemo : public ConstructionCategory<int> {
public:
    FiltrationDemo(std::vector<std::vector<int>> a, std::vector<std::vector<int>> b)
        : a_(std::move(a)), b_(std::move(b)) {
        if (a_.size() != b_.size() || a_.empty()) throw std::invalid_argument("filtration stages must match");
    }
    std::string name() const override { return "filtration"; }
    int initial() const override { return 0; }
    std::vector<int> U(const int& i) const override { return b_[i]; }
    std::vector<int> U0(const int& i) const override { return a_[i]; }
    std::optional<int> extend(const int& i, int x) const override {
        for (std::size_t j = i; j < a_.size(); ++j)
            if (std::find(a_[j].begin(), a_[j].end(), x) != a_[j].end()) return static_cast<int>(j);
        return std::nullopt;
    }
    bool leq(const int& i, const int& j) const override { return i <= j; }
    std::string describe(const int& i) const override { return "stage " + std::to_string(i); }

    std::vector<std::pair<std::vector<int>, std::vector<int>>> chain() const {
        std::vector<std::pair<std::vector<int>, std::vector<int>>> c;
        for (std::size_t i = 0; i < a_.size(); ++i) c.emplace_back(b_[i], a_[i]);
        return c;
    }

private:
    std::vector<std::vector<int>> a_, b_;
};

// Embedding a small extension N0 of M_0 into the last member of a chain
// M_0 ⊆ ... ⊆ M_n of finite sets. An object is a stage i with an injection
// f: M_i -> N where N ⊇ N0 carries fresh labels; U = N, U0 = image of f.
struct UEStage {
    int stage = 0;
    int n = 0;
    std::vector<int> f;
    auto operator<=>(const UEStage&) const = default;
};

class UniversalExtensionDemo : public ConstructionCategory<UEStage> {
public:
    UniversalExtensionDemo(std::vector<int> sizes, int target)
        : sizes_(std::move(sizes)), target_(target) {
        if (sizes_.empty()) throw std::invalid_argument("empty chain");
        if (target_ < sizes_[0]) throw std::invalid_argument("target must contain the base");
        SetCat cat(true, std::max(8, sizes_.back() + 1));
        for (std::size_t i = 0; i + 1 < sizes_.size(); ++i) {
            if (sizes_[i + 1] < sizes_[i]) throw InsufficientChain(static_cast<int>(i + 1), "chain is not increasing");
            Arrow<FinSet> incl{{sizes_[i]}, {sizes_[i + 1]}, std::vector<int>(sizes_[i])};
            for (int x = 0; x < sizes_[i]; ++x) incl.map[x] = x;
            for (const auto& t : enumerate_types(cat, FinSet{sizes_[i]}, sizes_[i] + 1).classes)
                if (!realizes(cat, incl, t))
                    throw InsufficientChain(static_cast<int>(i + 1), "stage " + std::to_string(i + 1) +
                                                                         " misses a type over stage " +
                                                                         std::to_string(i));
        }
    }

    std::string name() const override { return "universal-extension"; }
    UEStage initial() const override {
        UEStage s{0, target_, std::vector<int>(sizes_[0])};
        for (int x = 0; x < sizes_[0]; ++x) s.f[x] = x;
        return s;
    }
    std::vector<int> U(const UEStage& s) const override {
        std::vector<int> v(s.n);
        for (int i = 0; i < s.n; ++i) v[i] = i;
        return v;
    }
    std::vector<int> U0(const UEStage& s) const override { return image(s.f); }
    // Realise the type of x (fresh over the image) by a new element of the
    // next stage; remaining new elements go to fresh labels.
    std::optional<UEStage> extend(const UEStage& s, int x) const override {
        if (s.stage + 1 >= static_cast<int>(sizes_.size())) return std::nullopt;
        int lo = sizes_[s.stage], hi = sizes_[s.stage + 1];
        if (hi == lo) return std::nullopt;
        UEStage t{s.stage + 1, s.n, s.f};
        t.f.push_back(x);
        for (int y = lo + 1; y < hi; ++y) t.f.push_back(t.n++);
        return t;
    }
    bool leq(const UEStage& a, const UEStage& b) const override {
        return a.stage <= b.stage && a.n <= b.n && std::equal(a.f.begin(), a.f.end(), b.f.begin());
    }
    std::optional<int> rank(const UEStage& s) const override { return s.stage; }
    std::string describe(const UEStage& s) const override {
        std::string out = "stage " + std::to_string(s.stage) + " [";
        for (std::size_t i = 0; i < s.f.size(); ++i) out += (i ? "," : "") + std::to_string(s.f[i]);
        return out + "]";
    }

    int target() const { return target_; }
    const std::vector<int>& sizes() const { return sizes_; }

private:
    std::vector<int> sizes_;
    int target_;
};

struct EmbeddingResult {
    bool found = false;
    std::vector<int> embedding;  // N0 -> M_n, identity on M_0
    int steps = 0;
    std::string failure;
};

inline EmbeddingResult demo_universal_extension(const std::vector<int>& sizes, int target) {
    UniversalExtensionDemo k(sizes, target);
    int budget = 2 * (target + 1) * static_cast<int>(sizes.size()) + 2 * sizes.back() + 4;
    auto d = build_full_diagram(k, budget);
    EmbeddingResult r;
    r.steps = static_cast<int>(d.trace.size());
    const auto& last = d.terminal();
    std::vector<int> inv(last.n, -1);
    for (std::size_t x = 0; x < last.f.size(); ++x) inv[last.f[x]] = static_cast<int>(x);
    r.embedding.assign(target, -1);
    for (int y = 0; y < target; ++y) {
        if (inv[y] < 0) {
            r.failure = "target element " + std::to_string(y) + " is never reached";
            r.embedding.clear();
            return r;
        }
        r.embedding[y] = inv[y];
    }
    r.found = true;
    return r;
}

}  // namespace catmt

#endif
