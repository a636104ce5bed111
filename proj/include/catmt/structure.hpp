#ifndef CATMT_STRUCTURE_HPP
#define CATMT_STRUCTURE_HPP

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace catmt {

// Finite purely relational structure on {0..n-1}. Relations are stored as
// dense truth tables, so arities and universes are expected to stay small.
struct Relation {
    int arity = 0;
    std::vector<char> table;
};

class FinStructure {
public:
    FinStructure() = default;
    explicit FinStructure(int n) : n_(n) {}

    int size() const { return n_; }
    const std::map<std::string, Relation>& relations() const { return rels_; }

    void declare(const std::string& name, int arity) {
        if (arity < 0) throw std::invalid_argument("negative arity for " + name);
        auto& r = rels_[name];
        if (!r.table.empty() && r.arity != arity)
            throw std::invalid_argument("relation " + name + " redeclared with another arity");
        r.arity = arity;
        r.table.assign(cells(arity), 0);
    }

    bool has(const std::string& name) const { return rels_.count(name) != 0; }
    int arity(const std::string& name) const { return rel(name).arity; }

    void set(const std::string& name, const std::vector<int>& t, bool v = true) {
        auto it = rels_.find(name);
        if (it == rels_.end()) throw std::invalid_argument("unknown relation " + name);
        it->second.table[index(it->second, t)] = v ? 1 : 0;
    }

    bool holds(const std::string& name, const std::vector<int>& t) const {
        const auto& r = rel(name);
        return r.table[index(r, t)] != 0;
    }

    std::vector<std::vector<int>> tuples(const std::string& name) const {
        const auto& r = rel(name);
        std::vector<std::vector<int>> out;
        for (std::size_t c = 0; c < r.table.size(); ++c) {
            if (r.table[c]) out.push_back(decode(c, r.arity));
        }
        return out;
    }

    // Induced substructure on the listed elements, in the listed order.
    FinStructure induced(const std::vector<int>& elems) const {
        FinStructure s(static_cast<int>(elems.size()));
        for (const auto& [name, r] : rels_) {
            s.declare(name, r.arity);
            auto& dst = s.rels_[name];
            std::vector<int> t(r.arity);
            for (std::size_t c = 0; c < dst.table.size(); ++c) {
                auto local = s.decode(c, r.arity);
                for (int i = 0; i < r.arity; ++i) t[i] = elems[local[i]];
                dst.table[c] = r.table[index(r, t)];
            }
        }
        return s;
    }

    // Image of the structure under a permutation perm: element i becomes perm[i].
    FinStructure permuted(const std::vector<int>& perm) const {
        FinStructure s(n_);
        for (const auto& [name, r] : rels_) {
            s.declare(name, r.arity);
            auto& dst = s.rels_[name];
            for (std::size_t c = 0; c < r.table.size(); ++c) {
                if (!r.table[c]) continue;
                auto t = decode(c, r.arity);
                for (auto& x : t) x = perm[x];
                dst.table[index(dst, t)] = 1;
            }
        }
        return s;
    }

    bool operator==(const FinStructure& o) const {
        if (n_ != o.n_ || rels_.size() != o.rels_.size()) return false;
        for (auto a = rels_.begin(), b = o.rels_.begin(); a != rels_.end(); ++a, ++b) {
            if (a->first != b->first || a->second.arity != b->second.arity ||
                a->second.table != b->second.table)
                return false;
        }
        return true;
    }

    // Flat key usable for ordering and hashing.
    std::string key() const {
        std::string k = std::to_string(n_) + ";";
        for (const auto& [name, r] : rels_) {
            k += name + "/" + std::to_string(r.arity) + ":";
            k.append(r.table.begin(), r.table.end());
            k += ';';
        }
        return k;
    }

private:
    const Relation& rel(const std::string& name) const {
        auto it = rels_.find(name);
        if (it == rels_.end()) throw std::invalid_argument("unknown relation " + name);
        return it->second;
    }

    std::size_t cells(int arity) const {
        std::size_t c = 1;
        for (int i = 0; i < arity; ++i) c *= static_cast<std::size_t>(n_);
        return c;
    }

    std::size_t index(const Relation& r, const std::vector<int>& t) const {
        if (static_cast<int>(t.size()) != r.arity)
            throw std::invalid_argument("tuple length does not match relation arity");
        std::size_t c = 0;
        for (int i = r.arity - 1; i >= 0; --i) {
            if (t[i] < 0 || t[i] >= n_) throw std::out_of_range("tuple element outside universe");
            c = c * static_cast<std::size_t>(n_) + static_cast<std::size_t>(t[i]);
        }
        return c;
    }

    std::vector<int> decode(std::size_t c, int arity) const {
        std::vector<int> t(arity);
        for (int i = 0; i < arity; ++i) {
            t[i] = static_cast<int>(c % static_cast<std::size_t>(n_));
            c /= static_cast<std::size_t>(n_);
        }
        return t;
    }

    int n_ = 0;
    std::map<std::string, Relation> rels_;
};

// ---------------------------------------------------------------------------
// Quantifier-free formulas.

struct Formula {
    enum class Kind { True, False, Atom, Eq, Not, And, Or };
    Kind kind = Kind::True;
    std::string rel;
    // Atom/Eq arguments: a value v >= 0 is a variable index, v < 0 is the
    // constant element -(v + 1).
    std::vector<int> args;
    std::vector<Formula> kids;

    static Formula atom(std::string r, std::vector<int> a) {
        Formula f;
        f.kind = Kind::Atom;
        f.rel = std::move(r);
        f.args = std::move(a);
        return f;
    }
    static Formula eq(int a, int b) {
        Formula f;
        f.kind = Kind::Eq;
        f.args = {a, b};
        return f;
    }
    static Formula negate(Formula g) {
        Formula f;
        f.kind = Kind::Not;
        f.kids.push_back(std::move(g));
        return f;
    }
    static Formula conj(std::vector<Formula> ks) {
        Formula f;
        f.kind = Kind::And;
        f.kids = std::move(ks);
        return f;
    }
    static Formula disj(std::vector<Formula> ks) {
        Formula f;
        f.kind = Kind::Or;
        f.kids = std::move(ks);
        return f;
    }
};

struct QFFormula {
    Formula root;
    std::vector<std::string> vars;
    std::string text;
};

struct ParseError : std::runtime_error {
    int line, column;
    ParseError(const std::string& msg, int l, int c)
        : std::runtime_error(msg + " at line " + std::to_string(l) + ", column " + std::to_string(c)),
          line(l), column(c) {}
};

namespace detail {

class FormulaParser {
public:
    FormulaParser(std::string_view src, std::vector<std::string> vars, bool fixed)
        : s_(src), vars_(std::move(vars)), fixed_(fixed) {}

    QFFormula run() {
        QFFormula q;
        q.root = parse_or();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        q.vars = vars_;
        q.text = std::string(s_);
        return q;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (std::size_t i = 0; i < pos_ && i < s_.size(); ++i) {
            if (s_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(msg, line, col);
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string ident() {
        skip();
        std::size_t b = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (b == pos_) fail("expected identifier");
        return std::string(s_.substr(b, pos_ - b));
    }

    int term() {
        auto id = ident();
        if (std::isdigit(static_cast<unsigned char>(id[0]))) {
            for (char c : id)
                if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad constant " + id);
            return -std::stoi(id) - 1;
        }
        auto it = std::find(vars_.begin(), vars_.end(), id);
        if (it != vars_.end()) return static_cast<int>(it - vars_.begin());
        if (fixed_) fail("variable " + id + " not in the variable list");
        vars_.push_back(id);
        return static_cast<int>(vars_.size()) - 1;
    }

    Formula parse_or() {
        std::vector<Formula> ks{parse_and()};
        while (eat('|')) ks.push_back(parse_and());
        return ks.size() == 1 ? std::move(ks[0]) : Formula::disj(std::move(ks));
    }

    Formula parse_and() {
        std::vector<Formula> ks{parse_unary()};
        while (eat('&')) ks.push_back(parse_unary());
        return ks.size() == 1 ? std::move(ks[0]) : Formula::conj(std::move(ks));
    }

    Formula parse_unary() {
        skip();
        if (pos_ < s_.size() && s_[pos_] == '!' && !(pos_ + 1 < s_.size() && s_[pos_ + 1] == '=')) {
            ++pos_;
            return Formula::negate(parse_unary());
        }
        if (eat('(')) {
            auto f = parse_or();
            if (!eat(')')) fail("expected ')'");
            return f;
        }
        skip();
        std::size_t save = pos_;
        auto id = ident();
        if (id == "true" || id == "false") {
            Formula f;
            f.kind = id == "true" ? Formula::Kind::True : Formula::Kind::False;
            return f;
        }
        skip();
        if (pos_ < s_.size() && s_[pos_] == '(') {
            ++pos_;
            std::vector<int> args;
            if (!eat(')')) {
                do {
                    args.push_back(term());
                } while (eat(','));
                if (!eat(')')) fail("expected ')' after arguments");
            }
            return Formula::atom(id, std::move(args));
        }
        pos_ = save;
        int a = term();
        skip();
        bool neg = false;
        if (pos_ + 1 < s_.size() && s_[pos_] == '!' && s_[pos_ + 1] == '=') {
            neg = true;
            pos_ += 2;
        } else if (!eat('=')) {
            fail("expected '=' or an atom");
        }
        int b = term();
        auto f = Formula::eq(a, b);
        return neg ? Formula::negate(std::move(f)) : f;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::vector<std::string> vars_;
    bool fixed_;
};

}  // namespace detail

// Grammar: atoms name(v,...) and v=w (also v!=w), connectives & | !, parentheses.
// Without an explicit variable list the variables are ordered by first appearance.
inline QFFormula parse_formula(std::string_view text, std::vector<std::string> vars = {}) {
    bool fixed = !vars.empty();
    return detail::FormulaParser(text, std::move(vars), fixed).run();
}

namespace detail {

inline int resolve(int arg, const std::vector<int>& a) {
    if (arg >= 0) {
        if (arg >= static_cast<int>(a.size())) throw std::invalid_argument("arity mismatch");
        return a[arg];
    }
    return -arg - 1;
}

inline bool eval_node(const Formula& f, const std::vector<int>& a, const FinStructure& N) {
    switch (f.kind) {
        case Formula::Kind::True: return true;
        case Formula::Kind::False: return false;
        case Formula::Kind::Eq: return resolve(f.args[0], a) == resolve(f.args[1], a);
        case Formula::Kind::Atom: {
            std::vector<int> t(f.args.size());
            for (std::size_t i = 0; i < t.size(); ++i) t[i] = resolve(f.args[i], a);
            return N.holds(f.rel, t);
        }
        case Formula::Kind::Not: return !eval_node(f.kids[0], a, N);
        case Formula::Kind::And:
            for (const auto& k : f.kids)
                if (!eval_node(k, a, N)) return false;
            return true;
        case Formula::Kind::Or:
            for (const auto& k : f.kids)
                if (eval_node(k, a, N)) return true;
            return false;
    }
    return false;
}

}  // namespace detail

inline bool eval(const QFFormula& phi, const std::vector<int>& a, const FinStructure& N) {
    if (a.size() != phi.vars.size())
        throw std::invalid_argument("arity mismatch: formula has " + std::to_string(phi.vars.size()) +
                                    " variables, tuple has " + std::to_string(a.size()));
    return detail::eval_node(phi.root, a, N);
}

}  // namespace catmt

#endif
