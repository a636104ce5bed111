#ifndef CATMT_LINALG_HPP
#define CATMT_LINALG_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace catmt::linalg {

// Dense matrix over F_p, row-major.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<int> a;
    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0) {}
    int& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
    int at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }
    bool operator==(const Mat&) const = default;
};

inline int mod(long v, int p) {
    long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

inline int inv(int x, int p) {
    // p is prime, so x^(p-2) is the inverse.
    long r = 1, b = mod(x, p);
    if (b == 0) throw std::domain_error("inverse of zero");
    for (int e = p - 2; e > 0; e >>= 1) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
    }
    return static_cast<int>(r);
}

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

inline int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

// Vectors of F_p^d are encoded as integers: coordinate i is digit i in base p.
inline std::vector<int> decode(int x, int d, int p) {
    std::vector<int> v(d);
    for (int i = 0; i < d; ++i) {
        v[i] = x % p;
        x /= p;
    }
    return v;
}

inline int encode(const std::vector<int>& v, int p) {
    int x = 0;
    for (int i = static_cast<int>(v.size()) - 1; i >= 0; --i) x = x * p + v[i];
    return x;
}

inline int add(int x, int y, int d, int p) {
    auto a = decode(x, d, p), b = decode(y, d, p);
    for (int i = 0; i < d; ++i) a[i] = (a[i] + b[i]) % p;
    return encode(a, p);
}

inline int scale(int c, int x, int d, int p) {
    auto a = decode(x, d, p);
    for (auto& v : a) v = mod(static_cast<long>(v) * c, p);
    return encode(a, p);
}

inline Mat mul(const Mat& x, const Mat& y, int p) {
    if (x.cols != y.rows) throw std::invalid_argument("matrix shape mismatch");
    Mat r(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            int v = x.at(i, k);
            if (!v) continue;
            for (int j = 0; j < y.cols; ++j) r.at(i, j) = (r.at(i, j) + v * y.at(k, j)) % p;
        }
    return r;
}

inline std::vector<int> apply(const Mat& m, const std::vector<int>& v, int p) {
    std::vector<int> r(m.rows, 0);
    for (int i = 0; i < m.rows; ++i) {
        long s = 0;
        for (int j = 0; j < m.cols; ++j) s += static_cast<long>(m.at(i, j)) * v[j];
        r[i] = mod(s, p);
    }
    return r;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<int> rref(Mat& m, int p) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < m.cols && r < m.rows; ++c) {
        int s = -1;
        for (int i = r; i < m.rows; ++i)
            if (m.at(i, c)) {
                s = i;
                break;
            }
        if (s < 0) continue;
        for (int j = 0; j < m.cols; ++j) std::swap(m.at(r, j), m.at(s, j));
        int iv = inv(m.at(r, c), p);
        for (int j = 0; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * iv % p;
        for (int i = 0; i < m.rows; ++i) {
            if (i == r || !m.at(i, c)) continue;
            int f = m.at(i, c);
            for (int j = 0; j < m.cols; ++j) m.at(i, j) = mod(m.at(i, j) - static_cast<long>(f) * m.at(r, j), p);
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

inline int rank(Mat m, int p) { return static_cast<int>(rref(m, p).size()); }

// Basis (as rows) of {x : m x = 0}.
inline Mat nullspace(Mat m, int p) {
    auto piv = rref(m, p);
    std::vector<char> is_piv(m.cols, 0);
    for (int c : piv) is_piv[c] = 1;
    std::vector<int> free;
    for (int c = 0; c < m.cols; ++c)
        if (!is_piv[c]) free.push_back(c);
    Mat ns(static_cast<int>(free.size()), m.cols);
    for (std::size_t k = 0; k < free.size(); ++k) {
        ns.at(static_cast<int>(k), free[k]) = 1;
        for (std::size_t r = 0; r < piv.size(); ++r)
            ns.at(static_cast<int>(k), piv[r]) = mod(-m.at(static_cast<int>(r), free[k]), p);
    }
    return ns;
}

inline Mat transpose(const Mat& m) {
    Mat t(m.cols, m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j) t.at(j, i) = m.at(i, j);
    return t;
}

// Canonical basis (rows of the RREF, zero rows dropped) of the span of the rows.
inline Mat row_space(Mat m, int p) {
    auto piv = rref(m, p);
    Mat r(static_cast<int>(piv.size()), m.cols);
    for (int i = 0; i < r.rows; ++i)
        for (int j = 0; j < m.cols; ++j) r.at(i, j) = m.at(i, j);
    return r;
}

}  // namespace catmt::linalg

#endif
