#pragma once

#include <algorithm>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "unistab/errors.hpp"
#include "unistab/scalar.hpp"

namespace unistab {

// Sparse matrix with exact entries.  Rows are kept sorted by column with no
// explicit zeros and no duplicates.  All algorithms are sequential and
// deterministic; there is no epsilon anywhere.
template <class K>
class SparseMat {
public:
    SparseMat() = default;
    SparseMat(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {
        if (rows < 0 || cols < 0) throw ValidationError("matrix dimensions must be >= 0");
    }

    static SparseMat identity(int n, const K& one) {
        SparseMat m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i].push_back({i, one});
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    std::size_t nnz() const {
        std::size_t t = 0;
        for (const auto& r : data_) t += r.size();
        return t;
    }

    const std::vector<std::pair<int, K>>& row(int i) const { return data_.at(i); }

    // Accumulate v into entry (i, j).
    void add_to(int i, int j, const K& v) {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw ValidationError("matrix index out of range");
        if (scalar_is_zero(v)) return;
        auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const std::pair<int, K>& e, int c) { return e.first < c; });
        if (it != r.end() && it->first == j) {
            it->second = it->second + v;
            if (scalar_is_zero(it->second)) r.erase(it);
        } else {
            r.insert(it, {j, v});
        }
    }

    void set(int i, int j, const K& v) {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw ValidationError("matrix index out of range");
        auto& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const std::pair<int, K>& e, int c) { return e.first < c; });
        if (it != r.end() && it->first == j) {
            if (scalar_is_zero(v)) r.erase(it);
            else it->second = v;
        } else if (!scalar_is_zero(v)) {
            r.insert(it, {j, v});
        }
    }

    K get(int i, int j, const K& zero) const {
        const auto& r = data_.at(i);
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const std::pair<int, K>& e, int c) { return e.first < c; });
        if (it != r.end() && it->first == j) return it->second;
        return zero;
    }

    bool is_zero_matrix() const {
        for (const auto& r : data_)
            if (!r.empty()) return false;
        return true;
    }

    SparseMat transposed() const {
        SparseMat t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i]) t.data_[j].push_back({i, v});
        return t; // rows come out sorted because we scan i in order
    }

    SparseMat multiplied_by(const SparseMat& rhs) const {
        if (cols_ != rhs.rows_) throw ValidationError("matrix product: shape mismatch");
        SparseMat out(rows_, rhs.cols_);
        for (int i = 0; i < rows_; ++i) {
            std::map<int, K> acc;
            for (const auto& [k, a] : data_[i])
                for (const auto& [j, b] : rhs.data_[k]) {
                    auto it = acc.find(j);
                    if (it == acc.end()) acc.emplace(j, a * b);
                    else it->second = it->second + a * b;
                }
            for (auto& [j, v] : acc)
                if (!scalar_is_zero(v)) out.data_[i].push_back({j, v});
        }
        return out;
    }

    std::vector<K> apply(const std::vector<K>& x, const K& zero) const {
        if (static_cast<int>(x.size()) != cols_)
            throw ValidationError("matrix apply: length mismatch");
        std::vector<K> y(rows_, zero);
        for (int i = 0; i < rows_; ++i)
            for (const auto& [j, v] : data_[i]) y[i] = y[i] + v * x[j];
        return y;
    }

    friend bool operator==(const SparseMat& a, const SparseMat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<std::vector<std::pair<int, K>>> data_;
};

// --- rank -----------------------------------------------------------------
//
// Exact rank over Q or F_p.  The rational path clears denominators row by
// row and then eliminates fraction-free over Z (cross-multiplication with
// content stripping), choosing pivots by a minimal-fill rule: sparsest
// active column first, sparsest row within it.
int rank(const SparseMat<Rational>& m);
int rank(const SparseMat<Fp>& m);
int rank(const SparseMat<Integer>& m); // throws UnsupportedError: use snf

// Basis of the right null space over a field; count = cols - rank.
// Elimination processes rows in order with leading-column pivoting, and the
// returned vectors are indexed by ascending free column, so the output is a
// deterministic function of the input.
std::vector<std::vector<Rational>> kernel_basis(const SparseMat<Rational>& m);
std::vector<std::vector<Fp>> kernel_basis(const SparseMat<Fp>& m);

// --- Smith normal form ------------------------------------------------------

using DenseInt = std::vector<std::vector<Integer>>;

struct SnfResult {
    std::vector<Integer> divisors; // length min(rows, cols); d_i >= 0, d_i | d_{i+1}
    DenseInt U, V, Vinv;           // U * m * V = diag(divisors); V * Vinv = I
    int nonzero_count() const {
        int c = 0;
        for (const auto& d : divisors)
            if (sgn(d) != 0) ++c;
        return c;
    }
};

SnfResult snf(const SparseMat<Integer>& m);

// Test hook: checks U*m*V = D, the divisibility chain, and |det U| = |det V| = 1.
bool verify_snf(const SparseMat<Integer>& m, const SnfResult& s);
Integer dense_det(const DenseInt& a); // Bareiss, exact

// --- chain complexes --------------------------------------------------------

struct IntegralHomology {
    long free_rank = 0;
    std::vector<Integer> torsion; // divisors > 1 in divisibility order
};

// Degrees 0..top; d[k] maps degree-k chains to degree-(k-1) chains for
// 1 <= k <= top.  d[0] is an unused placeholder so indices line up.
template <class K>
struct ChainComplex {
    int top = 0;
    std::vector<long> dims;         // size top+1
    std::vector<SparseMat<K>> d;    // size top+1, d[0] ignored

    void validate_shapes() const {
        if (static_cast<int>(dims.size()) != top + 1 || static_cast<int>(d.size()) != top + 1)
            throw ValidationError("chain complex: inconsistent lengths");
        for (int k = 1; k <= top; ++k) {
            if (d[k].rows() != dims[k - 1] || d[k].cols() != dims[k])
                throw ValidationError("chain complex: differential shape mismatch at degree " +
                                      std::to_string(k));
        }
    }

    // d_k . d_{k+1} = 0, checked exactly; failure names the offending degree.
    void check_d_squared() const {
        validate_shapes();
        for (int k = 1; k + 1 <= top; ++k) {
            if (!d[k].multiplied_by(d[k + 1]).is_zero_matrix())
                throw IntegrityError("chain complex: d_" + std::to_string(k) + " . d_" +
                                     std::to_string(k + 1) + " != 0");
        }
    }
};

// h_k = dim_k - rank d_k - rank d_{k+1} with out-of-range ranks zero.
template <class K>
std::vector<long> homology_dims(const ChainComplex<K>& c) {
    static_assert(!std::is_same_v<K, Integer>, "integral complexes use homology_groups_integral");
    c.check_d_squared();
    std::vector<int> r(c.top + 2, 0);
    for (int k = 1; k <= c.top; ++k) r[k] = rank(c.d[k]);
    std::vector<long> h(c.top + 1);
    for (int k = 0; k <= c.top; ++k) h[k] = c.dims[k] - r[k] - r[k + 1];
    return h;
}

std::vector<IntegralHomology> homology_groups_integral(const ChainComplex<Integer>& c);

// Incremental row-space tracker over Q with optional expression tracking:
// each inserted vector may carry tag coordinates, and express() writes its
// argument as a combination of inserted vectors, returning the accumulated
// tag coordinates.  Used to pick homology bases (pivot cycles modulo
// boundaries) and to express mapped cycles in those bases.
class RationalSpan {
public:
    explicit RationalSpan(int ambient_dim, int tag_dim = 0)
        : ambient_(ambient_dim), tag_dim_(tag_dim) {}

    // Returns true if v enlarged the span.
    bool insert(const std::vector<Rational>& v, const std::vector<Rational>& tag = {});
    // Coordinates of v over the inserted tags, or nullopt if v is outside the span.
    std::optional<std::vector<Rational>> express(const std::vector<Rational>& v) const;
    int dim() const { return static_cast<int>(rows_.size()); }

private:
    struct TrackedRow {
        std::vector<std::pair<int, Rational>> v; // sparse, sorted, lead scaled to 1
        std::vector<Rational> tag;
    };
    int ambient_;
    int tag_dim_;
    std::vector<TrackedRow> rows_;
    std::map<int, int> lead_to_row_;
};

// --- triplet text format ------------------------------------------------------
//
// Header "rows cols nnz", then one "row col value" line per entry in
// row-major order, indices 0-based, values exact decimal / p/q strings.
template <class Domain>
void write_triplets(std::ostream& os, const SparseMat<typename Domain::Scalar>& m,
                    const Domain&) {
    os << m.rows() << " " << m.cols() << " " << m.nnz() << "\n";
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(i))
            os << i << " " << j << " " << scalar_to_string(v) << "\n";
}

template <class Domain>
SparseMat<typename Domain::Scalar> read_triplets(std::istream& is, const Domain& dom) {
    long rows, cols;
    std::size_t nnz;
    if (!(is >> rows >> cols >> nnz)) throw ValidationError("triplet file: bad header");
    SparseMat<typename Domain::Scalar> m(static_cast<int>(rows), static_cast<int>(cols));
    for (std::size_t t = 0; t < nnz; ++t) {
        long i, j;
        std::string val;
        if (!(is >> i >> j >> val)) throw ValidationError("triplet file: truncated");
        m.set(static_cast<int>(i), static_cast<int>(j), dom.parse(val));
    }
    return m;
}

} // namespace unistab
