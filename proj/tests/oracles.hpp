#pragma once

// Test-side oracles, kept independent of the library's production paths.

#include <algorithm>
#include <random>
#include <vector>

#include "unistab/linalg.hpp"
#include "unistab/ring.hpp"

namespace oracles {

using unistab::Fp;
using unistab::Integer;
using unistab::Rational;
using unistab::SparseMat;

// Naive dense rational Gaussian elimination; the production rank path is
// fraction-free, this one is not.
inline int naive_rank(const SparseMat<Rational>& m) {
    std::vector<std::vector<Rational>> a(m.rows(), std::vector<Rational>(m.cols(), Rational(0)));
    for (int i = 0; i < m.rows(); ++i)
        for (const auto& [j, v] : m.row(i)) a[i][j] = v;
    int rank = 0;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (sgn(a[i][col]) != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(a[p], a[row]);
        Rational inv = Rational(1) / a[row][col];
        for (int j = col; j < m.cols(); ++j) a[row][j] *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || sgn(a[i][col]) == 0) continue;
            Rational f = a[i][col];
            for (int j = col; j < m.cols(); ++j) a[i][j] -= f * a[row][j];
        }
        ++row;
        ++rank;
    }
    return rank;
}

inline SparseMat<Rational> random_sparse(std::mt19937_64& rng, int rows, int cols,
                                         double density, int entry_range) {
    SparseMat<Rational> m(rows, cols);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> e(-entry_range, entry_range);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (u(rng) < density) m.set(i, j, Rational(e(rng)));
    return m;
}

// Subgroup generated by a set, by closure under multiplication.
inline std::vector<int> subgroup_closure(const std::vector<std::vector<int>>& mul,
                                         std::vector<int> gens, int id) {
    std::vector<char> in(mul.size(), 0);
    std::vector<int> members;
    auto push = [&](int g) {
        if (!in[g]) {
            in[g] = 1;
            members.push_back(g);
        }
    };
    push(id);
    for (int g : gens) push(g);
    for (std::size_t a = 0; a < members.size(); ++a)
        for (std::size_t b = 0; b < members.size(); ++b) {
            push(mul[members[a]][members[b]]);
            push(mul[members[b]][members[a]]);
        }
    std::sort(members.begin(), members.end());
    return members;
}

// dim H_1(G, F_p) = log_p |G / <commutators, p-th powers>|, computed by brute
// force from the multiplication table.
inline int h1_dim_oracle(const std::vector<std::vector<int>>& mul, const std::vector<int>& inv,
                         int id, int p) {
    const int n = static_cast<int>(mul.size());
    std::vector<int> gens;
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b)
            gens.push_back(mul[mul[a][b]][mul[inv[a]][inv[b]]]); // a b a^-1 b^-1
        int pw = id;
        for (int t = 0; t < p; ++t) pw = mul[pw][a];
        gens.push_back(pw);
    }
    auto sub = subgroup_closure(mul, gens, id);
    int quotient = n / static_cast<int>(sub.size());
    int dim = 0;
    while (quotient > 1) {
        if (quotient % p != 0) throw std::runtime_error("h1 oracle: quotient not a p-power");
        quotient /= p;
        ++dim;
    }
    return dim;
}

// Count permutations of [n] by inversion number, by direct enumeration.
inline std::vector<long> inversions_by_enumeration(int n) {
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    std::vector<long> count(n * (n - 1) / 2 + 1, 0);
    do {
        int inv = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (perm[i] > perm[j]) ++inv;
        ++count[inv];
    } while (std::next_permutation(perm.begin(), perm.end()));
    return count;
}

} // namespace oracles
