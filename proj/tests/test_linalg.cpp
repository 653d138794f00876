#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "oracles.hpp"
#include "unistab/linalg.hpp"

using namespace unistab;

namespace {

SparseMat<Rational> from_rows(const std::vector<std::vector<long>>& rows, int cols) {
    SparseMat<Rational> m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j)
            if (rows[i][j] != 0) m.set(static_cast<int>(i), j, Rational(rows[i][j]));
    return m;
}

SparseMat<Integer> zmat(const std::vector<std::vector<long>>& rows, int cols) {
    SparseMat<Integer> m(static_cast<int>(rows.size()), cols);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < cols; ++j)
            if (rows[i][j] != 0) m.set(static_cast<int>(i), j, Integer(rows[i][j]));
    return m;
}

} // namespace

TEST_CASE("rank basics") {
    CHECK(rank(SparseMat<Rational>(3, 3)) == 0);
    auto id4 = SparseMat<Fp>::identity(4, Fp(1, 2));
    CHECK(rank(id4) == 4);
    CHECK(rank(from_rows({{1, 2}, {2, 4}}, 2)) == 1);
    CHECK_THROWS_AS(rank(SparseMat<Integer>(2, 2)), UnsupportedError);
}

TEST_CASE("fraction-free rank equals naive rational elimination on random sparse matrices") {
    std::mt19937_64 rng(20240915);
    for (int t = 0; t < 60; ++t) {
        int r = 1 + static_cast<int>(rng() % 50);
        int c = 1 + static_cast<int>(rng() % 50);
        auto m = oracles::random_sparse(rng, r, c, 0.15, 3);
        CHECK(rank(m) == oracles::naive_rank(m));
    }
}

TEST_CASE("rank handles rational entries") {
    SparseMat<Rational> m(2, 2);
    m.set(0, 0, Rational(1, 2));
    m.set(0, 1, Rational(1, 3));
    m.set(1, 0, Rational(3, 2));
    m.set(1, 1, Rational(1, 1));
    CHECK(rank(m) == oracles::naive_rank(m));
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(SparseMat<Rational>::identity(3, Rational(1))).empty());
    CHECK(kernel_basis(SparseMat<Rational>(2, 3)).size() == 3);

    // [[1,1,0]] over F_2: kernel enumerated over F_2^3 directly
    SparseMat<Fp> m(1, 3);
    m.set(0, 0, Fp(1, 2));
    m.set(0, 1, Fp(1, 2));
    auto basis = kernel_basis(m);
    REQUIRE(basis.size() == 2);
    int annihilated = 0;
    for (int x = 0; x < 8; ++x) {
        std::vector<Fp> v{Fp(x & 1, 2), Fp((x >> 1) & 1, 2), Fp((x >> 2) & 1, 2)};
        Fp dot = v[0] + v[1]; // row . v
        if (dot.is_zero()) ++annihilated;
    }
    CHECK(annihilated == 4); // kernel has 2^2 elements, matching a 2-dim basis
    for (const auto& v : basis) {
        Fp dot = v[0] + v[1];
        CHECK(dot.is_zero());
    }
}

TEST_CASE("kernel count = cols - rank on random matrices") {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 30; ++t) {
        int r = 1 + static_cast<int>(rng() % 20);
        int c = 1 + static_cast<int>(rng() % 20);
        auto m = oracles::random_sparse(rng, r, c, 0.3, 2);
        auto ker = kernel_basis(m);
        CHECK(static_cast<int>(ker.size()) == c - rank(m));
        for (const auto& v : ker) {
            auto y = m.apply(v, Rational(0));
            for (const auto& x : y) CHECK(sgn(x) == 0);
        }
    }
}

TEST_CASE("snf frozen examples") {
    // [[2,4],[6,8]]: by hand, d1 = gcd = 2 and d1*d2 = |det| = 8
    auto m = zmat({{2, 4}, {6, 8}}, 2);
    auto s = snf(m);
    REQUIRE(s.divisors.size() == 2);
    CHECK(s.divisors[0] == 2);
    CHECK(s.divisors[1] == 4);
    CHECK(verify_snf(m, s));

    auto id = SparseMat<Integer>::identity(5, Integer(1));
    auto si = snf(id);
    for (const auto& d : si.divisors) CHECK(d == 1);
    CHECK(verify_snf(id, si));

    auto z = zmat({{0}}, 1);
    auto sz = snf(z);
    CHECK(sz.divisors[0] == 0);
    CHECK(verify_snf(z, sz));
}

TEST_CASE("snf transforms are unimodular and divisors chain on random matrices") {
    std::mt19937_64 rng(5150);
    std::uniform_int_distribution<int> dim(1, 8), entry(-6, 6);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 40; ++t) {
        int r = dim(rng), c = dim(rng);
        SparseMat<Integer> m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (u(rng) < 0.5) m.set(i, j, Integer(entry(rng)));
        auto s = snf(m);
        CHECK(verify_snf(m, s));
    }
}

TEST_CASE("rational rank equals count of nonzero snf divisors") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> dim(1, 10), entry(-5, 5);
    std::uniform_real_distribution<double> u(0, 1);
    for (int t = 0; t < 30; ++t) {
        int r = dim(rng), c = dim(rng);
        SparseMat<Integer> mi(r, c);
        SparseMat<Rational> mq(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (u(rng) < 0.4) {
                    int v = entry(rng);
                    mi.set(i, j, Integer(v));
                    mq.set(i, j, Rational(v));
                }
        CHECK(rank(mq) == snf(mi).nonzero_count());
    }
}

TEST_CASE("homology dims: zero differentials give dims back") {
    ChainComplex<Rational> c;
    c.top = 3;
    c.dims = {2, 5, 4, 1};
    c.d.resize(4);
    c.d[1] = SparseMat<Rational>(2, 5);
    c.d[2] = SparseMat<Rational>(5, 4);
    c.d[3] = SparseMat<Rational>(4, 1);
    auto h = homology_dims(c);
    CHECK(h == std::vector<long>{2, 5, 4, 1});
}

TEST_CASE("homology euler characteristic is automatic") {
    // any valid complex: sum (-1)^k h_k = sum (-1)^k dim_k
    std::mt19937_64 rng(8);
    ChainComplex<Rational> c;
    c.top = 2;
    c.dims = {3, 4, 2};
    c.d.resize(3);
    // d1 random, then d2 in the kernel of d1 to keep d.d = 0
    c.d[1] = oracles::random_sparse(rng, 3, 4, 0.5, 2);
    auto ker = kernel_basis(c.d[1]);
    SparseMat<Rational> d2(4, 2);
    for (int j = 0; j < 2 && j < static_cast<int>(ker.size()); ++j)
        for (int i = 0; i < 4; ++i)
            if (sgn(ker[j][i]) != 0) d2.set(i, j, ker[j][i]);
    c.d[2] = d2;
    auto h = homology_dims(c);
    long lhs = 0, rhs = 0;
    for (int k = 0; k <= 2; ++k) {
        lhs += (k % 2 ? -1 : 1) * h[k];
        rhs += (k % 2 ? -1 : 1) * c.dims[k];
    }
    CHECK(lhs == rhs);
}

TEST_CASE("homology integrity failure names the degree") {
    ChainComplex<Rational> c;
    c.top = 2;
    c.dims = {1, 1, 1};
    c.d.resize(3);
    c.d[1] = SparseMat<Rational>(1, 1);
    c.d[1].set(0, 0, Rational(1));
    c.d[2] = SparseMat<Rational>(1, 1);
    c.d[2].set(0, 0, Rational(1));
    CHECK_THROWS_WITH_AS(homology_dims(c), doctest::Contains("d_1"), IntegrityError);
}

TEST_CASE("homology dims invariant under simultaneous basis permutation") {
    // permute degree-1 basis of the Koszul-like complex and compare
    std::mt19937_64 rng(77);
    ChainComplex<Rational> c;
    c.top = 2;
    c.dims = {3, 6, 4};
    c.d.resize(3);
    c.d[1] = oracles::random_sparse(rng, 3, 6, 0.4, 2);
    auto ker = kernel_basis(c.d[1]);
    SparseMat<Rational> d2(6, 4);
    for (int j = 0; j < 4 && j < static_cast<int>(ker.size()); ++j)
        for (int i = 0; i < 6; ++i)
            if (sgn(ker[j][i]) != 0) d2.set(i, j, ker[j][i]);
    c.d[2] = d2;
    auto h0 = homology_dims(c);

    std::vector<int> perm{3, 0, 5, 1, 4, 2}; // permutation of degree-1 basis
    ChainComplex<Rational> p = c;
    p.d[1] = SparseMat<Rational>(3, 6);
    p.d[2] = SparseMat<Rational>(6, 4);
    for (int i = 0; i < 3; ++i)
        for (const auto& [j, v] : c.d[1].row(i)) p.d[1].set(i, perm[j], v);
    for (int i = 0; i < 6; ++i)
        for (const auto& [j, v] : c.d[2].row(i)) p.d[2].set(perm[i], j, v);
    CHECK(homology_dims(p) == h0);
}

TEST_CASE("integral homology of a zero complex has free ranks = dims") {
    ChainComplex<Integer> c;
    c.top = 2;
    c.dims = {2, 3, 1};
    c.d.resize(3);
    c.d[1] = SparseMat<Integer>(2, 3);
    c.d[2] = SparseMat<Integer>(3, 1);
    auto h = homology_groups_integral(c);
    CHECK(h[0].free_rank == 2);
    CHECK(h[1].free_rank == 3);
    CHECK(h[2].free_rank == 1);
    for (const auto& g : h) CHECK(g.torsion.empty());
}

TEST_CASE("integral homology detects torsion: multiplication by 2") {
    // 0 -> Z --2--> Z -> 0 : H_0 = Z/2, H_1 = 0
    ChainComplex<Integer> c;
    c.top = 1;
    c.dims = {1, 1};
    c.d.resize(2);
    c.d[1] = zmat({{2}}, 1);
    auto h = homology_groups_integral(c);
    CHECK(h[0].free_rank == 0);
    REQUIRE(h[0].torsion.size() == 1);
    CHECK(h[0].torsion[0] == 2);
    CHECK(h[1].free_rank == 0);
    CHECK(h[1].torsion.empty());
}

TEST_CASE("triplet io round trip") {
    std::mt19937_64 rng(4242);
    auto m = oracles::random_sparse(rng, 7, 9, 0.3, 5);
    m.set(0, 0, Rational(7, 3));
    std::stringstream ss;
    write_triplets(ss, m, QDomain{});
    auto back = read_triplets(ss, QDomain{});
    CHECK(back == m);
}

TEST_CASE("RationalSpan expresses vectors in tracked coordinates") {
    RationalSpan span(3, 2);
    span.insert({Rational(1), Rational(0), Rational(0)}, {Rational(0), Rational(0)}); // untracked dir
    span.insert({Rational(0), Rational(1), Rational(0)}, {Rational(1), Rational(0)});
    span.insert({Rational(0), Rational(0), Rational(1)}, {Rational(0), Rational(1)});
    auto c = span.express({Rational(5), Rational(2), Rational(-3)});
    REQUIRE(c.has_value());
    CHECK((*c)[0] == Rational(2));
    CHECK((*c)[1] == Rational(-3));

    RationalSpan small(2, 0);
    small.insert({Rational(1), Rational(1)});
    CHECK_FALSE(small.express({Rational(1), Rational(0)}).has_value());
}
