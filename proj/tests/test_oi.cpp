#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "unistab/oi.hpp"

using namespace unistab;

TEST_CASE("composition pointwise application") {
    OIMorphism f(2, 3, {1, 3});
    OIMorphism g(3, 5, {2, 3, 5});
    OIMorphism gf = compose(g, f);
    CHECK(gf.image == std::vector<int>{2, 5});
    CHECK(compose(OIMorphism::identity(3), f) == f);
    CHECK(compose(f, OIMorphism::identity(2)) == f);
    CHECK_THROWS_AS(compose(f, g), ValidationError);
}

TEST_CASE("composition associativity on random triples") {
    std::mt19937_64 rng(11);
    auto random_mor = [&](int n, int m) {
        auto all = enumerate_hom(n, m);
        return all[rng() % all.size()];
    };
    for (int t = 0; t < 200; ++t) {
        int a = 1 + static_cast<int>(rng() % 4);
        int b = a + static_cast<int>(rng() % 3);
        int c = b + static_cast<int>(rng() % 3);
        int d = c + static_cast<int>(rng() % 3);
        OIMorphism f = random_mor(a, b), g = random_mor(b, c), h = random_mor(c, d);
        CHECK(compose(h, compose(g, f)) == compose(compose(h, g), f));
    }
}

TEST_CASE("hom enumeration and counts") {
    CHECK(enumerate_hom(2, 4).size() == 6);
    CHECK(count_hom(2, 4) == 6);
    CHECK(enumerate_hom(0, 5).size() == 1);
    CHECK(enumerate_hom(3, 2).empty());
    CHECK(count_hom(3, 2) == 0);

    // lexicographic order is part of the contract
    auto h = enumerate_hom(2, 3);
    REQUIRE(h.size() == 3);
    CHECK(h[0].image == std::vector<int>{1, 2});
    CHECK(h[1].image == std::vector<int>{1, 3});
    CHECK(h[2].image == std::vector<int>{2, 3});
}

TEST_CASE("count_hom matches exhaustive enumeration up to 12") {
    for (int n = 0; n <= 12; ++n)
        for (int m = n; m <= 12; ++m)
            CHECK(count_hom(n, m) == enumerate_hom(n, m).size());
}

TEST_CASE("split/merge frozen examples") {
    CHECK(split_oid(OIdObject(4, {2})) == std::vector<int>{1, 2});
    CHECK(split_oid(OIdObject(3, {})) == std::vector<int>{3});
    CHECK(split_oid(OIdObject(3, {1, 2, 3})) == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("split/merge are mutually inverse on all objects with n <= 8, d <= 3") {
    for (int n = 0; n <= 8; ++n)
        for (int d = 0; d <= 3; ++d)
            for (const auto& marks : increasing_tuples(d, n)) {
                OIdObject o(n, marks);
                CHECK(merge_oid(split_oid(o)) == o);
            }
    // and the other direction on size tuples
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3; ++b)
            for (int c = 0; c <= 3; ++c) {
                std::vector<int> sizes{a, b, c};
                CHECK(split_oid(merge_oid(sizes)) == sizes);
            }
}

TEST_CASE("marked hom counts factor through gap blocks") {
    for (int n = 0; n <= 6; ++n)
        for (int m = n; m <= 6; ++m)
            for (int d = 0; d <= 2; ++d)
                for (const auto& la : increasing_tuples(d, n))
                    for (const auto& mu : increasing_tuples(d, m)) {
                        OIdObject a(n, la), b(m, mu);
                        CHECK(enumerate_hom_oid(a, b).size() == count_hom_oid(a, b));
                    }
}

TEST_CASE("kan extension dimension formula") {
    // d = 1, constant dimension 1: Phi_!(M)_n = n
    OidDimTable t;
    t.d = 1;
    t.n0 = 0;
    t.n_max = 6;
    for (int n = 0; n <= 6; ++n)
        for (const auto& marks : increasing_tuples(1, n)) t.dims[OIdObject(n, marks)] = 1;
    auto k = kan_dims(t);
    for (int n = 0; n <= 6; ++n) CHECK(k[n] == n);

    // d = 0 is the identity on sequences
    OidDimTable t0;
    t0.d = 0;
    t0.n0 = 0;
    t0.n_max = 5;
    for (int n = 0; n <= 5; ++n) t0.dims[OIdObject(n, {})] = 3 * n + 1;
    auto k0 = kan_dims(t0);
    for (int n = 0; n <= 5; ++n) CHECK(k0[n] == 3 * n + 1);

    // d = 2, constant 1, n = 4 -> C(4,2) = 6
    OidDimTable t2;
    t2.d = 2;
    t2.n0 = 4;
    t2.n_max = 4;
    for (const auto& marks : increasing_tuples(2, 4)) t2.dims[OIdObject(4, marks)] = 1;
    CHECK(kan_dims(t2) == std::vector<long>{6});

    // missing entries are an error
    OidDimTable bad = t2;
    bad.dims.erase(OIdObject(4, {1, 2}));
    CHECK_THROWS_AS(kan_dims(bad), ValidationError);
}

TEST_CASE("shift decomposition identity") {
    // d = 1, constant 1: (n+1) = n + 1
    OidDimTable t;
    t.d = 1;
    t.n0 = 0;
    t.n_max = 5;
    for (int n = 0; n <= 5; ++n)
        for (const auto& marks : increasing_tuples(1, n)) t.dims[OIdObject(n, marks)] = 1;
    CHECK(check_shift_decomposition(t));

    // d = 0: Delta = 0 and the identity is trivial
    OidDimTable t0;
    t0.d = 0;
    t0.n0 = 0;
    t0.n_max = 4;
    for (int n = 0; n <= 4; ++n) t0.dims[OIdObject(n, {})] = n * n + 2;
    CHECK(check_shift_decomposition(t0));
}

TEST_CASE("shift decomposition on random tables always holds") {
    std::mt19937_64 rng(314159);
    for (int trial = 0; trial < 100; ++trial) {
        OidDimTable t;
        t.d = static_cast<int>(rng() % 3);
        t.n0 = 0;
        t.n_max = 2 + static_cast<int>(rng() % 5);
        for (int n = 0; n <= t.n_max; ++n)
            for (const auto& marks : increasing_tuples(t.d, n))
                t.dims[OIdObject(n, marks)] = static_cast<long>(rng() % 7);
        CHECK(check_shift_decomposition(t));
    }
}

namespace {

// The free OI-module P_1: dims C(n,1) = n, morphism matrices act on basis
// Hom([1],[n]) by postcomposition.
TabulatedOIModule principal_p1(int n_max) {
    TabulatedOIModule t;
    t.n_max = n_max;
    t.dims.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) t.dims[n] = n;
    for (int k = 0; k <= n_max; ++k)
        for (int m = k; m <= n_max; ++m)
            for (const auto& f : enumerate_hom(k, m)) {
                SparseMat<Rational> mat(m, k);
                for (int b = 1; b <= k; ++b) mat.set(f(b) - 1, b - 1, Rational(1));
                t.maps.emplace(f, std::move(mat));
            }
    return t;
}

} // namespace

TEST_CASE("fg witness on the principal projective P_1") {
    auto p1 = principal_p1(6);
    p1.check_functoriality();
    auto w = fg_witness(p1, 1, 6);
    for (int n = 0; n <= 6; ++n) CHECK(w[n]);
}

TEST_CASE("fg witness fails on an isolated top class") {
    TabulatedOIModule t;
    t.n_max = 3;
    t.dims = {0, 0, 0, 1};
    for (int k = 0; k <= 3; ++k)
        for (int m = k; m <= 3; ++m)
            for (const auto& f : enumerate_hom(k, m))
                t.maps.emplace(f, SparseMat<Rational>(static_cast<int>(t.dims[m]),
                                                      static_cast<int>(t.dims[k])));
    auto w = fg_witness(t, 2, 3);
    CHECK(w[0]);
    CHECK(w[1]);
    CHECK(w[2]);
    CHECK_FALSE(w[3]);
}

TEST_CASE("broken functoriality is detected") {
    auto p1 = principal_p1(3);
    OIMorphism f(1, 2, {2});
    SparseMat<Rational> wrong(2, 1);
    wrong.set(0, 0, Rational(1)); // should be row 1
    p1.maps[f] = wrong;
    CHECK_THROWS_AS(p1.check_functoriality(), IntegrityError);
}

TEST_CASE("tabulated module save/load round trip") {
    auto p1 = principal_p1(3);
    std::string dir = "oi_module_roundtrip_tmp";
    p1.save(dir);
    auto back = TabulatedOIModule::load(dir);
    CHECK(back.n_max == p1.n_max);
    CHECK(back.dims == p1.dims);
    REQUIRE(back.maps.size() == p1.maps.size());
    for (const auto& [f, m] : p1.maps) CHECK(back.map_of(f) == m);
}
