#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "unistab/ring.hpp"

using namespace unistab;

TEST_CASE("every builtin passes validation") {
    for (const char* name : {"Z", "Zi", "M2Z", "F2", "F3", "F4", "Z/4", "Z/6"}) {
        Ring r = Ring::builtin(name);
        ValidationReport rep = r.validate();
        INFO("ring ", name);
        CHECK(rep.all_ok());
    }
}

TEST_CASE("unit law failure is detected: b*b = 2b") {
    Ring r = Ring::free_additive(1, {1}, {{{2}}});
    ValidationReport rep = r.validate();
    CHECK(rep.structurally_ok());
    bool unit_ok = true;
    for (const auto& a : rep.axioms)
        if (a.axiom == "unit laws") unit_ok = a.ok;
    CHECK_FALSE(unit_ok);
}

TEST_CASE("malformed tables give structural errors, not axiom failures") {
    // 2x3 addition table
    Ring r = Ring::finite_tables(2, {{0, 1, 0}, {1, 0, 1}}, {{0, 0}, {0, 1}}, 0, 1);
    ValidationReport rep = r.validate();
    CHECK_FALSE(rep.structurally_ok());
    CHECK(rep.axioms.empty());

    Ring r2 = Ring::finite_tables(2, {{0, 5}, {1, 0}}, {{0, 0}, {0, 1}}, 0, 1);
    CHECK_FALSE(r2.validate().structurally_ok());
}

TEST_CASE("positive cone") {
    Ring z = Ring::integers();
    CHECK(z.in_positive_cone(RingElem{{3}}));
    CHECK_FALSE(z.in_positive_cone(RingElem{{-1}}));
    CHECK(z.in_positive_cone(z.zero()));

    Ring zi = Ring::gaussian_integers();
    CHECK_FALSE(zi.in_positive_cone(RingElem{{2, -1}}));
    CHECK(zi.in_positive_cone(RingElem{{2, 1}}));

    CHECK_THROWS_AS(Ring::finite_prime(2).in_positive_cone(RingElem{{1}}), UnsupportedError);
}

TEST_CASE("cone closed under addition, zero in cone") {
    Ring zi = Ring::gaussian_integers();
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::int64_t> u(0, 20);
    for (int t = 0; t < 200; ++t) {
        RingElem a{{u(rng), u(rng)}};
        RingElem b{{u(rng), u(rng)}};
        CHECK(zi.in_positive_cone(zi.add(a, b)));
    }
}

TEST_CASE("enumerate finite rings: 0 first, 1 second") {
    Ring f2 = Ring::finite_prime(2);
    auto e2 = f2.enumerate();
    REQUIRE(e2.size() == 2);
    CHECK(e2[0] == f2.zero());
    CHECK(e2[1] == f2.one());

    Ring f3 = Ring::finite_prime(3);
    auto e3 = f3.enumerate();
    REQUIRE(e3.size() == 3);
    CHECK(e3[0].c[0] == 0);
    CHECK(e3[1].c[0] == 1);
    CHECK(e3[2].c[0] == 2);

    Ring z4 = Ring::zmod(4);
    auto e4 = z4.enumerate();
    REQUIRE(e4.size() == 4);
    CHECK(e4[0] == z4.zero());
    CHECK(e4[1] == z4.one());

    CHECK_THROWS_AS(Ring::integers().enumerate(), UnsupportedError);
}

TEST_CASE("free-additive arithmetic agrees with structure-constant evaluation") {
    // random triples, checking bilinearity/distributivity and associativity
    for (const char* name : {"Z", "Zi", "M2Z"}) {
        Ring r = Ring::builtin(name);
        std::mt19937_64 rng(42);
        std::uniform_int_distribution<std::int64_t> u(-4, 4);
        auto rnd = [&] {
            RingElem e = r.zero();
            for (auto& c : e.c) c = u(rng);
            return e;
        };
        for (int t = 0; t < 1000; ++t) {
            RingElem a = rnd(), b = rnd(), c = rnd();
            CHECK(r.mul(a, r.add(b, c)) == r.add(r.mul(a, b), r.mul(a, c)));
            CHECK(r.mul(r.add(a, b), c) == r.add(r.mul(a, c), r.mul(b, c)));
            CHECK(r.mul(r.mul(a, b), c) == r.mul(a, r.mul(b, c)));
        }
    }
}

TEST_CASE("M2Z is noncommutative, Zi is commutative") {
    CHECK_FALSE(Ring::mat2_integers().commutative());
    CHECK(Ring::gaussian_integers().commutative());
    CHECK(Ring::f4().commutative());
}

TEST_CASE("json round trip preserves the spec") {
    for (const char* name : {"Z", "Zi", "M2Z", "F2", "F4", "Z/4"}) {
        Ring r = Ring::builtin(name);
        Ring back = Ring::from_json_string(r.to_json());
        CHECK(back.to_json() == r.to_json());
        CHECK(back.validate().all_ok());
    }
}

TEST_CASE("json field names are bit-exact") {
    Ring z = Ring::integers();
    auto j = z.to_json();
    CHECK(j.find("\"kind\":\"free_additive\"") != std::string::npos);
    CHECK(j.find("\"rank\"") != std::string::npos);
    CHECK(j.find("\"unit\"") != std::string::npos);
    CHECK(j.find("\"structure\"") != std::string::npos);

    auto jp = Ring::finite_prime(5).to_json();
    CHECK(jp.find("\"kind\":\"finite_prime\"") != std::string::npos);
    CHECK(jp.find("\"p\":5") != std::string::npos);

    auto jt = Ring::zmod(4).to_json();
    CHECK(jt.find("\"kind\":\"finite_tables\"") != std::string::npos);
    for (const char* key : {"\"n\"", "\"add\"", "\"mul\"", "\"zero\"", "\"one\""})
        CHECK(jt.find(key) != std::string::npos);
}

TEST_CASE("F4 multiplicative structure") {
    Ring f4 = Ring::f4();
    // nonzero elements form a cyclic group of order 3
    int a = 2;
    CHECK(f4.mul_idx(a, a) == 3);
    CHECK(f4.mul_idx(a, f4.mul_idx(a, a)) == 1);
    for (int x = 1; x < 4; ++x) CHECK(f4.is_unit_idx(x));
    CHECK_FALSE(f4.is_unit_idx(0));
}

TEST_CASE("zmod units") {
    Ring z4 = Ring::zmod(4);
    CHECK(z4.is_unit_idx(1));
    CHECK(z4.is_unit_idx(3));
    CHECK_FALSE(z4.is_unit_idx(0));
    CHECK_FALSE(z4.is_unit_idx(2));
}
