#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plnr/gf.hpp"
#include "support/field_oracle.hpp"

using namespace plnr;

TEST_CASE("default modulus is the lex-smallest monic irreducible") {
    CHECK(make_field(2, 1)->modulus() == std::vector<int>{0, 1});
    CHECK(make_field(3, 1)->modulus() == std::vector<int>{0, 1});
    CHECK(make_field(2, 2)->modulus() == std::vector<int>{1, 1, 1});
    CHECK(make_field(2, 3)->modulus() == std::vector<int>{1, 0, 1, 1});
    CHECK(make_field(3, 2)->modulus() == std::vector<int>{1, 0, 1});
    CHECK(make_field(3, 3)->modulus() == std::vector<int>{1, 0, 2, 1});
    CHECK(make_field(5, 2)->modulus() == std::vector<int>{1, 1, 1});
}

TEST_CASE("GF(4) worked example") {
    auto F = make_field(2, 2);
    REQUIRE(F->q() == 4);
    CHECK(F->mul(2, 2) == 3); // t * t = t + 1
    CHECK(F->mul(2, 3) == 1); // t * (t+1) = 1
    CHECK(F->add(2, 3) == 1);
    CHECK(F->inv(2) == 3);
}

TEST_CASE("multiplication matches the schoolbook oracle") {
    struct Case { int p, m; };
    for (Case c : {Case{2, 2}, Case{2, 3}, Case{2, 4}, Case{3, 2}, Case{3, 3}, Case{5, 2}, Case{7, 1}}) {
        auto F = make_field(c.p, c.m);
        oracle::PolyField O(c.p, c.m, F->modulus());
        REQUIRE(F->q() == O.q);
        for (u32 a = 0; a < F->q(); ++a)
            for (u32 b = 0; b < F->q(); ++b) {
                REQUIRE(F->mul(a, b) == O.mul(a, b));
                REQUIRE(F->add(a, b) == O.add(a, b));
            }
    }
}

TEST_CASE("field axioms hold exhaustively on small fields") {
    for (auto [p, m] : {std::pair{2, 4}, {3, 2}, {5, 1}, {3, 3}}) {
        auto F = make_field(p, m);
        u32 q = F->q();
        for (u32 a = 0; a < q; ++a) {
            CHECK(F->add(a, 0) == a);
            CHECK(F->mul(a, 1) == a);
            CHECK(F->add(a, F->neg(a)) == 0);
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            for (u32 b = 0; b < q; ++b) {
                CHECK(F->add(a, b) == F->add(b, a));
                CHECK(F->mul(a, b) == F->mul(b, a));
            }
        }
        // distributivity and associativity over all triples
        for (u32 a = 0; a < q; ++a)
            for (u32 b = 0; b < q; ++b)
                for (u32 c = 0; c < q; ++c) {
                    REQUIRE(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
                    REQUIRE(F->mul(a, F->mul(b, c)) == F->mul(F->mul(a, b), c));
                    REQUIRE(F->add(a, F->add(b, c)) == F->add(F->add(a, b), c));
                }
    }
}

TEST_CASE("large table-free fields satisfy sampled identities") {
    for (auto [p, m] : {std::pair{2, 17}, {3, 11}}) {
        auto F = make_field(p, m);
        REQUIRE_FALSE(F->has_tables());
        std::mt19937 rng(12345);
        std::uniform_int_distribution<u32> pick(0, F->q() - 1);
        for (int i = 0; i < 200; ++i) {
            u32 a = pick(rng), b = pick(rng), c = pick(rng);
            CHECK(F->mul(a, b) == F->mul(b, a));
            CHECK(F->mul(a, F->mul(b, c)) == F->mul(F->mul(a, b), c));
            CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
            if (a) CHECK(F->mul(a, F->inv(a)) == 1);
            if (a) CHECK(F->pow(a, F->q() - 1) == 1);
        }
    }
}

TEST_CASE("pow conventions and orders") {
    auto F = make_field(3, 4);
    for (u32 a = 1; a < F->q(); ++a) {
        CHECK(F->pow(a, F->q() - 1) == 1);
        CHECK(F->pow(a, 0) == 1);
    }
    CHECK(F->pow(0, 0) == 1);
    CHECK(F->pow(0, 5) == 0);
    // pow agrees with iterated multiplication
    oracle::PolyField O(3, 4, F->modulus());
    std::mt19937 rng(99);
    std::uniform_int_distribution<u32> pick(0, F->q() - 1);
    for (int i = 0; i < 50; ++i) {
        u32 a = pick(rng);
        u64 e = rng() % 1000;
        CHECK(F->pow(a, e) == O.pow(a, e));
    }
    CHECK_THROWS_MATCHES(F->inv(0), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::division_by_zero;
                         }));
}

TEST_CASE("frobenius is additive and fixes the prime field") {
    for (auto [p, m] : {std::pair{2, 8}, {3, 4}}) {
        auto F = make_field(p, m);
        for (u32 a = 0; a < F->q(); ++a)
            for (u32 b = 0; b < F->q(); ++b)
                REQUIRE(F->frobenius(F->add(a, b)) == F->add(F->frobenius(a), F->frobenius(b)));
        for (u32 c = 0; c < static_cast<u32>(p); ++c) CHECK(F->frobenius(c) == c);
    }
}

TEST_CASE("relative trace lands in the subfield and is additive onto it") {
    SECTION("GF(8) over GF(2): x + x^2 + x^4") {
        auto F = make_field(2, 3);
        for (u32 x = 0; x < 8; ++x) {
            u32 expect = F->add(F->add(x, F->pow(x, 2)), F->pow(x, 4));
            CHECK(F->rel_trace(1, x) == expect);
            CHECK(F->rel_trace(1, x) <= 1);
        }
    }
    SECTION("GF(4) over GF(2): generator traces to 1") {
        auto F = make_field(2, 2);
        CHECK(F->rel_trace(1, F->generator()) == 1);
    }
    SECTION("GF(81) over GF(9)") {
        auto F = make_field(3, 4);
        u64 hits = 0;
        for (u32 x = 0; x < F->q(); ++x) {
            u32 t = F->rel_trace(2, x);
            CHECK(F->pow(t, 9) == t); // subfield membership
            if (t == 0) ++hits;
            CHECK(F->rel_trace(2, F->frobenius(x)) == F->frobenius(F->rel_trace(2, x)));
        }
        CHECK(hits == 9); // trace is a 9-to-1 surjection onto GF(9)
        for (u32 a = 0; a < F->q(); ++a)
            for (u32 b = 0; b < 40; ++b)
                REQUIRE(F->rel_trace(2, F->add(a, b)) == F->add(F->rel_trace(2, a), F->rel_trace(2, b)));
    }
    SECTION("non-divisor degree is rejected") {
        auto F = make_field(2, 3);
        CHECK_THROWS_AS(F->rel_trace(2, 1), error);
    }
}

TEST_CASE("digit round-trips") {
    auto F = make_field(3, 3);
    for (u32 a = 0; a < F->q(); ++a) {
        auto d = F->to_digits(a);
        CHECK(F->from_digits(d) == a);
        // addition is digit-wise mod p
        for (u32 b = 0; b < F->q(); ++b) {
            auto db = F->to_digits(b);
            auto ds = F->to_digits(F->add(a, b));
            for (int i = 0; i < 3; ++i) REQUIRE(ds[i] == (d[i] + db[i]) % 3);
        }
    }
}

TEST_CASE("field spec strings") {
    auto F = make_field(3, 2);
    CHECK(F->spec() == "3^2/1,0,1");
    auto G = parse_field_spec(F->spec());
    CHECK(G->same_as(*F));
    CHECK(parse_field_spec("3^2")->same_as(*F));
    CHECK(parse_field_spec("7")->q() == 7);
    CHECK_THROWS_AS(parse_field_spec("4^2"), error);
    CHECK_THROWS_AS(parse_field_spec("banana"), error);
    CHECK_THROWS_AS(parse_field_spec("2^2/1,1"), error);     // wrong length
    CHECK_THROWS_AS(parse_field_spec("2^2/0,0,1"), error);   // x^2 reducible
    CHECK_THROWS_AS(parse_field_spec("2^21"), error);        // beyond supported order
}

TEST_CASE("constructor rejections") {
    CHECK_THROWS_MATCHES(make_field(6, 1), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::non_prime;
                         }));
    CHECK_THROWS_AS(make_field(1, 1), error);
    std::vector<int> sq{0, 0, 1};
    CHECK_THROWS_MATCHES(make_field(2, 2, sq), error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::reducible_modulus;
                         }));
    std::vector<int> nonmonic{1, 1, 2};
    CHECK_THROWS_AS(make_field(3, 2, nonmonic), error);
}

TEST_CASE("FieldElem operators enforce matching fields") {
    auto F = make_field(3, 2);
    auto G = make_field(2, 2);
    FieldElem a(F, 4), b(F, 7), c(G, 2);
    CHECK((a + b).v == F->add(4, 7));
    CHECK((a * b).v == F->mul(4, 7));
    CHECK((a - b + b) == a);
    CHECK(((a / b) * b) == a);
    CHECK_THROWS_MATCHES(a + c, error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::field_mismatch;
                         }));
}
