#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "plnr/groups.hpp"

using namespace plnr;

namespace {

void check_group_axioms(const GroupPtr& G) {
    u32 n = static_cast<u32>(G->order());
    for (u32 a = 0; a < n; ++a) {
        REQUIRE(G->op(G->id(), a) == a);
        REQUIRE(G->op(a, G->id()) == a);
        REQUIRE(G->op(a, G->inv(a)) == G->id());
        REQUIRE(G->op(G->inv(a), a) == G->id());
    }
    for (u32 a = 0; a < n; ++a)
        for (u32 b = 0; b < n; ++b)
            for (u32 c = 0; c < n; ++c)
                REQUIRE(G->op(G->op(a, b), c) == G->op(a, G->op(b, c)));
}

std::vector<u64> random_symmetric_form(int m, std::mt19937_64& rng, bool want_alternating) {
    while (true) {
        std::vector<u64> rows(static_cast<size_t>(m), 0);
        for (int i = 0; i < m; ++i)
            for (int j = want_alternating ? i + 1 : i; j < m; ++j)
                if (rng() & 1) {
                    rows[static_cast<size_t>(i)] |= u64{1} << j;
                    rows[static_cast<size_t>(j)] |= u64{1} << i;
                }
        if (f2::is_alternating(rows) == want_alternating) return rows;
    }
}

} // namespace

TEST_CASE("product group arithmetic") {
    auto Z8 = Group::product({8});
    CHECK(Z8->op(5, 6) == 3);
    CHECK(Z8->inv(3) == 5);
    CHECK(Z8->pow(3, 5) == 7); // 15 mod 8
    CHECK(Z8->element_order(1) == 8);
    CHECK(Z8->element_order(2) == 4);
    CHECK(Z8->element_order(4) == 2);
    CHECK(Z8->element_order(0) == 1);

    auto G = Group::product({4, 4});
    CHECK(G->from_tuple({1, 3}) == 13);
    CHECK(G->to_tuple(13) == std::vector<u64>{1, 3});
    CHECK(G->op(G->from_tuple({1, 3}), G->from_tuple({3, 2})) == G->from_tuple({0, 1}));
    CHECK(G->element_to_string(13) == "(1,3)");
    CHECK_THROWS_AS(G->from_tuple({1, 4}), error);
    CHECK_THROWS_AS(G->op(0, 16), error); // out of range
    CHECK(G->is_abelian());

    check_group_axioms(Group::product({6}));
    check_group_axioms(Group::product({2, 3, 4}));
}

TEST_CASE("cocycle group with field-product beta") {
    auto F3 = make_field(3, 1);
    auto G = Group::cocycle_field_product(F3);
    CHECK(G->order() == 9);
    u32 g10 = G->pair_enc(1, 0);
    CHECK(G->op(g10, g10) == G->pair_enc(2, 1)); // 1+1=2, 0+0+1*1=1
    CHECK(G->element_to_string(G->pair_enc(2, 1)) == "(2,1)");
    CHECK(G->inv(g10) == G->pair_enc(2, 1)); // (-1, -0 + 1*1)
    check_group_axioms(G);

    // associativity exhaustive for |G| <= 512
    check_group_axioms(Group::cocycle_field_product(make_field(2, 2)));
    check_group_axioms(Group::cocycle_field_product(make_field(2, 3)));
    check_group_axioms(Group::cocycle_field_product(make_field(2, 4)));
    check_group_axioms(Group::cocycle_field_product(make_field(3, 2)));
    check_group_axioms(Group::cocycle_zero(make_field(3, 2)));
    check_group_axioms(Group::cocycle_form(make_field(2, 3), {1, 2, 4}));
    check_group_axioms(Group::cocycle_form(make_field(2, 4), {0b11, 0b01, 0b1100, 0b0100}));

    SECTION("beta biadditivity, exhaustively") {
        for (auto G2 : {Group::cocycle_field_product(make_field(2, 6)),
                        Group::cocycle_field_product(make_field(3, 3)),
                        Group::cocycle_form(make_field(2, 5), {3, 1, 16, 24, 12})}) {
            u32 q = G2->field()->q();
            const FiniteField& F = *G2->field();
            for (u32 x = 0; x < q; ++x)
                for (u32 a = 0; a < q; ++a)
                    for (u32 b = 0; b < q; ++b) {
                        u32 lhs = G2->beta_val(x, F.add(a, b));
                        u32 rhs_sum = G2->ysize() == q ? F.add(G2->beta_val(x, a), G2->beta_val(x, b))
                                                       : (G2->beta_val(x, a) ^ G2->beta_val(x, b));
                        REQUIRE(lhs == rhs_sum);
                        u32 lhs2 = G2->beta_val(F.add(a, b), x);
                        u32 rhs2 = G2->ysize() == q ? F.add(G2->beta_val(a, x), G2->beta_val(b, x))
                                                    : (G2->beta_val(a, x) ^ G2->beta_val(b, x));
                        REQUIRE(lhs2 == rhs2);
                    }
        }
    }

    SECTION("table beta reproduces the field-product group") {
        auto F = make_field(2, 3);
        u32 q = F->q();
        auto tab = std::make_shared<std::vector<u32>>(static_cast<size_t>(q) * q);
        for (u32 x = 0; x < q; ++x)
            for (u32 y = 0; y < q; ++y) (*tab)[static_cast<size_t>(x) * q + y] = F->mul(x, y);
        auto Gt = Group::cocycle_table(F, tab);
        auto Gf = Group::cocycle_field_product(F);
        for (u32 a = 0; a < Gt->order(); ++a) {
            REQUIRE(Gt->inv(a) == Gf->inv(a));
            for (u32 b = 0; b < Gt->order(); ++b) REQUIRE(Gt->op(a, b) == Gf->op(a, b));
        }
    }
}

TEST_CASE("element order census") {
    auto G44 = Group::product({4, 4});
    auto c = G44->element_order_census();
    CHECK(c == std::map<u64, u64>{{1, 1}, {2, 3}, {4, 12}});

    SECTION("pair groups over GF(2)^m x Z2: zero form is elementary abelian") {
        for (int m : {2, 3, 5}) {
            auto G = Group::cocycle_form(make_field(2, m), std::vector<u64>(static_cast<size_t>(m), 0));
            auto cz = G->element_order_census();
            REQUIRE(cz == std::map<u64, u64>{{1, 1}, {2, (u64{1} << (m + 1)) - 1}});
        }
    }
    SECTION("nonalternating forms give the Z4 x Z2^(m-1) census") {
        std::mt19937_64 rng(5);
        for (int m : {2, 3, 6, 10}) {
            auto F = make_field(2, m);
            // standard dot product first, then random symmetric nonalternating
            std::vector<std::vector<u64>> forms{f2::identity_rows(m)};
            for (int t = 0; t < 3; ++t) forms.push_back(random_symmetric_form(m, rng, false));
            for (const auto& rows : forms) {
                auto G = Group::cocycle_form(F, rows);
                auto cn = G->element_order_census();
                std::map<u64, u64> want{{1, 1}, {2, (u64{1} << m) - 1}, {4, u64{1} << m}};
                REQUIRE(cn == want);
                // exactly half the elements have order dividing 2
                REQUIRE(cn[1] + cn[2] == G->order() / 2);
            }
        }
    }
    SECTION("alternating symmetric forms keep exponent 2") {
        std::mt19937_64 rng(9);
        for (int m : {3, 5}) {
            auto rows = random_symmetric_form(m, rng, true);
            auto G = Group::cocycle_form(make_field(2, m), rows);
            auto ca = G->element_order_census();
            REQUIRE(ca == std::map<u64, u64>{{1, 1}, {2, (u64{1} << (m + 1)) - 1}});
        }
    }
    SECTION("field-product pair group orders: exponent 4 even, p odd") {
        auto Ge = Group::cocycle_field_product(make_field(2, 3));
        auto ce = Ge->element_order_census();
        // elements outside N = {(0,y)} all have order 4
        REQUIRE(ce[4] == 64 - 8);
        for (u32 y = 0; y < 8; ++y) REQUIRE(Ge->element_order(Ge->pair_enc(0, y)) <= 2);

        auto Go = Group::cocycle_field_product(make_field(3, 2));
        REQUIRE(Go->element_order_census() == std::map<u64, u64>{{1, 1}, {3, 80}});
        auto Go2 = Group::cocycle_field_product(make_field(5, 1));
        REQUIRE(Go2->element_order_census() == std::map<u64, u64>{{1, 1}, {5, 24}});
    }
}

TEST_CASE("subgroup closure") {
    auto Z8 = Group::product({8});
    CHECK(Z8->closure({2}) == std::vector<u32>{0, 2, 4, 6});
    CHECK(Z8->closure({3}).size() == 8);
    CHECK(Z8->closure({}) == std::vector<u32>{0});

    auto G = Group::cocycle_field_product(make_field(3, 1));
    CHECK(G->closure(G->generators()).size() == G->order());
    CHECK(G->closure({G->pair_enc(0, 1)}) == std::vector<u32>{0, 1, 2});
}

TEST_CASE("quotient groups") {
    SECTION("Z8 / {0,4} is Z4 with the mod-4 map") {
        auto Z8 = Group::product({8});
        auto qm = quotient_map(Z8, {4});
        CHECK(qm.subgroup == std::vector<u32>{0, 4});
        CHECK(qm.quotient->order() == 4);
        CHECK(qm.quotient->structure() == std::vector<u64>{4});
        for (u32 x = 0; x < 8; ++x) REQUIRE(qm.phi[x] == x % 4);
        check_group_axioms(qm.quotient);
    }
    SECTION("(Z4xZ4) / (2Z4x2Z4) is Z2xZ2") {
        auto G = Group::product({4, 4});
        auto qm = quotient_map(G, {G->from_tuple({2, 0}), G->from_tuple({0, 2})});
        CHECK(qm.subgroup.size() == 4);
        CHECK(qm.quotient->order() == 4);
        CHECK(qm.quotient->structure() == std::vector<u64>{2, 2});
    }
    SECTION("trivial quotient returns the whole group") {
        auto G = Group::product({4, 4});
        auto qm = quotient_map(G, {});
        CHECK(qm.quotient->order() == 16);
        CHECK(qm.quotient->structure() == std::vector<u64>{4, 4});
        for (u32 g = 0; g < 16; ++g) REQUIRE(qm.phi[g] == g);
    }
    SECTION("phi is a homomorphism") {
        auto G = Group::cocycle_field_product(make_field(3, 2));
        // kernel of the trace on the y-part: subgroup {(0,y) : tr(y)=0}
        std::vector<u32> gens;
        for (u32 y = 1; y < 9; ++y)
            if (G->field()->rel_trace(1, y) == 0) gens.push_back(G->pair_enc(0, y));
        auto qm = quotient_map(G, gens);
        CHECK(qm.subgroup.size() == 3);
        CHECK(qm.quotient->order() == 27);
        for (u32 a = 0; a < G->order(); ++a)
            for (u32 b = 0; b < G->order(); ++b)
                REQUIRE(qm.phi[G->op(a, b)] == qm.quotient->op(qm.phi[a], qm.phi[b]));
    }
    SECTION("quotient of quotient") {
        auto Z8 = Group::product({8});
        auto q1 = quotient_map(Z8, {4}).quotient;
        auto q2 = quotient_map(q1, {2});
        CHECK(q2.quotient->order() == 2);
        CHECK(q2.quotient->structure() == std::vector<u64>{2});
    }
    SECTION("census-based structure labels handle mixed orders") {
        auto G = Group::product({6, 2});
        CHECK(abelian_structure(*G) == std::vector<u64>{2, 2, 3});
        CHECK(abelian_structure(*Group::product({1})) == std::vector<u64>{});
        CHECK(abelian_structure(*Group::product({12})) == std::vector<u64>{3, 4});
    }
}

TEST_CASE("group spec strings") {
    for (const char* s : {"Z8", "Z4xZ4", "Z2xZ3xZ4", "cocycle:3^2/1,0,1:product",
                          "cocycle:2^3/1,0,1,1:form=1,2,4", "cocycle:2^2/1,1,1:zero"}) {
        auto G = parse_group_spec(s);
        CHECK(G->spec() == s);
        auto G2 = parse_group_spec(G->spec());
        REQUIRE(G2->order() == G->order());
        REQUIRE(G2->same_as(*G));
    }
    SECTION("bare field specs are normalized") {
        auto G = parse_group_spec("cocycle:3^2:product");
        CHECK(G->spec() == "cocycle:3^2/1,0,1:product");
    }
    SECTION("quotient specs round-trip") {
        auto Z8 = Group::product({8});
        auto q = quotient_map(Z8, {4}).quotient;
        CHECK(q->spec() == "quotient:(Z8):4");
        auto q2 = parse_group_spec(q->spec());
        REQUIRE(q2->order() == 4);
        for (u32 a = 0; a < 4; ++a)
            for (u32 b = 0; b < 4; ++b) REQUIRE(q2->op(a, b) == q->op(a, b));
    }
    SECTION("table groups need table data") {
        CHECK_THROWS_MATCHES(parse_group_spec("cocycle:2^2/1,1,1:table"), error,
                             Catch::Matchers::Predicate<error>(
                                 [](const error& e) { return e.code() == errc::parse_error; }));
        auto F = make_field(2, 2);
        auto tab = std::make_shared<std::vector<u32>>(16, 0u);
        for (u32 x = 0; x < 4; ++x)
            for (u32 y = 0; y < 4; ++y) (*tab)[x * 4 + y] = F->mul(x, y);
        auto G = parse_group_spec("cocycle:2^2/1,1,1:table", tab);
        CHECK(G->order() == 16);
        CHECK(G->spec() == "cocycle:2^2/1,1,1:table");
    }
    SECTION("rejections") {
        CHECK_THROWS_AS(parse_group_spec("Q8"), error);
        CHECK_THROWS_AS(parse_group_spec("Zx"), error);
        CHECK_THROWS_AS(parse_group_spec("cocycle:3^2"), error);
        CHECK_THROWS_AS(parse_group_spec("cocycle:3^2:frobnicate"), error);
        CHECK_THROWS_AS(parse_group_spec(""), error);
        CHECK_THROWS_AS(parse_group_spec("cocycle:3^2:form=1,2"), error); // odd characteristic
    }
}

TEST_CASE("group elements carry their group") {
    auto Z8 = Group::product({8});
    auto Z4 = Group::product({4});
    GroupElem a{Z8, 5}, b{Z8, 6}, c{Z4, 1};
    CHECK((a * b).v == 3);
    CHECK(a.inverse().v == 3);
    CHECK_THROWS_MATCHES(a * c, error, Catch::Matchers::Predicate<error>([](const error& e) {
                             return e.code() == errc::group_mismatch;
                         }));
}
