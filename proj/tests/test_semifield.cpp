#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include "plnr/semifield.hpp"

using namespace plnr;

namespace {

// materialize a spread subspace from its basis rows by spanning all
// coefficient combinations; digits little-endian per row
std::set<std::vector<int>> span_elements(const std::vector<std::vector<int>>& basis, int p) {
    size_t dim = basis.size(), width = basis[0].size();
    std::set<std::vector<int>> out;
    std::vector<int> coeff(dim, 0);
    while (true) {
        std::vector<int> v(width, 0);
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < width; ++j) v[j] = (v[j] + coeff[i] * basis[i][j]) % p;
        out.insert(v);
        size_t k = 0;
        while (k < dim && ++coeff[k] == p) coeff[k++] = 0;
        if (k == dim) break;
    }
    return out;
}

bool rows_and_columns_permute(const PreSemifield& S) {
    u32 q = S.q();
    for (u32 x = 1; x < q; ++x) {
        std::set<u32> row, col;
        for (u32 y = 0; y < q; ++y) {
            row.insert(S.op(x, y));
            col.insert(S.op(y, x));
        }
        if (row.size() != q || col.size() != q) return false;
    }
    return true;
}

} // namespace

TEST_CASE("field products satisfy all four axioms") {
    for (auto [p, m] : {std::pair{2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {2, 4}, {3, 3}}) {
        CAPTURE(p, m);
        auto S = presemifield_from_field(make_field(p, m));
        CHECK(S.commutative);
        CHECK(S.has_identity);
        CHECK(S.identity == 1);
        auto rep = check_axioms(S);
        CHECK(rep.semifield());
        CHECK(rep.identity == 1);
        CHECK(rows_and_columns_permute(S));
    }
}

TEST_CASE("the squaring map yields the doubled product") {
    auto F9 = make_field(3, 2);
    auto S = presemifield_from_planar_odd(monomial(F9, 2));
    CHECK(S.commutative);
    CHECK(S.affine_do_input);
    for (u32 x = 0; x < 9; ++x)
        for (u32 y = 0; y < 9; ++y) CHECK(S.op(x, y) == F9->mul(2, F9->mul(x, y)));
    // 2xy has the two-sided identity 2 (since 2*2 = 4 = 1)
    auto rep = check_axioms(S);
    CHECK(rep.semifield());
    CHECK(rep.identity == 2);
    CHECK(S.has_identity);
    CHECK(S.identity == 2);
}

TEST_CASE("twisted product matches the quartic construction") {
    auto F27 = make_field(3, 3);
    auto albert = presemifield_from_albert(F27, 1);
    auto quartic = presemifield_from_planar_odd(monomial(F27, 4));
    CHECK(albert.table == quartic.table);
    CHECK(albert.commutative);
    CHECK(!albert.has_identity);
    auto rep = check_axioms(albert);
    CHECK(rep.s1.ok);
    CHECK(rep.s2.ok);
    CHECK(rep.s3.ok);
    CHECK(!rep.s4.ok);
    CHECK(rows_and_columns_permute(albert));

    // m/gcd(k,m) = 2 is even over GF(9), so zero divisors appear
    auto bad = presemifield_from_albert(make_field(3, 2), 1);
    auto repb = check_axioms(bad);
    CHECK(repb.s2.ok);
    CHECK(!repb.s3.ok);
    CHECK(repb.s3.witness.size() == 2);
    u32 wx = repb.s3.witness[0], wy = repb.s3.witness[1];
    CHECK(bad.op(wx, wy) == 0);
    CHECK(wx != 0);
    CHECK(wy != 0);
}

TEST_CASE("degenerate even-characteristic cases collapse to the field") {
    auto F8 = make_field(2, 3);
    auto field8 = presemifield_from_field(F8);
    CHECK(presemifield_from_planar_even(make_polymap(F8, {})).table == field8.table);

    auto F16 = make_field(2, 4);
    auto field16 = presemifield_from_field(F16);
    CHECK(presemifield_from_planar_even(monomial(F16, 2)).table == field16.table);
}

TEST_CASE("trace-chain maps induce commutative pre-semifields") {
    auto F8 = make_field(2, 3);
    auto t = kantor_table(F8, {1}, {1});
    auto S = presemifield_from_planar_even(F8, t, true, "kantor");
    CHECK(S.commutative);
    auto rep = check_axioms(S);
    CHECK(rep.presemifield());
    CHECK(rows_and_columns_permute(S));

    auto F512 = make_field(2, 9);
    auto t512 = kantor_table(F512, {3, 1}, {5, 200});
    auto big = presemifield_from_planar_even(F512, t512, true, "kantor");
    CHECK(big.commutative);
    CHECK(check_axioms(big).presemifield());
}

TEST_CASE("axiom failures carry witnesses") {
    auto F4 = make_field(2, 2);
    auto zero = make_presemifield(F4, std::vector<u32>(16, 0), "zero");
    auto rep = check_axioms(zero);
    CHECK(rep.s1.ok);
    CHECK(rep.s2.ok);
    CHECK(!rep.s3.ok);
    CHECK(rep.s3.witness == std::vector<u32>{1, 1});
    CHECK(!rep.s4.ok);
    CHECK(!rep.presemifield());

    // a product violating distributivity: swap two entries of a field table
    auto S = presemifield_from_field(make_field(3, 1));
    std::swap(S.table[1 * 3 + 1], S.table[1 * 3 + 2]);
    auto repd = check_axioms(S);
    CHECK(!repd.s2.ok);
    CHECK(repd.s2.witness.size() == 3);
}

TEST_CASE("construction rejects non-planar inputs") {
    auto F9 = make_field(3, 2);
    CHECK_THROWS_AS(presemifield_from_planar_odd(monomial(F9, 3)), error);
    auto F4 = make_field(2, 2);
    CHECK_THROWS_AS(presemifield_from_planar_even(monomial(F4, 3)), error);
    CHECK_THROWS_AS(presemifield_from_albert(make_field(2, 3), 1), error);
    CHECK_THROWS_AS(presemifield_from_albert(make_field(3, 3), 0), error);
    CHECK_THROWS_AS(presemifield_from_albert(make_field(3, 3), 3), error);
}

TEST_CASE("table validation") {
    auto F4 = make_field(2, 2);
    CHECK_THROWS_AS(make_presemifield(F4, std::vector<u32>(15, 0)), error);
    CHECK_THROWS_AS(make_presemifield(F4, std::vector<u32>(16, 4)), error);
    CHECK_THROWS_AS(presemifield_from_field(make_field(2, 11)), error);
}

TEST_CASE("identity repair produces a semifield with recorded isotopy") {
    auto F27 = make_field(3, 3);
    auto albert = presemifield_from_albert(F27, 1);
    auto repaired = to_semifield(albert, 1);
    const PreSemifield& T = repaired.s;
    CHECK(T.has_identity);
    CHECK(T.identity == albert.op(1, 1)); // 1∘1 = 1+1 = 2
    CHECK(T.identity == 2);
    auto rep = check_axioms(T);
    CHECK(rep.semifield());
    // isotopy relation: f(x) ∘ g(y) = h(x*y) for all x, y
    for (u32 x = 0; x < 27; ++x)
        for (u32 y = 0; y < 27; ++y)
            CHECK(albert.op(repaired.f[x], repaired.g[y]) == repaired.h[T.op(x, y)]);

    // repairing a product that already has identity e∘e leaves it unchanged
    auto field9 = presemifield_from_field(make_field(3, 2));
    CHECK(to_semifield(field9, 1).s.table == field9.table);

    auto doubled = presemifield_from_planar_odd(monomial(make_field(3, 2), 2));
    auto repaired2 = to_semifield(doubled, 1);
    CHECK(repaired2.s.identity == 2);
    CHECK(repaired2.s.table == doubled.table); // 2xy already has identity 2

    CHECK_THROWS_AS(to_semifield(albert, 0), error);
    auto zero = make_presemifield(make_field(2, 2), std::vector<u32>(16, 0));
    CHECK_THROWS_AS(to_semifield(zero, 1), error);
}

TEST_CASE("opposite transposes the product") {
    auto F4 = make_field(2, 2);
    // x∘y = x y^2: distributive (Frobenius is additive), no zero divisors,
    // not commutative
    std::vector<u32> t(16);
    for (u32 x = 0; x < 4; ++x)
        for (u32 y = 0; y < 4; ++y) t[x * 4 + y] = F4->mul(x, F4->mul(y, y));
    auto S = make_presemifield(F4, std::move(t), "xy^2");
    CHECK(!S.commutative);
    CHECK(check_axioms(S).presemifield());
    auto O = opposite(S);
    for (u32 x = 0; x < 4; ++x)
        for (u32 y = 0; y < 4; ++y) CHECK(O.op(x, y) == S.op(y, x));
    CHECK(check_axioms(O).presemifield());
    CHECK(opposite(O).table == S.table);

    auto field9 = presemifield_from_field(make_field(3, 2));
    CHECK(opposite(field9).table == field9.table);
}

TEST_CASE("diagonals of from-planar products are planar maps") {
    // odd characteristic: x∘x interpolates to a planar DO polynomial
    for (auto build : {0, 1, 2}) {
        Field F = build == 0 ? make_field(3, 2) : make_field(3, 3);
        PreSemifield S = build == 0   ? presemifield_from_planar_odd(monomial(F, 2))
                         : build == 1 ? presemifield_from_albert(F, 1)
                                      : presemifield_from_planar_odd(parse_polymap(F, "10:1,6:1,2:2"));
        CAPTURE(S.rule);
        std::vector<u32> diag(S.q());
        for (u32 x = 0; x < S.q(); ++x) diag[x] = S.op(x, x);
        auto f = interpolate(F, diag);
        CHECK(classify(f).tag == do_class::dembowski_ostrom);
        CHECK(is_planar_odd(f).planar);
    }

    // characteristic 2: the diagonal of the repaired trace-chain semifield
    auto F8 = make_field(2, 3);
    auto S = to_semifield(presemifield_from_planar_even(F8, kantor_table(F8, {1}, {3}), true, "kantor"), 1).s;
    std::vector<u32> diag(8);
    for (u32 x = 0; x < 8; ++x) diag[x] = S.op(x, x);
    CHECK(is_planar_even(F8, diag).planar);
}

TEST_CASE("spreads from small semifields verify by rank") {
    struct Want {
        int p, m;
    };
    for (Want w : {Want{2, 2}, {3, 1}, {2, 3}, {3, 2}}) {
        CAPTURE(w.p, w.m);
        auto S = presemifield_from_field(make_field(w.p, w.m));
        auto sp = spread_from_semifield(S);
        CHECK(sp.bases.size() == S.q() + 1);
        CHECK(sp.m == w.m);
        for (const auto& b : sp.bases) {
            CHECK(b.size() == static_cast<size_t>(w.m));
            for (const auto& row : b) CHECK(row.size() == static_cast<size_t>(2 * w.m));
        }
        CHECK(verify_spread(sp));
    }

    auto repaired = to_semifield(presemifield_from_albert(make_field(3, 3), 1), 1).s;
    auto sp = spread_from_semifield(repaired);
    CHECK(sp.bases.size() == 28);
    CHECK(verify_spread(sp));

    // independent oracle on small cases: spanned element sets meet only in 0
    for (auto S : {presemifield_from_field(make_field(2, 2)),
                   presemifield_from_field(make_field(3, 2))}) {
        auto spread = spread_from_semifield(S);
        int p = spread.p;
        std::vector<std::set<std::vector<int>>> spans;
        for (const auto& b : spread.bases) spans.push_back(span_elements(b, p));
        std::vector<int> zero(static_cast<size_t>(2 * spread.m), 0);
        for (const auto& sp2 : spans) CHECK(sp2.size() == S.q());
        for (size_t i = 0; i < spans.size(); ++i)
            for (size_t j = i + 1; j < spans.size(); ++j) {
                std::vector<std::vector<int>> common;
                std::set_intersection(spans[i].begin(), spans[i].end(), spans[j].begin(),
                                      spans[j].end(), std::back_inserter(common));
                CHECK(common == std::vector<std::vector<int>>{zero});
            }
    }

    // a defective spread is rejected: duplicate one subspace
    auto good = spread_from_semifield(presemifield_from_field(make_field(2, 2)));
    auto dup = good;
    dup.bases[1] = dup.bases[2];
    CHECK(!verify_spread(dup));
    auto thin = good;
    thin.bases[0][1] = thin.bases[0][0];
    CHECK(!verify_spread(thin));

    CHECK_THROWS_AS(spread_from_semifield(presemifield_from_albert(make_field(3, 3), 1)), error);
    CHECK_THROWS_AS(spread_from_semifield(presemifield_from_field(make_field(2, 9))), error);
}

TEST_CASE("presemifield serialization round-trips") {
    auto S = to_semifield(presemifield_from_albert(make_field(3, 3), 1), 1).s;
    std::ostringstream os;
    write_presemifield(os, S);
    std::istringstream is(os.str());
    auto back = read_presemifield(is);
    CHECK(back.table == S.table);
    CHECK(back.rule == S.rule);
    CHECK(back.field->p() == 3);
    CHECK(back.field->m() == 3);
    CHECK(back.commutative == S.commutative);
    CHECK(back.has_identity);
    CHECK(back.identity == S.identity);

    std::istringstream bad1("semifield 3 2\nrule x\ntable\n");
    CHECK_THROWS_AS(read_presemifield(bad1), error);
    std::istringstream bad2("presemifield 3 2\nrule x\ntable\n1 2 3");
    CHECK_THROWS_AS(read_presemifield(bad2), error);
    std::istringstream bad3("presemifield 3 1\nrule x\ntable\n0 0 0 0 0 0 9 9 9");
    CHECK_THROWS_AS(read_presemifield(bad3), error);
}
