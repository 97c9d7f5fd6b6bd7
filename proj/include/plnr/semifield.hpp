#pragma once

// Pre-semifields as explicit q x q multiplication tables over the additive
// group of GF(p^m). Axioms:
//   S1  (S,+) is an abelian group with identity 0
//   S2  both distributive laws
//   S3  no zero divisors
//   S4  a two-sided multiplicative identity exists
// A pre-semifield satisfies S1-S3; a semifield adds S4. Axiom checks are
// exact and complete: S2 (and additive associativity in S1) reduce to digit
// increments, since a map additive under every unit-digit increment is
// additive outright (induction on digits).

#include <sstream>

#include "plnr/linalg.hpp"
#include "plnr/planar.hpp"

namespace plnr {

constexpr u32 presemifield_max_q = u32{1} << 10;

struct PreSemifield {
    Field field;
    std::vector<u32> table; // row-major: table[x*q + y] = x∘y
    std::string rule;       // how the product was built, for reports
    bool commutative = false;
    bool has_identity = false;
    u32 identity = 0;          // meaningful only when has_identity
    bool affine_do_input = true; // from-planar factories: hypothesis of the construction

    u32 q() const { return field->q(); }
    u32 op(u32 x, u32 y) const { return table[static_cast<size_t>(x) * q() + y]; }
};

namespace detail {

// encoding of the i-th unit digit vector, i.e. p^i
inline u32 unit_encoding(const FiniteField& F, int i) {
    u32 e = 1;
    for (int j = 0; j < i; ++j) e *= static_cast<u32>(F.p());
    return e;
}

inline void scan_product_flags(PreSemifield& S) {
    u32 q = S.q();
    S.commutative = true;
    for (u32 x = 0; x < q && S.commutative; ++x)
        for (u32 y = x + 1; y < q; ++y)
            if (S.op(x, y) != S.op(y, x)) {
                S.commutative = false;
                break;
            }
    S.has_identity = false;
    for (u32 e = 1; e < q; ++e) {
        bool ok = true;
        for (u32 x = 0; x < q && ok; ++x) ok = S.op(e, x) == x && S.op(x, e) == x;
        if (ok) {
            S.has_identity = true;
            S.identity = e;
            break;
        }
    }
}

} // namespace detail

inline PreSemifield make_presemifield(const Field& F, std::vector<u32> table,
                                      std::string rule = "table") {
    u32 q = F->q();
    require(q <= presemifield_max_q, errc::too_large, "product tables supported up to q = 2^10");
    require(table.size() == static_cast<size_t>(q) * q, errc::wrong_length,
            "product table must have q^2 entries");
    for (u32 v : table) require(v < q, errc::parse_error, "product entry out of range");
    PreSemifield S{F, std::move(table), std::move(rule)};
    detail::scan_product_flags(S);
    return S;
}

inline PreSemifield presemifield_from_field(const Field& F) {
    u32 q = F->q();
    require(q <= presemifield_max_q, errc::too_large, "product tables supported up to q = 2^10");
    std::vector<u32> t(static_cast<size_t>(q) * q);
    parallel_chunks(q, [&](u64 lo, u64 hi) {
        for (u64 x = lo; x < hi; ++x)
            for (u32 y = 0; y < q; ++y) t[x * q + y] = F->mul(static_cast<u32>(x), y);
    });
    return make_presemifield(F, std::move(t), "field");
}

// x∘y = x^(p^k) y + x y^(p^k); S3 holds iff m/gcd(k,m) is odd
inline PreSemifield presemifield_from_albert(const Field& F, int k = 1) {
    u32 q = F->q();
    require(F->p() != 2, errc::even_characteristic, "this twisted product needs odd characteristic");
    require(k >= 1 && k < F->m(), errc::parse_error, "twist exponent out of range");
    require(q <= presemifield_max_q, errc::too_large, "product tables supported up to q = 2^10");
    u64 pk = 1;
    for (int i = 0; i < k; ++i) pk *= static_cast<u64>(F->p());
    std::vector<u32> frob(q);
    for (u32 x = 0; x < q; ++x) frob[x] = F->pow(x, pk);
    std::vector<u32> t(static_cast<size_t>(q) * q);
    parallel_chunks(q, [&](u64 lo, u64 hi) {
        for (u64 xi = lo; xi < hi; ++xi) {
            u32 x = static_cast<u32>(xi);
            for (u32 y = 0; y < q; ++y)
                t[xi * q + y] = F->add(F->mul(frob[x], y), F->mul(x, frob[y]));
        }
    });
    std::ostringstream rule;
    rule << "albert k=" << k;
    return make_presemifield(F, std::move(t), rule.str());
}

// x∘y = f(x+y) - f(x) - f(y) + f(0) for a planar map in odd characteristic
inline PreSemifield presemifield_from_planar_odd(const Field& F, const std::vector<u32>& vt,
                                                 bool affine_do, std::string rule) {
    require(F->q() <= presemifield_max_q, errc::too_large, "product tables supported up to q = 2^10");
    auto verdict = is_planar_odd(F, vt);
    require(verdict.planar, errc::not_planar, "the map is not planar, no pre-semifield arises");
    u32 q = F->q();
    std::vector<u32> t(static_cast<size_t>(q) * q);
    parallel_chunks(q, [&](u64 lo, u64 hi) {
        for (u64 xi = lo; xi < hi; ++xi) {
            u32 x = static_cast<u32>(xi);
            for (u32 y = 0; y < q; ++y)
                t[xi * q + y] = F->add(F->sub(F->sub(vt[F->add(x, y)], vt[x]), vt[y]), vt[0]);
        }
    });
    PreSemifield S = make_presemifield(F, std::move(t), std::move(rule));
    S.affine_do_input = affine_do;
    return S;
}

inline PreSemifield presemifield_from_planar_odd(const PolyMap& f) {
    bool affine_do = classify(f).tag != do_class::general;
    return presemifield_from_planar_odd(f.field, f.value_table(), affine_do,
                                        "planar-odd " + f.to_string());
}

// x∘y = f(x+y) + f(x) + f(y) + f(0) + xy for a planar map in characteristic 2
inline PreSemifield presemifield_from_planar_even(const Field& F, const std::vector<u32>& vt,
                                                  bool affine_do, std::string rule) {
    require(F->q() <= presemifield_max_q, errc::too_large, "product tables supported up to q = 2^10");
    auto verdict = is_planar_even(F, vt);
    require(verdict.planar, errc::not_planar, "the map is not planar, no pre-semifield arises");
    u32 q = F->q();
    std::vector<u32> t(static_cast<size_t>(q) * q);
    parallel_chunks(q, [&](u64 lo, u64 hi) {
        for (u64 xi = lo; xi < hi; ++xi) {
            u32 x = static_cast<u32>(xi);
            for (u32 y = 0; y < q; ++y) {
                u32 v = F->add(F->add(vt[F->add(x, y)], vt[x]), F->add(vt[y], vt[0]));
                t[xi * q + y] = F->add(v, F->mul(x, y));
            }
        }
    });
    PreSemifield S = make_presemifield(F, std::move(t), std::move(rule));
    S.affine_do_input = affine_do;
    return S;
}

inline PreSemifield presemifield_from_planar_even(const PolyMap& f) {
    bool affine_do = classify(f).tag != do_class::general;
    return presemifield_from_planar_even(f.field, f.value_table(), affine_do,
                                         "planar-even " + f.to_string());
}

struct AxiomVerdict {
    bool ok = true;
    std::vector<u32> witness; // first counterexample tuple, empty when ok
};

struct AxiomReport {
    AxiomVerdict s1, s2, s3, s4;
    u32 identity = 0; // meaningful when s4 holds
    bool presemifield() const { return s1.ok && s2.ok && s3.ok; }
    bool semifield() const { return presemifield() && s4.ok; }
};

// Complete check of S1-S4. Distributivity is verified through unit-digit
// increments of one argument, which implies the law for all triples.
inline AxiomReport check_axioms(const PreSemifield& S) {
    const FiniteField& F = *S.field;
    u32 q = S.q();
    AxiomReport rep;

    std::vector<u32> units;
    for (int i = 0; i < F.m(); ++i) units.push_back(detail::unit_encoding(F, i));

    // S1: the additive structure really is an abelian group
    for (u32 x = 0; x < q && rep.s1.ok; ++x)
        if (F.add(0, x) != x || F.add(x, F.neg(x)) != 0) rep.s1 = {false, {x}};
    for (u32 x = 0; x < q && rep.s1.ok; ++x)
        for (u32 y = x + 1; y < q; ++y)
            if (F.add(x, y) != F.add(y, x)) {
                rep.s1 = {false, {x, y}};
                break;
            }
    for (u32 x = 0; x < q && rep.s1.ok; ++x)
        for (u32 y = 0; y < q && rep.s1.ok; ++y)
            for (u32 u : units)
                if (F.add(F.add(x, y), u) != F.add(x, F.add(y, u))) {
                    rep.s1 = {false, {x, y, u}};
                    break;
                }

    // S2: x∘(y+u) = x∘y + x∘u and (y+u)∘x = y∘x + u∘x for unit digits u
    for (u32 x = 0; x < q && rep.s2.ok; ++x)
        for (u32 y = 0; y < q && rep.s2.ok; ++y)
            for (u32 u : units) {
                if (S.op(x, F.add(y, u)) != F.add(S.op(x, y), S.op(x, u)) ||
                    S.op(F.add(y, u), x) != F.add(S.op(y, x), S.op(u, x))) {
                    rep.s2 = {false, {x, y, u}};
                    break;
                }
            }

    // S3: no zero divisors
    for (u32 x = 1; x < q && rep.s3.ok; ++x)
        for (u32 y = 1; y < q; ++y)
            if (S.op(x, y) == 0) {
                rep.s3 = {false, {x, y}};
                break;
            }

    // S4: some e != 0 with e∘x = x∘e = x for all x
    rep.s4.ok = false;
    for (u32 e = 1; e < q && !rep.s4.ok; ++e) {
        bool ok = true;
        for (u32 x = 0; x < q && ok; ++x) ok = S.op(e, x) == x && S.op(x, e) == x;
        if (ok) {
            rep.s4.ok = true;
            rep.identity = e;
        }
    }
    if (!rep.s4.ok) rep.s4.witness = {};
    return rep;
}

// Identity repair: x*y solves (x∘e)*(e∘y) = x∘y, so * has identity e∘e.
// The isotopy witnesses satisfy f(x) ∘ g(y) = h(x*y) with h the identity map.
struct IdentityRepair {
    PreSemifield s;
    std::vector<u32> f, g, h; // maps from the repaired product back into ∘
};

inline IdentityRepair to_semifield(const PreSemifield& S, u32 e = 1) {
    u32 q = S.q();
    require(e != 0 && e < q, errc::zero_element, "identity repair needs a nonzero base element");
    AxiomReport ax = check_axioms(S);
    require(ax.presemifield(), errc::axioms_fail, "identity repair needs a pre-semifield (S1-S3)");
    std::vector<u32> re(q), le(q), re_inv(q), le_inv(q);
    for (u32 x = 0; x < q; ++x) {
        re[x] = S.op(x, e);
        le[x] = S.op(e, x);
    }
    for (u32 x = 0; x < q; ++x) {
        re_inv[re[x]] = x;
        le_inv[le[x]] = x;
    }
    std::vector<u32> t(static_cast<size_t>(q) * q);
    parallel_chunks(q, [&](u64 lo, u64 hi) {
        for (u64 u = lo; u < hi; ++u)
            for (u32 v = 0; v < q; ++v) t[u * q + v] = S.op(re_inv[u], le_inv[v]);
    });
    PreSemifield out = make_presemifield(S.field, std::move(t), S.rule + " repaired");
    out.affine_do_input = S.affine_do_input;
    invariant(out.has_identity && out.identity == S.op(e, e),
              "identity repair must produce the two-sided identity e∘e");
    std::vector<u32> h(q);
    for (u32 x = 0; x < q; ++x) h[x] = x;
    return IdentityRepair{std::move(out), std::move(re_inv), std::move(le_inv), std::move(h)};
}

inline PreSemifield opposite(const PreSemifield& S) {
    u32 q = S.q();
    std::vector<u32> t(static_cast<size_t>(q) * q);
    for (u32 x = 0; x < q; ++x)
        for (u32 y = 0; y < q; ++y) t[static_cast<size_t>(x) * q + y] = S.op(y, x);
    PreSemifield out = make_presemifield(S.field, std::move(t), "opposite " + S.rule);
    out.affine_do_input = S.affine_do_input;
    return out;
}

// Spread of GF(p)^{2m}: the graphs {(x, s∘x)} for s in S plus {(0, y)}.
// Each subspace is stored as m basis rows of 2m digits.
struct Spread {
    int p = 0;
    int m = 0; // subspace dimension; ambient dimension is 2m
    std::vector<std::vector<std::vector<int>>> bases;
};

namespace detail {

inline std::vector<int> pair_digits(const FiniteField& F, u32 x, u32 y) {
    std::vector<int> row;
    row.reserve(static_cast<size_t>(2 * F.m()));
    for (int i = 0; i < F.m(); ++i) row.push_back(F.digit(x, i));
    for (int i = 0; i < F.m(); ++i) row.push_back(F.digit(y, i));
    return row;
}

} // namespace detail

inline Spread spread_from_semifield(const PreSemifield& S) {
    const FiniteField& F = *S.field;
    require(S.q() <= (u32{1} << 8), errc::too_large, "spreads supported up to q = 2^8");
    AxiomReport ax = check_axioms(S);
    require(ax.semifield(), errc::axioms_fail, "spreads need all four axioms");
    Spread sp{F.p(), F.m(), {}};
    for (u32 s = 0; s < S.q(); ++s) {
        std::vector<std::vector<int>> basis;
        for (int i = 0; i < F.m(); ++i) {
            u32 e = detail::unit_encoding(F, i);
            basis.push_back(detail::pair_digits(F, e, S.op(s, e)));
        }
        sp.bases.push_back(std::move(basis));
    }
    std::vector<std::vector<int>> infinity;
    for (int i = 0; i < F.m(); ++i)
        infinity.push_back(detail::pair_digits(F, 0, detail::unit_encoding(F, i)));
    sp.bases.push_back(std::move(infinity));
    return sp;
}

// every subspace has dimension m and every pair meets only in 0
inline bool verify_spread(const Spread& sp) {
    for (const auto& basis : sp.bases)
        if (rank_mod_p(basis, sp.p) != sp.m) return false;
    for (size_t i = 0; i < sp.bases.size(); ++i)
        for (size_t j = i + 1; j < sp.bases.size(); ++j) {
            std::vector<std::vector<int>> stacked = sp.bases[i];
            stacked.insert(stacked.end(), sp.bases[j].begin(), sp.bases[j].end());
            if (rank_mod_p(stacked, sp.p) != 2 * sp.m) return false;
        }
    return true;
}

// serialization: "presemifield <p> <m>", "rule <text>", "table", q rows of
// q encodings
inline void write_presemifield(std::ostream& os, const PreSemifield& S) {
    os << "presemifield " << S.field->p() << " " << S.field->m() << "\n";
    os << "rule " << S.rule << "\n";
    os << "table\n";
    u32 q = S.q();
    for (u32 x = 0; x < q; ++x) {
        for (u32 y = 0; y < q; ++y) os << (y ? " " : "") << S.op(x, y);
        os << "\n";
    }
}

inline PreSemifield read_presemifield(std::istream& is) {
    std::string word;
    require(static_cast<bool>(is >> word) && word == "presemifield", errc::parse_error,
            "expected a presemifield header");
    int p = 0, m = 0;
    require(static_cast<bool>(is >> p >> m), errc::parse_error, "header needs p and m");
    Field F = make_field(p, m);
    require(static_cast<bool>(is >> word) && word == "rule", errc::parse_error,
            "expected a rule line");
    std::string rule;
    std::getline(is, rule);
    if (!rule.empty() && rule.front() == ' ') rule.erase(rule.begin());
    require(static_cast<bool>(is >> word) && word == "table", errc::parse_error,
            "expected a table marker");
    u32 q = F->q();
    std::vector<u32> t(static_cast<size_t>(q) * q);
    for (size_t i = 0; i < t.size(); ++i)
        require(static_cast<bool>(is >> t[i]), errc::parse_error, "product table truncated");
    return make_presemifield(F, std::move(t), rule.empty() ? "table" : rule);
}

} // namespace plnr
