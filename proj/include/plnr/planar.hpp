#pragma once

// Planarity of self-maps of GF(q), two conventions:
//   odd   every difference map x -> f(x+a)-f(x), a != 0, is a bijection
//   even  every map x -> f(x+a)+f(x)+ax, a != 0, is a permutation
// Verdicts carry the smallest failing a in encoding order. Checks are exact
// O(q^2) scans with an epoch-stamped seen buffer and early exit, capped at
// q <= 2^14, parallelizable over a.

#include <atomic>
#include <numeric>
#include <optional>

#include "plnr/funcmaps.hpp"
#include "plnr/parallel.hpp"

namespace plnr {

enum class planar_convention { odd, even };

inline const char* convention_name(planar_convention c) {
    return c == planar_convention::odd ? "odd" : "even";
}

struct PlanarVerdict {
    bool planar;
    std::optional<u32> failing_a; // smallest a whose map is not bijective
    planar_convention convention;
};

namespace detail {

constexpr u32 planar_max_q = u32{1} << 14;

// one reusable seen-buffer; a fresh epoch voids previous marks in O(1)
struct BijectionProbe {
    std::vector<u32> stamp;
    u32 epoch = 0;

    explicit BijectionProbe(u32 q) : stamp(q, 0) {}

    // true iff fn hits q distinct values on inputs 0..q-1
    template <typename Fn>
    bool bijective(u32 q, Fn&& fn) {
        ++epoch;
        for (u32 x = 0; x < q; ++x) {
            u32 v = fn(x);
            if (stamp[v] == epoch) return false;
            stamp[v] = epoch;
        }
        return true;
    }
};

// smallest a in [1,q) whose per-a map is not bijective, or q if none;
// probe_fn(probe, a) -> bool
template <typename ProbeFn>
u32 smallest_failing_a(u32 q, ProbeFn&& probe_fn, unsigned workers) {
    std::atomic<u32> best{q};
    parallel_chunks(
        q - 1,
        [&](u64 lo, u64 hi) {
            BijectionProbe probe(q);
            for (u64 i = lo; i < hi; ++i) {
                u32 a = static_cast<u32>(i) + 1;
                if (a >= best.load(std::memory_order_relaxed)) break;
                if (!probe_fn(probe, a)) {
                    u32 cur = best.load(std::memory_order_relaxed);
                    while (a < cur && !best.compare_exchange_weak(cur, a)) {
                    }
                    break;
                }
            }
        },
        workers);
    return best.load();
}

} // namespace detail

inline PlanarVerdict is_planar_odd(const Field& F, const std::vector<u32>& table,
                                   unsigned workers = 0) {
    const FiniteField& f = *F;
    require(f.p() != 2, errc::even_characteristic, "odd-convention planarity needs odd characteristic");
    require(f.q() <= detail::planar_max_q, errc::range_too_large, "planarity checks capped at q = 2^14");
    require(table.size() == f.q(), errc::wrong_length, "value table must have q entries");
    u32 q = f.q();
    u32 a = detail::smallest_failing_a(
        q,
        [&](detail::BijectionProbe& probe, u32 aa) {
            return probe.bijective(q, [&](u32 x) { return f.sub(table[f.add(x, aa)], table[x]); });
        },
        workers);
    if (a == q) return PlanarVerdict{true, std::nullopt, planar_convention::odd};
    return PlanarVerdict{false, a, planar_convention::odd};
}

inline PlanarVerdict is_planar_odd(const PolyMap& f, unsigned workers = 0) {
    return is_planar_odd(f.field, f.value_table(), workers);
}

inline PlanarVerdict is_planar_even(const Field& F, const std::vector<u32>& table,
                                    unsigned workers = 0) {
    const FiniteField& f = *F;
    require(f.p() == 2, errc::odd_characteristic, "even-convention planarity needs characteristic 2");
    require(f.q() <= detail::planar_max_q, errc::range_too_large, "planarity checks capped at q = 2^14");
    require(table.size() == f.q(), errc::wrong_length, "value table must have q entries");
    u32 q = f.q();
    u32 a = detail::smallest_failing_a(
        q,
        [&](detail::BijectionProbe& probe, u32 aa) {
            return probe.bijective(q, [&](u32 x) {
                return f.add(f.add(table[f.add(x, aa)], table[x]), f.mul(aa, x));
            });
        },
        workers);
    if (a == q) return PlanarVerdict{true, std::nullopt, planar_convention::even};
    return PlanarVerdict{false, a, planar_convention::even};
}

inline PlanarVerdict is_planar_even(const PolyMap& f, unsigned workers = 0) {
    return is_planar_even(f.field, f.value_table(), workers);
}

// convention chosen by the field's characteristic
inline PlanarVerdict is_planar(const PolyMap& f, unsigned workers = 0) {
    return f.field->p() == 2 ? is_planar_even(f, workers) : is_planar_odd(f, workers);
}

// every nonzero value is hit 0 or 2 times
inline bool two_to_one(const Field& F, const std::vector<u32>& table) {
    require(F->p() != 2, errc::even_characteristic, "the 2-to-1 criterion applies in odd characteristic");
    require(table.size() == F->q(), errc::wrong_length, "value table must have q entries");
    std::vector<u32> count(F->q(), 0);
    for (u32 v : table) ++count[v];
    for (u32 v = 1; v < F->q(); ++v)
        if (count[v] != 0 && count[v] != 2) return false;
    return true;
}

inline bool two_to_one(const PolyMap& f) { return two_to_one(f.field, f.value_table()); }

// x^((3^k+1)/2); planar exactly when gcd(k,2m) = 1
inline PolyMap cm_monomial(const Field& F, int k) {
    require(F->p() == 3, errc::wrong_characteristic, "this monomial family lives over GF(3^m)");
    require(k >= 1 && k < 40, errc::parse_error, "k out of range");
    u64 e = 1;
    for (int i = 0; i < k; ++i) e *= 3;
    return monomial(F, (e + 1) / 2);
}

// f(x) = (x * sum_i tr_i(zeta_i x))^2 on GF(2^M) for a chain of subfield
// degrees M >= d_1 > d_2 > ... > d_n with d_{i+1} | d_i, d_1 | M, and M/d_n
// odd; tr_i is the relative trace onto GF(2^{d_i}). Returns the value table.
inline std::vector<u32> kantor_table(const Field& F, const std::vector<int>& chain,
                                     const std::vector<u32>& zetas) {
    const FiniteField& f = *F;
    require(f.p() == 2, errc::wrong_characteristic, "this family lives in characteristic 2");
    require(!chain.empty(), errc::bad_chain, "chain must name at least one subfield");
    require(chain.size() == zetas.size(), errc::wrong_length, "one zeta per subfield");
    int M = f.m();
    int prev = M;
    for (size_t i = 0; i < chain.size(); ++i) {
        int d = chain[i];
        require(d >= 1 && d <= prev && (i == 0 ? M : prev) % d == 0, errc::bad_chain,
                "subfield degrees must divide their predecessors and descend");
        require(i == 0 || d < prev, errc::bad_chain, "chain must strictly descend");
        prev = d;
    }
    require((M / chain.back()) % 2 == 1, errc::odd_quotient_violated,
            "the index over the last subfield must be odd");
    for (u32 z : zetas) {
        require(z != 0, errc::zero_zeta, "zeta values must be nonzero");
        require(z < f.q(), errc::parse_error, "zeta encoding out of range");
    }
    std::vector<u32> t(f.q());
    for (u32 x = 0; x < f.q(); ++x) {
        u32 s = 0;
        for (size_t i = 0; i < chain.size(); ++i)
            s = f.add(s, f.rel_trace(chain[i], f.mul(zetas[i], x)));
        u32 v = f.mul(x, s);
        t[x] = f.mul(v, v);
    }
    return t;
}

// exponent orbit step d -> p*d taken in [1, q-1]
inline u64 frobenius_exponent_step(u64 d, u32 q, int p) {
    return (d * static_cast<u64>(p) - 1) % (q - 1) + 1;
}

struct MonomialHit {
    u64 d;
    std::vector<u32> cs; // coefficients making cx^d planar; {1} under the odd convention
};

struct MonomialSearchReport {
    std::string field_spec;
    planar_convention convention;
    bool restricted = false;
    std::vector<u64> tested;            // exponents actually swept, ascending
    std::vector<MonomialHit> hits;      // subset of tested with nonempty cs
    std::vector<std::vector<u64>> orbits; // hit exponents grouped by the Frobenius orbit
};

// Sweeps cx^d over the given exponents. Odd convention fixes c = 1 (scaling
// is absorbed by the normalization) and optionally skips p | d; the even
// convention sweeps every nonzero c, because the verdict depends on c.
inline MonomialSearchReport search_planar_monomials_list(const Field& F, std::vector<u64> ds,
                                                         bool restrict_d = false) {
    const FiniteField& f = *F;
    bool even = f.p() == 2;
    require(f.q() <= (even ? (u32{1} << 14) : 6561u), errc::range_too_large,
            "monomial sweep out of supported range");
    u32 q = f.q();
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    std::vector<u64> tested;
    for (u64 d : ds) {
        require(d >= 1 && d <= q - 1, errc::range_too_large, "exponent outside [1, q-1]");
        if (!even && restrict_d && d % static_cast<u64>(f.p()) == 0) continue;
        tested.push_back(d);
    }

    std::vector<std::vector<u32>> css(tested.size());
    parallel_chunks(tested.size(), [&](u64 lo, u64 hi) {
        detail::BijectionProbe probe(q);
        std::vector<u32> base(q);
        for (u64 i = lo; i < hi; ++i) {
            u64 d = tested[i];
            for (u32 x = 0; x < q; ++x) base[x] = f.pow(x, d);
            if (!even) {
                u32 bad = q;
                for (u32 a = 1; a < q && bad == q; ++a)
                    if (!probe.bijective(q, [&](u32 x) { return f.sub(base[f.add(x, a)], base[x]); }))
                        bad = a;
                if (bad == q) css[i] = {1};
                continue;
            }
            for (u32 c = 1; c < q; ++c) {
                bool ok = true;
                for (u32 a = 1; a < q && ok; ++a)
                    ok = probe.bijective(q, [&](u32 x) {
                        return f.mul(c, base[f.add(x, a)] ^ base[x]) ^ f.mul(a, x);
                    });
                if (ok) css[i].push_back(c);
            }
        }
    });

    MonomialSearchReport rep;
    rep.field_spec = f.spec();
    rep.convention = even ? planar_convention::even : planar_convention::odd;
    rep.restricted = restrict_d;
    rep.tested = tested;
    for (size_t i = 0; i < tested.size(); ++i)
        if (!css[i].empty()) rep.hits.push_back(MonomialHit{tested[i], std::move(css[i])});

    std::vector<u64> hit_ds;
    for (const auto& h : rep.hits) hit_ds.push_back(h.d);
    std::vector<u64> seen;
    for (u64 d : hit_ds) {
        if (std::find(seen.begin(), seen.end(), d) != seen.end()) continue;
        std::vector<u64> cls;
        u64 e = d;
        do {
            if (std::find(hit_ds.begin(), hit_ds.end(), e) != hit_ds.end()) {
                cls.push_back(e);
                seen.push_back(e);
            }
            e = frobenius_exponent_step(e, q, f.p());
        } while (e != d);
        std::sort(cls.begin(), cls.end());
        rep.orbits.push_back(std::move(cls));
    }
    return rep;
}

inline MonomialSearchReport search_planar_monomials(const Field& F, u64 d_lo, u64 d_hi,
                                                    bool restrict_d = false) {
    require(d_lo >= 1 && d_lo <= d_hi, errc::parse_error, "empty exponent range");
    u64 hi = std::min<u64>(d_hi, F->q() - 1);
    std::vector<u64> ds;
    for (u64 d = d_lo; d <= hi; ++d) ds.push_back(d);
    return search_planar_monomials_list(F, std::move(ds), restrict_d);
}

} // namespace plnr
