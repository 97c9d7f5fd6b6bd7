#pragma once

// Boolean component machinery: Walsh and weight-character analysis with
// exact Gaussian integers, bent and negabent verdicts, the shifted-product
// counting test, graph sets in bilinear-form groups, the four-block
// difference-set construction, and component extraction by projection.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "plnr/common.hpp"
#include "plnr/linalg.hpp"
#include "plnr/parallel.hpp"
#include "plnr/rds.hpp"

namespace plnr {

constexpr int boolean_max_m = 20;

// truth table over GF(2)^m, x indexed little-endian by coordinate vector
struct BooleanFunction {
    int m = 0;
    std::vector<u8> table;
    u8 operator()(u64 x) const { return table[x]; }
    u64 size() const { return u64{1} << m; }
};

inline BooleanFunction make_boolean(int m, std::vector<u8> table) {
    require(m >= 1 && m <= boolean_max_m, errc::too_large, "arity must be between 1 and 20");
    require(table.size() == (u64{1} << m), errc::wrong_length,
            "truth table must have 2^m entries");
    for (u8 v : table) require(v <= 1, errc::parse_error, "truth table entry must be 0 or 1");
    return BooleanFunction{m, std::move(table)};
}

// hex encoding: nibble j carries f(4j..4j+3), f(4j) in the low bit
inline std::string to_hex(const BooleanFunction& f) {
    static const char digits[] = "0123456789abcdef";
    std::string out;
    for (u64 base = 0; base < f.size(); base += 4) {
        int nib = 0;
        for (u64 i = 0; i < 4 && base + i < f.size(); ++i) nib |= f.table[base + i] << i;
        out.push_back(digits[nib]);
    }
    return out;
}

inline BooleanFunction boolean_from_hex(int m, const std::string& hex) {
    require(m >= 1 && m <= boolean_max_m, errc::too_large, "arity must be between 1 and 20");
    u64 n = u64{1} << m;
    require(hex.size() == (n + 3) / 4, errc::wrong_length,
            "hex table must cover exactly 2^m bits");
    std::vector<u8> table(n, 0);
    for (size_t j = 0; j < hex.size(); ++j) {
        char c = hex[j];
        int nib = c >= '0' && c <= '9'   ? c - '0'
                  : c >= 'a' && c <= 'f' ? c - 'a' + 10
                  : c >= 'A' && c <= 'F' ? c - 'A' + 10
                                         : -1;
        require(nib >= 0, errc::parse_error, "invalid hex digit");
        for (u64 i = 0; i < 4; ++i) {
            u64 x = 4 * j + i;
            if (x < n) table[x] = static_cast<u8>(nib >> i & 1);
            else
                require(!(nib >> i & 1), errc::parse_error,
                        "hex table sets bits beyond 2^m");
        }
    }
    return BooleanFunction{m, std::move(table)};
}

// sum over x of (-1)^(<a,x> + f(x)); exact, bounded by 2^m
inline i64 walsh(const BooleanFunction& f, u64 a) {
    i64 s = 0;
    for (u64 x = 0; x < f.size(); ++x)
        s += (f2::parity(a & x) ^ f.table[x]) ? -1 : 1;
    return s;
}

// full spectrum by in-place butterfly
inline std::vector<i64> walsh_spectrum(const BooleanFunction& f) {
    std::vector<i64> v(f.size());
    for (u64 x = 0; x < f.size(); ++x) v[x] = f.table[x] ? -1 : 1;
    for (int j = 0; j < f.m; ++j) {
        u64 bit = u64{1} << j;
        for (u64 x = 0; x < f.size(); ++x)
            if (!(x & bit)) {
                i64 u = v[x], w = v[x | bit];
                v[x] = u + w;
                v[x | bit] = u - w;
            }
    }
    return v;
}

// flat spectrum of modulus 2^(m/2); impossible for odd m
inline bool is_bent(const BooleanFunction& f) {
    if (f.m % 2) return false;
    i64 want = i64{1} << (f.m / 2);
    for (i64 w : walsh_spectrum(f))
        if (w != want && w != -want) return false;
    return true;
}

// exact Gaussian integer; every verdict quantity fits 64 bits at arity <= 20
struct GaussianInt {
    i64 re = 0, im = 0;
    i64 norm2() const { return re * re + im * im; }
    GaussianInt times_i() const { return {-im, re}; }
    GaussianInt operator+(GaussianInt o) const { return {re + o.re, im + o.im}; }
    GaussianInt operator-(GaussianInt o) const { return {re - o.re, im - o.im}; }
    GaussianInt operator*(GaussianInt o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    bool operator==(const GaussianInt&) const = default;
};

// sum over x of (-1)^(<x,a> + f(x)) i^weight(x)
inline GaussianInt nega_spectrum_value(const BooleanFunction& f, u64 a) {
    static const GaussianInt ipow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    GaussianInt s;
    for (u64 x = 0; x < f.size(); ++x) {
        GaussianInt t = ipow[std::popcount(x) % 4];
        if (f2::parity(a & x) ^ f.table[x]) t = GaussianInt{} - t;
        s = s + t;
    }
    return s;
}

// butterfly: splitting off coordinate j turns the weight character into the
// factor i^(x_j), so the pair (u, w) maps to (u + i w, u - i w)
inline std::vector<GaussianInt> nega_spectrum(const BooleanFunction& f) {
    std::vector<GaussianInt> v(f.size());
    for (u64 x = 0; x < f.size(); ++x) v[x] = {f.table[x] ? i64{-1} : i64{1}, 0};
    for (int j = 0; j < f.m; ++j) {
        u64 bit = u64{1} << j;
        for (u64 x = 0; x < f.size(); ++x)
            if (!(x & bit)) {
                GaussianInt u = v[x], iw = v[x | bit].times_i();
                v[x] = u + iw;
                v[x | bit] = u - iw;
            }
    }
    return v;
}

// squared modulus exactly 2^m everywhere; no parity constraint on m
inline bool is_negabent(const BooleanFunction& f) {
    i64 want = i64{1} << f.m;
    for (const auto& z : nega_spectrum(f))
        if (z.norm2() != want) return false;
    return true;
}

inline std::vector<u64> standard_dot_rows(int m) {
    std::vector<u64> rows(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) rows[static_cast<size_t>(i)] = u64{1} << i;
    return rows;
}

// f(x+a) + f(x) + B(a,x) = b has exactly 2^(m-1) solutions x for every
// b in GF(2) and every nonzero shift a
inline bool verify_counting(const BooleanFunction& f, const std::vector<u64>& form_rows,
                            unsigned workers = 0) {
    require(form_rows.size() == static_cast<size_t>(f.m), errc::wrong_length,
            "form needs one row per coordinate");
    require(f2::is_symmetric(form_rows), errc::not_symmetric, "form must be symmetric");
    u64 n = f.size(), half = n / 2;
    std::vector<u8> bad(n, 0);
    parallel_chunks(n - 1, [&](u64 lo, u64 hi) {
        for (u64 t = lo; t < hi; ++t) {
            u64 a = t + 1;
            u64 zeros = 0;
            for (u64 x = 0; x < n; ++x)
                zeros += (f.table[x ^ a] ^ f.table[x] ^ f2::bform(form_rows, a, x)) == 0;
            if (zeros != half) bad[a] = 1;
        }
    }, workers);
    return std::find(bad.begin(), bad.end(), u8{1}) == bad.end();
}

// pairs (x, y) with y in GF(2) and beta given by a symmetric bilinear form;
// the ambient group of boolean graph sets
inline GroupPtr boolean_graph_group(int m, const std::vector<u64>& form_rows) {
    require(m >= 1 && m <= 15, errc::too_large, "graph groups supported up to arity 15");
    return Group::cocycle_form(make_field(2, m), form_rows);
}

// graph {(x, f(x))} in the form group; a (2^m,2,2^m,2^(m-1)) difference
// set relative to the axis exactly when the counting property holds
inline RelativeDifferenceSet rds_from_boolean(const BooleanFunction& f,
                                              const std::vector<u64>& form_rows,
                                              unsigned workers = 0) {
    auto G = boolean_graph_group(f.m, form_rows);
    require(verify_counting(f, form_rows, workers), errc::counting_fails,
            "the shifted-product counting property fails");
    std::vector<u32> values(f.size());
    for (u64 x = 0; x < f.size(); ++x) values[x] = f.table[x];
    return detail::graph_rds(std::move(G), values);
}

// support of f as a candidate difference set in the elementary abelian
// group; for bent f this is a (2^m, 2^(m-1) +- 2^(m/2-1), ...) difference set
inline RelativeDifferenceSet support_difference_set(const BooleanFunction& f) {
    require(f.m <= 16, errc::too_large, "support sets live in groups up to 2^16");
    auto G = Group::product(std::vector<u64>(static_cast<size_t>(f.m), 2));
    RelativeDifferenceSet D{G, {0}, {}};
    for (u64 x = 0; x < f.size(); ++x)
        if (f.table[x]) D.elements.push_back(static_cast<u32>(x));
    return D;
}

// four-block set {0}xD u {1}xE u {2}x(G\D) u {3}x(G\E) in Z4 x G,
// relative to 2Z4 x {0}; inputs must verify as ordinary difference sets
inline RelativeDifferenceSet rds_from_two_difference_sets(const RelativeDifferenceSet& D,
                                                          const RelativeDifferenceSet& E) {
    require(D.group != nullptr && E.group != nullptr, errc::internal, "missing group");
    require(D.group->kind() == Group::kind_t::product, errc::group_mismatch,
            "the four-block extension is built over product groups");
    require(D.group->spec() == E.group->spec(), errc::group_mismatch,
            "both sets must live in the same group");
    u64 go = D.group->order();
    require(4 * go <= rds_max_group_order, errc::too_large,
            "ambient order 4|G| exceeds the verification cap");
    require(D.forbidden == std::vector<u32>{0} && E.forbidden == std::vector<u32>{0},
            errc::not_difference_set, "inputs must be ordinary sets, forbidden {identity}");
    require(verify_rds(D).ok, errc::not_difference_set, "first input fails verification");
    require(verify_rds(E).ok, errc::not_difference_set, "second input fails verification");
    std::vector<u64> orders{4};
    for (u64 d : D.group->cyclic_orders()) orders.push_back(d);
    auto A = Group::product(orders);
    std::vector<u8> inD(go, 0), inE(go, 0);
    for (u32 d : D.elements) inD[d] = 1;
    for (u32 e : E.elements) inE[e] = 1;
    RelativeDifferenceSet R{A, {0, 2}, {}};
    for (u64 g = 0; g < go; ++g) {
        if (inD[g]) R.elements.push_back(static_cast<u32>(0 + 4 * g));
        if (inE[g]) R.elements.push_back(static_cast<u32>(1 + 4 * g));
        if (!inD[g]) R.elements.push_back(static_cast<u32>(2 + 4 * g));
        if (!inE[g]) R.elements.push_back(static_cast<u32>(3 + 4 * g));
    }
    std::sort(R.elements.begin(), R.elements.end());
    return R;
}

// Relocation of a set from Z4 x Z2^(m) into the dot-product pair group on
// m+1 coordinates: the Z4 generator goes to (e0, 0) and the involution
// generators to (e0 + e_i, 0), which respects all orders. A set in graph
// form comes back as its boolean function.
struct RelocatedSet {
    BooleanFunction f;
    RelativeDifferenceSet set;
};

inline RelocatedSet negabent_from_z4_rds(const RelativeDifferenceSet& D) {
    require(D.group != nullptr, errc::internal, "missing group");
    require(D.group->kind() == Group::kind_t::product, errc::group_mismatch,
            "expected a product group");
    const auto& orders = D.group->cyclic_orders();
    require(!orders.empty() && orders[0] == 4, errc::group_mismatch,
            "first factor must be Z4");
    for (size_t i = 1; i < orders.size(); ++i)
        require(orders[i] == 2, errc::group_mismatch, "remaining factors must be Z2");
    int m = static_cast<int>(orders.size()) - 1;
    require(m + 1 <= 15, errc::too_large, "graph groups supported up to arity 15");
    require(D.forbidden == std::vector<u32>{0, 2}, errc::parse_error,
            "forbidden subgroup must be the doubled Z4 factor");
    auto G = boolean_graph_group(m + 1, standard_dot_rows(m + 1));
    u32 A = G->pair_enc(1, 0);
    std::vector<u32> B;
    for (int i = 1; i <= m; ++i)
        B.push_back(G->pair_enc(1u | (1u << i), 0));
    auto relocate = [&](u32 g) {
        u32 out = G->pow(A, g % 4);
        u32 rest = g / 4;
        for (int i = 0; i < m; ++i)
            if (rest >> i & 1) out = G->op(out, B[static_cast<size_t>(i)]);
        return out;
    };
    RelativeDifferenceSet R{G, {relocate(0), relocate(2)}, {}};
    std::sort(R.forbidden.begin(), R.forbidden.end());
    for (u32 g : D.elements) R.elements.push_back(relocate(g));
    std::sort(R.elements.begin(), R.elements.end());
    require(std::adjacent_find(R.elements.begin(), R.elements.end()) == R.elements.end(),
            errc::internal, "relocation collapsed elements");
    std::vector<u8> table(u64{1} << (m + 1));
    std::vector<u8> seen(table.size(), 0);
    for (u32 r : R.elements) {
        u32 x = G->xpart(r);
        require(!seen[x], errc::not_difference_set, "set is not in graph form");
        seen[x] = 1;
        table[x] = static_cast<u8>(G->ypart(r));
    }
    require(std::find(seen.begin(), seen.end(), u8{0}) == seen.end(),
            errc::not_difference_set, "set is not in graph form");
    return {make_boolean(m + 1, std::move(table)), std::move(R)};
}

// Component of a graph set along an index-2 split of the forbidden axis:
// the projection is again a graph set whose bilinear form is the split
// functional composed with the ambient beta. When that form is symmetric,
// nonalternating, and nondegenerate, an orthonormal change of basis carries
// the component onto a function whose negabent verdict matches the census
// of the projected set.
struct ProjectedComponent {
    std::vector<int> component;      // raw component values, indexed by x
    std::vector<u64> form;           // induced bilinear form rows
    RelativeDifferenceSet projected; // image of the set in the quotient
    RdsVerdict verdict;              // census of the projection
    bool standard_form = false;      // orthonormal congruence to the dot form found
    BooleanFunction standardized;    // component composed with that congruence
    bool negabent = false;           // verdict on the standardized component
};

inline ProjectedComponent negabent_from_projection(const RelativeDifferenceSet& D,
                                                   const std::vector<u32>& subgroup_gens,
                                                   unsigned workers = 0) {
    require(D.group != nullptr, errc::internal, "missing group");
    require(D.group->kind() == Group::kind_t::cocycle, errc::group_mismatch,
            "projection components need a pair group");
    const Field& F = D.group->field();
    require(F->p() == 2, errc::odd_characteristic, "components live over GF(2)^m");
    const int m = F->m();
    const u32 q = F->q();
    require(D.forbidden == detail::axis_subgroup(*D.group), errc::not_in_forbidden,
            "the forbidden subgroup must be the full axis");
    auto U = D.group->closure(subgroup_gens);
    for (u32 u : U)
        require(u < q, errc::not_in_forbidden, "split generators must lie in the axis");
    require(2 * U.size() == q, errc::no_splitting, "the split must have index 2 in the axis");
    u32 direction = 0;
    while (std::binary_search(U.begin(), U.end(), direction)) ++direction;

    ProjectedComponent out;
    out.component = component_function(D, subgroup_gens, direction);
    out.projected = project_rds(D, subgroup_gens);
    out.verdict = verify_rds(out.projected, workers);
    out.form.assign(static_cast<size_t>(m), 0);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            u32 b = D.group->beta_val(1u << i, 1u << j);
            if (!std::binary_search(U.begin(), U.end(), b))
                out.form[static_cast<size_t>(i)] |= u64{1} << j;
        }
    if (f2::is_symmetric(out.form) && !f2::is_alternating(out.form) &&
        f2::is_nondegenerate(out.form)) {
        out.standard_form = true;
        auto basis = f2::orthonormal_basis(out.form);
        std::vector<u8> table(u64{1} << m);
        for (u64 x = 0; x < table.size(); ++x) {
            u64 tx = 0;
            for (int i = 0; i < m; ++i)
                if (x >> i & 1) tx ^= basis[static_cast<size_t>(i)];
            table[x] = static_cast<u8>(out.component[tx]);
        }
        out.standardized = make_boolean(m, std::move(table));
        out.negabent = is_negabent(out.standardized);
    }
    return out;
}

// CSV rows a,re,im,norm2 with a header line
inline void write_walsh_csv(std::ostream& os, const BooleanFunction& f) {
    os << "a,re,im,norm2\n";
    auto s = walsh_spectrum(f);
    for (u64 a = 0; a < s.size(); ++a)
        os << a << ',' << s[a] << ",0," << s[a] * s[a] << '\n';
}

inline void write_nega_csv(std::ostream& os, const BooleanFunction& f) {
    os << "a,re,im,norm2\n";
    auto s = nega_spectrum(f);
    for (u64 a = 0; a < s.size(); ++a)
        os << a << ',' << s[a].re << ',' << s[a].im << ',' << s[a].norm2() << '\n';
}

} // namespace plnr
