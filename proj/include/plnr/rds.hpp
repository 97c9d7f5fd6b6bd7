#pragma once

// Relative difference sets: exact difference-census verification, builders
// from pre-semifields and planar maps, quotient projection, and component
// coordinate extraction.

#include <algorithm>
#include <istream>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "plnr/common.hpp"
#include "plnr/funcmaps.hpp"
#include "plnr/gf.hpp"
#include "plnr/groups.hpp"
#include "plnr/parallel.hpp"
#include "plnr/planar.hpp"
#include "plnr/semifield.hpp"

namespace plnr {

constexpr u64 rds_max_group_order = u64{1} << 18;

// k-subset R of a group G with a forbidden subgroup N: every element of
// G \ N occurs exactly lambda times among the ordered differences
// r * r'^{-1} (r != r'), and no element of N \ {id} occurs at all.
// Both element lists are sorted encodings.
struct RelativeDifferenceSet {
    GroupPtr group;
    std::vector<u32> forbidden;
    std::vector<u32> elements;
};

struct RdsParams {
    u64 m = 0, n = 0, k = 0, lambda = 0;
};

// One census mismatch: element occurred count times, an RDS needs expected.
struct RdsViolation {
    u32 element = 0;
    u64 count = 0;
    u64 expected = 0;
};

struct RdsVerdict {
    bool ok = false;
    RdsParams params;
    std::vector<RdsViolation> violations;
};

// Exact dense census of all ordered differences r * r'^{-1} against a
// |G|-sized counter. lambda is read off the first element outside the
// forbidden subgroup; every mismatch against the (0 inside, lambda outside)
// expectation is reported. The identity never occurs since r != r'.
inline RdsVerdict verify_rds(const GroupPtr& G, const std::vector<u32>& forbidden,
                             const std::vector<u32>& elements, unsigned workers = 0) {
    require(G != nullptr, errc::internal, "difference census needs a group");
    require(G->order() <= rds_max_group_order, errc::too_large,
            "difference census capped at group order 2^18");
    std::vector<u32> N = forbidden;
    std::sort(N.begin(), N.end());
    require(std::adjacent_find(N.begin(), N.end()) == N.end(), errc::parse_error,
            "forbidden subgroup listed with repeats");
    require(G->closure(N) == N, errc::not_a_subgroup,
            "forbidden set is not closed under the group operation");
    std::vector<u32> R = elements;
    std::sort(R.begin(), R.end());
    require(std::adjacent_find(R.begin(), R.end()) == R.end(), errc::parse_error,
            "difference set elements listed with repeats");
    for (u32 r : R)
        require(r < G->order(), errc::parse_error, "element encoding out of range");

    const u64 go = G->order();
    const size_t k = R.size();
    std::vector<u32> rinv(k);
    for (size_t j = 0; j < k; ++j) rinv[j] = G->inv(R[j]);

    std::vector<u64> census(go, 0);
    std::mutex merge;
    parallel_chunks(k, [&](u64 lo, u64 hi) {
        std::vector<u32> local(go, 0);
        for (u64 i = lo; i < hi; ++i)
            for (size_t j = 0; j < k; ++j) {
                if (i == j) continue;
                ++local[G->op(R[i], rinv[j])];
            }
        std::lock_guard<std::mutex> lock(merge);
        for (u64 g = 0; g < go; ++g) census[g] += local[g];
    }, workers);

    std::vector<bool> inN(go, false);
    for (u32 u : N) inN[u] = true;

    RdsVerdict v;
    v.params.n = N.size();
    v.params.m = go / N.size();
    v.params.k = k;
    for (u64 g = 0; g < go; ++g)
        if (!inN[g]) {
            v.params.lambda = census[g];
            break;
        }
    for (u64 g = 0; g < go; ++g) {
        u64 expected = inN[g] ? 0 : v.params.lambda;
        if (census[g] != expected)
            v.violations.push_back({static_cast<u32>(g), census[g], expected});
    }
    v.ok = v.violations.empty();
    return v;
}

inline RdsVerdict verify_rds(const RelativeDifferenceSet& D, unsigned workers = 0) {
    return verify_rds(D.group, D.forbidden, D.elements, workers);
}

namespace detail {

// {(0, y)} in a cocycle group encodes as 0..ysize-1.
inline std::vector<u32> axis_subgroup(const Group& G) {
    std::vector<u32> N(G.ysize());
    for (u32 y = 0; y < G.ysize(); ++y) N[y] = y;
    return N;
}

inline RelativeDifferenceSet graph_rds(GroupPtr G, const std::vector<u32>& values) {
    RelativeDifferenceSet D;
    D.forbidden = axis_subgroup(*G);
    D.elements.reserve(values.size());
    for (u32 x = 0; x < values.size(); ++x)
        D.elements.push_back(G->pair_enc(x, values[x]));
    std::sort(D.elements.begin(), D.elements.end());
    D.group = std::move(G);
    return D;
}

} // namespace detail

// Diagonal set {(x, x*x)} in the group (x,y)(x',y') = (x+x', y+y'+x*x')
// built over the pre-semifield product. Gives a (q,q,q,1) set relative to
// {(0,y)}: the differences (a,a*a)(b,b*b)^{-1} = (a-b, a*(a-b)) sweep each
// element outside the axis exactly once.
inline RelativeDifferenceSet rds_from_semifield(const PreSemifield& S) {
    require(S.q() <= (u32{1} << 9), errc::too_large,
            "cocycle construction capped at q = 2^9");
    auto axioms = check_axioms(S);
    require(axioms.presemifield(), errc::axioms_fail,
            "difference set construction needs S1-S3");
    auto G = Group::cocycle_table(S.field,
                                  std::make_shared<const std::vector<u32>>(S.table));
    std::vector<u32> diag(S.q());
    for (u32 x = 0; x < S.q(); ++x) diag[x] = S.op(x, x);
    return detail::graph_rds(std::move(G), diag);
}

// Graph {(x, f(x))} of a planar map in the direct product (F,+) x (F,+).
inline RelativeDifferenceSet rds_from_planar_odd(const Field& F, const std::vector<u32>& values,
                                                 unsigned workers = 0) {
    require(is_planar_odd(F, values, workers).planar, errc::not_planar,
            "graph construction needs a planar map");
    return detail::graph_rds(Group::cocycle_zero(F), values);
}

inline RelativeDifferenceSet rds_from_planar_odd(const PolyMap& f, unsigned workers = 0) {
    return rds_from_planar_odd(f.field, f.value_table(), workers);
}

// Graph {(x, f(x))} in the group (x,y)(x',y') = (x+x', y+y'+x.x') over
// GF(2^m), the field product supplying the twist.
inline RelativeDifferenceSet rds_from_planar_even(const Field& F, const std::vector<u32>& values,
                                                  unsigned workers = 0) {
    require(is_planar_even(F, values, workers).planar, errc::not_planar,
            "graph construction needs a planar map");
    return detail::graph_rds(Group::cocycle_field_product(F), values);
}

inline RelativeDifferenceSet rds_from_planar_even(const PolyMap& f, unsigned workers = 0) {
    return rds_from_planar_even(f.field, f.value_table(), workers);
}

// Image of an RDS under the quotient by a subgroup U of the forbidden
// subgroup. An (m,n,k,lambda) set maps to an (m, n/|U|, k, lambda*|U|) set
// relative to N/U. The image must stay a set: a collapse means the input
// was not lambda=1-style injective on cosets, and we refuse to guess.
inline RelativeDifferenceSet project_rds(const RelativeDifferenceSet& D,
                                         const std::vector<u32>& subgroup_gens) {
    require(D.group != nullptr, errc::internal, "projection needs a group");
    auto qm = quotient_map(D.group, subgroup_gens);
    std::vector<u32> N = D.forbidden;
    std::sort(N.begin(), N.end());
    for (u32 u : qm.subgroup)
        require(std::binary_search(N.begin(), N.end(), u), errc::not_in_forbidden,
                "projection subgroup must lie inside the forbidden subgroup");
    RelativeDifferenceSet out;
    out.group = qm.quotient;
    out.forbidden.reserve(N.size() / qm.subgroup.size());
    for (u32 u : N) out.forbidden.push_back(qm.phi[u]);
    std::sort(out.forbidden.begin(), out.forbidden.end());
    out.forbidden.erase(std::unique(out.forbidden.begin(), out.forbidden.end()),
                        out.forbidden.end());
    out.elements.reserve(D.elements.size());
    for (u32 r : D.elements) out.elements.push_back(qm.phi[r]);
    std::sort(out.elements.begin(), out.elements.end());
    require(std::adjacent_find(out.elements.begin(), out.elements.end()) == out.elements.end(),
            errc::not_difference_set, "projection collapsed distinct elements");
    return out;
}

// Component coordinate of a graph-form set {(x, f(x))} in a cocycle group:
// given an index-p subgroup U of the forbidden subgroup N and a direction
// z in N \ U of order p, N splits as U x <z> and every n factors uniquely
// as u * z^c. Returns x -> c for n = (x,0)^{-1} * (x, f(x)).
inline std::vector<int> component_function(const RelativeDifferenceSet& D,
                                           const std::vector<u32>& subgroup_gens,
                                           u32 direction) {
    const GroupPtr& G = D.group;
    require(G != nullptr, errc::internal, "component extraction needs a group");
    require(G->kind() == Group::kind_t::cocycle, errc::group_mismatch,
            "component extraction needs the pair encoding of a cocycle group");
    const u64 p = G->field()->p();
    const u32 q = G->field()->q();

    std::vector<u32> N = D.forbidden;
    std::sort(N.begin(), N.end());
    std::vector<u32> U = G->closure(subgroup_gens);
    for (u32 u : U)
        require(std::binary_search(N.begin(), N.end(), u), errc::not_in_forbidden,
                "splitting subgroup must lie inside the forbidden subgroup");
    require(U.size() * p == N.size(), errc::no_splitting,
            "splitting subgroup must have index p in the forbidden subgroup");
    require(std::binary_search(N.begin(), N.end(), direction), errc::no_splitting,
            "direction must lie in the forbidden subgroup");
    require(!std::binary_search(U.begin(), U.end(), direction), errc::no_splitting,
            "direction must lie outside the splitting subgroup");
    require(G->element_order(direction) == p, errc::no_splitting,
            "direction must have order p for a direct splitting");

    const u32 none = static_cast<u32>(G->order());
    std::vector<u32> slice(q, none);
    for (u32 r : D.elements) {
        u32 x = G->xpart(r);
        require(slice[x] == none, errc::parse_error,
                "set is not in graph form: repeated x slice");
        slice[x] = r;
    }
    for (u32 x = 0; x < q; ++x)
        require(slice[x] != none, errc::parse_error,
                "set is not in graph form: missing x slice");

    std::vector<u32> zpow(p);
    for (u64 c = 0; c < p; ++c) zpow[c] = G->pow(direction, c);
    std::vector<int> table(q, -1);
    for (u32 x = 0; x < q; ++x) {
        u32 n = G->op(G->inv(G->pair_enc(x, 0)), slice[x]);
        require(std::binary_search(N.begin(), N.end(), n), errc::parse_error,
                "set is not in graph form: offset leaves the forbidden subgroup");
        for (u64 c = 0; c < p; ++c)
            if (std::binary_search(U.begin(), U.end(), G->op(n, G->inv(zpow[c])))) {
                table[x] = static_cast<int>(c);
                break;
            }
        invariant(table[x] >= 0, "coset decomposition did not resolve");
    }
    return table;
}

// File layout: group spec line (with the beta table appended for table-kind
// specs), forbidden generator encodings on one line, then one element
// encoding per line.
inline void write_rds(std::ostream& os, const RelativeDifferenceSet& D) {
    require(D.group != nullptr, errc::internal, "serialization needs a group");
    os << D.group->spec();
    const Group* base = D.group.get();
    while (base->kind() == Group::kind_t::quotient) base = base->parent().get();
    if (base->kind() == Group::kind_t::cocycle && base->beta() == beta_kind::table)
        for (u32 e : *base->beta_table()) os << ' ' << e;
    os << '\n';
    for (size_t i = 0; i < D.forbidden.size(); ++i)
        os << (i ? " " : "") << D.forbidden[i];
    os << '\n';
    for (u32 r : D.elements) os << r << '\n';
}

inline RelativeDifferenceSet read_rds(std::istream& is) {
    std::string line;
    require(static_cast<bool>(std::getline(is, line)), errc::parse_error,
            "missing group spec line");
    std::istringstream specline(line);
    std::string spec;
    specline >> spec;
    require(!spec.empty(), errc::parse_error, "missing group spec");
    std::vector<u32> entries;
    u64 e;
    while (specline >> e) {
        require(e < (u64{1} << 32), errc::parse_error, "beta table entry out of range");
        entries.push_back(static_cast<u32>(e));
    }
    std::shared_ptr<const std::vector<u32>> table;
    if (!entries.empty())
        table = std::make_shared<const std::vector<u32>>(std::move(entries));
    auto G = parse_group_spec(spec, std::move(table));

    RelativeDifferenceSet D;
    D.group = G;
    require(static_cast<bool>(std::getline(is, line)), errc::parse_error,
            "missing forbidden subgroup line");
    std::istringstream forb(line);
    std::vector<u32> gens;
    while (forb >> e) {
        require(e < G->order(), errc::parse_error, "forbidden generator out of range");
        gens.push_back(static_cast<u32>(e));
    }
    D.forbidden = G->closure(gens);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream el(line);
        require(static_cast<bool>(el >> e), errc::parse_error, "bad element line");
        require(e < G->order(), errc::parse_error, "element encoding out of range");
        std::string rest;
        require(!(el >> rest), errc::parse_error, "one element encoding per line");
        D.elements.push_back(static_cast<u32>(e));
    }
    std::sort(D.elements.begin(), D.elements.end());
    return D;
}

} // namespace plnr
