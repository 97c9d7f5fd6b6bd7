#pragma once

// Divisible designs and projective planes: incidence structures from
// pre-semifields and relative difference sets, exhaustive axiom checks,
// the one-point-per-class extension to a projective plane, duality,
// fingerprints, and serialization.

#include <algorithm>
#include <array>
#include <istream>
#include <mutex>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "plnr/common.hpp"
#include "plnr/parallel.hpp"
#include "plnr/rds.hpp"
#include "plnr/semifield.hpp"

namespace plnr {

constexpr u32 design_max_q = 64;
constexpr u64 design_max_points = u64{1} << 14;
constexpr u32 plane_exhaustive_max = 10000;
constexpr u32 plane_sample_count = 10000;

// Lines are sorted point-index sets; through is the transpose view and is
// always consistent with lines. Class partitions are optional.
struct IncidenceStructure {
    u32 points = 0;
    std::vector<std::vector<u32>> lines;
    std::vector<std::vector<u32>> through;
    std::vector<std::vector<u32>> point_classes;
    std::vector<std::vector<u32>> line_classes;
};

inline IncidenceStructure make_incidence(u32 points, std::vector<std::vector<u32>> lines,
                                         std::vector<std::vector<u32>> point_classes = {},
                                         std::vector<std::vector<u32>> line_classes = {}) {
    IncidenceStructure I;
    I.points = points;
    for (auto& l : lines) {
        std::sort(l.begin(), l.end());
        require(std::adjacent_find(l.begin(), l.end()) == l.end(), errc::parse_error,
                "repeated point in a line");
        for (u32 p : l)
            require(p < points, errc::parse_error, "line names a point out of range");
    }
    I.lines = std::move(lines);
    I.through.assign(points, {});
    for (u32 l = 0; l < I.lines.size(); ++l)
        for (u32 p : I.lines[l]) I.through[p].push_back(l);
    for (const auto& c : point_classes)
        for (u32 p : c) require(p < points, errc::parse_error, "point class out of range");
    for (const auto& c : line_classes)
        for (u32 l : c)
            require(l < I.lines.size(), errc::parse_error, "line class out of range");
    I.point_classes = std::move(point_classes);
    I.line_classes = std::move(line_classes);
    return I;
}

inline IncidenceStructure dual(const IncidenceStructure& I) {
    IncidenceStructure D;
    D.points = static_cast<u32>(I.lines.size());
    D.lines = I.through;
    D.through = I.lines;
    D.point_classes = I.line_classes;
    D.line_classes = I.point_classes;
    return D;
}

// perm[old] = new; must be a bijection on the point indices
inline IncidenceStructure relabel_points(const IncidenceStructure& I,
                                         const std::vector<u32>& perm) {
    require(perm.size() == I.points, errc::wrong_length, "permutation arity mismatch");
    std::vector<bool> hit(I.points, false);
    for (u32 v : perm) {
        require(v < I.points && !hit[v], errc::parse_error, "relabeling is not a bijection");
        hit[v] = true;
    }
    auto map_all = [&](const std::vector<std::vector<u32>>& src) {
        std::vector<std::vector<u32>> out(src.size());
        for (size_t i = 0; i < src.size(); ++i) {
            out[i].reserve(src[i].size());
            for (u32 p : src[i]) out[i].push_back(perm[p]);
        }
        return out;
    };
    auto pclasses = map_all(I.point_classes);
    for (auto& c : pclasses) std::sort(c.begin(), c.end());
    return make_incidence(I.points, map_all(I.lines), std::move(pclasses), I.line_classes);
}

struct CheckVerdict {
    bool ok = true;
    std::vector<std::vector<u64>> witnesses; // capped; content depends on the check
};

struct DesignReport {
    CheckVerdict d1, d2, d3, d4, d5;
    bool ok() const { return d1.ok && d2.ok && d3.ok && d4.ok && d5.ok; }
};

namespace detail {

constexpr size_t max_witnesses = 64;

inline void add_witness(CheckVerdict& v, std::vector<u64> w) {
    v.ok = false;
    if (v.witnesses.size() < max_witnesses) v.witnesses.push_back(std::move(w));
}

// partition check: count classes of size n tiling [0, total)
inline CheckVerdict check_partition(const std::vector<std::vector<u32>>& classes, u64 m, u64 n,
                                    u64 total) {
    CheckVerdict v;
    if (classes.size() != m) add_witness(v, {classes.size(), m});
    std::vector<u32> cover(total, 0);
    for (size_t c = 0; c < classes.size(); ++c) {
        if (classes[c].size() != n) add_witness(v, {c, classes[c].size(), n});
        for (u32 x : classes[c]) ++cover[x];
    }
    for (u64 x = 0; x < total; ++x)
        if (cover[x] != 1) add_witness(v, {x, cover[x]});
    return v;
}

// class id per item, or -1 when the partitions are ragged (reported elsewhere)
inline std::vector<int> class_ids(const std::vector<std::vector<u32>>& classes, u64 total) {
    std::vector<int> id(total, -1);
    for (size_t c = 0; c < classes.size(); ++c)
        for (u32 x : classes[c])
            if (x < total) id[x] = static_cast<int>(c);
    return id;
}

// every two different items not in a common class meet in exactly lambda
// incidences: census per item via its incident blocks, then a full scan
inline CheckVerdict pair_census(const std::vector<std::vector<u32>>& blocks,
                                const std::vector<std::vector<u32>>& incident,
                                const std::vector<int>& cls, u64 lambda, unsigned workers) {
    const u64 total = incident.size();
    CheckVerdict v;
    std::mutex merge;
    parallel_chunks(total, [&](u64 lo, u64 hi) {
        std::vector<u32> cnt(total, 0);
        CheckVerdict local;
        for (u64 a = lo; a < hi; ++a) {
            for (u32 b : incident[a])
                for (u32 other : blocks[b])
                    if (other != a) ++cnt[other];
            for (u64 other = 0; other < total; ++other) {
                if (other == a || cls[a] == cls[other]) continue;
                if (cnt[other] != lambda) add_witness(local, {a, other, cnt[other]});
            }
            for (u32 b : incident[a])
                for (u32 other : blocks[b]) cnt[other] = 0;
        }
        if (!local.ok) {
            std::lock_guard<std::mutex> lock(merge);
            v.ok = false;
            for (auto& w : local.witnesses)
                if (v.witnesses.size() < max_witnesses) v.witnesses.push_back(std::move(w));
        }
    }, workers);
    std::sort(v.witnesses.begin(), v.witnesses.end());
    return v;
}

} // namespace detail

// Exhaustive check of the five divisible-design axioms against declared
// parameters: point and line sets tile into m classes of size n, cross-class
// point pairs lie on exactly lambda common lines, cross-class line pairs
// meet in exactly lambda points, and every line and point has degree k.
// Pairs within a common class are unconstrained.
inline DesignReport verify_design(const IncidenceStructure& I, u64 m, u64 n, u64 k, u64 lambda,
                                  unsigned workers = 0) {
    require(!I.point_classes.empty() && !I.line_classes.empty(), errc::missing_classes,
            "divisible-design axioms need both class partitions");
    const u64 nl = I.lines.size();
    DesignReport rep;
    if (I.points != m * n) detail::add_witness(rep.d1, {I.points, m * n});
    {
        auto part = detail::check_partition(I.point_classes, m, n, I.points);
        if (!part.ok) {
            rep.d1.ok = false;
            for (auto& w : part.witnesses) rep.d1.witnesses.push_back(std::move(w));
        }
    }
    if (nl != m * n) detail::add_witness(rep.d2, {nl, m * n});
    {
        auto part = detail::check_partition(I.line_classes, m, n, nl);
        if (!part.ok) {
            rep.d2.ok = false;
            for (auto& w : part.witnesses) rep.d2.witnesses.push_back(std::move(w));
        }
    }
    auto pcls = detail::class_ids(I.point_classes, I.points);
    auto lcls = detail::class_ids(I.line_classes, nl);
    rep.d3 = detail::pair_census(I.lines, I.through, pcls, lambda, workers);
    rep.d4 = detail::pair_census(I.through, I.lines, lcls, lambda, workers);
    for (u64 l = 0; l < nl; ++l)
        if (I.lines[l].size() != k) detail::add_witness(rep.d5, {l, I.lines[l].size()});
    for (u64 p = 0; p < I.points; ++p)
        if (I.through[p].size() != k) detail::add_witness(rep.d5, {p, I.through[p].size()});
    return rep;
}

// Point (x,y) lies on line [m,b] when m*x + b = y. Point classes collect a
// fixed x; line classes collect a fixed m. Gives a divisible (q,q,q,1)
// design for any product satisfying S1-S3.
inline IncidenceStructure design_from_semifield(const PreSemifield& S) {
    require(S.q() <= design_max_q, errc::too_large, "design construction capped at q = 64");
    require(check_axioms(S).presemifield(), errc::axioms_fail,
            "design construction needs S1-S3");
    const u32 q = S.q();
    const Field& F = S.field;
    std::vector<std::vector<u32>> lines(static_cast<size_t>(q) * q);
    for (u32 mm = 0; mm < q; ++mm)
        for (u32 b = 0; b < q; ++b) {
            auto& L = lines[static_cast<size_t>(mm) * q + b];
            L.reserve(q);
            for (u32 x = 0; x < q; ++x)
                L.push_back(x * q + F->add(S.op(mm, x), b));
        }
    std::vector<std::vector<u32>> pcls(q), lcls(q);
    for (u32 a = 0; a < q; ++a) {
        pcls[a].reserve(q);
        lcls[a].reserve(q);
        for (u32 b = 0; b < q; ++b) {
            pcls[a].push_back(a * q + b);
            lcls[a].push_back(a * q + b);
        }
    }
    return make_incidence(q * q, std::move(lines), std::move(pcls), std::move(lcls));
}

// Points are the group elements, line g is the translate R*g, and both
// class partitions follow the right cosets of the forbidden subgroup.
inline IncidenceStructure design_from_rds(const RelativeDifferenceSet& D) {
    require(D.group != nullptr, errc::internal, "design construction needs a group");
    const Group& G = *D.group;
    require(G.order() <= design_max_points, errc::too_large,
            "design construction capped at group order 2^14");
    const u32 go = static_cast<u32>(G.order());
    std::vector<std::vector<u32>> lines(go);
    for (u32 g = 0; g < go; ++g) {
        lines[g].reserve(D.elements.size());
        for (u32 r : D.elements) lines[g].push_back(G.op(r, g));
    }
    std::vector<std::vector<u32>> cosets;
    {
        std::vector<bool> seen(go, false);
        for (u32 g = 0; g < go; ++g) {
            if (seen[g]) continue;
            std::vector<u32> coset;
            for (u32 u : D.forbidden) {
                u32 x = G.op(u, g);
                seen[x] = true;
                coset.push_back(x);
            }
            std::sort(coset.begin(), coset.end());
            cosets.push_back(std::move(coset));
        }
    }
    return make_incidence(go, std::move(lines), cosets, cosets);
}

struct PlaneReport {
    CheckVerdict p1, p2, p3, uniform;
    u32 order = 0;
    bool sampled = false;
    bool ok() const { return p1.ok && p2.ok && p3.ok && uniform.ok; }
};

namespace detail {

// every two distinct items share exactly one incidence, checked through a
// per-item census as in pair_census but with no class exemptions
inline CheckVerdict plane_pair_check(const std::vector<std::vector<u32>>& blocks,
                                     const std::vector<std::vector<u32>>& incident,
                                     unsigned workers) {
    std::vector<int> cls(incident.size(), -1);
    for (size_t i = 0; i < cls.size(); ++i) cls[i] = static_cast<int>(i);
    return pair_census(blocks, incident, cls, 1, workers);
}

inline u64 common_count(const std::vector<u32>& a, const std::vector<u32>& b) {
    u64 c = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else { ++c; ++i; ++j; }
    }
    return c;
}

inline CheckVerdict sampled_pair_check(const std::vector<std::vector<u32>>& blocks,
                                       const std::vector<std::vector<u32>>& incident,
                                       u32 seed) {
    CheckVerdict v;
    std::mt19937 rng(seed);
    const u64 total = incident.size();
    for (u32 t = 0; t < plane_sample_count; ++t) {
        u64 a = rng() % total, b = rng() % total;
        if (a == b) continue;
        u64 c = 0;
        for (u32 l : incident[a]) {
            const auto& L = blocks[l];
            if (std::binary_search(L.begin(), L.end(), static_cast<u32>(b))) ++c;
        }
        if (c != 1) add_witness(v, {a, b, c});
    }
    return v;
}

} // namespace detail

// P1 and P2 exhaustively up to the point cap, deterministically sampled
// above it (flagged). P3 by a complete early-exit search: for each point
// pair (a,b), candidates c,d are drawn from the points not collinear with
// both, and the quadruple is accepted once no three of its points share a
// line; if a witness quadruple exists, the scan that reaches one of its
// pairs finds it. Order is read off the first line; uniformity asserts
// every line carries order+1 points and every point order+1 lines.
inline PlaneReport verify_plane(const IncidenceStructure& I, unsigned workers = 0) {
    PlaneReport rep;
    const u64 np = I.points, nl = I.lines.size();
    rep.sampled = np > plane_exhaustive_max || nl > plane_exhaustive_max;
    if (!rep.sampled) {
        rep.p1 = detail::plane_pair_check(I.lines, I.through, workers);
        rep.p2 = detail::plane_pair_check(I.through, I.lines, workers);
    } else {
        rep.p1 = detail::sampled_pair_check(I.lines, I.through, 0x706c6e31);
        rep.p2 = detail::sampled_pair_check(I.through, I.lines, 0x706c6e32);
    }

    rep.p3.ok = false;
    std::vector<u32> stamp(np, 0);
    u32 epoch = 0;
    auto mark_collinear = [&](u32 a, u32 b) {
        // stamp every point sharing a line with both a and b
        ++epoch;
        stamp[a] = epoch;
        stamp[b] = epoch;
        for (u32 l : I.through[a]) {
            const auto& L = I.lines[l];
            if (std::binary_search(L.begin(), L.end(), b))
                for (u32 p : L) stamp[p] = epoch;
        }
    };
    for (u32 a = 0; a < np && !rep.p3.ok; ++a)
        for (u32 b = a + 1; b < np && !rep.p3.ok; ++b) {
            mark_collinear(a, b);
            u32 pair_epoch = epoch;
            std::vector<u32> candidates;
            for (u32 p = 0; p < np; ++p)
                if (stamp[p] != pair_epoch) candidates.push_back(p);
            for (size_t ci = 0; ci < candidates.size() && !rep.p3.ok; ++ci) {
                u32 c = candidates[ci];
                mark_collinear(a, c);
                u32 ac = epoch;
                std::vector<u32> still;
                for (u32 d : candidates)
                    if (d != c && stamp[d] != ac) still.push_back(d);
                mark_collinear(b, c);
                for (u32 d : still)
                    if (stamp[d] != epoch) {
                        rep.p3.ok = true;
                        rep.p3.witnesses = {{a, b, c, d}};
                        break;
                    }
            }
        }

    if (nl == 0 || I.lines[0].empty()) {
        detail::add_witness(rep.uniform, {0, 0});
        return rep;
    }
    rep.order = static_cast<u32>(I.lines[0].size()) - 1;
    for (u64 l = 0; l < nl; ++l)
        if (I.lines[l].size() != rep.order + u64{1})
            detail::add_witness(rep.uniform, {l, I.lines[l].size()});
    for (u64 p = 0; p < np; ++p)
        if (I.through[p].size() != rep.order + u64{1})
            detail::add_witness(rep.uniform, {p, I.through[p].size()});
    return rep;
}

// Extension of a divisible (n,n,n,1) design to a projective plane of order
// n: one new point on every line of each line class, one new line through
// every point class, and one new line holding all the new points. Old point
// and line indices are preserved; the joint point is index n^2.
inline IncidenceStructure plane_from_design(const IncidenceStructure& I, unsigned workers = 0) {
    const u64 n = I.point_classes.size();
    auto rep = verify_design(I, n, n, n, 1, workers);
    require(rep.ok(), errc::design_invalid,
            "plane extension needs a verified divisible (n,n,n,1) design");
    const u32 infinity = static_cast<u32>(n * n);
    std::vector<std::vector<u32>> lines = I.lines;
    for (u32 c = 0; c < I.line_classes.size(); ++c)
        for (u32 l : I.line_classes[c]) lines[l].push_back(infinity + 1 + c);
    std::vector<u32> at_infinity{infinity};
    for (u32 c = 0; c < n; ++c) at_infinity.push_back(infinity + 1 + c);
    for (const auto& cls : I.point_classes) {
        auto joined = cls;
        joined.push_back(infinity);
        lines.push_back(std::move(joined));
    }
    lines.push_back(std::move(at_infinity));
    return make_incidence(static_cast<u32>(n * n + n + 1), std::move(lines));
}

// fingerprint primitives: FNV-1a over the sorted point indices of a line,
// then over the sorted multiset of line hashes
namespace detail {
inline u64 fnv_step(u64 h, u64 v) {
    for (int i = 0; i < 8; ++i) {
        h ^= (v >> (8 * i)) & 0xff;
        h *= 1099511628211ull;
    }
    return h;
}
} // namespace detail

inline std::vector<u64> line_fingerprints(const IncidenceStructure& I) {
    std::vector<u64> out;
    out.reserve(I.lines.size());
    for (const auto& l : I.lines) {
        u64 h = 14695981039346656037ull;
        for (u32 p : l) h = detail::fnv_step(h, p);
        out.push_back(h);
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline u64 fingerprint(const IncidenceStructure& I) {
    u64 h = 14695981039346656037ull;
    h = detail::fnv_step(h, I.points);
    for (u64 lh : line_fingerprints(I)) h = detail::fnv_step(h, lh);
    return h;
}

// File layout: "design m n k lambda" header, m "pclass" rows, m "lclass"
// rows, then one bare row of point indices per line. Readers re-verify.
inline void write_design(std::ostream& os, const IncidenceStructure& I, u64 m, u64 n, u64 k,
                         u64 lambda) {
    os << "design " << m << ' ' << n << ' ' << k << ' ' << lambda << '\n';
    for (const auto& c : I.point_classes) {
        os << "pclass";
        for (u32 p : c) os << ' ' << p;
        os << '\n';
    }
    for (const auto& c : I.line_classes) {
        os << "lclass";
        for (u32 l : c) os << ' ' << l;
        os << '\n';
    }
    for (const auto& l : I.lines) {
        for (size_t i = 0; i < l.size(); ++i) os << (i ? " " : "") << l[i];
        os << '\n';
    }
}

struct LoadedDesign {
    IncidenceStructure structure;
    u64 m = 0, n = 0, k = 0, lambda = 0;
};

// Structural parse only; the declared axioms are not re-checked.
inline LoadedDesign parse_design(std::istream& is) {
    std::string line, tag;
    require(static_cast<bool>(std::getline(is, line)), errc::parse_error, "missing header");
    std::istringstream hs(line);
    LoadedDesign out;
    require(static_cast<bool>(hs >> tag >> out.m >> out.n >> out.k >> out.lambda) &&
                tag == "design",
            errc::parse_error, "header must read: design m n k lambda");
    auto read_class = [&](const char* want) {
        require(static_cast<bool>(std::getline(is, line)), errc::parse_error,
                "missing class row");
        std::istringstream cs(line);
        std::string t;
        cs >> t;
        require(t == want, errc::parse_error, std::string("expected a ") + want + " row");
        std::vector<u32> c;
        u64 v;
        while (cs >> v) {
            require(v < (u64{1} << 32), errc::parse_error, "index out of range");
            c.push_back(static_cast<u32>(v));
        }
        return c;
    };
    std::vector<std::vector<u32>> pcls, lcls;
    for (u64 i = 0; i < out.m; ++i) pcls.push_back(read_class("pclass"));
    for (u64 i = 0; i < out.m; ++i) lcls.push_back(read_class("lclass"));
    std::vector<std::vector<u32>> lines;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<u32> l;
        u64 v;
        while (ls >> v) {
            require(v < (u64{1} << 32), errc::parse_error, "index out of range");
            l.push_back(static_cast<u32>(v));
        }
        lines.push_back(std::move(l));
    }
    u64 total = out.m * out.n;
    require(total <= (u64{1} << 24), errc::too_large, "declared point count too large");
    out.structure = make_incidence(static_cast<u32>(total), std::move(lines),
                                   std::move(pcls), std::move(lcls));
    return out;
}

inline LoadedDesign read_design(std::istream& is, unsigned workers = 0) {
    LoadedDesign out = parse_design(is);
    require(verify_design(out.structure, out.m, out.n, out.k, out.lambda, workers).ok(),
            errc::design_invalid, "imported structure fails its declared axioms");
    return out;
}

inline void write_plane(std::ostream& os, const IncidenceStructure& I, u32 order) {
    os << "plane " << order << '\n';
    for (const auto& l : I.lines) {
        for (size_t i = 0; i < l.size(); ++i) os << (i ? " " : "") << l[i];
        os << '\n';
    }
}

struct LoadedPlane {
    IncidenceStructure structure;
    u32 order = 0;
};

// Structural parse only; the plane axioms are not re-checked.
inline LoadedPlane parse_plane(std::istream& is) {
    std::string line, tag;
    require(static_cast<bool>(std::getline(is, line)), errc::parse_error, "missing header");
    std::istringstream hs(line);
    u64 order = 0;
    require(static_cast<bool>(hs >> tag >> order) && tag == "plane", errc::parse_error,
            "header must read: plane order");
    std::vector<std::vector<u32>> lines;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<u32> l;
        u64 v;
        while (ls >> v) {
            require(v < (u64{1} << 32), errc::parse_error, "index out of range");
            l.push_back(static_cast<u32>(v));
        }
        lines.push_back(std::move(l));
    }
    u64 total = order * order + order + 1;
    require(total <= (u64{1} << 24), errc::too_large, "declared order too large");
    LoadedPlane out;
    out.order = static_cast<u32>(order);
    out.structure = make_incidence(static_cast<u32>(total), std::move(lines));
    return out;
}

inline IncidenceStructure read_plane(std::istream& is, unsigned workers = 0) {
    LoadedPlane in = parse_plane(is);
    auto rep = verify_plane(in.structure, workers);
    require(rep.ok() && rep.order == in.order, errc::design_invalid,
            "imported structure fails the plane axioms");
    return in.structure;
}

} // namespace plnr
