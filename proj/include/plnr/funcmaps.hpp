#pragma once

// Polynomial self-maps of GF(q) in canonical reduced form: exponents are
// reduced mod x^q - x (e >= 1 maps to ((e-1) mod (q-1)) + 1, so the zero
// pattern at x = 0 is preserved) and coefficients of merged exponents are
// combined. Two maps are equal as functions iff their canonical coefficient
// vectors are equal.

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "plnr/gf.hpp"

namespace plnr {

enum class do_class { dembowski_ostrom, affine, affine_do, general };

inline const char* do_class_name(do_class c) {
    switch (c) {
    case do_class::dembowski_ostrom: return "DO";
    case do_class::affine: return "Affine";
    case do_class::affine_do: return "AffineDO";
    case do_class::general: return "General";
    }
    return "?";
}

struct PolyMap {
    Field field;
    std::vector<u32> coeffs; // coeffs[e] multiplies x^e; size <= q, trimmed

    int degree() const {
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
            if (coeffs[static_cast<size_t>(i)]) return i;
        return -1;
    }

    bool zero() const { return degree() < 0; }

    u32 evaluate(u32 x) const {
        const FiniteField& F = *field;
        u32 acc = 0;
        for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
            acc = F.add(F.mul(acc, x), coeffs[static_cast<size_t>(i)]);
        return acc;
    }

    std::vector<u32> value_table() const {
        const FiniteField& F = *field;
        std::vector<u32> t(F.q());
        // sparse maps: evaluate term by term with table-backed powers
        size_t nnz = 0;
        for (u32 c : coeffs) nnz += c != 0;
        if (nnz * 4 < coeffs.size()) {
            for (u32 x = 0; x < F.q(); ++x) {
                u32 acc = 0;
                for (size_t e = 0; e < coeffs.size(); ++e)
                    if (coeffs[e]) acc = F.add(acc, F.mul(coeffs[e], F.pow(x, e)));
                t[x] = acc;
            }
        } else {
            for (u32 x = 0; x < F.q(); ++x) t[x] = evaluate(x);
        }
        return t;
    }

    // sparse form "e1:c1,e2:c2,..." ascending in e
    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (size_t e = 0; e < coeffs.size(); ++e) {
            if (!coeffs[e]) continue;
            if (!first) os << ',';
            os << e << ':' << coeffs[e];
            first = false;
        }
        if (first) os << "0:0";
        return os.str();
    }
};

inline u64 reduce_exponent(u64 e, u32 q) {
    if (e == 0 || e < q) return e;
    return (e - 1) % (q - 1) + 1;
}

inline PolyMap make_polymap(const Field& F, const std::vector<std::pair<u64, u32>>& terms) {
    u32 q = F->q();
    std::vector<u32> coeffs;
    for (auto [e, c] : terms) {
        require(c < q, errc::parse_error, "coefficient encoding out of range");
        u64 er = reduce_exponent(e, q);
        if (coeffs.size() <= er) coeffs.resize(static_cast<size_t>(er) + 1, 0);
        coeffs[static_cast<size_t>(er)] = F->add(coeffs[static_cast<size_t>(er)], c);
    }
    while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
    return PolyMap{F, std::move(coeffs)};
}

inline PolyMap parse_polymap(const Field& F, const std::string& s) {
    std::vector<std::pair<u64, u32>> terms;
    std::istringstream is(s);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        auto pos = tok.find(':');
        require(pos != std::string::npos, errc::parse_error, "polynomial term '" + tok + "' lacks ':'");
        try {
            u64 e = std::stoull(tok.substr(0, pos));
            long long c = std::stoll(tok.substr(pos + 1));
            require(c >= 0, errc::parse_error, "negative coefficient encoding");
            terms.emplace_back(e, static_cast<u32>(c));
        } catch (const error&) {
            throw;
        } catch (const std::exception&) {
            fail(errc::parse_error, "bad polynomial term '" + tok + "'");
        }
    }
    return make_polymap(F, terms);
}

inline PolyMap monomial(const Field& F, u64 e, u32 c = 1) { return make_polymap(F, {{e, c}}); }

// Interpolating polynomial of degree < q through all q points, via
// L_i = (x^q - x)/(x - x_i) and the identity L_i(x_i) = P'(x_i) = -1.
inline PolyMap interpolate(const Field& F, const std::vector<u32>& table) {
    u32 q = F->q();
    require(table.size() == q, errc::wrong_length, "value table must have q entries");
    require(q <= 4096, errc::range_too_large, "interpolation supported up to q = 2^12");
    std::vector<u32> acc(q, 0);
    std::vector<u32> quot(q); // quotient of x^q - x by (x - c), degree q-1
    for (u32 i = 0; i < q; ++i) {
        if (table[i] == 0) continue;
        u32 c = i;
        // synthetic division: b_{q-1} = 1; b_{j-1} = p_j + c b_j, p_1 = -1
        quot[q - 1] = 1;
        for (u32 j = q - 1; j >= 1; --j) {
            u32 pj = (j == 1) ? F->neg(1) : 0;
            quot[j - 1] = F->add(pj, F->mul(c, quot[j]));
        }
        u32 scale = F->neg(table[i]); // divide by L_i(x_i) = -1
        for (u32 j = 0; j < q; ++j) acc[j] = F->add(acc[j], F->mul(scale, quot[j]));
    }
    while (!acc.empty() && acc.back() == 0) acc.pop_back();
    return PolyMap{F, std::move(acc)};
}

struct Classification {
    do_class tag;
    PolyMap do_part;     // terms with exponent p^i + p^j
    PolyMap affine_part; // terms with exponent in {0} union {p^i}
};

// Dembowski-Ostrom exponents: p^i + p^j with 0 <= i <= j < m for odd p and
// 0 <= i < j < m for p = 2 (x^2 is affine in characteristic 2, not DO).
inline Classification classify(const PolyMap& f) {
    const FiniteField& F = *f.field;
    int p = F.p(), m = F.m();
    std::vector<u64> ppow(static_cast<size_t>(m));
    ppow[0] = 1;
    for (int i = 1; i < m; ++i) ppow[static_cast<size_t>(i)] = ppow[static_cast<size_t>(i - 1)] * static_cast<u64>(p);

    auto is_do_exp = [&](u64 e) {
        for (int i = 0; i < m; ++i)
            for (int j = i + (p == 2 ? 1 : 0); j < m; ++j)
                if (ppow[static_cast<size_t>(i)] + ppow[static_cast<size_t>(j)] == e) return true;
        return false;
    };
    auto is_affine_exp = [&](u64 e) {
        if (e == 0) return true;
        for (int i = 0; i < m; ++i)
            if (ppow[static_cast<size_t>(i)] == e) return true;
        return false;
    };

    std::vector<std::pair<u64, u32>> dos, affs;
    bool only_do = true, only_aff = true, in_union = true;
    for (size_t e = 0; e < f.coeffs.size(); ++e) {
        if (!f.coeffs[e]) continue;
        bool d = is_do_exp(e), a = is_affine_exp(e);
        if (d)
            dos.emplace_back(e, f.coeffs[e]);
        else if (a)
            affs.emplace_back(e, f.coeffs[e]);
        only_do &= d;
        only_aff &= a;
        in_union &= (d || a);
    }
    do_class tag = only_do     ? do_class::dembowski_ostrom
                   : only_aff  ? do_class::affine
                   : in_union  ? do_class::affine_do
                               : do_class::general;
    return Classification{tag, make_polymap(f.field, dos), make_polymap(f.field, affs)};
}

} // namespace plnr
