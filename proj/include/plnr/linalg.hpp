#pragma once

// Small exact linear algebra over prime fields. Two representations:
// dense integer rows for general GF(p), and u64 bitmask rows/vectors for
// GF(2) (dimension <= 64).

#include <bit>
#include <vector>

#include "plnr/common.hpp"

namespace plnr {

inline int rank_mod_p(std::vector<std::vector<int>> rows, int p) {
    if (rows.empty()) return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < cols && row < rows.size(); ++col) {
        size_t piv = row;
        while (piv < rows.size() && rows[piv][col] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[row]);
        int lead = ((rows[row][col] % p) + p) % p;
        int lead_inv = 1;
        for (int t = 1; t < p; ++t)
            if (lead * t % p == 1) { lead_inv = t; break; }
        for (size_t j = col; j < cols; ++j)
            rows[row][j] = ((rows[row][j] % p) + p) % p * lead_inv % p;
        for (size_t i = 0; i < rows.size(); ++i) {
            if (i == row) continue;
            int c = ((rows[i][col] % p) + p) % p;
            if (!c) continue;
            for (size_t j = col; j < cols; ++j)
                rows[i][j] = ((rows[i][j] - c * rows[row][j]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

namespace f2 {

inline int parity(u64 v) { return std::popcount(v) & 1; }

inline int rank(std::vector<u64> rows) {
    int r = 0;
    for (int bit = 63; bit >= 0; --bit) {
        size_t piv = static_cast<size_t>(r);
        while (piv < rows.size() && !(rows[piv] >> bit & 1)) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[static_cast<size_t>(r)]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != static_cast<size_t>(r) && (rows[i] >> bit & 1)) rows[i] ^= rows[static_cast<size_t>(r)];
        ++r;
    }
    return r;
}

// B(u, v) with B given by rows: row i holds the mask of B(e_i, e_j) over j.
inline int bform(const std::vector<u64>& rows, u64 u, u64 v) {
    int acc = 0;
    while (u) {
        int i = std::countr_zero(u);
        u &= u - 1;
        acc ^= parity(rows[static_cast<size_t>(i)] & v);
    }
    return acc;
}

inline bool is_symmetric(const std::vector<u64>& rows) {
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = i + 1; j < rows.size(); ++j)
            if ((rows[i] >> j & 1) != (rows[j] >> i & 1)) return false;
    return true;
}

// B(x,x) = 0 for all x. For B over GF(2) this is equivalent to zero diagonal
// plus B_ij = B_ji off the diagonal (test vectors e_i and e_i + e_j).
inline bool is_alternating(const std::vector<u64>& rows) {
    for (size_t i = 0; i < rows.size(); ++i)
        if (rows[i] >> i & 1) return false;
    return is_symmetric(rows);
}

inline bool is_nondegenerate(const std::vector<u64>& rows) {
    return rank(rows) == static_cast<int>(rows.size());
}

// Orthonormal basis for a symmetric nondegenerate nonalternating form:
// returns columns v_i with B(v_i, v_j) = delta_ij, so stacking them as the
// columns of T gives T^t B T = I. Gram-Schmidt peels off norm-1 vectors;
// alternating residues leave hyperbolic pairs that are merged with a norm-1
// vector e via {e+a, e+b, e+a+b}, an orthonormal triple spanning <e,a,b>.
inline std::vector<u64> orthonormal_basis(const std::vector<u64>& rows) {
    size_t n = rows.size();
    require(is_symmetric(rows), errc::not_symmetric, "form is not symmetric");
    require(!is_alternating(rows) || n == 0, errc::not_symmetric,
            "alternating form has no orthonormal basis");
    require(is_nondegenerate(rows), errc::internal, "form is degenerate");
    std::vector<u64> remaining;
    for (size_t i = 0; i < n; ++i) remaining.push_back(u64{1} << i);
    std::vector<u64> out;
    std::vector<std::pair<u64, u64>> hyper;
    while (!remaining.empty()) {
        size_t pick = remaining.size();
        for (size_t i = 0; i < remaining.size(); ++i)
            if (bform(rows, remaining[i], remaining[i])) { pick = i; break; }
        if (pick < remaining.size()) {
            u64 v = remaining[pick];
            remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
            for (u64& u : remaining)
                if (bform(rows, u, v)) u ^= v;
            out.push_back(v);
            continue;
        }
        size_t ia = 0, ib = 0;
        bool found = false;
        for (size_t i = 0; i < remaining.size() && !found; ++i)
            for (size_t j = i + 1; j < remaining.size() && !found; ++j)
                if (bform(rows, remaining[i], remaining[j])) {
                    ia = i;
                    ib = j;
                    found = true;
                }
        invariant(found, "degenerate residual form");
        u64 a = remaining[ia], b = remaining[ib];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(ib));
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(ia));
        for (u64& u : remaining) {
            u64 nu = u;
            if (bform(rows, u, b)) nu ^= a;
            if (bform(rows, u, a)) nu ^= b;
            u = nu;
        }
        hyper.emplace_back(a, b);
    }
    require(!out.empty() || hyper.empty(), errc::internal, "alternating form has no orthonormal basis");
    for (auto [a, b] : hyper) {
        u64 e = out.back();
        out.pop_back();
        out.push_back(e ^ a);
        out.push_back(e ^ b);
        out.push_back(e ^ a ^ b);
    }
    invariant(out.size() == n, "orthonormal basis size mismatch");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            invariant(bform(rows, out[i], out[j]) == (i == j ? 1 : 0), "basis is not orthonormal");
    return out;
}

// y = T x for T given as columns.
inline u64 matvec_columns(const std::vector<u64>& columns, u64 x) {
    u64 y = 0;
    while (x) {
        int i = std::countr_zero(x);
        x &= x - 1;
        y ^= columns[static_cast<size_t>(i)];
    }
    return y;
}

inline std::vector<u64> identity_rows(int n) {
    std::vector<u64> rows(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) rows[static_cast<size_t>(i)] = u64{1} << i;
    return rows;
}

} // namespace f2

} // namespace plnr
