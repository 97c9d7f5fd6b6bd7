#pragma once

// Exact arithmetic in GF(p^m), q = p^m <= 2^20.
//
// Elements are encoded as integers in [0, q): the base-p digits of the
// encoding, least significant first, are the coefficients of the residue
// polynomial in the basis 1, t, t^2, ..., t^(m-1), where t is the class of
// x modulo the field modulus. Addition is digit-wise mod p (xor for p = 2);
// multiplication uses log/antilog tables for q <= 2^16 (p = 2) resp.
// q <= 3^10 (odd p), and direct polynomial reduction above that.

#include <algorithm>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "plnr/common.hpp"

namespace plnr {

namespace detail {

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline int poly_degree(const std::vector<int>& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

// Remainder of a by monic-normalizable b, coefficients mod p. b need not be
// monic; its leading coefficient is inverted mod p.
inline std::vector<int> poly_mod(std::vector<int> a, const std::vector<int>& b, int p) {
    int db = poly_degree(b);
    invariant(db >= 0, "poly_mod by zero polynomial");
    int lead = b[static_cast<size_t>(db)];
    int lead_inv = 1;
    for (int t = 1; t < p; ++t)
        if (lead * t % p == 1) { lead_inv = t; break; }
    for (int i = poly_degree(a); i >= db; i = poly_degree(a)) {
        int c = a[static_cast<size_t>(i)] * lead_inv % p;
        for (int j = 0; j <= db; ++j) {
            int& slot = a[static_cast<size_t>(i - db + j)];
            slot = ((slot - c * b[static_cast<size_t>(j)]) % p + p) % p;
        }
    }
    return a;
}

// Trial division by all monic polynomials of degree <= deg/2.
inline bool poly_irreducible(const std::vector<int>& poly, int p) {
    int d = poly_degree(poly);
    if (d <= 0) return false;
    if (d == 1) return true;
    for (int k = 1; 2 * k <= d; ++k) {
        u64 count = 1;
        for (int i = 0; i < k; ++i) count *= static_cast<u64>(p);
        std::vector<int> div(static_cast<size_t>(k) + 1, 0);
        div[static_cast<size_t>(k)] = 1;
        for (u64 e = 0; e < count; ++e) {
            u64 t = e;
            for (int i = 0; i < k; ++i) {
                div[static_cast<size_t>(i)] = static_cast<int>(t % static_cast<u64>(p));
                t /= static_cast<u64>(p);
            }
            if (poly_degree(poly_mod(poly, div, p)) < 0) return false;
        }
    }
    return true;
}

} // namespace detail

class FiniteField;
using Field = std::shared_ptr<const FiniteField>;

class FiniteField {
public:
    static constexpr u32 max_q = 1u << 20;

    int p() const { return p_; }
    int m() const { return m_; }
    u32 q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }
    bool has_tables() const { return !log_.empty(); }
    u32 generator() const {
        invariant(has_tables(), "generator requires log tables");
        return gen_;
    }

    // --- additive structure ---

    u32 add(u32 a, u32 b) const {
        if (p_ == 2) return a ^ b;
        if (!add_tab_.empty()) return add_tab_[static_cast<size_t>(a) * q_ + b];
        return add_slow(a, b);
    }

    u32 neg(u32 a) const { return p_ == 2 ? a : neg_[a]; }

    u32 sub(u32 a, u32 b) const { return add(a, neg(b)); }

    // --- multiplicative structure ---

    u32 mul(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        if (has_tables()) return exp_[log_[a] + log_[b]];
        return mul_slow(a, b);
    }

    u32 inv(u32 a) const {
        require(a != 0, errc::division_by_zero, "inverse of zero");
        if (has_tables()) return exp_[q_ - 1 - log_[a]];
        return pow(a, q_ - 2);
    }

    u32 pow(u32 a, u64 e) const {
        if (a == 0) return e == 0 ? 1u : 0u;
        if (has_tables()) {
            u64 le = static_cast<u64>(log_[a]) * (e % (q_ - 1)) % (q_ - 1);
            return exp_[le];
        }
        u32 acc = 1, base = a;
        while (e) {
            if (e & 1) acc = mul_slow(acc, base);
            base = mul_slow(base, base);
            e >>= 1;
        }
        return acc;
    }

    u32 frobenius(u32 a) const { return pow(a, static_cast<u64>(p_)); }

    // Relative trace onto the subfield GF(p^s): sum of x^((p^s)^j).
    u32 rel_trace(int s, u32 x) const {
        require(s >= 1 && m_ % s == 0, errc::not_a_divisor,
                "trace degree " + std::to_string(s) + " does not divide " + std::to_string(m_));
        u64 ps = 1;
        for (int i = 0; i < s; ++i) ps *= static_cast<u64>(p_);
        u32 acc = 0, cur = x;
        for (int j = 0; j < m_ / s; ++j) {
            acc = add(acc, cur);
            cur = pow(cur, ps);
        }
        return acc;
    }

    // --- digit access (coefficient vectors) ---

    int digit(u32 a, int i) const { return static_cast<int>(a / powp_[static_cast<size_t>(i)] % static_cast<u32>(p_)); }

    std::vector<int> to_digits(u32 a) const {
        std::vector<int> d(static_cast<size_t>(m_));
        for (int i = 0; i < m_; ++i) d[static_cast<size_t>(i)] = digit(a, i);
        return d;
    }

    u32 from_digits(const std::vector<int>& d) const {
        require(d.size() == static_cast<size_t>(m_), errc::wrong_length, "digit vector length");
        u32 a = 0;
        for (int i = m_ - 1; i >= 0; --i) {
            int di = d[static_cast<size_t>(i)];
            require(0 <= di && di < p_, errc::parse_error, "digit out of range");
            a = a * static_cast<u32>(p_) + static_cast<u32>(di);
        }
        return a;
    }

    // The spec string "p^m/c0,c1,...,cm" identifies the field exactly.
    std::string spec() const {
        std::ostringstream os;
        os << p_ << '^' << m_ << '/';
        for (size_t i = 0; i < modulus_.size(); ++i) {
            if (i) os << ',';
            os << modulus_[i];
        }
        return os.str();
    }

    bool same_as(const FiniteField& other) const {
        return p_ == other.p_ && m_ == other.m_ && modulus_ == other.modulus_;
    }

    friend Field make_field(int p, int m, const std::vector<int>* modulus);

private:
    int p_ = 0, m_ = 0;
    u32 q_ = 0;
    std::vector<int> modulus_;   // length m+1, little-endian, monic
    std::vector<u32> powp_;      // p^i for i <= m
    std::vector<u32> neg_;       // additive inverse table (odd p)
    std::vector<u32> add_tab_;   // full addition table for small odd fields
    std::vector<u32> log_;       // log_[a] for a != 0
    std::vector<u32> exp_;       // exp_[i] = g^i, doubled to avoid index reduction
    u32 gen_ = 0;
    u64 modmask_ = 0;            // p = 2: modulus as bitmask including leading bit

    u32 add_slow(u32 a, u32 b) const {
        u32 r = 0;
        for (int i = m_ - 1; i >= 0; --i) {
            u32 s = (a / powp_[static_cast<size_t>(i)] + b / powp_[static_cast<size_t>(i)]) % static_cast<u32>(p_);
            r = r * static_cast<u32>(p_) + s;
        }
        return r;
    }

    u32 mul_slow(u32 a, u32 b) const {
        if (a == 0 || b == 0) return 0;
        if (p_ == 2) {
            u64 acc = 0, aa = a;
            for (int i = 0; i < m_; ++i)
                if (b >> i & 1) acc ^= aa << i;
            for (int bit = 2 * m_ - 2; bit >= m_; --bit)
                if (acc >> bit & 1) acc ^= modmask_ << (bit - m_);
            return static_cast<u32>(acc);
        }
        std::vector<int> prod(static_cast<size_t>(2 * m_ - 1), 0);
        for (int i = 0; i < m_; ++i) {
            int da = digit(a, i);
            if (!da) continue;
            for (int j = 0; j < m_; ++j)
                prod[static_cast<size_t>(i + j)] = (prod[static_cast<size_t>(i + j)] + da * digit(b, j)) % p_;
        }
        prod = detail::poly_mod(std::move(prod), modulus_, p_);
        u32 r = 0;
        for (int i = m_ - 1; i >= 0; --i)
            r = r * static_cast<u32>(p_) + static_cast<u32>(i < static_cast<int>(prod.size()) ? prod[static_cast<size_t>(i)] : 0);
        return r;
    }

    void build_tables() {
        u32 n = q_ - 1;
        std::vector<u32> prime_factors;
        u32 t = n;
        for (u32 d = 2; d * d <= t; ++d)
            if (t % d == 0) {
                prime_factors.push_back(d);
                while (t % d == 0) t /= d;
            }
        if (t > 1) prime_factors.push_back(t);

        auto slow_pow = [this](u32 a, u64 e) {
            u32 acc = 1, base = a;
            while (e) {
                if (e & 1) acc = mul_slow(acc, base);
                base = mul_slow(base, base);
                e >>= 1;
            }
            return acc;
        };
        gen_ = 1;
        for (u32 g = 1; g < q_; ++g) {
            bool primitive = true;
            for (u32 r : prime_factors)
                if (slow_pow(g, n / r) == 1) { primitive = false; break; }
            if (primitive) { gen_ = g; break; }
        }
        log_.assign(q_, 0);
        exp_.assign(2 * static_cast<size_t>(n), 0);
        u32 cur = 1;
        for (u32 i = 0; i < n; ++i) {
            exp_[i] = cur;
            exp_[i + n] = cur;
            log_[cur] = i;
            cur = mul_slow(cur, gen_);
        }
        invariant(cur == 1, "generator order mismatch");
    }
};

inline Field make_field(int p, int m, const std::vector<int>* modulus = nullptr) {
    require(p >= 2 && detail::is_prime(static_cast<u64>(p)), errc::non_prime,
            "characteristic " + std::to_string(p) + " is not prime");
    require(m >= 1, errc::parse_error, "extension degree must be >= 1");
    u64 q = 1;
    for (int i = 0; i < m; ++i) {
        q *= static_cast<u64>(p);
        require(q <= FiniteField::max_q, errc::too_large, "field order exceeds 2^20");
    }

    auto f = std::make_shared<FiniteField>();
    auto* F = const_cast<FiniteField*>(f.get());
    F->p_ = p;
    F->m_ = m;
    F->q_ = static_cast<u32>(q);
    F->powp_.resize(static_cast<size_t>(m) + 1);
    F->powp_[0] = 1;
    for (int i = 1; i <= m; ++i) F->powp_[static_cast<size_t>(i)] = F->powp_[static_cast<size_t>(i - 1)] * static_cast<u32>(p);

    if (modulus) {
        require(modulus->size() == static_cast<size_t>(m) + 1, errc::wrong_length,
                "modulus must have m+1 coefficients");
        for (int c : *modulus)
            require(0 <= c && c < p, errc::parse_error, "modulus coefficient out of range");
        require(modulus->back() == 1, errc::reducible_modulus, "modulus must be monic");
        require(detail::poly_irreducible(*modulus, p), errc::reducible_modulus,
                "modulus is reducible");
        F->modulus_ = *modulus;
    } else {
        // Lexicographically smallest monic irreducible, coefficients compared
        // low-degree-first: c0 is the most significant digit of the counter,
        // so ascending e enumerates coefficient tuples in that lex order.
        std::vector<int> cand(static_cast<size_t>(m) + 1, 0);
        cand[static_cast<size_t>(m)] = 1;
        bool found = false;
        for (u64 e = 0; e < q && !found; ++e) {
            u64 t = e;
            for (int i = m - 1; i >= 0; --i) {
                cand[static_cast<size_t>(i)] = static_cast<int>(t % static_cast<u64>(p));
                t /= static_cast<u64>(p);
            }
            if (detail::poly_irreducible(cand, p)) found = true;
        }
        invariant(found, "no irreducible polynomial found");
        F->modulus_ = cand;
    }

    if (p == 2) {
        F->modmask_ = 0;
        for (int i = 0; i <= m; ++i)
            if (F->modulus_[static_cast<size_t>(i)]) F->modmask_ |= u64{1} << i;
    } else {
        F->neg_.resize(q);
        for (u32 a = 0; a < q; ++a) {
            u32 r = 0;
            for (int i = m - 1; i >= 0; --i) {
                u32 d = a / F->powp_[static_cast<size_t>(i)] % static_cast<u32>(p);
                r = r * static_cast<u32>(p) + (d ? static_cast<u32>(p) - d : 0);
            }
            F->neg_[a] = r;
        }
        if (q <= 1024) {
            F->add_tab_.resize(static_cast<size_t>(q) * q);
            for (u32 a = 0; a < q; ++a)
                for (u32 b = 0; b < q; ++b)
                    F->add_tab_[static_cast<size_t>(a) * q + b] = F->add_slow(a, b);
        }
    }

    bool want_tables = (p == 2 && q <= 65536) || (p != 2 && q <= 59049);
    if (want_tables) F->build_tables();
    return f;
}

inline Field make_field(int p, int m, const std::vector<int>& modulus) {
    return make_field(p, m, &modulus);
}

// "p^m" or "p^m/c0,c1,...,cm"; also accepts a bare prime "p" for GF(p).
inline Field parse_field_spec(const std::string& s) {
    auto bad = [&](const std::string& why) { fail(errc::parse_error, "field spec '" + s + "': " + why); };
    std::string head = s, tail;
    if (auto pos = s.find('/'); pos != std::string::npos) {
        head = s.substr(0, pos);
        tail = s.substr(pos + 1);
    }
    int p = 0, m = 1;
    try {
        if (auto pos = head.find('^'); pos != std::string::npos) {
            p = std::stoi(head.substr(0, pos));
            m = std::stoi(head.substr(pos + 1));
        } else {
            p = std::stoi(head);
        }
    } catch (const std::exception&) {
        bad("expected p^m");
    }
    if (tail.empty()) return make_field(p, m);
    std::vector<int> mod;
    std::istringstream is(tail);
    std::string tok;
    while (std::getline(is, tok, ',')) {
        try {
            mod.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            bad("bad modulus coefficient '" + tok + "'");
        }
    }
    return make_field(p, m, &mod);
}

// Value-semantics element for tests and call sites that prefer operators.
struct FieldElem {
    const FiniteField* f = nullptr;
    u32 v = 0;

    FieldElem() = default;
    FieldElem(const Field& field, u32 value) : f(field.get()), v(value) {
        require(v < f->q(), errc::parse_error, "encoding out of range");
    }

    static void check(const FieldElem& a, const FieldElem& b) {
        require(a.f && b.f && a.f->same_as(*b.f), errc::field_mismatch,
                "elements belong to different fields");
    }

    friend FieldElem operator+(FieldElem a, FieldElem b) {
        check(a, b);
        return {a.f, a.f->add(a.v, b.v)};
    }
    friend FieldElem operator-(FieldElem a, FieldElem b) {
        check(a, b);
        return {a.f, a.f->sub(a.v, b.v)};
    }
    friend FieldElem operator*(FieldElem a, FieldElem b) {
        check(a, b);
        return {a.f, a.f->mul(a.v, b.v)};
    }
    friend FieldElem operator/(FieldElem a, FieldElem b) {
        check(a, b);
        return {a.f, a.f->mul(a.v, a.f->inv(b.v))};
    }
    friend bool operator==(FieldElem a, FieldElem b) {
        check(a, b);
        return a.v == b.v;
    }

private:
    FieldElem(const FiniteField* field, u32 value) : f(field), v(value) {}
};

} // namespace plnr
