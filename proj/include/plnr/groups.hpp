#pragma once

// Finite groups in three shapes sharing one element encoding (u32):
//   product   residue tuples, little-endian mixed radix over cyclic_orders
//   cocycle   pairs (x,y) on F x Y with (x,y)(x',y') = (x+x', y+y'+beta(x,x')),
//             enc = x*|Y| + y; beta biadditive, so the operation is associative
//   quotient  coset labels of a parent group by a normal subgroup, labels in
//             parent scan order (label 0 = identity coset, rep = minimal enc)
// Encoding 0 is always the identity. Group order is capped at 2^20.

#include <algorithm>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "plnr/gf.hpp"
#include "plnr/linalg.hpp"
#include "plnr/parallel.hpp"

namespace plnr {

namespace detail {

inline std::vector<u64> factor_u64(u64 n) {
    std::vector<u64> primes;
    for (u64 d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            primes.push_back(d);
            while (n % d == 0) n /= d;
        }
    if (n > 1) primes.push_back(n);
    return primes;
}

} // namespace detail

class Group;
using GroupPtr = std::shared_ptr<const Group>;

enum class beta_kind { zero, field_product, bilinear_form, table };

struct QuotientMap; // forward

class Group : public std::enable_shared_from_this<Group> {
public:
    enum class kind_t { product, cocycle, quotient };

    static constexpr u64 max_order = u64{1} << 20;

    // --- factories ---

    static GroupPtr product(std::vector<u64> cyclic_orders) {
        auto g = std::shared_ptr<Group>(new Group());
        g->kind_ = kind_t::product;
        require(!cyclic_orders.empty(), errc::parse_error, "product group needs at least one factor");
        u64 ord = 1;
        for (u64 d : cyclic_orders) {
            require(d >= 1, errc::parse_error, "cyclic factor order must be positive");
            ord *= d;
            require(ord <= max_order, errc::too_large, "group order exceeds 2^20");
        }
        g->orders_ = std::move(cyclic_orders);
        g->order_ = ord;
        return g;
    }

    // direct product (F,+) x (F,+); ambient group of the odd-characteristic
    // graph construction
    static GroupPtr cocycle_zero(Field F) { return cocycle(std::move(F), beta_kind::zero, {}, nullptr); }

    // (x,y)(x',y') = (x+x', y+y'+x*x') with the field product
    static GroupPtr cocycle_field_product(Field F) {
        return cocycle(std::move(F), beta_kind::field_product, {}, nullptr);
    }

    // pairs on GF(2)^m x Z2 with a bilinear form supplying beta
    static GroupPtr cocycle_form(Field F, std::vector<u64> form_rows) {
        require(F->p() == 2, errc::wrong_characteristic, "bilinear-form groups live over GF(2)^m");
        require(form_rows.size() == static_cast<size_t>(F->m()), errc::wrong_length,
                "form needs one row per dimension");
        return cocycle(std::move(F), beta_kind::bilinear_form, std::move(form_rows), nullptr);
    }

    // beta given as a q x q row-major table (e.g. a semifield product)
    static GroupPtr cocycle_table(Field F, std::shared_ptr<const std::vector<u32>> tab) {
        u64 q = F->q();
        require(tab && tab->size() == q * q, errc::wrong_length, "beta table must be q x q");
        for (u32 x = 0; x < q; ++x) {
            require((*tab)[static_cast<size_t>(x) * q] == 0 && (*tab)[x] == 0, errc::parse_error,
                    "beta table must vanish on the axes");
            for (u32 y = 0; y < q; ++y)
                require((*tab)[static_cast<size_t>(x) * q + y] < q, errc::parse_error,
                        "beta table entry out of range");
        }
        return cocycle(std::move(F), beta_kind::table, {}, std::move(tab));
    }

    // --- shape ---

    kind_t kind() const { return kind_; }
    u64 order() const { return order_; }
    const std::vector<u64>& cyclic_orders() const { return orders_; }
    const Field& field() const { return field_; }
    beta_kind beta() const { return beta_; }
    const std::vector<u64>& form_rows() const { return form_rows_; }
    const std::shared_ptr<const std::vector<u32>>& beta_table() const { return table_; }
    u32 ysize() const { return ysize_; }
    const GroupPtr& parent() const { return parent_; }
    const std::vector<u32>& quotient_gens() const { return qgens_; }
    const std::vector<u32>& coset_labels() const { return labels_; }
    // cyclic factors of the isomorphism type (elementary divisors, sorted);
    // empty for a nonabelian quotient
    const std::vector<u64>& structure() const { return structure_; }

    bool same_as(const Group& o) const {
        if (this == &o) return true;
        return spec() == o.spec() && table_ == o.table_;
    }

    // --- element arithmetic ---

    u32 id() const { return 0; }

    u32 op(u32 a, u32 b) const {
        check_range(a);
        check_range(b);
        switch (kind_) {
        case kind_t::product: {
            u32 out = 0, stride = 1;
            for (u64 d : orders_) {
                u32 ra = static_cast<u32>(a % d), rb = static_cast<u32>(b % d);
                out += static_cast<u32>((ra + rb) % d) * stride;
                a = static_cast<u32>(a / d);
                b = static_cast<u32>(b / d);
                stride = static_cast<u32>(stride * d);
            }
            return out;
        }
        case kind_t::cocycle: {
            u32 xa = a / ysize_, ya = a % ysize_;
            u32 xb = b / ysize_, yb = b % ysize_;
            u32 x = field_->add(xa, xb);
            u32 y = yadd(ya, yb);
            y = yadd(y, beta_val(xa, xb));
            return x * ysize_ + y;
        }
        case kind_t::quotient:
            return labels_[parent_->op(reps_[a], reps_[b])];
        }
        fail(errc::internal, "unhandled group kind");
    }

    u32 inv(u32 a) const {
        check_range(a);
        switch (kind_) {
        case kind_t::product: {
            u32 out = 0, stride = 1;
            for (u64 d : orders_) {
                u32 ra = static_cast<u32>(a % d);
                out += static_cast<u32>((d - ra) % d) * stride;
                a = static_cast<u32>(a / d);
                stride = static_cast<u32>(stride * d);
            }
            return out;
        }
        case kind_t::cocycle: {
            // (x,y)^-1 = (-x, -y + beta(x,x))
            u32 x = a / ysize_, y = a % ysize_;
            u32 nx = field_->neg(x);
            u32 ny = yadd(yneg(y), beta_val(x, x));
            return nx * ysize_ + ny;
        }
        case kind_t::quotient:
            return labels_[parent_->inv(reps_[a])];
        }
        fail(errc::internal, "unhandled group kind");
    }

    u32 pow(u32 g, u64 e) const {
        u32 acc = id(), base = g;
        while (e) {
            if (e & 1) acc = op(acc, base);
            base = op(base, base);
            e >>= 1;
        }
        return acc;
    }

    u64 element_order(u32 g) const {
        u64 o = order_;
        for (u64 pr : detail::factor_u64(order_))
            while (o % pr == 0 && pow(g, o / pr) == id()) o /= pr;
        return o;
    }

    // cocycle accessors
    u32 xpart(u32 g) const { return g / ysize_; }
    u32 ypart(u32 g) const { return g % ysize_; }
    u32 pair_enc(u32 x, u32 y) const {
        require(kind_ == kind_t::cocycle, errc::group_mismatch, "pair encoding needs a cocycle group");
        require(x < field_->q() && y < ysize_, errc::parse_error, "pair component out of range");
        return x * ysize_ + y;
    }

    u32 beta_val(u32 x, u32 xp) const {
        switch (beta_) {
        case beta_kind::zero: return 0;
        case beta_kind::field_product: return field_->mul(x, xp);
        case beta_kind::bilinear_form: return static_cast<u32>(f2::bform(form_rows_, x, xp));
        case beta_kind::table: return (*table_)[static_cast<size_t>(x) * field_->q() + xp];
        }
        fail(errc::internal, "unhandled beta kind");
    }

    // product accessors
    u32 from_tuple(const std::vector<u64>& t) const {
        require(kind_ == kind_t::product, errc::group_mismatch, "tuple encoding needs a product group");
        require(t.size() == orders_.size(), errc::wrong_length, "tuple arity mismatch");
        u32 out = 0, stride = 1;
        for (size_t i = 0; i < orders_.size(); ++i) {
            require(t[i] < orders_[i], errc::parse_error, "tuple component out of range");
            out += static_cast<u32>(t[i]) * stride;
            stride = static_cast<u32>(stride * orders_[i]);
        }
        return out;
    }

    std::vector<u64> to_tuple(u32 g) const {
        require(kind_ == kind_t::product, errc::group_mismatch, "tuple encoding needs a product group");
        std::vector<u64> t;
        for (u64 d : orders_) {
            t.push_back(g % d);
            g = static_cast<u32>(g / d);
        }
        return t;
    }

    // --- whole-group computations ---

    std::vector<u32> generators() const {
        std::vector<u32> gens;
        switch (kind_) {
        case kind_t::product: {
            u32 stride = 1;
            for (u64 d : orders_) {
                if (d > 1) gens.push_back(stride);
                stride = static_cast<u32>(stride * d);
            }
            break;
        }
        case kind_t::cocycle: {
            // digit units of (F,+) encode as powers of p
            u32 unit = 1;
            for (int i = 0; i < field_->m(); ++i, unit *= static_cast<u32>(field_->p()))
                gens.push_back(unit * ysize_);
            if (ysize_ == field_->q()) {
                unit = 1;
                for (int i = 0; i < field_->m(); ++i, unit *= static_cast<u32>(field_->p()))
                    gens.push_back(unit);
            } else {
                gens.push_back(1);
            }
            break;
        }
        case kind_t::quotient: {
            for (u32 g : parent_->generators()) {
                u32 im = labels_[g];
                if (im != 0) gens.push_back(im);
            }
            break;
        }
        }
        return gens;
    }

    bool is_abelian() const {
        auto gens = generators();
        for (u32 a : gens)
            for (u32 b : gens)
                if (op(a, b) != op(b, a)) return false;
        return true;
    }

    std::map<u64, u64> element_order_census() const {
        require(order_ <= max_order, errc::too_large, "census capped at order 2^20");
        std::vector<u32> ord(order_);
        parallel_chunks(order_, [&](u64 lo, u64 hi) {
            for (u64 g = lo; g < hi; ++g) ord[g] = static_cast<u32>(element_order(static_cast<u32>(g)));
        });
        std::map<u64, u64> census;
        for (u32 o : ord) ++census[o];
        return census;
    }

    // subgroup generated by gens, as a sorted element list
    std::vector<u32> closure(const std::vector<u32>& gens) const {
        std::vector<bool> seen(order_, false);
        seen[0] = true;
        std::vector<u32> members{0}, frontier{0};
        for (u32 g : gens) check_range(g);
        while (!frontier.empty()) {
            std::vector<u32> next;
            for (u32 h : frontier)
                for (u32 g : gens) {
                    u32 k = op(h, g);
                    if (!seen[k]) {
                        seen[k] = true;
                        members.push_back(k);
                        next.push_back(k);
                    }
                }
            frontier = std::move(next);
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    // --- serialization ---

    std::string spec() const {
        std::ostringstream os;
        switch (kind_) {
        case kind_t::product: {
            bool first = true;
            for (u64 d : orders_) {
                if (!first) os << 'x';
                os << 'Z' << d;
                first = false;
            }
            break;
        }
        case kind_t::cocycle:
            os << "cocycle:" << field_->spec() << ':';
            switch (beta_) {
            case beta_kind::zero: os << "zero"; break;
            case beta_kind::field_product: os << "product"; break;
            case beta_kind::table: os << "table"; break;
            case beta_kind::bilinear_form: {
                os << "form=";
                for (size_t i = 0; i < form_rows_.size(); ++i) {
                    if (i) os << ',';
                    os << std::hex << form_rows_[i] << std::dec;
                }
                break;
            }
            }
            break;
        case kind_t::quotient: {
            os << "quotient:(" << parent_->spec() << "):";
            for (size_t i = 0; i < qgens_.size(); ++i) {
                if (i) os << ',';
                os << qgens_[i];
            }
            break;
        }
        }
        return os.str();
    }

    std::string element_to_string(u32 g) const {
        std::ostringstream os;
        switch (kind_) {
        case kind_t::product: {
            auto t = to_tuple(g);
            os << '(';
            for (size_t i = 0; i < t.size(); ++i) {
                if (i) os << ',';
                os << t[i];
            }
            os << ')';
            break;
        }
        case kind_t::cocycle:
            os << '(' << xpart(g) << ',' << ypart(g) << ')';
            break;
        case kind_t::quotient:
            os << g;
            break;
        }
        return os.str();
    }

private:
    friend QuotientMap quotient_map(const GroupPtr&, const std::vector<u32>&);

    Group() = default;

    static GroupPtr cocycle(Field F, beta_kind bk, std::vector<u64> rows,
                            std::shared_ptr<const std::vector<u32>> tab) {
        auto g = std::shared_ptr<Group>(new Group());
        g->kind_ = kind_t::cocycle;
        g->field_ = std::move(F);
        g->beta_ = bk;
        g->form_rows_ = std::move(rows);
        g->table_ = std::move(tab);
        g->ysize_ = (bk == beta_kind::bilinear_form) ? 2u : g->field_->q();
        u64 ord = static_cast<u64>(g->field_->q()) * g->ysize_;
        require(ord <= max_order, errc::too_large, "group order exceeds 2^20");
        g->order_ = ord;
        return g;
    }

    void check_range(u32 g) const {
        require(g < order_, errc::group_mismatch, "element encoding out of range");
    }

    // y-component arithmetic: Z2 for form groups, (F,+) otherwise
    u32 yadd(u32 a, u32 b) const { return ysize_ == field_->q() ? field_->add(a, b) : (a ^ b); }
    u32 yneg(u32 a) const { return ysize_ == field_->q() ? field_->neg(a) : a; }

    kind_t kind_ = kind_t::product;
    u64 order_ = 1;
    std::vector<u64> orders_;      // product
    Field field_;                  // cocycle
    beta_kind beta_ = beta_kind::zero;
    std::vector<u64> form_rows_;
    std::shared_ptr<const std::vector<u32>> table_;
    u32 ysize_ = 1;
    GroupPtr parent_;              // quotient
    std::vector<u32> qgens_;
    std::vector<u32> labels_;      // parent enc -> coset label
    std::vector<u32> reps_;        // coset label -> minimal parent enc
    std::vector<u64> structure_;
};

// Isomorphism type of an abelian group as elementary divisors (prime powers,
// sorted ascending), recovered from the element-order census: for each prime
// p the count #{x : x^{p^k} = 1} = p^{s_k} determines the partition of the
// p-component via parts-at-least-k = s_k - s_{k-1}.
inline std::vector<u64> abelian_structure(const Group& g) {
    require(g.is_abelian(), errc::not_abelian, "structure labels need an abelian group");
    auto census = g.element_order_census();
    std::vector<u64> out;
    for (u64 pr : detail::factor_u64(g.order())) {
        std::vector<int> s{0}; // s[k] = log_p #{x : x^(p^k) = 1}
        for (u64 pk = pr;; pk *= pr) {
            u64 cnt = 0;
            for (auto [o, c] : census)
                if (pk % o == 0) cnt += c;
            int lg = 0;
            u64 t = cnt;
            while (t > 1) {
                require(t % pr == 0, errc::internal, "p-primary census is not a p-power");
                t /= pr;
                ++lg;
            }
            s.push_back(lg);
            if (cnt == g.order() || s[s.size() - 1] == s[s.size() - 2]) break;
        }
        for (size_t k = 1; k < s.size(); ++k) {
            int atleast_k = s[k] - s[k - 1];
            int atleast_k1 = (k + 1 < s.size()) ? s[k + 1] - s[k] : 0;
            u64 pk = 1;
            for (size_t i = 0; i < k; ++i) pk *= pr;
            for (int c = 0; c < atleast_k - atleast_k1; ++c) out.push_back(pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

struct QuotientMap {
    GroupPtr quotient;        // kind quotient; structure() filled when abelian
    std::vector<u32> phi;     // parent enc -> quotient enc (coset label)
    std::vector<u32> subgroup; // elements of the kernel U, sorted
};

// Quotient by the subgroup generated by gens. The subgroup must be normal
// (automatic in abelian groups). Labels follow parent scan order, so the
// identity coset is 0 and each label's representative is its minimal member.
inline QuotientMap quotient_map(const GroupPtr& G, const std::vector<u32>& gens) {
    require(G->order() <= (u64{1} << 16), errc::too_large, "quotients capped at parent order 2^16");
    std::vector<u32> U = G->closure(gens);
    std::vector<bool> inU(G->order(), false);
    for (u32 u : U) inU[u] = true;
    if (!G->is_abelian()) {
        // conjugation is an automorphism, so checking the generators suffices
        for (u32 g = 0; g < G->order(); ++g)
            for (u32 s : gens)
                require(inU[G->op(G->op(g, s), G->inv(g))], errc::not_a_subgroup,
                        "subgroup is not normal");
    }
    u32 unset = static_cast<u32>(G->order());
    std::vector<u32> labels(G->order(), unset), reps;
    for (u32 g = 0; g < G->order(); ++g) {
        if (labels[g] != unset) continue;
        u32 L = static_cast<u32>(reps.size());
        reps.push_back(g);
        for (u32 u : U) labels[G->op(g, u)] = L;
    }
    invariant(reps.size() * U.size() == G->order(), "cosets do not tile the group");
    auto q = std::shared_ptr<Group>(new Group());
    q->kind_ = Group::kind_t::quotient;
    q->order_ = reps.size();
    q->parent_ = G;
    q->qgens_ = gens;
    q->labels_ = labels;
    q->reps_ = std::move(reps);
    if (q->is_abelian()) q->structure_ = abelian_structure(*q);
    return QuotientMap{q, std::move(labels), std::move(U)};
}

// Group spec strings:
//   "Z8", "Z4xZ4"                      products of cyclic groups
//   "cocycle:<field>:zero"             (F,+) x (F,+), beta = 0
//   "cocycle:<field>:product"          beta = field multiplication
//   "cocycle:<field>:form=a,b,..."     GF(2)^m x Z2, hex rows of the form
//   "cocycle:<field>:table"            beta table supplied out of band
//   "quotient:(<parent>):g1,g2,..."    quotient by generated subgroup
inline GroupPtr parse_group_spec(const std::string& s,
                                 std::shared_ptr<const std::vector<u32>> table = nullptr) {
    require(!s.empty(), errc::parse_error, "empty group spec");
    if (s[0] == 'Z') {
        std::vector<u64> orders;
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, 'x')) {
            require(tok.size() > 1 && tok[0] == 'Z', errc::parse_error,
                    "bad product group token '" + tok + "'");
            try {
                orders.push_back(std::stoull(tok.substr(1)));
            } catch (const std::exception&) {
                fail(errc::parse_error, "bad cyclic order in '" + tok + "'");
            }
        }
        return Group::product(std::move(orders));
    }
    if (s.rfind("cocycle:", 0) == 0) {
        auto rest = s.substr(8);
        auto pos = rest.rfind(':');
        require(pos != std::string::npos, errc::parse_error, "cocycle spec needs a beta kind");
        Field F = parse_field_spec(rest.substr(0, pos));
        std::string bk = rest.substr(pos + 1);
        if (bk == "zero") return Group::cocycle_zero(F);
        if (bk == "product") return Group::cocycle_field_product(F);
        if (bk == "table") {
            require(table != nullptr, errc::parse_error, "table spec requires beta table data");
            return Group::cocycle_table(F, std::move(table));
        }
        if (bk.rfind("form=", 0) == 0) {
            std::vector<u64> rows;
            std::istringstream is(bk.substr(5));
            std::string tok;
            while (std::getline(is, tok, ',')) {
                try {
                    rows.push_back(std::stoull(tok, nullptr, 16));
                } catch (const std::exception&) {
                    fail(errc::parse_error, "bad form row '" + tok + "'");
                }
            }
            return Group::cocycle_form(F, std::move(rows));
        }
        fail(errc::parse_error, "unknown beta kind '" + bk + "'");
    }
    if (s.rfind("quotient:(", 0) == 0) {
        auto close = s.rfind("):");
        require(close != std::string::npos, errc::parse_error, "quotient spec needs '):'");
        GroupPtr parent = parse_group_spec(s.substr(10, close - 10), std::move(table));
        std::vector<u32> gens;
        std::istringstream is(s.substr(close + 2));
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                gens.push_back(static_cast<u32>(std::stoul(tok)));
            } catch (const std::exception&) {
                fail(errc::parse_error, "bad subgroup generator '" + tok + "'");
            }
        }
        return quotient_map(parent, gens).quotient;
    }
    fail(errc::parse_error, "unrecognized group spec '" + s + "'");
}

// Element with a group reference; arithmetic checks membership.
struct GroupElem {
    GroupPtr group;
    u32 v = 0;

    friend GroupElem operator*(const GroupElem& a, const GroupElem& b) {
        require(a.group->same_as(*b.group), errc::group_mismatch, "elements of different groups");
        return GroupElem{a.group, a.group->op(a.v, b.v)};
    }
    GroupElem inverse() const { return GroupElem{group, group->inv(v)}; }
    friend bool operator==(const GroupElem& a, const GroupElem& b) {
        require(a.group->same_as(*b.group), errc::group_mismatch, "elements of different groups");
        return a.v == b.v;
    }
};

} // namespace plnr
