#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace plnr {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;

enum class errc {
    non_prime,
    reducible_modulus,
    field_mismatch,
    division_by_zero,
    not_a_divisor,
    group_mismatch,
    too_large,
    not_a_subgroup,
    wrong_length,
    even_characteristic,
    odd_characteristic,
    wrong_characteristic,
    bad_chain,
    odd_quotient_violated,
    zero_zeta,
    range_too_large,
    not_planar,
    zero_element,
    axioms_fail,
    not_in_forbidden,
    no_splitting,
    counting_fails,
    not_difference_set,
    missing_classes,
    design_invalid,
    not_symmetric,
    not_abelian,
    parse_error,
    internal
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::non_prime: return "non_prime";
    case errc::reducible_modulus: return "reducible_modulus";
    case errc::field_mismatch: return "field_mismatch";
    case errc::division_by_zero: return "division_by_zero";
    case errc::not_a_divisor: return "not_a_divisor";
    case errc::group_mismatch: return "group_mismatch";
    case errc::too_large: return "too_large";
    case errc::not_a_subgroup: return "not_a_subgroup";
    case errc::wrong_length: return "wrong_length";
    case errc::even_characteristic: return "even_characteristic";
    case errc::odd_characteristic: return "odd_characteristic";
    case errc::wrong_characteristic: return "wrong_characteristic";
    case errc::bad_chain: return "bad_chain";
    case errc::odd_quotient_violated: return "odd_quotient_violated";
    case errc::zero_zeta: return "zero_zeta";
    case errc::range_too_large: return "range_too_large";
    case errc::not_planar: return "not_planar";
    case errc::zero_element: return "zero_element";
    case errc::axioms_fail: return "axioms_fail";
    case errc::not_in_forbidden: return "not_in_forbidden";
    case errc::no_splitting: return "no_splitting";
    case errc::counting_fails: return "counting_fails";
    case errc::not_difference_set: return "not_difference_set";
    case errc::missing_classes: return "missing_classes";
    case errc::design_invalid: return "design_invalid";
    case errc::not_symmetric: return "not_symmetric";
    case errc::not_abelian: return "not_abelian";
    case errc::parse_error: return "parse_error";
    case errc::internal: return "internal";
    }
    return "unknown";
}

// Library-wide exception. `code` distinguishes caller mistakes from broken
// internal invariants (errc::internal), which the CLI maps to exit code 2.
class error : public std::runtime_error {
public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
    if (!cond) fail(code, what);
}

// Internal invariant check; failures are bugs, not usage errors.
inline void invariant(bool cond, const char* what) {
    if (!cond) fail(errc::internal, what);
}

} // namespace plnr
