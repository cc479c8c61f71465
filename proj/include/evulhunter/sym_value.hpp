// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "module.hpp"
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace evulhunter
{
/// Semantic role recovered for an abstract value. The declaration order is
/// the canonical operand order for comparisons.
enum class sym_tag : uint8_t
{
    receiver,
    code,
    action,
    self_account,
    from,
    to,
    constant,
    mem_ref,
    flag,
    diff,
    unknown,
};

std::string_view to_string(sym_tag t) noexcept;

/// True for the tags that identify an account or action parameter.
constexpr bool is_semantic(sym_tag t) noexcept
{
    return t <= sym_tag::to;
}

struct comparison;

/// Memory base for pointer values: absolute addresses use base 0, pointers
/// derived from global g (typically the stack pointer) use base g + 1.
inline constexpr uint32_t absolute_base = 0;

struct sym_value
{
    sym_tag tag = sym_tag::unknown;
    valtype width = valtype::i64;
    /// Constant payload, or byte offset from `base` for mem_ref.
    uint64_t payload = 0;
    uint32_t base = absolute_base;
    /// flag: the comparison whose boolean result this is; diff: the operands.
    std::shared_ptr<const comparison> cmp;
    /// flag only: the value is the logical negation of `cmp`.
    bool negated = false;

    static sym_value of(sym_tag t, valtype w = valtype::i64)
    {
        sym_value v;
        v.tag = t;
        v.width = w;
        return v;
    }
    static sym_value constant(uint64_t c, valtype w)
    {
        auto v = of(sym_tag::constant, w);
        v.payload = w == valtype::i32 ? c & 0xffffffffu : c;
        return v;
    }
    static sym_value unknown(valtype w) { return of(sym_tag::unknown, w); }
    static sym_value pointer(uint32_t base, int64_t offset)
    {
        auto v = of(sym_tag::mem_ref, valtype::i32);
        v.payload = static_cast<uint64_t>(offset);
        v.base = base;
        return v;
    }

    bool is(sym_tag t) const noexcept { return tag == t; }
    bool is_const() const noexcept { return tag == sym_tag::constant; }
    int64_t offset() const noexcept { return static_cast<int64_t>(payload); }

    /// Identity used for canonical ordering; ignores width.
    std::strong_ordering order(const sym_value& other) const noexcept;

    std::string to_string() const;
};

/// Equality of tag and payload (and base for pointers); width is ignored.
bool same_value(const sym_value& a, const sym_value& b) noexcept;

enum class relation : uint8_t
{
    eq,
    ne,
};

/// The three guard shapes: equality feeding a branch, inequality feeding a
/// branch, and either relation passed as the eosio_assert condition.
enum class cmp_pattern : uint8_t
{
    eq_branch,
    ne_branch,
    assert_call,
};

std::string_view to_string(relation r) noexcept;
std::string_view to_string(cmp_pattern p) noexcept;

struct code_site
{
    uint32_t function = 0;
    uint32_t offset = 0;

    friend auto operator<=>(const code_site&, const code_site&) = default;
};

struct comparison
{
    sym_value lhs;
    sym_value rhs;
    relation rel = relation::eq;
    code_site site;
    /// Set once the comparison result is consumed by a branch or an assert.
    std::optional<cmp_pattern> pattern;

    /// Matches the unordered operand pair {a, b}.
    bool pairs(sym_tag a, sym_tag b) const noexcept
    {
        return (lhs.tag == a && rhs.tag == b) || (lhs.tag == b && rhs.tag == a);
    }
    /// The operand with tag `t`, or the other operand of the pair.
    const sym_value& operand(sym_tag t) const noexcept { return lhs.tag == t ? lhs : rhs; }
    const sym_value& other(sym_tag t) const noexcept { return lhs.tag == t ? rhs : lhs; }
};

/// Orders operands canonically so that (a, b) and (b, a) build equal comparisons.
comparison make_comparison(sym_value a, sym_value b, relation rel, code_site site);

/// Same operands and relation; sites and patterns are not compared.
bool same_test(const comparison& a, const comparison& b) noexcept;

inline bool operator==(const comparison& a, const comparison& b) noexcept
{
    return same_test(a, b);
}
}  // namespace evulhunter
