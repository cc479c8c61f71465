// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/sym_value.hpp"
#include "evulhunter/names.hpp"
#include <sstream>

namespace evulhunter
{
std::string_view to_string(sym_tag t) noexcept
{
    switch (t)
    {
    case sym_tag::receiver:
        return "Receiver";
    case sym_tag::code:
        return "Code";
    case sym_tag::action:
        return "Action";
    case sym_tag::self_account:
        return "SelfAccount";
    case sym_tag::from:
        return "From";
    case sym_tag::to:
        return "To";
    case sym_tag::constant:
        return "Const";
    case sym_tag::mem_ref:
        return "MemRef";
    case sym_tag::flag:
        return "Flag";
    case sym_tag::diff:
        return "Diff";
    case sym_tag::unknown:
        return "Unknown";
    }
    return "?";
}

std::string_view to_string(relation r) noexcept
{
    return r == relation::eq ? "eq" : "ne";
}

std::string_view to_string(cmp_pattern p) noexcept
{
    switch (p)
    {
    case cmp_pattern::eq_branch:
        return "eq-branch";
    case cmp_pattern::ne_branch:
        return "ne-branch";
    case cmp_pattern::assert_call:
        return "assert";
    }
    return "?";
}

std::strong_ordering sym_value::order(const sym_value& other) const noexcept
{
    if (const auto c = tag <=> other.tag; c != 0)
        return c;
    if (const auto c = base <=> other.base; c != 0)
        return c;
    if (const auto c = payload <=> other.payload; c != 0)
        return c;
    return negated <=> other.negated;
}

bool same_value(const sym_value& a, const sym_value& b) noexcept
{
    if (a.tag != b.tag)
        return false;
    switch (a.tag)
    {
    case sym_tag::constant:
        return a.payload == b.payload;
    case sym_tag::mem_ref:
        return a.payload == b.payload && a.base == b.base;
    case sym_tag::flag:
    case sym_tag::diff:
        return a.negated == b.negated && a.cmp && b.cmp && same_test(*a.cmp, *b.cmp);
    case sym_tag::unknown:
        return false;
    default:
        return true;
    }
}

std::string sym_value::to_string() const
{
    std::ostringstream out;
    switch (tag)
    {
    case sym_tag::constant:
        out << "Const(0x" << std::hex << payload << std::dec;
        if (width == valtype::i64 && payload != 0 && encode_name(decode_name(account_name{payload})).value == payload)
            out << " \"" << decode_name(account_name{payload}) << '"';
        out << ')';
        break;
    case sym_tag::mem_ref:
        out << "MemRef(" << (base == absolute_base ? std::string{"abs"} : "global" + std::to_string(base - 1))
            << (offset() < 0 ? "" : "+") << offset() << ')';
        break;
    case sym_tag::flag:
        out << (negated ? "!" : "") << "Flag(";
        if (cmp)
            out << cmp->lhs.to_string() << ' ' << evulhunter::to_string(cmp->rel) << ' '
                << cmp->rhs.to_string();
        out << ')';
        break;
    case sym_tag::diff:
        out << "Diff(";
        if (cmp)
            out << cmp->lhs.to_string() << ", " << cmp->rhs.to_string();
        out << ')';
        break;
    default:
        out << evulhunter::to_string(tag);
        break;
    }
    return out.str();
}

comparison make_comparison(sym_value a, sym_value b, relation rel, code_site site)
{
    if (b.order(a) < 0)
        std::swap(a, b);
    return comparison{std::move(a), std::move(b), rel, site, std::nullopt};
}

bool same_test(const comparison& a, const comparison& b) noexcept
{
    return a.rel == b.rel && same_value(a.lhs, b.lhs) && same_value(a.rhs, b.rhs);
}
}  // namespace evulhunter
