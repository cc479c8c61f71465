// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/fold.hpp"
#include <bit>
#include <limits>

namespace evulhunter
{
namespace
{
template <typename U>
std::optional<uint64_t> fold_int(opcode op, U a, U b, opcode base) noexcept
{
    using S = std::make_signed_t<U>;
    constexpr unsigned bits = sizeof(U) * 8;
    const auto sa = static_cast<S>(a);
    const auto sb = static_cast<S>(b);
    // Opcodes of each integer family are laid out in the same order.
    switch (static_cast<int>(op) - static_cast<int>(base))
    {
    case 0:  // add
        return static_cast<U>(a + b);
    case 1:  // sub
        return static_cast<U>(a - b);
    case 2:  // mul
        return static_cast<U>(a * b);
    case 3:  // div_s
        if (b == 0 || (sa == std::numeric_limits<S>::min() && sb == -1))
            return std::nullopt;
        return static_cast<U>(sa / sb);
    case 4:  // div_u
        if (b == 0)
            return std::nullopt;
        return static_cast<U>(a / b);
    case 5:  // rem_s
        if (b == 0)
            return std::nullopt;
        if (sb == -1)
            return U{0};
        return static_cast<U>(sa % sb);
    case 6:  // rem_u
        if (b == 0)
            return std::nullopt;
        return static_cast<U>(a % b);
    case 7:
        return static_cast<U>(a & b);
    case 8:
        return static_cast<U>(a | b);
    case 9:
        return static_cast<U>(a ^ b);
    case 10:  // shl
        return static_cast<U>(a << (b % bits));
    case 11:  // shr_s
        return static_cast<U>(sa >> (b % bits));
    case 12:  // shr_u
        return static_cast<U>(a >> (b % bits));
    case 13:
        return std::rotl(a, static_cast<int>(b % bits));
    case 14:
        return std::rotr(a, static_cast<int>(b % bits));
    default:
        return std::nullopt;
    }
}

template <typename U>
std::optional<uint64_t> fold_compare(opcode op, U a, U b, opcode base) noexcept
{
    using S = std::make_signed_t<U>;
    const auto sa = static_cast<S>(a);
    const auto sb = static_cast<S>(b);
    bool r = false;
    switch (static_cast<int>(op) - static_cast<int>(base))
    {
    case 0:
        r = a == b;
        break;
    case 1:
        r = a != b;
        break;
    case 2:
        r = sa < sb;
        break;
    case 3:
        r = a < b;
        break;
    case 4:
        r = sa > sb;
        break;
    case 5:
        r = a > b;
        break;
    case 6:
        r = sa <= sb;
        break;
    case 7:
        r = a <= b;
        break;
    case 8:
        r = sa >= sb;
        break;
    case 9:
        r = a >= b;
        break;
    default:
        return std::nullopt;
    }
    return r ? 1u : 0u;
}
}  // namespace

std::optional<uint64_t> fold_binary(opcode op, uint64_t lhs, uint64_t rhs) noexcept
{
    const auto a32 = static_cast<uint32_t>(lhs);
    const auto b32 = static_cast<uint32_t>(rhs);
    if (op >= opcode::i32_eq && op <= opcode::i32_ge_u)
        return fold_compare<uint32_t>(op, a32, b32, opcode::i32_eq);
    if (op >= opcode::i64_eq && op <= opcode::i64_ge_u)
        return fold_compare<uint64_t>(op, lhs, rhs, opcode::i64_eq);
    if (op >= opcode::i32_add && op <= opcode::i32_rotr)
        return fold_int<uint32_t>(op, a32, b32, opcode::i32_add);
    if (op >= opcode::i64_add && op <= opcode::i64_rotr)
        return fold_int<uint64_t>(op, lhs, rhs, opcode::i64_add);
    return std::nullopt;
}

std::optional<uint64_t> fold_unary(opcode op, uint64_t v) noexcept
{
    const auto v32 = static_cast<uint32_t>(v);
    switch (op)
    {
    case opcode::i32_eqz:
        return v32 == 0 ? 1u : 0u;
    case opcode::i64_eqz:
        return v == 0 ? 1u : 0u;
    case opcode::i32_clz:
        return static_cast<uint64_t>(std::countl_zero(v32));
    case opcode::i32_ctz:
        return static_cast<uint64_t>(std::countr_zero(v32));
    case opcode::i32_popcnt:
        return static_cast<uint64_t>(std::popcount(v32));
    case opcode::i64_clz:
        return static_cast<uint64_t>(std::countl_zero(v));
    case opcode::i64_ctz:
        return static_cast<uint64_t>(std::countr_zero(v));
    case opcode::i64_popcnt:
        return static_cast<uint64_t>(std::popcount(v));
    case opcode::i32_wrap_i64:
        return v32;
    case opcode::i64_extend_i32_s:
        return static_cast<uint64_t>(static_cast<int64_t>(static_cast<int32_t>(v32)));
    case opcode::i64_extend_i32_u:
        return v32;
    default:
        return std::nullopt;
    }
}
}  // namespace evulhunter
