// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include <evulhunter/fold.hpp>
#include <gtest/gtest.h>
#include <random>

using namespace evulhunter;

namespace
{
using u128 = unsigned __int128;
using s128 = __int128;

// A concrete evaluator written independently of the folding code: operands
// are widened to 128 bits, results are masked back to the operand width, and
// bit counting or shifting is done one bit at a time.
struct concrete
{
    unsigned bits;

    u128 mask() const { return (u128{1} << bits) - 1; }
    u128 wrap(u128 v) const { return v & mask(); }
    s128 sig(uint64_t v) const
    {
        const u128 x = wrap(v);
        return (x >> (bits - 1)) & 1 ? static_cast<s128>(x) - (s128{1} << bits) : static_cast<s128>(x);
    }
    u128 shl(u128 v, uint64_t n) const
    {
        for (uint64_t i = 0; i < n % bits; ++i)
            v = wrap(v * 2);
        return v;
    }
    u128 shr_u(u128 v, uint64_t n) const
    {
        for (uint64_t i = 0; i < n % bits; ++i)
            v /= 2;
        return v;
    }
    u128 shr_s(uint64_t v, uint64_t n) const
    {
        s128 s = sig(v);
        for (uint64_t i = 0; i < n % bits; ++i)
            s = s < 0 ? -((-s + 1) / 2) : s / 2;
        return wrap(static_cast<u128>(s));
    }

    std::optional<uint64_t> binary(int op, uint64_t a64, uint64_t b64) const
    {
        const u128 a = wrap(a64);
        const u128 b = wrap(b64);
        const s128 sa = sig(a64);
        const s128 sb = sig(b64);
        auto out = [this](u128 v) { return std::optional<uint64_t>{static_cast<uint64_t>(wrap(v))}; };
        switch (op)
        {
        case 0:
            return out(a + b);
        case 1:
            return out(a + (mask() + 1 - b));
        case 2:
            return out(a * b);
        case 3:
            if (b == 0 || sa / sb >= (s128{1} << (bits - 1)))
                return std::nullopt;
            return out(static_cast<u128>(sa / sb));
        case 4:
            if (b == 0)
                return std::nullopt;
            return out(a / b);
        case 5:
            if (b == 0)
                return std::nullopt;
            return out(static_cast<u128>(sa % sb));
        case 6:
            if (b == 0)
                return std::nullopt;
            return out(a % b);
        case 7:
            return out(a & b);
        case 8:
            return out(a | b);
        case 9:
            return out(a ^ b);
        case 10:
            return out(shl(a, b64));
        case 11:
            return out(shr_s(a64, b64));
        case 12:
            return out(shr_u(a, b64));
        case 13:
            return out(shl(a, b64) | shr_u(a, bits - b64 % bits));
        case 14:
            return out(shr_u(a, b64) | shl(a, bits - b64 % bits));
        }
        return std::nullopt;
    }

    uint64_t compare(int op, uint64_t a64, uint64_t b64) const
    {
        const u128 a = wrap(a64);
        const u128 b = wrap(b64);
        const s128 sa = sig(a64);
        const s128 sb = sig(b64);
        const bool r[] = {a == b, a != b, sa < sb, a < b, sa > sb, a > b, sa <= sb, a <= b, sa >= sb, a >= b};
        return r[op];
    }

    uint64_t count(int op, uint64_t v64) const
    {
        const u128 v = wrap(v64);
        uint64_t n = 0;
        if (op == 0)
        {
            for (int i = static_cast<int>(bits) - 1; i >= 0 && !((v >> i) & 1); --i)
                ++n;
        }
        else if (op == 1)
        {
            for (unsigned i = 0; i < bits && !((v >> i) & 1); ++i)
                ++n;
        }
        else
        {
            for (unsigned i = 0; i < bits; ++i)
                n += (v >> i) & 1;
        }
        return n;
    }
};

opcode shifted(opcode base, int k)
{
    return static_cast<opcode>(static_cast<int>(base) + k);
}

uint64_t interesting(std::mt19937_64& rng)
{
    static constexpr uint64_t edges[] = {0, 1, 2, 31, 32, 63, 64, 0x7fffffff, 0x80000000, 0xffffffff,
        0x7fffffffffffffff, 0x8000000000000000, 0xffffffffffffffff};
    if (rng() % 4 == 0)
        return edges[rng() % std::size(edges)];
    return rng() >> (rng() % 64);
}
}  // namespace

TEST(fold, examples)
{
    EXPECT_EQ(fold_binary(opcode::i64_add, 5, 7), 12u);
    EXPECT_EQ(fold_binary(opcode::i32_add, 0xffffffff, 1), 0u);
    EXPECT_EQ(fold_binary(opcode::i64_sub, 0, 1), UINT64_MAX);
    EXPECT_FALSE(fold_binary(opcode::i32_div_u, 1, 0));
    EXPECT_FALSE(fold_binary(opcode::i64_div_s, 0x8000000000000000, UINT64_MAX));
    EXPECT_EQ(fold_binary(opcode::i64_rem_s, 0x8000000000000000, UINT64_MAX), 0u);
    EXPECT_EQ(fold_unary(opcode::i32_wrap_i64, 0x1234567890), 0x34567890u);
    EXPECT_EQ(fold_unary(opcode::i64_extend_i32_s, 0x80000000), 0xffffffff80000000u);
    EXPECT_EQ(fold_unary(opcode::i64_extend_i32_u, 0x80000000), 0x80000000u);
    EXPECT_EQ(fold_unary(opcode::i64_eqz, 0), 1u);
}

TEST(fold, agrees_with_concrete_evaluator)
{
    std::mt19937_64 rng{314159};
    for (const auto& [bits, arith, cmp, counts, eqz] :
        {std::tuple{32u, opcode::i32_add, opcode::i32_eq, opcode::i32_clz, opcode::i32_eqz},
            std::tuple{64u, opcode::i64_add, opcode::i64_eq, opcode::i64_clz, opcode::i64_eqz}})
    {
        const concrete ref{bits};
        for (int i = 0; i < 20000; ++i)
        {
            const auto a = interesting(rng);
            const auto b = interesting(rng);
            const auto wa = bits == 32 ? a & 0xffffffff : a;
            const auto wb = bits == 32 ? b & 0xffffffff : b;
            const int k = static_cast<int>(rng() % 15);
            ASSERT_EQ(fold_binary(shifted(arith, k), wa, wb), ref.binary(k, wa, wb))
                << "bits " << bits << " op " << k << " a " << wa << " b " << wb;
            const int c = static_cast<int>(rng() % 10);
            ASSERT_EQ(fold_binary(shifted(cmp, c), wa, wb), ref.compare(c, wa, wb));
            const int u = static_cast<int>(rng() % 3);
            ASSERT_EQ(fold_unary(shifted(counts, u), wa), ref.count(u, wa));
            ASSERT_EQ(fold_unary(eqz, wa), uint64_t{wa == 0});
        }
    }
}

TEST(fold, conversions_agree_with_concrete_evaluator)
{
    std::mt19937_64 rng{27};
    for (int i = 0; i < 10000; ++i)
    {
        const auto v = interesting(rng);
        const auto low = v & 0xffffffff;
        ASSERT_EQ(fold_unary(opcode::i32_wrap_i64, v), low);
        ASSERT_EQ(fold_unary(opcode::i64_extend_i32_u, low), low);
        const auto widened = static_cast<uint64_t>(concrete{32}.sig(low));
        ASSERT_EQ(fold_unary(opcode::i64_extend_i32_s, low), widened);
    }
}

TEST(fold, floats_are_not_folded)
{
    EXPECT_FALSE(fold_binary(opcode::f64_add, 1, 2));
    EXPECT_FALSE(fold_unary(opcode::f32_neg, 1));
}
