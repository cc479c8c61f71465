// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include <evulhunter/leb128.hpp>
#include <gtest/gtest.h>
#include <random>
#include <vector>

using namespace evulhunter;

namespace
{
std::vector<uint8_t> encode_unsigned(uint64_t v)
{
    std::vector<uint8_t> out;
    do
    {
        uint8_t b = v & 0x7f;
        v >>= 7;
        if (v != 0)
            b |= 0x80;
        out.push_back(b);
    } while (v != 0);
    return out;
}

std::vector<uint8_t> encode_signed(int64_t v)
{
    std::vector<uint8_t> out;
    for (;;)
    {
        const uint8_t b = v & 0x7f;
        v >>= 7;
        const bool done = (v == 0 && !(b & 0x40)) || (v == -1 && (b & 0x40));
        out.push_back(done ? b : (b | 0x80));
        if (done)
            return out;
    }
}
}  // namespace

TEST(leb128, unsigned_vectors)
{
    const std::vector<uint8_t> v624485{0xe5, 0x8e, 0x26};
    const auto r = leb128_decode<uint32_t>(v624485);
    EXPECT_EQ(r.status, leb_status::ok);
    EXPECT_EQ(r.value, 624485u);
    EXPECT_EQ(r.length, 3u);
}

TEST(leb128, signed_vectors)
{
    const std::vector<uint8_t> minus123456{0xc0, 0xbb, 0x78};
    EXPECT_EQ(leb128_decode<int32_t>(minus123456).value, -123456);
    const std::vector<uint8_t> minus1{0x7f};
    EXPECT_EQ(leb128_decode<int64_t>(minus1).value, -1);
}

TEST(leb128, truncated)
{
    const std::vector<uint8_t> open{0x80, 0x80};
    EXPECT_EQ(leb128_decode<uint32_t>(open).status, leb_status::truncated);
    EXPECT_EQ(leb128_decode<uint32_t>({}).status, leb_status::truncated);
}

TEST(leb128, overlong_and_overflow)
{
    const std::vector<uint8_t> six{0x80, 0x80, 0x80, 0x80, 0x80, 0x00};
    EXPECT_EQ(leb128_decode<uint32_t>(six).status, leb_status::malformed);
    const std::vector<uint8_t> too_big{0xff, 0xff, 0xff, 0xff, 0x1f};
    EXPECT_EQ(leb128_decode<uint32_t>(too_big).status, leb_status::malformed);
    const std::vector<uint8_t> max_u32{0xff, 0xff, 0xff, 0xff, 0x0f};
    EXPECT_EQ(leb128_decode<uint32_t>(max_u32).value, UINT32_MAX);
    const std::vector<uint8_t> bad_sign{0xff, 0xff, 0xff, 0xff, 0x4f};
    EXPECT_EQ(leb128_decode<int32_t>(bad_sign).status, leb_status::malformed);
}

TEST(leb128, round_trip_against_reference_encoder)
{
    std::mt19937_64 rng{11};
    for (int i = 0; i < 5000; ++i)
    {
        const auto shift = static_cast<unsigned>(rng() % 64);
        const uint64_t u = rng() >> shift;
        const auto ue = encode_unsigned(u);
        const auto ur = leb128_decode<uint64_t>(ue);
        ASSERT_EQ(ur.status, leb_status::ok);
        ASSERT_EQ(ur.value, u);
        ASSERT_EQ(ur.length, ue.size());

        const auto s = static_cast<int64_t>(rng()) >> shift;
        const auto se = encode_signed(s);
        const auto sr = leb128_decode<int64_t>(se);
        ASSERT_EQ(sr.status, leb_status::ok);
        ASSERT_EQ(sr.value, s);
        ASSERT_EQ(sr.length, se.size());

        const auto s32 = static_cast<int32_t>(s);
        ASSERT_EQ(leb128_decode<int32_t>(encode_signed(s32)).value, s32);
    }
}
