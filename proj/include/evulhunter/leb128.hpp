// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <type_traits>

namespace evulhunter
{
enum class leb_status
{
    ok,
    truncated,
    malformed,
};

template <typename T>
struct leb_result
{
    T value{};
    std::size_t length = 0;
    leb_status status = leb_status::ok;
};

/// Decodes a LEB128 integer of width T from the front of `in`. Encodings
/// longer than ceil(bits/7) bytes or with set bits beyond the width are malformed.
template <typename T>
leb_result<T> leb128_decode(std::span<const uint8_t> in) noexcept
{
    using U = std::make_unsigned_t<T>;
    constexpr unsigned bits = sizeof(T) * 8;
    constexpr std::size_t max_len = (bits + 6) / 7;

    U result = 0;
    unsigned shift = 0;
    for (std::size_t i = 0; i < max_len; ++i)
    {
        if (i >= in.size())
            return {T{}, i, leb_status::truncated};
        const uint8_t byte = in[i];
        const bool last = (byte & 0x80) == 0 || i + 1 == max_len;
        if (i + 1 == max_len)
        {
            if (byte & 0x80)
                return {T{}, i + 1, leb_status::malformed};
            // Bits past the integer width must be zero (unsigned) or a sign
            // extension of the top value bit (signed).
            const unsigned used = bits - shift;
            const uint8_t extra_mask = static_cast<uint8_t>(0x7f & ~((1u << used) - 1u));
            if constexpr (std::is_signed_v<T>)
            {
                const bool sign = (byte >> (used - 1)) & 1;
                if ((byte & extra_mask) != (sign ? extra_mask : 0))
                    return {T{}, i + 1, leb_status::malformed};
            }
            else
            {
                if (byte & extra_mask)
                    return {T{}, i + 1, leb_status::malformed};
            }
        }
        result |= static_cast<U>(static_cast<U>(byte & 0x7f) << shift);
        shift += 7;
        if (last)
        {
            if constexpr (std::is_signed_v<T>)
            {
                if (shift < bits && (byte & 0x40))
                    result |= static_cast<U>(~U{0} << shift);
            }
            return {static_cast<T>(result), i + 1, leb_status::ok};
        }
    }
    return {T{}, max_len, leb_status::malformed};
}
}  // namespace evulhunter
