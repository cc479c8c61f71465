// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/names.hpp"

namespace evulhunter
{
namespace
{
constexpr int char_index(char c) noexcept
{
    if (c == '.')
        return 0;
    if (c >= '1' && c <= '5')
        return c - '1' + 1;
    if (c >= 'a' && c <= 'z')
        return c - 'a' + 6;
    return -1;
}
}  // namespace

account_name encode_name(std::string_view name)
{
    if (name.size() > max_name_length)
        throw name_error{name_error::kind::too_long,
            "name '" + std::string{name} + "' is longer than 12 characters"};

    uint64_t value = 0;
    for (std::size_t i = 0; i < name.size(); ++i)
    {
        const auto index = char_index(name[i]);
        if (index < 0)
            throw name_error{name_error::kind::invalid_char,
                "invalid character '" + std::string(1, name[i]) + "' in name '" +
                    std::string{name} + "'"};
        value |= static_cast<uint64_t>(index) << (64 - 5 * (i + 1));
    }
    return account_name{value};
}

std::string decode_name(account_name name)
{
    std::string out(max_name_length, '.');
    for (std::size_t i = 0; i < max_name_length; ++i)
        out[i] = name_alphabet[(name.value >> (64 - 5 * (i + 1))) & 0x1f];
    // The low 4 bits hold the 13th character, which this codec never writes.
    if (const auto tail = name.value & 0xf; tail != 0)
        out.push_back(name_alphabet[tail]);

    const auto last = out.find_last_not_of('.');
    out.erase(last == std::string::npos ? 0 : last + 1);
    return out;
}

bool is_valid_name(std::string_view name) noexcept
{
    if (name.size() > max_name_length)
        return false;
    for (const char c : name)
    {
        if (char_index(c) < 0)
            return false;
    }
    return true;
}
}  // namespace evulhunter
