// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace evulhunter
{
/// A 12-character account or action name packed into 64 bits, 5 bits per
/// character, first character in the most significant group.
struct account_name
{
    uint64_t value = 0;

    constexpr account_name() noexcept = default;
    constexpr explicit account_name(uint64_t v) noexcept : value{v} {}

    friend constexpr auto operator<=>(account_name, account_name) noexcept = default;
};

struct name_error : std::invalid_argument
{
    enum class kind
    {
        invalid_char,
        too_long,
    };

    name_error(kind k, const std::string& msg) : std::invalid_argument{msg}, which{k} {}

    kind which;
};

inline constexpr std::string_view name_alphabet = ".12345abcdefghijklmnopqrstuvwxyz";
inline constexpr std::size_t max_name_length = 12;

/// Throws name_error on characters outside the alphabet or length > 12.
account_name encode_name(std::string_view name);

/// Total. Trailing '.' characters are stripped.
std::string decode_name(account_name name);

bool is_valid_name(std::string_view name) noexcept;

namespace names
{
inline const account_name eosio_token = encode_name("eosio.token");
inline const account_name transfer = encode_name("transfer");
}  // namespace names
}  // namespace evulhunter
