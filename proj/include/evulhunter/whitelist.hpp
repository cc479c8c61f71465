// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "names.hpp"
#include <filesystem>
#include <set>
#include <stdexcept>
#include <string_view>

namespace evulhunter
{
struct whitelist_error : std::runtime_error
{
    whitelist_error(std::size_t at_line, const std::string& msg)
      : std::runtime_error{"line " + std::to_string(at_line) + ": " + msg}, line{at_line}
    {}

    std::size_t line;
};

/// Token contracts trusted as the `code` of an incoming transfer. Always
/// contains eosio.token.
class whitelist
{
public:
    whitelist() : accounts_{names::eosio_token} {}

    /// One account per line; '#' starts a comment; blank lines are ignored.
    static whitelist parse(std::string_view text);
    static whitelist load(const std::filesystem::path& path);

    void add(account_name account) { accounts_.insert(account); }
    bool contains(account_name account) const noexcept { return accounts_.contains(account); }
    const std::set<account_name>& accounts() const noexcept { return accounts_; }

private:
    std::set<account_name> accounts_;
};
}  // namespace evulhunter
