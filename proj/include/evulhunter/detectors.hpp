// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "module.hpp"
#include "names.hpp"
#include "whitelist.hpp"
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace evulhunter
{
enum class detector_kind : uint8_t
{
    fake_eos_transfer,
    fake_transfer_notice,
};

enum class verdict : uint8_t
{
    vulnerable,
    safe,
    inconclusive,
};

std::string_view to_string(detector_kind d) noexcept;
std::string_view to_string(verdict v) noexcept;
std::optional<detector_kind> parse_detector(std::string_view s) noexcept;
std::optional<verdict> parse_verdict(std::string_view s) noexcept;

struct evidence
{
    uint32_t function = 0;
    uint32_t offset = 0;
    std::string message;

    friend bool operator==(const evidence&, const evidence&) = default;
};

struct finding
{
    detector_kind detector = detector_kind::fake_eos_transfer;
    verdict result = verdict::inconclusive;
    std::vector<evulhunter::evidence> evidence;
    /// A conservative verdict forced by the path budget or unresolved targets.
    bool degraded = false;
    /// Why the verdict is inconclusive, e.g. NoTransferHandler.
    std::string reason;
};

struct handler_map
{
    std::map<account_name, std::set<uint32_t>> entries;
    std::size_t unresolved_sites = 0;
    /// Set when an action maps to several functions or the path budget ran out.
    bool degraded = false;

    std::set<uint32_t> lookup(account_name action) const
    {
        const auto it = entries.find(action);
        return it == entries.end() ? std::set<uint32_t>{} : it->second;
    }
};

/// Host functions whose only effect is runtime support (memory shims,
/// assertions, printing); calling them does not run contract logic.
bool is_runtime_host_function(std::string_view field) noexcept;

/// Per function index: true for functions that can reach contract logic,
/// i.e. a call_indirect or a non-runtime host function through direct calls.
std::vector<bool> developer_functions(const wasm_module& module);

/// Associates action names compared against apply's action parameter with
/// the handler reached on the same path. Throws bad_apply_signature.
handler_map locate_handlers(const wasm_module& module);

finding detect_fake_eos_transfer(const wasm_module& module, const whitelist& wl = {});

finding detect_fake_notice(const wasm_module& module);
}  // namespace evulhunter
