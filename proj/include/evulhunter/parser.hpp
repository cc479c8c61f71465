// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "module.hpp"
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>

namespace evulhunter
{
struct parser_error : std::runtime_error
{
    enum class kind
    {
        bad_magic,
        truncated_section,
        malformed_leb128,
        unknown_opcode,
        index_out_of_range,
        malformed,
    };

    parser_error(kind k, std::size_t at, const std::string& msg)
      : std::runtime_error{msg}, which{k}, offset{at}
    {}

    kind which;
    std::size_t offset;
};

std::string_view to_string(parser_error::kind k) noexcept;

/// Decodes a WebAssembly 1.0 binary. Custom sections are skipped.
wasm_module parse_module(std::span<const uint8_t> bytes);
}  // namespace evulhunter
