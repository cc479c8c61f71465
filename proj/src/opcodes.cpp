// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/opcodes.hpp"
#include <array>

namespace evulhunter
{
namespace
{
struct table_entry
{
    bool valid = false;
    opcode_info info;
};

constexpr std::array<table_entry, 256> make_table() noexcept
{
    std::array<table_entry, 256> t{};
#define EVULHUNTER_OPCODE_ROW(name, byte, mnemonic, imm, pops, pushes) \
    t[byte] = table_entry{true, opcode_info{mnemonic, imm_kind::imm, pops, pushes}};
    EVULHUNTER_OPCODES(EVULHUNTER_OPCODE_ROW)
#undef EVULHUNTER_OPCODE_ROW
    return t;
}

constexpr auto opcode_table = make_table();
}  // namespace

std::optional<opcode_info> lookup_opcode(uint8_t byte) noexcept
{
    const auto& entry = opcode_table[byte];
    if (!entry.valid)
        return std::nullopt;
    return entry.info;
}

const opcode_info& info(opcode op) noexcept
{
    return opcode_table[static_cast<uint8_t>(op)].info;
}
}  // namespace evulhunter
