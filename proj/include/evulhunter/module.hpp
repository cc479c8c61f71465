// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "opcodes.hpp"
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace evulhunter
{
enum class valtype : uint8_t
{
    i32 = 0x7f,
    i64 = 0x7e,
    f32 = 0x7d,
    f64 = 0x7c,
};

std::string_view to_string(valtype t) noexcept;

struct functype
{
    std::vector<valtype> params;
    std::vector<valtype> results;

    friend bool operator==(const functype&, const functype&) = default;
};

enum class external_kind : uint8_t
{
    function = 0x00,
    table = 0x01,
    memory = 0x02,
    global = 0x03,
};

struct import
{
    std::string module;
    std::string field;
    external_kind kind = external_kind::function;
    /// Meaningful for function imports only.
    uint32_t type_index = 0;
    /// Meaningful for global imports only.
    valtype global_type = valtype::i32;
};

struct global
{
    valtype type = valtype::i32;
    bool is_mutable = false;
    /// Set when the initializer is a single integer constant.
    std::optional<uint64_t> init;
};

struct export_entry
{
    external_kind kind = external_kind::function;
    uint32_t index = 0;
};

struct data_segment
{
    uint32_t offset = 0;
    std::vector<uint8_t> bytes;
};

struct instruction
{
    opcode op = opcode::nop;
    /// Absolute byte offset of the opcode within the module binary.
    uint32_t offset = 0;

    /// Constant payload (integer value or float bit pattern).
    uint64_t value = 0;
    /// Local/global/function/type index, or branch depth.
    uint32_t index = 0;
    /// memarg offset for loads and stores.
    uint32_t mem_offset = 0;
    /// Result type of block/loop/if; absent for the empty block type.
    std::optional<valtype> block_result;
    /// br_table case depths followed by the default depth.
    std::vector<uint32_t> targets;
};

struct local_decl
{
    uint32_t count = 0;
    valtype type = valtype::i32;
};

struct func_body
{
    std::vector<local_decl> locals;
    std::vector<instruction> instructions;
    /// Offset of the body-size field in the module binary.
    uint32_t offset = 0;

    uint32_t local_count() const noexcept;
};

struct wasm_module
{
    std::vector<functype> types;
    std::vector<import> imports;
    /// Type indexes of locally defined functions.
    std::vector<uint32_t> functions;
    uint32_t table_count = 0;
    uint32_t memory_count = 0;
    std::vector<global> globals;
    std::map<std::string, export_entry> exports;
    std::optional<uint32_t> start;
    /// Table slot to function index, from the element section.
    std::map<uint32_t, uint32_t> table_elements;
    std::vector<func_body> bodies;
    std::vector<data_segment> data_segments;
    /// Size of the binary the module was parsed from.
    std::size_t byte_size = 0;

    /// Positions in `imports` of the function imports, in function-index order.
    std::vector<uint32_t> function_import_slots;
    uint32_t imported_global_count = 0;

    uint32_t imported_function_count() const noexcept
    {
        return static_cast<uint32_t>(function_import_slots.size());
    }
    uint32_t function_count() const noexcept
    {
        return imported_function_count() + static_cast<uint32_t>(functions.size());
    }
    uint32_t global_count() const noexcept
    {
        return imported_global_count + static_cast<uint32_t>(globals.size());
    }
    bool is_imported_function(uint32_t func_index) const noexcept
    {
        return func_index < imported_function_count();
    }

    /// The function import with the given function-space index.
    const import& function_import(uint32_t func_index) const;
    const functype& function_type(uint32_t func_index) const;
    /// Body of a defined function, addressed by function-space index.
    const func_body& body(uint32_t func_index) const;
};

/// Function index of an exported function, if present.
std::optional<uint32_t> find_export(const wasm_module& module, std::string_view name);

/// Function-space index of a host function imported under the given field name.
std::optional<uint32_t> import_index_of(const wasm_module& module, std::string_view field);
}  // namespace evulhunter
