// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/module.hpp"
#include <stdexcept>

namespace evulhunter
{
std::string_view to_string(valtype t) noexcept
{
    switch (t)
    {
    case valtype::i32:
        return "i32";
    case valtype::i64:
        return "i64";
    case valtype::f32:
        return "f32";
    case valtype::f64:
        return "f64";
    }
    return "?";
}

uint32_t func_body::local_count() const noexcept
{
    uint32_t n = 0;
    for (const auto& d : locals)
        n += d.count;
    return n;
}

const import& wasm_module::function_import(uint32_t func_index) const
{
    return imports.at(function_import_slots.at(func_index));
}

const functype& wasm_module::function_type(uint32_t func_index) const
{
    if (is_imported_function(func_index))
        return types.at(function_import(func_index).type_index);
    return types.at(functions.at(func_index - imported_function_count()));
}

const func_body& wasm_module::body(uint32_t func_index) const
{
    if (is_imported_function(func_index))
        throw std::out_of_range{"function " + std::to_string(func_index) + " is imported"};
    return bodies.at(func_index - imported_function_count());
}

std::optional<uint32_t> find_export(const wasm_module& module, std::string_view name)
{
    const auto it = module.exports.find(std::string{name});
    if (it == module.exports.end() || it->second.kind != external_kind::function)
        return std::nullopt;
    return it->second.index;
}

std::optional<uint32_t> import_index_of(const wasm_module& module, std::string_view field)
{
    for (uint32_t i = 0; i < module.imported_function_count(); ++i)
    {
        if (module.function_import(i).field == field)
            return i;
    }
    return std::nullopt;
}
}  // namespace evulhunter
