// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "opcodes.hpp"
#include <cstdint>
#include <optional>

namespace evulhunter
{
/// Constant folding for integer instructions with WebAssembly wrapping
/// semantics. Operands and results of i32 instructions occupy the low 32 bits.
/// Absent when the opcode is not a foldable integer operation or would trap.
std::optional<uint64_t> fold_binary(opcode op, uint64_t lhs, uint64_t rhs) noexcept;
std::optional<uint64_t> fold_unary(opcode op, uint64_t operand) noexcept;
}  // namespace evulhunter
