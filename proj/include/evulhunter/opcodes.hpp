// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace evulhunter
{
/// Immediate encoding that follows an opcode byte.
enum class imm_kind : uint8_t
{
    none,
    block_type,
    label,
    label_table,
    func_index,
    call_indirect,
    local_index,
    global_index,
    memarg,
    memory_zero,
    i32_const,
    i64_const,
    f32_const,
    f64_const,
};

// X(enumerator, byte, mnemonic, immediates, pops, pushes)
// Stack effects of call and call_indirect depend on the callee type and are
// listed as zero here; pops/pushes for control markers describe the marker alone.
#define EVULHUNTER_OPCODES(X)                                          \
    X(unreachable, 0x00, "unreachable", none, 0, 0)                    \
    X(nop, 0x01, "nop", none, 0, 0)                                    \
    X(block, 0x02, "block", block_type, 0, 0)                          \
    X(loop, 0x03, "loop", block_type, 0, 0)                            \
    X(if_, 0x04, "if", block_type, 1, 0)                               \
    X(else_, 0x05, "else", none, 0, 0)                                 \
    X(end, 0x0b, "end", none, 0, 0)                                    \
    X(br, 0x0c, "br", label, 0, 0)                                     \
    X(br_if, 0x0d, "br_if", label, 1, 0)                               \
    X(br_table, 0x0e, "br_table", label_table, 1, 0)                   \
    X(return_, 0x0f, "return", none, 0, 0)                             \
    X(call, 0x10, "call", func_index, 0, 0)                            \
    X(call_indirect, 0x11, "call_indirect", call_indirect, 0, 0)       \
    X(drop, 0x1a, "drop", none, 1, 0)                                  \
    X(select, 0x1b, "select", none, 3, 1)                              \
    X(local_get, 0x20, "local.get", local_index, 0, 1)                 \
    X(local_set, 0x21, "local.set", local_index, 1, 0)                 \
    X(local_tee, 0x22, "local.tee", local_index, 1, 1)                 \
    X(global_get, 0x23, "global.get", global_index, 0, 1)              \
    X(global_set, 0x24, "global.set", global_index, 1, 0)              \
    X(i32_load, 0x28, "i32.load", memarg, 1, 1)                        \
    X(i64_load, 0x29, "i64.load", memarg, 1, 1)                        \
    X(f32_load, 0x2a, "f32.load", memarg, 1, 1)                        \
    X(f64_load, 0x2b, "f64.load", memarg, 1, 1)                        \
    X(i32_load8_s, 0x2c, "i32.load8_s", memarg, 1, 1)                  \
    X(i32_load8_u, 0x2d, "i32.load8_u", memarg, 1, 1)                  \
    X(i32_load16_s, 0x2e, "i32.load16_s", memarg, 1, 1)                \
    X(i32_load16_u, 0x2f, "i32.load16_u", memarg, 1, 1)                \
    X(i64_load8_s, 0x30, "i64.load8_s", memarg, 1, 1)                  \
    X(i64_load8_u, 0x31, "i64.load8_u", memarg, 1, 1)                  \
    X(i64_load16_s, 0x32, "i64.load16_s", memarg, 1, 1)                \
    X(i64_load16_u, 0x33, "i64.load16_u", memarg, 1, 1)                \
    X(i64_load32_s, 0x34, "i64.load32_s", memarg, 1, 1)                \
    X(i64_load32_u, 0x35, "i64.load32_u", memarg, 1, 1)                \
    X(i32_store, 0x36, "i32.store", memarg, 2, 0)                      \
    X(i64_store, 0x37, "i64.store", memarg, 2, 0)                      \
    X(f32_store, 0x38, "f32.store", memarg, 2, 0)                      \
    X(f64_store, 0x39, "f64.store", memarg, 2, 0)                      \
    X(i32_store8, 0x3a, "i32.store8", memarg, 2, 0)                    \
    X(i32_store16, 0x3b, "i32.store16", memarg, 2, 0)                  \
    X(i64_store8, 0x3c, "i64.store8", memarg, 2, 0)                    \
    X(i64_store16, 0x3d, "i64.store16", memarg, 2, 0)                  \
    X(i64_store32, 0x3e, "i64.store32", memarg, 2, 0)                  \
    X(memory_size, 0x3f, "memory.size", memory_zero, 0, 1)             \
    X(memory_grow, 0x40, "memory.grow", memory_zero, 1, 1)             \
    X(i32_const, 0x41, "i32.const", i32_const, 0, 1)                   \
    X(i64_const, 0x42, "i64.const", i64_const, 0, 1)                   \
    X(f32_const, 0x43, "f32.const", f32_const, 0, 1)                   \
    X(f64_const, 0x44, "f64.const", f64_const, 0, 1)                   \
    X(i32_eqz, 0x45, "i32.eqz", none, 1, 1)                            \
    X(i32_eq, 0x46, "i32.eq", none, 2, 1)                              \
    X(i32_ne, 0x47, "i32.ne", none, 2, 1)                              \
    X(i32_lt_s, 0x48, "i32.lt_s", none, 2, 1)                          \
    X(i32_lt_u, 0x49, "i32.lt_u", none, 2, 1)                          \
    X(i32_gt_s, 0x4a, "i32.gt_s", none, 2, 1)                          \
    X(i32_gt_u, 0x4b, "i32.gt_u", none, 2, 1)                          \
    X(i32_le_s, 0x4c, "i32.le_s", none, 2, 1)                          \
    X(i32_le_u, 0x4d, "i32.le_u", none, 2, 1)                          \
    X(i32_ge_s, 0x4e, "i32.ge_s", none, 2, 1)                          \
    X(i32_ge_u, 0x4f, "i32.ge_u", none, 2, 1)                          \
    X(i64_eqz, 0x50, "i64.eqz", none, 1, 1)                            \
    X(i64_eq, 0x51, "i64.eq", none, 2, 1)                              \
    X(i64_ne, 0x52, "i64.ne", none, 2, 1)                              \
    X(i64_lt_s, 0x53, "i64.lt_s", none, 2, 1)                          \
    X(i64_lt_u, 0x54, "i64.lt_u", none, 2, 1)                          \
    X(i64_gt_s, 0x55, "i64.gt_s", none, 2, 1)                          \
    X(i64_gt_u, 0x56, "i64.gt_u", none, 2, 1)                          \
    X(i64_le_s, 0x57, "i64.le_s", none, 2, 1)                          \
    X(i64_le_u, 0x58, "i64.le_u", none, 2, 1)                          \
    X(i64_ge_s, 0x59, "i64.ge_s", none, 2, 1)                          \
    X(i64_ge_u, 0x5a, "i64.ge_u", none, 2, 1)                          \
    X(f32_eq, 0x5b, "f32.eq", none, 2, 1)                              \
    X(f32_ne, 0x5c, "f32.ne", none, 2, 1)                              \
    X(f32_lt, 0x5d, "f32.lt", none, 2, 1)                              \
    X(f32_gt, 0x5e, "f32.gt", none, 2, 1)                              \
    X(f32_le, 0x5f, "f32.le", none, 2, 1)                              \
    X(f32_ge, 0x60, "f32.ge", none, 2, 1)                              \
    X(f64_eq, 0x61, "f64.eq", none, 2, 1)                              \
    X(f64_ne, 0x62, "f64.ne", none, 2, 1)                              \
    X(f64_lt, 0x63, "f64.lt", none, 2, 1)                              \
    X(f64_gt, 0x64, "f64.gt", none, 2, 1)                              \
    X(f64_le, 0x65, "f64.le", none, 2, 1)                              \
    X(f64_ge, 0x66, "f64.ge", none, 2, 1)                              \
    X(i32_clz, 0x67, "i32.clz", none, 1, 1)                            \
    X(i32_ctz, 0x68, "i32.ctz", none, 1, 1)                            \
    X(i32_popcnt, 0x69, "i32.popcnt", none, 1, 1)                      \
    X(i32_add, 0x6a, "i32.add", none, 2, 1)                            \
    X(i32_sub, 0x6b, "i32.sub", none, 2, 1)                            \
    X(i32_mul, 0x6c, "i32.mul", none, 2, 1)                            \
    X(i32_div_s, 0x6d, "i32.div_s", none, 2, 1)                        \
    X(i32_div_u, 0x6e, "i32.div_u", none, 2, 1)                        \
    X(i32_rem_s, 0x6f, "i32.rem_s", none, 2, 1)                        \
    X(i32_rem_u, 0x70, "i32.rem_u", none, 2, 1)                        \
    X(i32_and, 0x71, "i32.and", none, 2, 1)                            \
    X(i32_or, 0x72, "i32.or", none, 2, 1)                              \
    X(i32_xor, 0x73, "i32.xor", none, 2, 1)                            \
    X(i32_shl, 0x74, "i32.shl", none, 2, 1)                            \
    X(i32_shr_s, 0x75, "i32.shr_s", none, 2, 1)                        \
    X(i32_shr_u, 0x76, "i32.shr_u", none, 2, 1)                        \
    X(i32_rotl, 0x77, "i32.rotl", none, 2, 1)                          \
    X(i32_rotr, 0x78, "i32.rotr", none, 2, 1)                          \
    X(i64_clz, 0x79, "i64.clz", none, 1, 1)                            \
    X(i64_ctz, 0x7a, "i64.ctz", none, 1, 1)                            \
    X(i64_popcnt, 0x7b, "i64.popcnt", none, 1, 1)                      \
    X(i64_add, 0x7c, "i64.add", none, 2, 1)                            \
    X(i64_sub, 0x7d, "i64.sub", none, 2, 1)                            \
    X(i64_mul, 0x7e, "i64.mul", none, 2, 1)                            \
    X(i64_div_s, 0x7f, "i64.div_s", none, 2, 1)                        \
    X(i64_div_u, 0x80, "i64.div_u", none, 2, 1)                        \
    X(i64_rem_s, 0x81, "i64.rem_s", none, 2, 1)                        \
    X(i64_rem_u, 0x82, "i64.rem_u", none, 2, 1)                        \
    X(i64_and, 0x83, "i64.and", none, 2, 1)                            \
    X(i64_or, 0x84, "i64.or", none, 2, 1)                              \
    X(i64_xor, 0x85, "i64.xor", none, 2, 1)                            \
    X(i64_shl, 0x86, "i64.shl", none, 2, 1)                            \
    X(i64_shr_s, 0x87, "i64.shr_s", none, 2, 1)                        \
    X(i64_shr_u, 0x88, "i64.shr_u", none, 2, 1)                        \
    X(i64_rotl, 0x89, "i64.rotl", none, 2, 1)                          \
    X(i64_rotr, 0x8a, "i64.rotr", none, 2, 1)                          \
    X(f32_abs, 0x8b, "f32.abs", none, 1, 1)                            \
    X(f32_neg, 0x8c, "f32.neg", none, 1, 1)                            \
    X(f32_ceil, 0x8d, "f32.ceil", none, 1, 1)                          \
    X(f32_floor, 0x8e, "f32.floor", none, 1, 1)                        \
    X(f32_trunc, 0x8f, "f32.trunc", none, 1, 1)                        \
    X(f32_nearest, 0x90, "f32.nearest", none, 1, 1)                    \
    X(f32_sqrt, 0x91, "f32.sqrt", none, 1, 1)                          \
    X(f32_add, 0x92, "f32.add", none, 2, 1)                            \
    X(f32_sub, 0x93, "f32.sub", none, 2, 1)                            \
    X(f32_mul, 0x94, "f32.mul", none, 2, 1)                            \
    X(f32_div, 0x95, "f32.div", none, 2, 1)                            \
    X(f32_min, 0x96, "f32.min", none, 2, 1)                            \
    X(f32_max, 0x97, "f32.max", none, 2, 1)                            \
    X(f32_copysign, 0x98, "f32.copysign", none, 2, 1)                  \
    X(f64_abs, 0x99, "f64.abs", none, 1, 1)                            \
    X(f64_neg, 0x9a, "f64.neg", none, 1, 1)                            \
    X(f64_ceil, 0x9b, "f64.ceil", none, 1, 1)                          \
    X(f64_floor, 0x9c, "f64.floor", none, 1, 1)                        \
    X(f64_trunc, 0x9d, "f64.trunc", none, 1, 1)                        \
    X(f64_nearest, 0x9e, "f64.nearest", none, 1, 1)                    \
    X(f64_sqrt, 0x9f, "f64.sqrt", none, 1, 1)                          \
    X(f64_add, 0xa0, "f64.add", none, 2, 1)                            \
    X(f64_sub, 0xa1, "f64.sub", none, 2, 1)                            \
    X(f64_mul, 0xa2, "f64.mul", none, 2, 1)                            \
    X(f64_div, 0xa3, "f64.div", none, 2, 1)                            \
    X(f64_min, 0xa4, "f64.min", none, 2, 1)                            \
    X(f64_max, 0xa5, "f64.max", none, 2, 1)                            \
    X(f64_copysign, 0xa6, "f64.copysign", none, 2, 1)                  \
    X(i32_wrap_i64, 0xa7, "i32.wrap_i64", none, 1, 1)                  \
    X(i32_trunc_f32_s, 0xa8, "i32.trunc_f32_s", none, 1, 1)            \
    X(i32_trunc_f32_u, 0xa9, "i32.trunc_f32_u", none, 1, 1)            \
    X(i32_trunc_f64_s, 0xaa, "i32.trunc_f64_s", none, 1, 1)            \
    X(i32_trunc_f64_u, 0xab, "i32.trunc_f64_u", none, 1, 1)            \
    X(i64_extend_i32_s, 0xac, "i64.extend_i32_s", none, 1, 1)          \
    X(i64_extend_i32_u, 0xad, "i64.extend_i32_u", none, 1, 1)          \
    X(i64_trunc_f32_s, 0xae, "i64.trunc_f32_s", none, 1, 1)            \
    X(i64_trunc_f32_u, 0xaf, "i64.trunc_f32_u", none, 1, 1)            \
    X(i64_trunc_f64_s, 0xb0, "i64.trunc_f64_s", none, 1, 1)            \
    X(i64_trunc_f64_u, 0xb1, "i64.trunc_f64_u", none, 1, 1)            \
    X(f32_convert_i32_s, 0xb2, "f32.convert_i32_s", none, 1, 1)        \
    X(f32_convert_i32_u, 0xb3, "f32.convert_i32_u", none, 1, 1)        \
    X(f32_convert_i64_s, 0xb4, "f32.convert_i64_s", none, 1, 1)        \
    X(f32_convert_i64_u, 0xb5, "f32.convert_i64_u", none, 1, 1)        \
    X(f32_demote_f64, 0xb6, "f32.demote_f64", none, 1, 1)              \
    X(f64_convert_i32_s, 0xb7, "f64.convert_i32_s", none, 1, 1)        \
    X(f64_convert_i32_u, 0xb8, "f64.convert_i32_u", none, 1, 1)        \
    X(f64_convert_i64_s, 0xb9, "f64.convert_i64_s", none, 1, 1)        \
    X(f64_convert_i64_u, 0xba, "f64.convert_i64_u", none, 1, 1)        \
    X(f64_promote_f32, 0xbb, "f64.promote_f32", none, 1, 1)            \
    X(i32_reinterpret_f32, 0xbc, "i32.reinterpret_f32", none, 1, 1)    \
    X(i64_reinterpret_f64, 0xbd, "i64.reinterpret_f64", none, 1, 1)    \
    X(f32_reinterpret_i32, 0xbe, "f32.reinterpret_i32", none, 1, 1)    \
    X(f64_reinterpret_i64, 0xbf, "f64.reinterpret_i64", none, 1, 1)

enum class opcode : uint8_t
{
#define EVULHUNTER_OPCODE_ENUM(name, byte, mnemonic, imm, pops, pushes) name = byte,
    EVULHUNTER_OPCODES(EVULHUNTER_OPCODE_ENUM)
#undef EVULHUNTER_OPCODE_ENUM
};

struct opcode_info
{
    std::string_view mnemonic;
    imm_kind immediates = imm_kind::none;
    uint8_t pops = 0;
    uint8_t pushes = 0;
};

/// Absent for bytes outside the WebAssembly 1.0 core instruction set.
std::optional<opcode_info> lookup_opcode(uint8_t byte) noexcept;

const opcode_info& info(opcode op) noexcept;

inline std::string_view mnemonic(opcode op) noexcept
{
    return info(op).mnemonic;
}
}  // namespace evulhunter
