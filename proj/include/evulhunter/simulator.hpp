// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "cfg.hpp"
#include "module.hpp"
#include "sym_value.hpp"
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace evulhunter
{
/// Acyclic paths simulated per function before giving up.
inline constexpr std::size_t default_path_budget = 256;

struct path_constraint
{
    comparison cmp;
    /// Whether lhs == rhs holds on the path.
    bool equal = false;
};

struct control_frame
{
    opcode kind = opcode::block;
    uint32_t height = 0;
    uint32_t arity = 0;
};

struct sim_state
{
    using cell_key = std::pair<uint32_t, int64_t>;

    std::vector<sym_value> stack;
    std::vector<sym_value> locals;
    std::map<uint32_t, sym_value> globals;
    std::map<cell_key, sym_value> mem_cells;
    std::vector<path_constraint> path_constraints;
    std::vector<control_frame> control;
    /// Condition popped by the current block's terminator (br_if / if).
    std::optional<sym_value> pending_condition;
};

enum class call_kind : uint8_t
{
    direct,
    host,
    indirect,
};

struct call_event
{
    code_site site;
    uint32_t position = 0;
    call_kind kind = call_kind::direct;
    /// Function index for direct and host calls; type index for call_indirect.
    uint32_t callee = 0;
    std::vector<sym_value> args;
    /// Table index operand of call_indirect.
    std::optional<sym_value> table_index;
    /// Number of path constraints in force at the call.
    std::size_t constraints_in_force = 0;
};

enum class guard_kind : uint8_t
{
    branch,
    assertion,
};

/// A comparison result consumed by control flow.
struct guard_event
{
    comparison cmp;
    bool negated = false;
    guard_kind kind = guard_kind::branch;
    uint32_t position = 0;
};

struct block_outcome
{
    sim_state state;
    std::vector<comparison> comparisons;
    std::vector<guard_event> guards;
    std::vector<call_event> calls;
    std::vector<std::string> diagnostics;
    /// The path cannot continue (stack underflow on a malformed body).
    bool aborted = false;
};

struct bad_apply_signature : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Locals 0..2 tagged receiver, code, action. Throws bad_apply_signature.
sim_state seed_apply_state(const wasm_module& module);

/// Function index of apply after checking its (i64, i64, i64) signature.
uint32_t apply_function(const wasm_module& module);

/// Parameters taken from `args` (missing ones Unknown); declared locals Unknown.
sim_state seed_function_state(
    const wasm_module& module, uint32_t func_index, const std::vector<sym_value>& args = {});

/// Records from/to in the destination buffer of a read_action_data host call.
sim_state tag_action_data(const wasm_module& module, sim_state state, const call_event& call);

struct path_walk
{
    std::size_t paths = 0;
    bool budget_exceeded = false;
};

class simulator
{
public:
    simulator(const wasm_module& module, uint32_t func_index);
    simulator(const wasm_module& module, uint32_t func_index, cfg graph);

    const cfg& graph() const noexcept { return graph_; }
    const func_body& body() const noexcept { return *body_; }
    uint32_t function() const noexcept { return func_index_; }

    block_outcome simulate_block(sim_state state, const basic_block& block) const;

    /// Applies the control transfer of `edge` to a post-block state.
    sim_state follow_edge(sim_state state, uint32_t edge) const;

    using block_visitor = std::function<void(uint32_t block, const block_outcome&)>;

    /// Simulates every acyclic path from the entry block (each block at most
    /// once per path), reporting each simulated block to `visit`.
    path_walk walk_paths(const sim_state& initial, const block_visitor& visit,
        std::size_t budget = default_path_budget) const;

private:
    const wasm_module* module_;
    uint32_t func_index_;
    const func_body* body_;
    cfg graph_;
};

struct indirect_resolution
{
    /// Call sites in apply: call_indirect sites and calls into an
    /// execute_action-style dispatcher. Absent target means Unresolved.
    std::map<code_site, std::optional<uint32_t>> targets;
    std::vector<std::string> diagnostics;
    bool budget_exceeded = false;
};

/// For each call_indirect reachable in apply (directly, or one call deep
/// through a dispatcher that forwards its last parameter as the table index),
/// maps the site to the table element selected by the constant on top of the stack.
indirect_resolution resolve_indirect_targets(const wasm_module& module, const cfg& apply_cfg);
}  // namespace evulhunter
