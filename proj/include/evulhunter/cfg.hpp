// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "module.hpp"
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace evulhunter
{
enum class terminator : uint8_t
{
    fallthrough,
    br,
    br_if,
    br_table,
    if_split,
    return_,
    unreachable,
    end_of_function,
};

enum class edge_kind : uint8_t
{
    seq,
    taken,
    not_taken,
    table_case,
    table_default,
};

std::string_view to_string(terminator t) noexcept;
std::string_view to_string(edge_kind k) noexcept;

struct basic_block
{
    uint32_t id = 0;
    /// Half-open range of instruction positions within the function body.
    uint32_t begin = 0;
    uint32_t end = 0;
    terminator term = terminator::fallthrough;

    uint32_t size() const noexcept { return end - begin; }
    uint32_t last() const noexcept { return end - 1; }
};

struct cfg_edge
{
    uint32_t from = 0;
    uint32_t to = 0;
    edge_kind kind = edge_kind::seq;
    /// br_table positions (into instruction::targets) that select this edge.
    std::vector<uint32_t> cases;
};

using edge_set = std::set<uint32_t>;

struct cfg
{
    std::vector<basic_block> blocks;
    std::vector<cfg_edge> edges;
    uint32_t entry = 0;
    std::set<uint32_t> exits;
    /// Edge ids leaving / entering each block.
    std::vector<std::vector<uint32_t>> successors;
    std::vector<std::vector<uint32_t>> predecessors;

    /// Block owning the instruction at the given position.
    uint32_t block_of(uint32_t position) const;
};

struct cfg_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// Lowers structured control flow to explicit edges. Throws cfg_error when
/// control markers are unbalanced.
cfg build_cfg(const func_body& body);

/// Blocks reachable from `from` without crossing any edge in `forbidden`.
std::set<uint32_t> reachable_blocks(
    const cfg& graph, uint32_t from, const edge_set& forbidden = {});

/// Number of out-edges a block with the given terminator must have; for
/// br_table this is the count of distinct targets and is checked separately.
std::size_t expected_out_degree(terminator t) noexcept;

/// Graphviz rendering; nodes carry offset ranges and terminators.
std::string to_dot(const cfg& graph, const func_body& body, const std::string& name);
}  // namespace evulhunter
