// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <evulhunter/cfg.hpp>
#include <set>
#include <string>
#include <vector>

namespace evulhunter::test
{
inline bool ends_block(opcode op) noexcept
{
    switch (op)
    {
    case opcode::br:
    case opcode::br_if:
    case opcode::br_table:
    case opcode::return_:
    case opcode::unreachable:
    case opcode::if_:
    case opcode::else_:
        return true;
    default:
        return false;
    }
}

inline terminator terminator_for(const func_body& body, uint32_t position)
{
    if (position + 1 == body.instructions.size())
        return terminator::end_of_function;
    switch (body.instructions[position].op)
    {
    case opcode::br:
    case opcode::else_:
        return terminator::br;
    case opcode::br_if:
        return terminator::br_if;
    case opcode::br_table:
        return terminator::br_table;
    case opcode::if_:
        return terminator::if_split;
    case opcode::return_:
        return terminator::return_;
    case opcode::unreachable:
        return terminator::unreachable;
    default:
        return terminator::fallthrough;
    }
}

/// Violated structural properties of `graph` as a CFG of `body`; empty when
/// partition, terminator placement, edge arity, and endpoint validity hold.
inline std::vector<std::string> cfg_violations(const func_body& body, const cfg& graph)
{
    std::vector<std::string> out;
    const auto n = static_cast<uint32_t>(body.instructions.size());
    const auto nb = static_cast<uint32_t>(graph.blocks.size());
    auto fail = [&out](std::string msg) { out.push_back(std::move(msg)); };

    uint32_t covered = 0;
    uint32_t expect_begin = 0;
    for (uint32_t b = 0; b < nb; ++b)
    {
        const auto& block = graph.blocks[b];
        if (block.id != b)
            fail("block id " + std::to_string(block.id) + " at position " + std::to_string(b));
        if (block.begin != expect_begin || block.end <= block.begin)
            fail("block " + std::to_string(b) + " does not continue the partition");
        expect_begin = block.end;
        covered += block.size();
        for (uint32_t p = block.begin; p + 1 < block.end; ++p)
        {
            if (ends_block(body.instructions[p].op))
                fail("terminator inside block " + std::to_string(b));
        }
        if (block.end <= n && block.end > block.begin && block.term != terminator_for(body, block.last()))
            fail("block " + std::to_string(b) + " has terminator " + std::string{to_string(block.term)});
        for (uint32_t p = block.begin; p < block.end && p < n; ++p)
        {
            if (graph.block_of(p) != b)
                fail("block_of disagrees at position " + std::to_string(p));
        }
    }
    if (covered != n || expect_begin != n)
        fail("blocks cover " + std::to_string(covered) + " of " + std::to_string(n) + " instructions");
    if (graph.entry != 0 || (nb > 0 && graph.blocks[0].begin != 0))
        fail("entry is not the first block");

    if (graph.successors.size() != nb || graph.predecessors.size() != nb)
        fail("adjacency size mismatch");
    for (uint32_t e = 0; e < graph.edges.size(); ++e)
    {
        const auto& edge = graph.edges[e];
        if (edge.from >= nb || edge.to >= nb)
        {
            fail("edge " + std::to_string(e) + " has an invalid endpoint");
            continue;
        }
        if (edge.to == graph.entry && edge.kind == edge_kind::seq)
            fail("seq edge into entry");
    }
    if (!out.empty())
        return out;

    for (uint32_t b = 0; b < nb; ++b)
    {
        const auto& block = graph.blocks[b];
        const auto& succ = graph.successors[b];
        for (const auto e : succ)
        {
            if (graph.edges[e].from != b)
                fail("successor list of block " + std::to_string(b) + " holds a foreign edge");
        }
        if (block.term == terminator::br_table)
        {
            const auto& instr = body.instructions[block.last()];
            std::set<uint32_t> distinct(instr.targets.begin(), instr.targets.end());
            std::size_t defaults = 0;
            std::vector<uint32_t> cases;
            for (const auto e : succ)
            {
                defaults += graph.edges[e].kind == edge_kind::table_default;
                cases.insert(cases.end(), graph.edges[e].cases.begin(), graph.edges[e].cases.end());
            }
            std::sort(cases.begin(), cases.end());
            std::vector<uint32_t> all(instr.targets.size());
            for (uint32_t i = 0; i < all.size(); ++i)
                all[i] = i;
            if (succ.size() != distinct.size() || defaults != 1 || cases != all)
                fail("br_table block " + std::to_string(b) + " edges do not match its targets");
            continue;
        }
        if (succ.size() != expected_out_degree(block.term))
        {
            fail("block " + std::to_string(b) + " (" + std::string{to_string(block.term)} + ") has " +
                 std::to_string(succ.size()) + " successors");
            continue;
        }
        if (block.term == terminator::br_if || block.term == terminator::if_split)
        {
            const auto k0 = graph.edges[succ[0]].kind;
            const auto k1 = graph.edges[succ[1]].kind;
            const std::set<edge_kind> kinds{k0, k1};
            if (kinds != std::set<edge_kind>{edge_kind::taken, edge_kind::not_taken})
                fail("conditional block " + std::to_string(b) + " lacks taken/not-taken edges");
        }
        const bool is_exit = block.term == terminator::return_ || block.term == terminator::unreachable ||
                             block.term == terminator::end_of_function;
        if (is_exit != graph.exits.contains(b))
            fail("exit set disagrees for block " + std::to_string(b));
    }
    return out;
}

inline bool same_graph(const cfg& a, const cfg& b)
{
    if (a.blocks.size() != b.blocks.size() || a.edges.size() != b.edges.size() || a.entry != b.entry ||
        a.exits != b.exits)
        return false;
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
    {
        const auto& x = a.blocks[i];
        const auto& y = b.blocks[i];
        if (x.id != y.id || x.begin != y.begin || x.end != y.end || x.term != y.term)
            return false;
    }
    for (std::size_t i = 0; i < a.edges.size(); ++i)
    {
        const auto& x = a.edges[i];
        const auto& y = b.edges[i];
        if (x.from != y.from || x.to != y.to || x.kind != y.kind || x.cases != y.cases)
            return false;
    }
    return true;
}
}  // namespace evulhunter::test
