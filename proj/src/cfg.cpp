// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/cfg.hpp"
#include <algorithm>
#include <map>
#include <sstream>

namespace evulhunter
{
namespace
{
struct structure
{
    /// For block/loop/if/else positions: position of the matching end.
    std::vector<uint32_t> matching_end;
    /// For if positions: position of the matching else, if any.
    std::vector<uint32_t> matching_else;
    /// For branch positions: resolved target position of each label immediate.
    std::vector<std::vector<uint32_t>> branch_targets;
};

constexpr uint32_t none = UINT32_MAX;

uint32_t label_target(const std::vector<uint32_t>& frames,
    const std::vector<instruction>& code, const std::vector<uint32_t>& matching_end,
    uint32_t depth)
{
    if (depth >= frames.size())
        throw cfg_error{"branch depth exceeds enclosing labels"};
    const auto start = frames[frames.size() - 1 - depth];
    if (start == none)  // function-level label
        return static_cast<uint32_t>(code.size() - 1);
    if (code[start].op == opcode::loop)
        return start + 1;
    return matching_end[start];
}

structure analyze_structure(const std::vector<instruction>& code)
{
    const auto n = static_cast<uint32_t>(code.size());
    if (n == 0 || code.back().op != opcode::end)
        throw cfg_error{"function body must end with end"};

    structure s;
    s.matching_end.assign(n, none);
    s.matching_else.assign(n, none);
    s.branch_targets.resize(n);

    std::vector<uint32_t> open;
    for (uint32_t p = 0; p + 1 < n; ++p)
    {
        switch (code[p].op)
        {
        case opcode::block:
        case opcode::loop:
        case opcode::if_:
            open.push_back(p);
            break;
        case opcode::else_:
            if (open.empty() || code[open.back()].op != opcode::if_ ||
                s.matching_else[open.back()] != none)
                throw cfg_error{"else without matching if"};
            s.matching_else[open.back()] = p;
            break;
        case opcode::end:
            if (open.empty())
                throw cfg_error{"end closes the function before the final instruction"};
            s.matching_end[open.back()] = p;
            if (const auto e = s.matching_else[open.back()]; e != none)
                s.matching_end[e] = p;
            open.pop_back();
            break;
        default:
            break;
        }
    }
    if (!open.empty())
        throw cfg_error{"unbalanced control markers"};

    // Second pass: label resolution needs the matching ends.
    std::vector<uint32_t> frames{none};
    for (uint32_t p = 0; p + 1 < n; ++p)
    {
        const auto& instr = code[p];
        switch (instr.op)
        {
        case opcode::block:
        case opcode::loop:
        case opcode::if_:
            frames.push_back(p);
            break;
        case opcode::end:
            frames.pop_back();
            break;
        case opcode::br:
        case opcode::br_if:
            s.branch_targets[p].push_back(label_target(frames, code, s.matching_end, instr.index));
            break;
        case opcode::br_table:
            for (const auto depth : instr.targets)
                s.branch_targets[p].push_back(label_target(frames, code, s.matching_end, depth));
            break;
        default:
            break;
        }
    }
    return s;
}

bool ends_block(opcode op) noexcept
{
    switch (op)
    {
    case opcode::br:
    case opcode::br_if:
    case opcode::br_table:
    case opcode::if_:
    case opcode::else_:
    case opcode::return_:
    case opcode::unreachable:
        return true;
    default:
        return false;
    }
}
}  // namespace

std::string_view to_string(terminator t) noexcept
{
    switch (t)
    {
    case terminator::fallthrough:
        return "fallthrough";
    case terminator::br:
        return "br";
    case terminator::br_if:
        return "br_if";
    case terminator::br_table:
        return "br_table";
    case terminator::if_split:
        return "if_split";
    case terminator::return_:
        return "return";
    case terminator::unreachable:
        return "unreachable";
    case terminator::end_of_function:
        return "end-of-function";
    }
    return "?";
}

std::string_view to_string(edge_kind k) noexcept
{
    switch (k)
    {
    case edge_kind::seq:
        return "seq";
    case edge_kind::taken:
        return "taken";
    case edge_kind::not_taken:
        return "not-taken";
    case edge_kind::table_case:
        return "table-case";
    case edge_kind::table_default:
        return "table-default";
    }
    return "?";
}

uint32_t cfg::block_of(uint32_t position) const
{
    const auto it = std::upper_bound(blocks.begin(), blocks.end(), position,
        [](uint32_t pos, const basic_block& b) { return pos < b.begin; });
    if (it == blocks.begin() || position >= std::prev(it)->end)
        throw std::out_of_range{"instruction position outside the function"};
    return std::prev(it)->id;
}

cfg build_cfg(const func_body& body)
{
    const auto& code = body.instructions;
    const auto s = analyze_structure(code);
    const auto n = static_cast<uint32_t>(code.size());

    std::vector<bool> leader(n, false);
    leader[0] = true;
    for (uint32_t p = 0; p + 1 < n; ++p)
    {
        const auto op = code[p].op;
        if (ends_block(op) || op == opcode::loop)
            leader[p + 1] = true;
        for (const auto t : s.branch_targets[p])
            leader[t] = true;
        if (op == opcode::if_)
        {
            const auto e = s.matching_else[p];
            leader[e != none ? e + 1 : s.matching_end[p]] = true;
        }
        if (op == opcode::else_)
            leader[s.matching_end[p]] = true;
    }

    cfg g;
    for (uint32_t p = 0; p < n; ++p)
    {
        if (leader[p])
        {
            if (!g.blocks.empty())
                g.blocks.back().end = p;
            g.blocks.push_back({static_cast<uint32_t>(g.blocks.size()), p, n, {}});
        }
    }
    g.successors.resize(g.blocks.size());
    g.predecessors.resize(g.blocks.size());

    auto add_edge = [&g](uint32_t from, uint32_t to, edge_kind kind,
                        std::vector<uint32_t> cases = {}) {
        const auto id = static_cast<uint32_t>(g.edges.size());
        g.edges.push_back({from, to, kind, std::move(cases)});
        g.successors[from].push_back(id);
        g.predecessors[to].push_back(id);
    };

    for (auto& b : g.blocks)
    {
        const auto last = b.last();
        const auto& instr = code[last];
        const auto next = last + 1;
        switch (instr.op)
        {
        case opcode::br:
            b.term = terminator::br;
            add_edge(b.id, g.block_of(s.branch_targets[last][0]), edge_kind::taken);
            break;
        case opcode::br_if:
            b.term = terminator::br_if;
            add_edge(b.id, g.block_of(s.branch_targets[last][0]), edge_kind::taken);
            add_edge(b.id, g.block_of(next), edge_kind::not_taken);
            break;
        case opcode::br_table:
        {
            b.term = terminator::br_table;
            const auto& targets = s.branch_targets[last];
            const auto default_case = static_cast<uint32_t>(targets.size() - 1);
            std::map<uint32_t, std::vector<uint32_t>> by_target;
            std::vector<uint32_t> order;
            for (uint32_t c = 0; c < targets.size(); ++c)
            {
                auto& cases = by_target[targets[c]];
                if (cases.empty())
                    order.push_back(targets[c]);
                cases.push_back(c);
            }
            for (const auto t : order)
            {
                auto& cases = by_target[t];
                const bool is_default = cases.back() == default_case;
                add_edge(b.id, g.block_of(t),
                    is_default ? edge_kind::table_default : edge_kind::table_case,
                    std::move(cases));
            }
            break;
        }
        case opcode::if_:
        {
            b.term = terminator::if_split;
            const auto e = s.matching_else[last];
            add_edge(b.id, g.block_of(next), edge_kind::taken);
            add_edge(b.id, g.block_of(e != none ? e + 1 : s.matching_end[last]),
                edge_kind::not_taken);
            break;
        }
        case opcode::else_:
            b.term = terminator::br;
            add_edge(b.id, g.block_of(s.matching_end[last]), edge_kind::seq);
            break;
        case opcode::return_:
            b.term = terminator::return_;
            break;
        case opcode::unreachable:
            b.term = terminator::unreachable;
            break;
        default:
            if (next == n)
            {
                b.term = terminator::end_of_function;
            }
            else
            {
                b.term = terminator::fallthrough;
                add_edge(b.id, g.block_of(next), edge_kind::seq);
            }
            break;
        }
        if (b.term == terminator::return_ || b.term == terminator::unreachable ||
            b.term == terminator::end_of_function)
            g.exits.insert(b.id);
    }
    return g;
}

std::set<uint32_t> reachable_blocks(const cfg& graph, uint32_t from, const edge_set& forbidden)
{
    if (from >= graph.blocks.size())
        throw std::out_of_range{"block id out of range"};
    std::set<uint32_t> seen{from};
    std::vector<uint32_t> work{from};
    while (!work.empty())
    {
        const auto b = work.back();
        work.pop_back();
        for (const auto e : graph.successors[b])
        {
            if (forbidden.contains(e))
                continue;
            const auto to = graph.edges[e].to;
            if (seen.insert(to).second)
                work.push_back(to);
        }
    }
    return seen;
}

std::size_t expected_out_degree(terminator t) noexcept
{
    switch (t)
    {
    case terminator::fallthrough:
    case terminator::br:
        return 1;
    case terminator::br_if:
    case terminator::if_split:
        return 2;
    case terminator::br_table:
    case terminator::return_:
    case terminator::unreachable:
    case terminator::end_of_function:
        return 0;
    }
    return 0;
}

std::string to_dot(const cfg& graph, const func_body& body, const std::string& name)
{
    std::ostringstream out;
    out << "digraph \"" << name << "\" {\n";
    out << "  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& b : graph.blocks)
    {
        const auto first = body.instructions[b.begin].offset;
        const auto last = body.instructions[b.last()].offset;
        out << "  b" << b.id << " [label=\"B" << b.id << " [0x" << std::hex << first << "..0x"
            << last << std::dec << "]\\n" << to_string(b.term) << "\"";
        if (b.id == graph.entry)
            out << ", style=bold";
        out << "];\n";
    }
    for (const auto& e : graph.edges)
        out << "  b" << e.from << " -> b" << e.to << " [label=\"" << to_string(e.kind) << "\"];\n";
    out << "}\n";
    return out.str();
}
}  // namespace evulhunter
