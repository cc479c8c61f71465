// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/detectors.hpp"
#include "evulhunter/cfg.hpp"
#include "evulhunter/simulator.hpp"
#include <algorithm>
#include <array>

namespace evulhunter
{
namespace
{
// Memory base standing for the contract object a member-function handler
// receives as its first parameter; its first field is _self.
constexpr uint32_t this_base = UINT32_MAX - 1;

std::string hex(uint32_t v)
{
    constexpr char digits[] = "0123456789abcdef";
    std::string out;
    do
    {
        out.insert(out.begin(), digits[v & 0xf]);
        v >>= 4;
    } while (v != 0);
    return "0x" + out;
}

std::string describe_const(const sym_value& v)
{
    if (v.is_const() && v.width == valtype::i64)
        return '"' + decode_name(account_name{v.payload}) + '"';
    return v.to_string();
}

/// Truth of lhs == rhs for apply's code parameter when the incoming action
/// was authorized neither by a whitelisted token account nor by the receiver.
std::optional<bool> code_equality_under_forged_auth(const comparison& cmp, const whitelist& wl)
{
    if (cmp.pairs(sym_tag::code, sym_tag::constant))
    {
        if (wl.contains(account_name{cmp.other(sym_tag::code).payload}))
            return false;
        return std::nullopt;
    }
    if (cmp.pairs(sym_tag::code, sym_tag::receiver) || cmp.pairs(sym_tag::code, sym_tag::self_account))
        return false;
    return std::nullopt;
}

std::optional<bool> guard_value(const guard_event& g, const whitelist& wl)
{
    const auto eq = code_equality_under_forged_auth(g.cmp, wl);
    if (!eq)
        return std::nullopt;
    const bool rel_holds = g.cmp.rel == relation::eq ? *eq : !*eq;
    return rel_holds != g.negated;
}

std::string describe_guard(const guard_event& g)
{
    std::string out = "guard ";
    out += g.cmp.lhs.is_const() ? describe_const(g.cmp.lhs) : std::string{to_string(g.cmp.lhs.tag)};
    out += g.cmp.rel == relation::eq ? " == " : " != ";
    out += g.cmp.rhs.is_const() ? describe_const(g.cmp.rhs) : std::string{to_string(g.cmp.rhs.tag)};
    out += " (";
    out += to_string(*g.cmp.pattern);
    out += ')';
    return out;
}

/// Merges one path's observation into a value that must agree on all paths.
struct consistent_value
{
    bool seen = false;
    bool mixed = false;
    std::optional<bool> value;
    std::optional<guard_event> guard;

    void merge(std::optional<bool> v, const guard_event* g)
    {
        if (!seen)
        {
            seen = true;
            value = v;
            if (g)
                guard = *g;
            return;
        }
        if (value != v)
            mixed = true;
    }

    std::optional<bool> agreed() const { return seen && !mixed ? value : std::nullopt; }
};

std::optional<account_name> action_on_path(const std::vector<path_constraint>& constraints, std::size_t n)
{
    for (auto i = std::min(n, constraints.size()); i-- > 0;)
    {
        const auto& c = constraints[i];
        if (c.equal && c.cmp.pairs(sym_tag::action, sym_tag::constant))
            return account_name{c.cmp.other(sym_tag::action).payload};
    }
    return std::nullopt;
}

sim_state seed_handler_state(const wasm_module& m, uint32_t func)
{
    const auto& type = m.function_type(func);
    std::vector<sym_value> args;
    auto state = seed_function_state(m, func);
    if (!type.params.empty())
    {
        if (type.params[0] == valtype::i64)
        {
            state.locals[0] = sym_value::of(sym_tag::self_account);
        }
        else if (type.params[0] == valtype::i32)
        {
            state.locals[0] = sym_value::pointer(this_base, 0);
            state.mem_cells[{this_base, 0}] = sym_value::of(sym_tag::self_account);
        }
    }
    return state;
}

bool is_to_self_test(const comparison& cmp) noexcept
{
    return cmp.pairs(sym_tag::to, sym_tag::self_account) || cmp.pairs(sym_tag::to, sym_tag::receiver);
}

struct notice_search
{
    std::vector<evidence> sites;
    bool budget_exceeded = false;
};

notice_search search_to_self(
    const wasm_module& m, uint32_t func, const sim_state& seed, uint32_t depth, const std::vector<bool>& dev)
{
    notice_search result;
    const simulator sim{m, func};
    std::vector<std::pair<uint32_t, std::vector<sym_value>>> callees;
    const auto walk = sim.walk_paths(seed, [&](uint32_t, const block_outcome& out) {
        for (const auto& g : out.guards)
        {
            if (!is_to_self_test(g.cmp))
                continue;
            evidence e{func, g.cmp.site.offset, describe_guard(g)};
            if (std::find(result.sites.begin(), result.sites.end(), e) == result.sites.end())
                result.sites.push_back(std::move(e));
        }
        if (depth == 0)
        {
            for (const auto& c : out.calls)
            {
                if (c.kind == call_kind::direct && c.callee != func && dev[c.callee])
                    callees.emplace_back(c.callee, c.args);
            }
        }
    });
    result.budget_exceeded = walk.budget_exceeded;
    if (!result.sites.empty() || depth > 0)
        return result;

    for (const auto& [callee, args] : callees)
    {
        const auto sub = search_to_self(m, callee, seed_function_state(m, callee, args), depth + 1, dev);
        result.sites.insert(result.sites.end(), sub.sites.begin(), sub.sites.end());
        result.budget_exceeded = result.budget_exceeded || sub.budget_exceeded;
        if (!result.sites.empty())
            break;
    }
    return result;
}
}  // namespace

std::string_view to_string(detector_kind d) noexcept
{
    return d == detector_kind::fake_eos_transfer ? "fake-transfer" : "fake-notice";
}

std::string_view to_string(verdict v) noexcept
{
    switch (v)
    {
    case verdict::vulnerable:
        return "Vulnerable";
    case verdict::safe:
        return "Safe";
    case verdict::inconclusive:
        return "Inconclusive";
    }
    return "?";
}

std::optional<detector_kind> parse_detector(std::string_view s) noexcept
{
    if (s == "fake-transfer")
        return detector_kind::fake_eos_transfer;
    if (s == "fake-notice")
        return detector_kind::fake_transfer_notice;
    return std::nullopt;
}

std::optional<verdict> parse_verdict(std::string_view s) noexcept
{
    if (s == "Vulnerable" || s == "vulnerable")
        return verdict::vulnerable;
    if (s == "Safe" || s == "safe")
        return verdict::safe;
    if (s == "Inconclusive" || s == "inconclusive")
        return verdict::inconclusive;
    return std::nullopt;
}

bool is_runtime_host_function(std::string_view field) noexcept
{
    static constexpr std::array<std::string_view, 22> runtime{
        "memcpy", "memmove", "memset", "memcmp", "abort", "eosio_assert",
        "eosio_assert_message", "eosio_assert_code", "eosio_exit", "prints", "prints_l",
        "printi", "printui", "printi128", "printui128", "printsf", "printdf", "printqf",
        "printn", "printhex", "current_time", "__cxa_pure_virtual"};
    return std::find(runtime.begin(), runtime.end(), field) != runtime.end();
}

std::vector<bool> developer_functions(const wasm_module& m)
{
    const auto n = m.function_count();
    const auto first = m.imported_function_count();
    std::vector<bool> dev(n, false);
    std::vector<std::vector<uint32_t>> callers(n);

    for (uint32_t f = first; f < n; ++f)
    {
        for (const auto& instr : m.body(f).instructions)
        {
            if (instr.op == opcode::call_indirect)
            {
                dev[f] = true;
            }
            else if (instr.op == opcode::call)
            {
                if (m.is_imported_function(instr.index))
                {
                    if (!is_runtime_host_function(m.function_import(instr.index).field))
                        dev[f] = true;
                }
                else
                {
                    callers[instr.index].push_back(f);
                }
            }
        }
    }

    std::vector<uint32_t> work;
    for (uint32_t f = first; f < n; ++f)
    {
        if (dev[f])
            work.push_back(f);
    }
    while (!work.empty())
    {
        const auto g = work.back();
        work.pop_back();
        for (const auto caller : callers[g])
        {
            if (!dev[caller])
            {
                dev[caller] = true;
                work.push_back(caller);
            }
        }
    }
    return dev;
}

handler_map locate_handlers(const wasm_module& m)
{
    const auto apply = apply_function(m);
    const auto dev = developer_functions(m);
    auto graph = build_cfg(m.body(apply));
    const auto resolution = resolve_indirect_targets(m, graph);
    const simulator sim{m, apply, std::move(graph)};

    handler_map map;
    std::set<code_site> unresolved;
    const auto walk = sim.walk_paths(seed_apply_state(m), [&](uint32_t, const block_outcome& out) {
        for (const auto& call : out.calls)
        {
            std::optional<uint32_t> target;
            bool dispatches = false;
            if (const auto it = resolution.targets.find(call.site); it != resolution.targets.end())
            {
                dispatches = true;
                target = it->second;
            }
            else if (call.kind == call_kind::indirect)
            {
                dispatches = true;
            }
            else if (call.kind == call_kind::direct && call.callee != apply && dev[call.callee])
            {
                dispatches = true;
                target = call.callee;
            }
            if (!dispatches)
                continue;
            if (!target)
            {
                unresolved.insert(call.site);
                continue;
            }
            if (const auto action = action_on_path(out.state.path_constraints, call.constraints_in_force))
                map.entries[*action].insert(*target);
        }
    });

    map.unresolved_sites = unresolved.size();
    map.degraded = walk.budget_exceeded || resolution.budget_exceeded;
    for (const auto& [action, targets] : map.entries)
    {
        if (targets.size() > 1)
            map.degraded = true;
    }
    return map;
}

finding detect_fake_eos_transfer(const wasm_module& m, const whitelist& wl)
{
    finding f;
    f.detector = detector_kind::fake_eos_transfer;

    uint32_t apply = 0;
    try
    {
        apply = apply_function(m);
    }
    catch (const bad_apply_signature& e)
    {
        f.result = verdict::inconclusive;
        f.reason = std::string{"BadApplySignature: "} + e.what();
        return f;
    }

    const auto& body = m.body(apply);
    const auto entry_offset = body.instructions.front().offset;
    auto graph = build_cfg(body);
    const auto resolution = resolve_indirect_targets(m, graph);
    const auto dev = developer_functions(m);
    const simulator sim{m, apply, graph};

    std::vector<consistent_value> branches(graph.blocks.size());
    std::map<std::pair<uint32_t, uint32_t>, consistent_value> asserts;

    const auto walk = sim.walk_paths(seed_apply_state(m), [&](uint32_t b, const block_outcome& out) {
        const auto& block = graph.blocks[b];
        if (block.term == terminator::br_if || block.term == terminator::if_split)
        {
            const guard_event* guard = nullptr;
            for (const auto& g : out.guards)
            {
                if (g.kind == guard_kind::branch && g.position == block.last())
                    guard = &g;
            }
            branches[b].merge(guard && !out.aborted ? guard_value(*guard, wl) : std::nullopt, guard);
        }
        for (const auto& g : out.guards)
        {
            if (g.kind == guard_kind::assertion)
                asserts[{b, g.position}].merge(guard_value(g, wl), &g);
        }
    });

    if (walk.budget_exceeded || resolution.budget_exceeded)
    {
        f.result = verdict::vulnerable;
        f.degraded = true;
        f.evidence.push_back({apply, entry_offset,
            "PathBudgetExceeded: more than " + std::to_string(default_path_budget) +
                " paths through apply; code checks cannot be proven"});
        return f;
    }

    edge_set forbidden;
    std::vector<uint32_t> cutoff(graph.blocks.size(), UINT32_MAX);
    std::vector<evidence> guard_evidence;

    for (uint32_t b = 0; b < graph.blocks.size(); ++b)
    {
        const auto value = branches[b].agreed();
        if (!value)
            continue;
        for (const auto e : graph.successors[b])
        {
            if ((graph.edges[e].kind == edge_kind::taken) != *value)
                forbidden.insert(e);
        }
        const auto& g = *branches[b].guard;
        guard_evidence.push_back({apply, g.cmp.site.offset, describe_guard(g)});
    }
    for (const auto& [key, obs] : asserts)
    {
        const auto value = obs.agreed();
        if (!value || *value)
            continue;
        const auto [b, position] = key;
        cutoff[b] = std::min(cutoff[b], position);
        for (const auto e : graph.successors[b])
            forbidden.insert(e);
        guard_evidence.push_back({apply, obs.guard->cmp.site.offset, describe_guard(*obs.guard)});
    }

    const auto reachable = reachable_blocks(graph, graph.entry, forbidden);
    bool only_unresolved = true;
    for (const auto b : reachable)
    {
        const auto& block = graph.blocks[b];
        const auto stop = std::min(block.end, cutoff[b]);
        for (uint32_t p = block.begin; p < stop; ++p)
        {
            const auto& instr = body.instructions[p];
            if (instr.op != opcode::call && instr.op != opcode::call_indirect)
                continue;
            const code_site site{apply, instr.offset};
            const auto res = resolution.targets.find(site);
            std::string message;
            bool unresolved = false;
            if (res != resolution.targets.end())
            {
                unresolved = !res->second;
                message = unresolved ? "unresolved indirect dispatch" :
                                       "dispatch to handler function " + std::to_string(*res->second);
            }
            else if (instr.op == opcode::call_indirect)
            {
                unresolved = true;
                message = "unresolved call_indirect";
            }
            else if (!m.is_imported_function(instr.index) && instr.index != apply && dev[instr.index])
            {
                message = "call to developer function " + std::to_string(instr.index);
            }
            else
            {
                continue;
            }
            only_unresolved = only_unresolved && unresolved;
            f.evidence.push_back({apply, instr.offset,
                message + " reachable when code is neither a whitelisted token account nor the receiver"});
        }
    }

    if (!f.evidence.empty())
    {
        f.result = verdict::vulnerable;
        f.degraded = only_unresolved;
        return f;
    }
    f.result = verdict::safe;
    f.evidence = std::move(guard_evidence);
    if (f.evidence.empty())
        f.evidence.push_back({apply, entry_offset, "no developer function call is reachable from apply"});
    return f;
}

finding detect_fake_notice(const wasm_module& m)
{
    finding f;
    f.detector = detector_kind::fake_transfer_notice;

    handler_map handlers;
    try
    {
        handlers = locate_handlers(m);
    }
    catch (const bad_apply_signature& e)
    {
        f.result = verdict::inconclusive;
        f.reason = std::string{"BadApplySignature: "} + e.what();
        return f;
    }

    const auto targets = handlers.lookup(names::transfer);
    if (targets.empty())
    {
        f.result = verdict::inconclusive;
        f.reason = "NoTransferHandler";
        f.degraded = handlers.unresolved_sites > 0;
        return f;
    }

    const auto dev = developer_functions(m);
    std::vector<evidence> missing;
    bool degraded = false;
    for (const auto h : targets)
    {
        const auto search = search_to_self(m, h, seed_handler_state(m, h), 0, dev);
        if (search.sites.empty())
        {
            degraded = degraded || search.budget_exceeded;
            missing.push_back({h, m.body(h).instructions.front().offset,
                "transfer handler function " + std::to_string(h) + " at " +
                    hex(m.body(h).offset) + " never compares to with _self"});
        }
        else
        {
            f.evidence.insert(f.evidence.end(), search.sites.begin(), search.sites.end());
        }
    }

    if (!missing.empty())
    {
        f.result = verdict::vulnerable;
        f.evidence = std::move(missing);
        f.degraded = degraded;
        return f;
    }
    f.result = verdict::safe;
    return f;
}
}  // namespace evulhunter
