// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unit/test_util.hpp"
#include <evulhunter/names.hpp>
#include <evulhunter/simulator.hpp>
#include <gtest/gtest.h>

using namespace evulhunter;

namespace
{
instruction op(opcode o, uint64_t value = 0, uint32_t index = 0)
{
    instruction i;
    i.op = o;
    i.value = value;
    i.index = index;
    return i;
}

/// A module whose only function is apply(i64, i64, i64) running `code`.
wasm_module synthetic_apply(std::vector<instruction> code)
{
    wasm_module m;
    m.types.push_back({{valtype::i64, valtype::i64, valtype::i64}, {}});
    m.functions.push_back(0);
    m.exports["apply"] = {external_kind::function, 0};
    code.push_back(op(opcode::end));
    for (uint32_t i = 0; i < code.size(); ++i)
        code[i].offset = 100 + i;
    func_body body;
    body.instructions = std::move(code);
    m.bodies.push_back(std::move(body));
    return m;
}

block_outcome run_entry_block(const wasm_module& m)
{
    const simulator sim{m, 0};
    return sim.simulate_block(seed_apply_state(m), sim.graph().blocks[0]);
}

int net_arity(const wasm_module& m, const instruction& instr)
{
    if (instr.op == opcode::call)
    {
        const auto& t = m.function_type(instr.index);
        return static_cast<int>(t.results.size()) - static_cast<int>(t.params.size());
    }
    if (instr.op == opcode::call_indirect)
    {
        const auto& t = m.types[instr.index];
        return static_cast<int>(t.results.size()) - static_cast<int>(t.params.size()) - 1;
    }
    const auto& meta = info(instr.op);
    return meta.pushes - meta.pops;
}

bool is_structural(opcode o)
{
    switch (o)
    {
    case opcode::block:
    case opcode::loop:
    case opcode::if_:
    case opcode::else_:
    case opcode::end:
    case opcode::br:
    case opcode::br_if:
    case opcode::br_table:
    case opcode::return_:
    case opcode::unreachable:
        return true;
    default:
        return false;
    }
}
}  // namespace

TEST(simulator, seeds_apply_parameters)
{
    const auto m = test::corpus_module("misc/apply_min.wasm");
    const auto s = seed_apply_state(m);
    ASSERT_EQ(s.locals.size(), 3u);
    EXPECT_TRUE(s.locals[0].is(sym_tag::receiver));
    EXPECT_TRUE(s.locals[1].is(sym_tag::code));
    EXPECT_TRUE(s.locals[2].is(sym_tag::action));
    EXPECT_TRUE(s.stack.empty());
}

TEST(simulator, bad_apply_signature)
{
    EXPECT_THROW(seed_apply_state(test::test_module("no_apply")), bad_apply_signature);
    EXPECT_THROW(seed_apply_state(test::test_module("apply_two_params")), bad_apply_signature);
}

TEST(simulator, declared_locals_start_unknown)
{
    const auto m = test::corpus_module("misc/diamond.wasm");
    const auto s = seed_apply_state(m);
    ASSERT_EQ(s.locals.size(), 4u);
    EXPECT_TRUE(s.locals[3].is(sym_tag::unknown));
    EXPECT_EQ(s.locals[3].width, valtype::i32);
}

TEST(simulator, local_get_pushes_tag)
{
    const auto m = synthetic_apply({op(opcode::local_get, 0, 1), op(opcode::drop)});
    const simulator sim{m, 0};
    basic_block first{0, 0, 1, terminator::fallthrough};
    const auto out = sim.simulate_block(seed_apply_state(m), first);
    ASSERT_EQ(out.state.stack.size(), 1u);
    EXPECT_TRUE(out.state.stack.back().is(sym_tag::code));
}

TEST(simulator, recognizes_code_comparison)
{
    const auto token = names::eosio_token.value;
    const auto m = synthetic_apply(
        {op(opcode::local_get, 0, 1), op(opcode::i64_const, token), op(opcode::i64_eq), op(opcode::drop)});
    const auto out = run_entry_block(m);
    ASSERT_EQ(out.comparisons.size(), 1u);
    const auto& c = out.comparisons[0];
    EXPECT_TRUE(c.pairs(sym_tag::code, sym_tag::constant));
    EXPECT_EQ(c.other(sym_tag::code).payload, token);
    EXPECT_EQ(c.rel, relation::eq);
    EXPECT_EQ(c.site.offset, 102u);
    EXPECT_EQ(c, make_comparison(sym_value::of(sym_tag::code), sym_value::constant(token, valtype::i64),
                     relation::eq, {}));
}

TEST(simulator, folds_constants)
{
    const auto m = synthetic_apply({op(opcode::i64_const, 5), op(opcode::i64_const, 7), op(opcode::i64_add),
        op(opcode::local_set, 0, 0)});
    const simulator sim{m, 0};
    const auto out = sim.simulate_block(seed_apply_state(m), basic_block{0, 0, 3, terminator::fallthrough});
    ASSERT_EQ(out.state.stack.size(), 1u);
    EXPECT_TRUE(out.state.stack.back().is_const());
    EXPECT_EQ(out.state.stack.back().payload, 12u);
}

TEST(simulator, local_set_and_tee_move_tags)
{
    // local.get 1; local.tee 0; local.set 2: every parameter now holds Code.
    const auto m = synthetic_apply(
        {op(opcode::local_get, 0, 1), op(opcode::local_tee, 0, 0), op(opcode::local_set, 0, 2)});
    const auto out = run_entry_block(m);
    for (const auto& l : out.state.locals)
        EXPECT_TRUE(l.is(sym_tag::code));
}

TEST(simulator, unknown_arithmetic_stays_unknown)
{
    const auto m = synthetic_apply({op(opcode::local_get, 0, 1), op(opcode::i64_const, 1), op(opcode::i64_add),
        op(opcode::local_set, 0, 0)});
    const auto out = run_entry_block(m);
    EXPECT_TRUE(out.state.locals[0].is(sym_tag::unknown));
}

TEST(simulator, canonical_comparisons)
{
    const auto code = sym_value::of(sym_tag::code);
    const auto recv = sym_value::of(sym_tag::receiver);
    const auto k = sym_value::constant(42, valtype::i64);
    for (const auto rel : {relation::eq, relation::ne})
    {
        EXPECT_EQ(make_comparison(code, k, rel, {}), make_comparison(k, code, rel, {}));
        EXPECT_EQ(make_comparison(code, recv, rel, {}), make_comparison(recv, code, rel, {}));
        const auto c = make_comparison(k, code, rel, {});
        EXPECT_TRUE(c.lhs.is(sym_tag::code));
    }
    EXPECT_FALSE(make_comparison(code, k, relation::eq, {}) == make_comparison(code, k, relation::ne, {}));
}

TEST(simulator, read_action_data_tags_from_and_to)
{
    const auto m = test::test_module("action_data");
    const auto read = *find_export(m, "read");
    const simulator sim{m, read};
    ASSERT_EQ(sim.graph().blocks.size(), 1u);
    const auto out = sim.simulate_block(seed_function_state(m, read), sim.graph().blocks[0]);
    ASSERT_EQ(out.comparisons.size(), 1u);
    EXPECT_TRUE(out.comparisons[0].pairs(sym_tag::to, sym_tag::from));
    ASSERT_FALSE(out.state.stack.empty());
    EXPECT_TRUE(out.state.stack.back().is(sym_tag::unknown));
}

TEST(simulator, tag_action_data_direct)
{
    const auto m = test::test_module("action_data");
    auto state = seed_function_state(m, *find_export(m, "read"));
    call_event call;
    call.kind = call_kind::host;
    call.callee = *import_index_of(m, "read_action_data");
    call.args = {sym_value::pointer(1, -16), sym_value::constant(16, valtype::i32)};
    const auto tagged = tag_action_data(m, state, call);
    EXPECT_TRUE(tagged.mem_cells.at({1, -16}).is(sym_tag::from));
    EXPECT_TRUE(tagged.mem_cells.at({1, -8}).is(sym_tag::to));

    call.callee = 99;
    call.kind = call_kind::direct;
    EXPECT_TRUE(tag_action_data(m, state, call).mem_cells.empty());
}

TEST(simulator, resolves_constant_table_index)
{
    const auto m = test::test_module("indirect_slot3");
    const auto apply = *find_export(m, "apply");
    const auto res = resolve_indirect_targets(m, build_cfg(m.body(apply)));
    ASSERT_EQ(res.targets.size(), 1u);
    EXPECT_EQ(res.targets.begin()->second, 9u);
    EXPECT_EQ(res.targets.begin()->first.function, apply);
}

TEST(simulator, unknown_table_index_is_unresolved)
{
    const auto m = test::test_module("indirect_unknown");
    const auto res = resolve_indirect_targets(m, build_cfg(m.body(0)));
    ASSERT_EQ(res.targets.size(), 1u);
    EXPECT_FALSE(res.targets.begin()->second);
}

TEST(simulator, missing_table_slot)
{
    const auto m = test::test_module("indirect_missing");
    const auto res = resolve_indirect_targets(m, build_cfg(m.body(0)));
    ASSERT_EQ(res.targets.size(), 1u);
    EXPECT_FALSE(res.targets.begin()->second);
    ASSERT_FALSE(res.diagnostics.empty());
    EXPECT_NE(res.diagnostics[0].find("TableSlotMissing"), std::string::npos);
}

TEST(simulator, resolves_through_execute_action)
{
    const auto m = test::corpus_module("fake-transfer/P1-A/exec_safe.wasm");
    const auto apply = *find_export(m, "apply");
    const auto res = resolve_indirect_targets(m, build_cfg(m.body(apply)));
    ASSERT_EQ(res.targets.size(), 1u);
    EXPECT_EQ(res.targets.begin()->second, 8u);
}

TEST(simulator, resolved_targets_are_table_elements)
{
    for (const auto& path : test::wasm_files(test::corpus_dir))
    {
        const auto m = test::load(path);
        const auto apply = find_export(m, "apply");
        if (!apply)
            continue;
        const auto res = resolve_indirect_targets(m, build_cfg(m.body(*apply)));
        for (const auto& [site, target] : res.targets)
        {
            if (!target)
                continue;
            bool listed = false;
            for (const auto& [slot, f] : m.table_elements)
                listed = listed || f == *target;
            EXPECT_TRUE(listed) << path;
        }
    }
}

TEST(simulator, path_budget)
{
    const auto m = test::test_module("path_budget");
    const simulator sim{m, *find_export(m, "apply")};
    std::size_t visits = 0;
    const auto walk = sim.walk_paths(seed_apply_state(m), [&](uint32_t, const block_outcome&) { ++visits; });
    EXPECT_TRUE(walk.budget_exceeded);
    EXPECT_EQ(walk.paths, default_path_budget);

    const auto small = test::corpus_module("misc/diamond.wasm");
    const simulator diamond{small, 0};
    const auto w = diamond.walk_paths(seed_apply_state(small), [](uint32_t, const block_outcome&) {});
    EXPECT_FALSE(w.budget_exceeded);
    EXPECT_EQ(w.paths, 2u);
}

TEST(simulator, arity_is_conserved)
{
    for (const auto& path : test::wasm_files(test::corpus_dir))
    {
        const auto m = test::load(path);
        for (uint32_t f = m.imported_function_count(); f < m.function_count(); ++f)
        {
            const simulator sim{m, f};
            const auto& code = m.body(f).instructions;
            for (uint32_t p = 0; p < code.size(); ++p)
            {
                if (is_structural(code[p].op))
                    continue;
                auto state = seed_function_state(m, f);
                state.stack.assign(8, sym_value::unknown(valtype::i32));
                const auto out = sim.simulate_block(state, basic_block{0, p, p + 1, terminator::fallthrough});
                ASSERT_FALSE(out.aborted);
                ASSERT_EQ(static_cast<int>(out.state.stack.size()) - 8, net_arity(m, code[p]))
                    << path << " func " << f << " " << mnemonic(code[p].op);
            }
        }
    }
}

TEST(simulator, stack_underflow_aborts_path)
{
    const auto m = synthetic_apply({op(opcode::i64_add), op(opcode::drop)});
    const auto out = run_entry_block(m);
    EXPECT_TRUE(out.aborted);
    ASSERT_FALSE(out.diagnostics.empty());
    EXPECT_NE(out.diagnostics[0].find("StackUnderflow"), std::string::npos);
}
