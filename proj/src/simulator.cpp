// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/simulator.hpp"
#include "evulhunter/fold.hpp"
#include <algorithm>
#include <cstring>
#include <set>

namespace evulhunter
{
namespace
{
struct stack_underflow
{};

sym_value pop(sim_state& s)
{
    if (s.stack.empty())
        throw stack_underflow{};
    auto v = std::move(s.stack.back());
    s.stack.pop_back();
    return v;
}

valtype result_type(opcode op) noexcept
{
    const auto m = mnemonic(op);
    if (m.starts_with("i64"))
        return valtype::i64;
    if (m.starts_with("f32"))
        return valtype::f32;
    if (m.starts_with("f64"))
        return valtype::f64;
    return valtype::i32;
}

bool is_comparison_op(opcode op) noexcept
{
    return (op >= opcode::i32_eqz && op <= opcode::f64_ge);
}

sym_value flag_of(comparison cmp, bool negated = false)
{
    auto v = sym_value::of(sym_tag::flag, valtype::i32);
    v.cmp = std::make_shared<const comparison>(std::move(cmp));
    v.negated = negated;
    return v;
}

sym_value negate(sym_value flag)
{
    flag.negated = !flag.negated;
    return flag;
}

bool is_name_operand(const sym_value& v) noexcept
{
    return is_semantic(v.tag) || v.is_const();
}

std::optional<sim_state::cell_key> address_of(const sym_value& addr, uint32_t mem_offset)
{
    if (addr.is_const())
        return sim_state::cell_key{absolute_base, static_cast<int64_t>(addr.payload & 0xffffffffu) + mem_offset};
    if (addr.is(sym_tag::mem_ref))
        return sim_state::cell_key{addr.base, addr.offset() + mem_offset};
    return std::nullopt;
}

unsigned access_width(opcode op) noexcept
{
    switch (op)
    {
    case opcode::i32_load8_s:
    case opcode::i32_load8_u:
    case opcode::i64_load8_s:
    case opcode::i64_load8_u:
    case opcode::i32_store8:
    case opcode::i64_store8:
        return 1;
    case opcode::i32_load16_s:
    case opcode::i32_load16_u:
    case opcode::i64_load16_s:
    case opcode::i64_load16_u:
    case opcode::i32_store16:
    case opcode::i64_store16:
        return 2;
    case opcode::i32_load:
    case opcode::f32_load:
    case opcode::i64_load32_s:
    case opcode::i64_load32_u:
    case opcode::i32_store:
    case opcode::f32_store:
    case opcode::i64_store32:
        return 4;
    default:
        return 8;
    }
}

bool is_full_width(opcode op) noexcept
{
    switch (op)
    {
    case opcode::i32_load:
    case opcode::i64_load:
    case opcode::f32_load:
    case opcode::f64_load:
    case opcode::i32_store:
    case opcode::i64_store:
    case opcode::f32_store:
    case opcode::f64_store:
        return true;
    default:
        return false;
    }
}

/// Concrete little-endian read from the data segments.
std::optional<uint64_t> read_data(const wasm_module& m, int64_t addr, unsigned width, bool sign)
{
    if (addr < 0)
        return std::nullopt;
    for (const auto& seg : m.data_segments)
    {
        const auto start = static_cast<int64_t>(seg.offset);
        if (addr < start || addr + width > start + static_cast<int64_t>(seg.bytes.size()))
            continue;
        uint64_t v = 0;
        for (unsigned i = 0; i < width; ++i)
            v |= static_cast<uint64_t>(seg.bytes[static_cast<std::size_t>(addr - start) + i]) << (8 * i);
        if (sign && width < 8 && (v >> (8 * width - 1)) & 1)
            v |= ~uint64_t{0} << (8 * width);
        return v;
    }
    return std::nullopt;
}

void store_cell(sim_state& s, sim_state::cell_key key, unsigned width, sym_value v)
{
    // Clear any cell overlapping the written bytes.
    auto it = s.mem_cells.lower_bound({key.first, key.second - 7});
    while (it != s.mem_cells.end() && it->first.first == key.first &&
           it->first.second < key.second + static_cast<int64_t>(width))
        it = s.mem_cells.erase(it);
    s.mem_cells[key] = std::move(v);
}

class block_executor
{
public:
    block_executor(const wasm_module& m, uint32_t func, const func_body& body, block_outcome& out)
      : m_{m}, func_{func}, body_{body}, out_{out}, s_{out.state}
    {}

    void run(const basic_block& block)
    {
        s_.pending_condition.reset();
        for (uint32_t p = block.begin; p < block.end; ++p)
            step(p, body_.instructions[p], p + 1 == body_.instructions.size());
    }

private:
    code_site site(const instruction& instr) const { return {func_, instr.offset}; }

    void push(sym_value v) { s_.stack.push_back(std::move(v)); }

    void record_guard(const sym_value& cond, guard_kind kind, uint32_t position)
    {
        if (!cond.is(sym_tag::flag) || !cond.cmp)
            return;
        auto cmp = *cond.cmp;
        if (kind == guard_kind::assertion)
            cmp.pattern = cmp_pattern::assert_call;
        else
            cmp.pattern = cmp.rel == relation::eq ? cmp_pattern::eq_branch : cmp_pattern::ne_branch;
        out_.guards.push_back({std::move(cmp), cond.negated, kind, position});
    }

    sym_value new_comparison(sym_value a, sym_value b, relation rel, const instruction& instr)
    {
        auto cmp = make_comparison(std::move(a), std::move(b), rel, site(instr));
        out_.comparisons.push_back(cmp);
        return flag_of(std::move(cmp));
    }

    void end_frame(bool function_end)
    {
        if (function_end || s_.control.size() <= 1)
        {
            if (!s_.control.empty() && function_end)
                s_.control.pop_back();
            return;
        }
        const auto frame = s_.control.back();
        s_.control.pop_back();
        std::vector<sym_value> kept;
        for (uint32_t i = 0; i < frame.arity; ++i)
            kept.push_back(s_.stack.empty() ? sym_value::unknown(valtype::i64) : pop(s_));
        s_.stack.resize(std::min<std::size_t>(s_.stack.size(), frame.height),
            sym_value::unknown(valtype::i64));
        while (s_.stack.size() < frame.height)
            s_.stack.push_back(sym_value::unknown(valtype::i64));
        for (auto it = kept.rbegin(); it != kept.rend(); ++it)
            push(std::move(*it));
    }

    void call(const instruction& instr, uint32_t position)
    {
        const bool indirect = instr.op == opcode::call_indirect;
        const auto& type = indirect ? m_.types[instr.index] : m_.function_type(instr.index);

        call_event ev;
        ev.site = site(instr);
        ev.position = position;
        ev.callee = instr.index;
        ev.kind = indirect ? call_kind::indirect :
                  m_.is_imported_function(instr.index) ? call_kind::host :
                                                         call_kind::direct;
        if (indirect)
            ev.table_index = pop(s_);
        ev.args.resize(type.params.size());
        for (auto i = type.params.size(); i-- > 0;)
            ev.args[i] = pop(s_);
        for (const auto r : type.results)
            push(sym_value::unknown(r));

        if (ev.kind == call_kind::host)
        {
            const auto& field = m_.function_import(instr.index).field;
            if (field == "read_action_data")
            {
                s_ = tag_action_data(m_, std::move(s_), ev);
            }
            else if (field.starts_with("eosio_assert") && !ev.args.empty())
            {
                const auto& cond = ev.args[0];
                record_guard(cond, guard_kind::assertion, position);
                if (cond.is(sym_tag::flag) && cond.cmp)
                {
                    // Execution continues only if the condition held.
                    const bool rel_holds = !cond.negated;
                    s_.path_constraints.push_back(
                        {*cond.cmp, cond.cmp->rel == relation::eq ? rel_holds : !rel_holds});
                }
            }
        }
        ev.constraints_in_force = s_.path_constraints.size();
        out_.calls.push_back(std::move(ev));
    }

    void load(const instruction& instr)
    {
        const auto addr = pop(s_);
        const auto width = result_type(instr.op);
        const auto key = address_of(addr, instr.mem_offset);
        if (!key)
        {
            push(sym_value::unknown(width));
            return;
        }
        if (const auto it = s_.mem_cells.find(*key); it != s_.mem_cells.end())
        {
            if (is_full_width(instr.op) && it->second.width == width)
            {
                push(it->second);
                return;
            }
            push(sym_value::unknown(width));
            return;
        }
        if (key->first == absolute_base && width != valtype::f32 && width != valtype::f64)
        {
            const auto m = mnemonic(instr.op);
            const bool sign = m.ends_with("_s");
            if (const auto v = read_data(m_, key->second, access_width(instr.op), sign))
            {
                push(sym_value::constant(*v, width));
                return;
            }
        }
        push(sym_value::unknown(width));
    }

    void store(const instruction& instr)
    {
        auto value = pop(s_);
        const auto addr = pop(s_);
        const auto key = address_of(addr, instr.mem_offset);
        if (!key)
            return;
        if (!is_full_width(instr.op))
            value = sym_value::unknown(value.width);
        store_cell(s_, *key, access_width(instr.op), std::move(value));
    }

    void global_get(const instruction& instr)
    {
        if (const auto it = s_.globals.find(instr.index); it != s_.globals.end())
        {
            push(it->second);
            return;
        }
        if (instr.index < m_.imported_global_count)
        {
            push(sym_value::unknown(valtype::i32));
            return;
        }
        const auto& g = m_.globals[instr.index - m_.imported_global_count];
        if (!g.is_mutable && g.init)
            push(sym_value::constant(*g.init, g.type));
        else if (g.type == valtype::i32)
            push(sym_value::pointer(instr.index + 1, 0));
        else
            push(sym_value::unknown(g.type));
    }

    void equality(const instruction& instr, relation rel)
    {
        auto b = pop(s_);
        auto a = pop(s_);
        if (a.is_const() && b.is_const())
        {
            push(sym_value::constant(*fold_binary(instr.op, a.payload, b.payload), valtype::i32));
            return;
        }
        // Normalize a constant operand into b.
        if (a.is_const())
            std::swap(a, b);
        if (a.is(sym_tag::flag) && b.is_const() && (b.payload == 0 || b.payload == 1))
        {
            // flag == 0 and flag != 1 negate; flag != 0 and flag == 1 keep.
            const bool keep = (rel == relation::ne) == (b.payload == 0);
            push(keep ? a : negate(a));
            return;
        }
        if (a.is(sym_tag::diff) && b.is_const() && b.payload == 0 && a.cmp)
        {
            push(new_comparison(a.cmp->lhs, a.cmp->rhs, rel, instr));
            return;
        }
        if ((is_semantic(a.tag) && is_name_operand(b)) || (is_semantic(b.tag) && is_name_operand(a)))
        {
            push(new_comparison(std::move(a), std::move(b), rel, instr));
            return;
        }
        push(sym_value::unknown(valtype::i32));
    }

    void eqz(const instruction& instr)
    {
        auto v = pop(s_);
        if (v.is_const())
            push(sym_value::constant(*fold_unary(instr.op, v.payload), valtype::i32));
        else if (v.is(sym_tag::flag))
            push(negate(std::move(v)));
        else if (v.is(sym_tag::diff) && v.cmp)
            push(new_comparison(v.cmp->lhs, v.cmp->rhs, relation::eq, instr));
        else if (is_semantic(v.tag))
            push(new_comparison(std::move(v), sym_value::constant(0, valtype::i64), relation::eq, instr));
        else
            push(sym_value::unknown(valtype::i32));
    }

    void binary(const instruction& instr)
    {
        auto b = pop(s_);
        auto a = pop(s_);
        const auto width = result_type(instr.op);
        if (a.is_const() && b.is_const())
        {
            if (const auto v = fold_binary(instr.op, a.payload, b.payload))
            {
                push(sym_value::constant(*v, width));
                return;
            }
            push(sym_value::unknown(width));
            return;
        }
        switch (instr.op)
        {
        case opcode::i32_add:
            if (a.is(sym_tag::mem_ref) && b.is_const())
                return push(sym_value::pointer(a.base, a.offset() + static_cast<int32_t>(b.payload)));
            if (b.is(sym_tag::mem_ref) && a.is_const())
                return push(sym_value::pointer(b.base, b.offset() + static_cast<int32_t>(a.payload)));
            break;
        case opcode::i32_sub:
            if (a.is(sym_tag::mem_ref) && b.is_const())
                return push(sym_value::pointer(a.base, a.offset() - static_cast<int32_t>(b.payload)));
            break;
        case opcode::i32_xor:
            if (a.is(sym_tag::flag) && b.is_const() && b.payload == 1)
                return push(negate(std::move(a)));
            if (b.is(sym_tag::flag) && a.is_const() && a.payload == 1)
                return push(negate(std::move(b)));
            break;
        case opcode::i32_and:
        case opcode::i32_or:
            // x & 1 and x | 0 preserve a boolean flag.
            if (a.is(sym_tag::flag) && b.is_const() &&
                b.payload == (instr.op == opcode::i32_and ? 1u : 0u))
                return push(std::move(a));
            break;
        case opcode::i64_sub:
        case opcode::i64_xor:
            if ((is_semantic(a.tag) && is_name_operand(b)) || (is_semantic(b.tag) && is_name_operand(a)))
            {
                auto d = sym_value::of(sym_tag::diff, valtype::i64);
                d.cmp = std::make_shared<const comparison>(
                    make_comparison(std::move(a), std::move(b), relation::eq, site(instr)));
                return push(std::move(d));
            }
            break;
        default:
            break;
        }
        push(sym_value::unknown(width));
    }

    void unary(const instruction& instr)
    {
        auto v = pop(s_);
        const auto width = result_type(instr.op);
        if (v.is_const())
        {
            if (const auto r = fold_unary(instr.op, v.payload))
                return push(sym_value::constant(*r, width));
        }
        if (v.is(sym_tag::flag) &&
            (instr.op == opcode::i64_extend_i32_u || instr.op == opcode::i64_extend_i32_s))
        {
            v.width = valtype::i64;
            return push(std::move(v));
        }
        push(sym_value::unknown(width));
    }

    void step(uint32_t position, const instruction& instr, bool last)
    {
        const auto op = instr.op;
        switch (op)
        {
        case opcode::unreachable:
        case opcode::nop:
        case opcode::return_:
        case opcode::br:
        case opcode::else_:
            return;
        case opcode::block:
        case opcode::loop:
            s_.control.push_back({op, static_cast<uint32_t>(s_.stack.size()),
                instr.block_result ? 1u : 0u});
            return;
        case opcode::if_:
        {
            auto cond = pop(s_);
            record_guard(cond, guard_kind::branch, position);
            s_.pending_condition = std::move(cond);
            s_.control.push_back({op, static_cast<uint32_t>(s_.stack.size()),
                instr.block_result ? 1u : 0u});
            return;
        }
        case opcode::end:
            end_frame(last);
            return;
        case opcode::br_if:
        {
            auto cond = pop(s_);
            record_guard(cond, guard_kind::branch, position);
            s_.pending_condition = std::move(cond);
            return;
        }
        case opcode::br_table:
            pop(s_);
            return;
        case opcode::call:
        case opcode::call_indirect:
            call(instr, position);
            return;
        case opcode::drop:
            pop(s_);
            return;
        case opcode::select:
        {
            auto c = pop(s_);
            auto b = pop(s_);
            auto a = pop(s_);
            if (c.is_const())
                push(static_cast<uint32_t>(c.payload) != 0 ? std::move(a) : std::move(b));
            else if (same_value(a, b))
                push(std::move(a));
            else
                push(sym_value::unknown(a.width));
            return;
        }
        case opcode::local_get:
            push(s_.locals.at(instr.index));
            return;
        case opcode::local_set:
            s_.locals.at(instr.index) = pop(s_);
            return;
        case opcode::local_tee:
            if (s_.stack.empty())
                throw stack_underflow{};
            s_.locals.at(instr.index) = s_.stack.back();
            return;
        case opcode::global_get:
            global_get(instr);
            return;
        case opcode::global_set:
            s_.globals[instr.index] = pop(s_);
            return;
        case opcode::memory_size:
            push(sym_value::unknown(valtype::i32));
            return;
        case opcode::memory_grow:
            pop(s_);
            push(sym_value::unknown(valtype::i32));
            return;
        case opcode::i32_const:
            push(sym_value::constant(instr.value, valtype::i32));
            return;
        case opcode::i64_const:
            push(sym_value::constant(instr.value, valtype::i64));
            return;
        case opcode::f32_const:
            push(sym_value::unknown(valtype::f32));
            return;
        case opcode::f64_const:
            push(sym_value::unknown(valtype::f64));
            return;
        case opcode::i32_eq:
        case opcode::i64_eq:
            equality(instr, relation::eq);
            return;
        case opcode::i32_ne:
        case opcode::i64_ne:
            equality(instr, relation::ne);
            return;
        case opcode::i32_eqz:
        case opcode::i64_eqz:
            eqz(instr);
            return;
        default:
            break;
        }

        const auto& meta = info(op);
        if (meta.immediates == imm_kind::memarg)
        {
            if (meta.pops == 1)
                load(instr);
            else
                store(instr);
            return;
        }
        if (meta.pops == 2 && meta.pushes == 1)
        {
            if (is_comparison_op(op))
            {
                auto b = pop(s_);
                auto a = pop(s_);
                const auto v = a.is_const() && b.is_const() ?
                                   fold_binary(op, a.payload, b.payload) :
                                   std::nullopt;
                push(v ? sym_value::constant(*v, valtype::i32) : sym_value::unknown(valtype::i32));
                return;
            }
            binary(instr);
            return;
        }
        if (meta.pops == 1 && meta.pushes == 1)
        {
            unary(instr);
            return;
        }
    }

    const wasm_module& m_;
    uint32_t func_;
    const func_body& body_;
    block_outcome& out_;
    sim_state& s_;
};

bool has_call_indirect(const wasm_module& m, uint32_t func)
{
    if (m.is_imported_function(func))
        return false;
    const auto& code = m.body(func).instructions;
    return std::any_of(code.begin(), code.end(),
        [](const instruction& i) { return i.op == opcode::call_indirect; });
}
}  // namespace

uint32_t apply_function(const wasm_module& module)
{
    const auto apply = find_export(module, "apply");
    if (!apply)
        throw bad_apply_signature{"module does not export an apply function"};
    if (module.is_imported_function(*apply))
        throw bad_apply_signature{"apply is an imported function"};
    const auto& type = module.function_type(*apply);
    const std::vector<valtype> expected(3, valtype::i64);
    if (type.params != expected)
        throw bad_apply_signature{"apply must take (i64 receiver, i64 code, i64 action), found " +
                                  std::to_string(type.params.size()) + " parameters"};
    return *apply;
}

sim_state seed_function_state(
    const wasm_module& module, uint32_t func_index, const std::vector<sym_value>& args)
{
    const auto& type = module.function_type(func_index);
    const auto& body = module.body(func_index);
    sim_state s;
    for (std::size_t i = 0; i < type.params.size(); ++i)
    {
        if (i < args.size())
            s.locals.push_back(args[i]);
        else
            s.locals.push_back(sym_value::unknown(type.params[i]));
    }
    for (const auto& d : body.locals)
        s.locals.insert(s.locals.end(), d.count, sym_value::unknown(d.type));
    s.control.push_back(
        {opcode::block, 0, static_cast<uint32_t>(type.results.size())});
    return s;
}

sim_state seed_apply_state(const wasm_module& module)
{
    const auto apply = apply_function(module);
    return seed_function_state(module, apply,
        {sym_value::of(sym_tag::receiver), sym_value::of(sym_tag::code),
            sym_value::of(sym_tag::action)});
}

sim_state tag_action_data(const wasm_module& module, sim_state state, const call_event& call)
{
    if (call.kind != call_kind::host || call.args.empty() ||
        module.function_import(call.callee).field != "read_action_data")
        return state;
    const auto dest = address_of(call.args[0], 0);
    if (!dest)
        return state;
    store_cell(state, *dest, 8, sym_value::of(sym_tag::from));
    store_cell(state, {dest->first, dest->second + 8}, 8, sym_value::of(sym_tag::to));
    return state;
}

simulator::simulator(const wasm_module& module, uint32_t func_index)
  : simulator{module, func_index, build_cfg(module.body(func_index))}
{}

simulator::simulator(const wasm_module& module, uint32_t func_index, cfg graph)
  : module_{&module},
    func_index_{func_index},
    body_{&module.body(func_index)},
    graph_{std::move(graph)}
{}

block_outcome simulator::simulate_block(sim_state state, const basic_block& block) const
{
    block_outcome out;
    out.state = std::move(state);
    block_executor exec{*module_, func_index_, *body_, out};
    try
    {
        exec.run(block);
    }
    catch (const stack_underflow&)
    {
        out.aborted = true;
        out.diagnostics.push_back("StackUnderflow in function " + std::to_string(func_index_) +
                                  " block " + std::to_string(block.id));
    }
    catch (const std::out_of_range&)
    {
        out.aborted = true;
        out.diagnostics.push_back("index out of range while simulating function " +
                                  std::to_string(func_index_));
    }
    return out;
}

sim_state simulator::follow_edge(sim_state s, uint32_t edge_id) const
{
    const auto& edge = graph_.edges.at(edge_id);
    const auto& block = graph_.blocks[edge.from];
    const auto& instr = body_->instructions[block.last()];

    auto unwind = [&s](uint32_t depth) {
        for (uint32_t i = 0; i < depth && s.control.size() > 1; ++i)
            s.control.pop_back();
        if (s.control.empty())
            return;
        const auto frame = s.control.back();
        const auto keep = frame.kind == opcode::loop ? 0u : frame.arity;
        std::vector<sym_value> kept;
        for (uint32_t i = 0; i < keep && !s.stack.empty(); ++i)
        {
            kept.push_back(std::move(s.stack.back()));
            s.stack.pop_back();
        }
        if (s.stack.size() > frame.height)
            s.stack.resize(frame.height);
        for (auto it = kept.rbegin(); it != kept.rend(); ++it)
            s.stack.push_back(std::move(*it));
    };

    auto constrain = [&s](bool taken) {
        if (!s.pending_condition)
            return;
        const auto& cond = *s.pending_condition;
        if (cond.is(sym_tag::flag) && cond.cmp)
        {
            const bool rel_holds = taken != cond.negated;
            s.path_constraints.push_back(
                {*cond.cmp, cond.cmp->rel == relation::eq ? rel_holds : !rel_holds});
        }
    };

    switch (block.term)
    {
    case terminator::br:
        if (instr.op == opcode::br)
            unwind(instr.index);
        break;
    case terminator::br_if:
        constrain(edge.kind == edge_kind::taken);
        if (edge.kind == edge_kind::taken)
            unwind(instr.index);
        break;
    case terminator::br_table:
        if (!edge.cases.empty())
            unwind(instr.targets.at(edge.cases.front()));
        break;
    case terminator::if_split:
        constrain(edge.kind == edge_kind::taken);
        break;
    default:
        break;
    }
    s.pending_condition.reset();
    return s;
}

path_walk simulator::walk_paths(
    const sim_state& initial, const block_visitor& visit, std::size_t budget) const
{
    path_walk result;
    std::vector<bool> on_path(graph_.blocks.size(), false);

    std::function<void(uint32_t, sim_state)> dfs = [&](uint32_t b, sim_state state) {
        if (result.budget_exceeded)
            return;
        on_path[b] = true;
        auto outcome = simulate_block(std::move(state), graph_.blocks[b]);
        visit(b, outcome);
        bool extended = false;
        if (!outcome.aborted)
        {
            for (const auto e : graph_.successors[b])
            {
                const auto to = graph_.edges[e].to;
                if (on_path[to])
                    continue;
                extended = true;
                dfs(to, follow_edge(outcome.state, e));
                if (result.budget_exceeded)
                    break;
            }
        }
        if (!extended && ++result.paths > budget)
            result.budget_exceeded = true;
        on_path[b] = false;
    };
    dfs(graph_.entry, initial);
    if (result.budget_exceeded)
        result.paths = budget;
    return result;
}

indirect_resolution resolve_indirect_targets(const wasm_module& module, const cfg& apply_cfg)
{
    const auto apply = apply_function(module);
    const simulator sim{module, apply, apply_cfg};
    indirect_resolution res;

    auto lookup = [&](const sym_value& index) -> std::optional<uint32_t> {
        if (!index.is_const())
            return std::nullopt;
        const auto slot = static_cast<uint32_t>(index.payload);
        const auto it = module.table_elements.find(slot);
        if (it == module.table_elements.end())
        {
            res.diagnostics.push_back("TableSlotMissing: table slot " + std::to_string(slot) +
                                      " has no element entry");
            return std::nullopt;
        }
        return it->second;
    };

    std::set<code_site> conflicted;
    auto record = [&](const code_site& site, std::optional<uint32_t> target) {
        if (conflicted.contains(site))
            return;
        auto [it, inserted] = res.targets.emplace(site, target);
        if (!inserted && it->second != target)
        {
            res.diagnostics.push_back("call site at offset " + std::to_string(site.offset) +
                                      " selects different table entries on different paths");
            it->second.reset();
            conflicted.insert(site);
        }
    };

    // Dispatcher results keyed by call site and argument rendering.
    std::map<std::pair<code_site, std::string>, std::optional<uint32_t>> dispatcher_memo;

    auto resolve_dispatch = [&](const call_event& call) -> std::optional<uint32_t> {
        std::string key;
        for (const auto& a : call.args)
            key += a.to_string() + ';';
        const auto memo_key = std::make_pair(call.site, key);
        if (const auto it = dispatcher_memo.find(memo_key); it != dispatcher_memo.end())
            return it->second;

        const simulator callee{module, call.callee};
        std::set<uint64_t> slots;
        bool unresolved = false;
        const auto walk = callee.walk_paths(seed_function_state(module, call.callee, call.args),
            [&](uint32_t, const block_outcome& out) {
                for (const auto& c : out.calls)
                {
                    if (c.kind != call_kind::indirect)
                        continue;
                    if (c.table_index && c.table_index->is_const())
                        slots.insert(c.table_index->payload & 0xffffffffu);
                    else
                        unresolved = true;
                }
            });
        std::optional<uint32_t> target;
        if (walk.budget_exceeded)
            res.diagnostics.push_back("PathBudgetExceeded in dispatcher function " +
                                      std::to_string(call.callee));
        else if (!unresolved && slots.size() == 1)
            target = lookup(sym_value::constant(*slots.begin(), valtype::i32));
        else if (slots.size() > 1)
            res.diagnostics.push_back("dispatcher function " + std::to_string(call.callee) +
                                      " selects several table entries");
        dispatcher_memo.emplace(memo_key, target);
        return target;
    };

    const auto walk = sim.walk_paths(seed_apply_state(module), [&](uint32_t, const block_outcome& out) {
        for (const auto& d : out.diagnostics)
            res.diagnostics.push_back(d);
        for (const auto& call : out.calls)
        {
            if (call.kind == call_kind::indirect)
                record(call.site, lookup(*call.table_index));
            else if (call.kind == call_kind::direct && call.callee != apply &&
                     has_call_indirect(module, call.callee))
                record(call.site, resolve_dispatch(call));
        }
    });
    res.budget_exceeded = walk.budget_exceeded;
    if (walk.budget_exceeded)
        res.diagnostics.push_back("PathBudgetExceeded in apply");
    return res;
}
}  // namespace evulhunter
