// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/parser.hpp"
#include "evulhunter/leb128.hpp"
#include <array>
#include <cstring>

namespace evulhunter
{
namespace
{
constexpr std::array<uint8_t, 8> wasm_prefix{0x00, 0x61, 0x73, 0x6d, 0x01, 0x00, 0x00, 0x00};

// Upper bound on declared locals per function; protects against length fields
// in corrupted inputs that would otherwise request gigabytes.
constexpr uint64_t max_locals = 50000;

using error_kind = parser_error::kind;

class reader
{
public:
    reader(std::span<const uint8_t> bytes, std::size_t pos, std::size_t end)
      : bytes_{bytes}, pos_{pos}, end_{end}
    {}

    std::size_t pos() const noexcept { return pos_; }
    std::size_t end() const noexcept { return end_; }
    bool at_end() const noexcept { return pos_ >= end_; }

    [[noreturn]] void fail(error_kind k, const std::string& msg) const
    {
        throw parser_error{k, pos_, msg + " at offset " + std::to_string(pos_)};
    }

    uint8_t byte()
    {
        if (pos_ >= end_)
            fail(error_kind::truncated_section, "unexpected end of section");
        return bytes_[pos_++];
    }

    std::span<const uint8_t> take(uint64_t n)
    {
        if (n > end_ - pos_)
            fail(error_kind::truncated_section, "unexpected end of section");
        const auto out = bytes_.subspan(pos_, static_cast<std::size_t>(n));
        pos_ += static_cast<std::size_t>(n);
        return out;
    }

    template <typename T>
    T leb()
    {
        const auto r = leb128_decode<T>(bytes_.subspan(pos_, end_ - pos_));
        switch (r.status)
        {
        case leb_status::truncated:
            fail(error_kind::truncated_section, "unexpected end of section in LEB128");
        case leb_status::malformed:
            fail(error_kind::malformed_leb128, "malformed LEB128");
        case leb_status::ok:
            break;
        }
        pos_ += r.length;
        return r.value;
    }

    uint32_t u32() { return leb<uint32_t>(); }

    /// Reader over the next `n` bytes; this reader skips past them.
    reader sub(uint64_t n)
    {
        if (n > end_ - pos_)
            fail(error_kind::truncated_section, "nested size exceeds enclosing section");
        reader r{bytes_, pos_, pos_ + static_cast<std::size_t>(n)};
        pos_ += static_cast<std::size_t>(n);
        return r;
    }

    uint64_t fixed(std::size_t width)
    {
        const auto raw = take(width);
        uint64_t v = 0;
        for (std::size_t i = 0; i < width; ++i)
            v |= static_cast<uint64_t>(raw[i]) << (8 * i);
        return v;
    }

    std::string name()
    {
        const auto len = u32();
        const auto raw = take(len);
        return std::string{raw.begin(), raw.end()};
    }

    /// Count prefix of a vector whose elements occupy at least one byte each.
    uint32_t count()
    {
        const auto n = u32();
        if (n > end_ - pos_)
            fail(error_kind::truncated_section, "vector length exceeds section size");
        return n;
    }

    valtype value_type()
    {
        const auto b = byte();
        switch (b)
        {
        case 0x7f:
        case 0x7e:
        case 0x7d:
        case 0x7c:
            return static_cast<valtype>(b);
        default:
            --pos_;
            fail(error_kind::malformed, "invalid value type");
        }
    }

private:
    std::span<const uint8_t> bytes_;
    std::size_t pos_;
    std::size_t end_;
};

void check_index(const reader& in, uint64_t index, uint64_t limit, const char* what)
{
    if (index >= limit)
        in.fail(error_kind::index_out_of_range,
            std::string{what} + " index " + std::to_string(index) + " out of range");
}

void skip_limits(reader& in)
{
    const auto flags = in.byte();
    if (flags > 1)
        in.fail(error_kind::malformed, "invalid limits flags");
    in.u32();
    if (flags == 1)
        in.u32();
}

void parse_table_type(reader& in)
{
    if (in.byte() != 0x70)
        in.fail(error_kind::malformed, "table element type must be funcref");
    skip_limits(in);
}

/// Constant expression; returns the value for a lone i32/i64 constant.
std::optional<uint64_t> parse_const_expr(reader& in, const wasm_module& m)
{
    std::optional<uint64_t> value;
    const auto op = in.byte();
    switch (op)
    {
    case 0x41:
        value = static_cast<uint64_t>(static_cast<uint32_t>(in.leb<int32_t>()));
        break;
    case 0x42:
        value = static_cast<uint64_t>(in.leb<int64_t>());
        break;
    case 0x43:
        in.fixed(4);
        break;
    case 0x44:
        in.fixed(8);
        break;
    case 0x23:
        check_index(in, in.u32(), m.imported_global_count, "global");
        break;
    default:
        in.fail(error_kind::malformed, "unsupported constant expression");
    }
    if (in.byte() != 0x0b)
        in.fail(error_kind::malformed, "constant expression not terminated by end");
    return value;
}

std::optional<valtype> parse_block_type(reader& in)
{
    const auto b = in.byte();
    if (b == 0x40)
        return std::nullopt;
    switch (b)
    {
    case 0x7f:
    case 0x7e:
    case 0x7d:
    case 0x7c:
        return static_cast<valtype>(b);
    default:
        in.fail(error_kind::malformed, "invalid block type");
    }
}

struct body_context
{
    uint32_t local_count = 0;
    uint32_t function_count = 0;
    uint32_t type_count = 0;
    uint32_t global_count = 0;
    uint32_t table_count = 0;
};

std::vector<instruction> parse_expr(reader& in, const body_context& ctx)
{
    std::vector<instruction> code;
    // Open labels, including the implicit function-level block.
    std::vector<opcode> control{opcode::block};

    while (!control.empty())
    {
        if (in.at_end())
            in.fail(error_kind::truncated_section, "function body ends before final end");

        instruction instr;
        instr.offset = static_cast<uint32_t>(in.pos());
        const auto byte = in.byte();
        const auto entry = lookup_opcode(byte);
        if (!entry)
        {
            in.fail(error_kind::unknown_opcode, "unknown opcode 0x" + [byte] {
                constexpr char hex[] = "0123456789abcdef";
                return std::string{hex[byte >> 4], hex[byte & 0xf]};
            }());
        }
        instr.op = static_cast<opcode>(byte);

        switch (entry->immediates)
        {
        case imm_kind::none:
            break;
        case imm_kind::block_type:
            instr.block_result = parse_block_type(in);
            break;
        case imm_kind::label:
            instr.index = in.u32();
            check_index(in, instr.index, control.size(), "label");
            break;
        case imm_kind::label_table:
        {
            const auto n = in.count();
            instr.targets.reserve(n + 1u);
            for (uint32_t i = 0; i <= n; ++i)
            {
                const auto depth = in.u32();
                check_index(in, depth, control.size(), "label");
                instr.targets.push_back(depth);
            }
            break;
        }
        case imm_kind::func_index:
            instr.index = in.u32();
            check_index(in, instr.index, ctx.function_count, "function");
            break;
        case imm_kind::call_indirect:
            instr.index = in.u32();
            check_index(in, instr.index, ctx.type_count, "type");
            if (in.byte() != 0x00)
                in.fail(error_kind::malformed, "call_indirect reserved byte must be zero");
            if (ctx.table_count == 0)
                in.fail(error_kind::index_out_of_range, "call_indirect without a table");
            break;
        case imm_kind::local_index:
            instr.index = in.u32();
            check_index(in, instr.index, ctx.local_count, "local");
            break;
        case imm_kind::global_index:
            instr.index = in.u32();
            check_index(in, instr.index, ctx.global_count, "global");
            break;
        case imm_kind::memarg:
            instr.value = in.u32();  // alignment hint
            instr.mem_offset = in.u32();
            break;
        case imm_kind::memory_zero:
            if (in.byte() != 0x00)
                in.fail(error_kind::malformed, "memory index must be zero");
            break;
        case imm_kind::i32_const:
            instr.value = static_cast<uint64_t>(static_cast<uint32_t>(in.leb<int32_t>()));
            break;
        case imm_kind::i64_const:
            instr.value = static_cast<uint64_t>(in.leb<int64_t>());
            break;
        case imm_kind::f32_const:
            instr.value = in.fixed(4);
            break;
        case imm_kind::f64_const:
            instr.value = in.fixed(8);
            break;
        }

        switch (instr.op)
        {
        case opcode::block:
        case opcode::loop:
        case opcode::if_:
            control.push_back(instr.op);
            break;
        case opcode::else_:
            if (control.back() != opcode::if_)
                in.fail(error_kind::malformed, "else without matching if");
            control.back() = opcode::else_;
            break;
        case opcode::end:
            control.pop_back();
            break;
        default:
            break;
        }
        code.push_back(std::move(instr));
    }
    return code;
}

void parse_type_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    m.types.reserve(n);
    for (uint32_t i = 0; i < n; ++i)
    {
        if (in.byte() != 0x60)
            in.fail(error_kind::malformed, "expected 0x60 for function type");
        functype t;
        const auto params = in.count();
        for (uint32_t p = 0; p < params; ++p)
            t.params.push_back(in.value_type());
        const auto results = in.count();
        for (uint32_t r = 0; r < results; ++r)
            t.results.push_back(in.value_type());
        if (t.results.size() > 1)
            in.fail(error_kind::malformed, "multiple results are not supported");
        m.types.push_back(std::move(t));
    }
}

void parse_import_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        import imp;
        imp.module = in.name();
        imp.field = in.name();
        const auto kind = in.byte();
        switch (kind)
        {
        case 0x00:
            imp.kind = external_kind::function;
            imp.type_index = in.u32();
            check_index(in, imp.type_index, m.types.size(), "type");
            m.function_import_slots.push_back(static_cast<uint32_t>(m.imports.size()));
            break;
        case 0x01:
            imp.kind = external_kind::table;
            parse_table_type(in);
            ++m.table_count;
            break;
        case 0x02:
            imp.kind = external_kind::memory;
            skip_limits(in);
            ++m.memory_count;
            break;
        case 0x03:
            imp.kind = external_kind::global;
            imp.global_type = in.value_type();
            if (in.byte() > 1)
                in.fail(error_kind::malformed, "invalid global mutability");
            ++m.imported_global_count;
            break;
        default:
            in.fail(error_kind::malformed, "invalid import kind");
        }
        m.imports.push_back(std::move(imp));
    }
}

void parse_function_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    m.functions.reserve(n);
    for (uint32_t i = 0; i < n; ++i)
    {
        const auto type_index = in.u32();
        check_index(in, type_index, m.types.size(), "type");
        m.functions.push_back(type_index);
    }
}

void parse_table_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        parse_table_type(in);
        ++m.table_count;
    }
}

void parse_memory_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        skip_limits(in);
        ++m.memory_count;
    }
}

void parse_global_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        global g;
        g.type = in.value_type();
        const auto mut = in.byte();
        if (mut > 1)
            in.fail(error_kind::malformed, "invalid global mutability");
        g.is_mutable = mut == 1;
        g.init = parse_const_expr(in, m);
        m.globals.push_back(g);
    }
}

void parse_export_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        auto name = in.name();
        export_entry e;
        const auto kind = in.byte();
        if (kind > 3)
            in.fail(error_kind::malformed, "invalid export kind");
        e.kind = static_cast<external_kind>(kind);
        e.index = in.u32();
        switch (e.kind)
        {
        case external_kind::function:
            check_index(in, e.index, m.function_count(), "function");
            break;
        case external_kind::table:
            check_index(in, e.index, m.table_count, "table");
            break;
        case external_kind::memory:
            check_index(in, e.index, m.memory_count, "memory");
            break;
        case external_kind::global:
            check_index(in, e.index, m.global_count(), "global");
            break;
        }
        if (!m.exports.emplace(std::move(name), e).second)
            in.fail(error_kind::malformed, "duplicate export name");
    }
}

void parse_element_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        const auto table = in.u32();
        check_index(in, table, m.table_count, "table");
        const auto offset = parse_const_expr(in, m);
        const auto count = in.count();
        for (uint32_t k = 0; k < count; ++k)
        {
            const auto func = in.u32();
            check_index(in, func, m.function_count(), "function");
            // Segments with an imported-global offset cannot be placed statically.
            if (offset)
                m.table_elements[static_cast<uint32_t>(*offset) + k] = func;
        }
    }
}

void parse_code_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    if (n != m.functions.size())
        in.fail(error_kind::malformed, "function and code section counts differ");

    body_context ctx;
    ctx.function_count = m.function_count();
    ctx.type_count = static_cast<uint32_t>(m.types.size());
    ctx.global_count = m.global_count();
    ctx.table_count = m.table_count;

    m.bodies.reserve(n);
    for (uint32_t i = 0; i < n; ++i)
    {
        func_body body;
        body.offset = static_cast<uint32_t>(in.pos());
        const auto size = in.u32();
        auto body_in = in.sub(size);

        uint64_t total_locals = m.types[m.functions[i]].params.size();
        const auto groups = body_in.count();
        for (uint32_t g = 0; g < groups; ++g)
        {
            local_decl d;
            d.count = body_in.u32();
            d.type = body_in.value_type();
            total_locals += d.count;
            if (total_locals > max_locals)
                body_in.fail(error_kind::malformed, "too many locals");
            body.locals.push_back(d);
        }
        ctx.local_count = static_cast<uint32_t>(total_locals);
        body.instructions = parse_expr(body_in, ctx);
        if (!body_in.at_end())
            body_in.fail(error_kind::malformed, "function body size mismatch");
        m.bodies.push_back(std::move(body));
    }
}

void parse_data_section(reader& in, wasm_module& m)
{
    const auto n = in.count();
    for (uint32_t i = 0; i < n; ++i)
    {
        const auto memory = in.u32();
        check_index(in, memory, m.memory_count, "memory");
        data_segment seg;
        const auto offset = parse_const_expr(in, m);
        seg.offset = offset ? static_cast<uint32_t>(*offset) : 0;
        const auto len = in.u32();
        const auto raw = in.take(len);
        seg.bytes.assign(raw.begin(), raw.end());
        m.data_segments.push_back(std::move(seg));
    }
}
}  // namespace

std::string_view to_string(parser_error::kind k) noexcept
{
    switch (k)
    {
    case error_kind::bad_magic:
        return "BadMagic";
    case error_kind::truncated_section:
        return "TruncatedSection";
    case error_kind::malformed_leb128:
        return "MalformedLeb128";
    case error_kind::unknown_opcode:
        return "UnknownOpcode";
    case error_kind::index_out_of_range:
        return "IndexOutOfRange";
    case error_kind::malformed:
        return "Malformed";
    }
    return "Malformed";
}

wasm_module parse_module(std::span<const uint8_t> bytes)
{
    if (bytes.size() < wasm_prefix.size() ||
        std::memcmp(bytes.data(), wasm_prefix.data(), wasm_prefix.size()) != 0)
        throw parser_error{error_kind::bad_magic, 0, "invalid wasm module prefix"};

    wasm_module m;
    m.byte_size = bytes.size();

    reader top{bytes, wasm_prefix.size(), bytes.size()};
    uint32_t seen = 0;
    while (!top.at_end())
    {
        const auto id = top.byte();
        const auto size = top.u32();
        auto in = top.sub(size);

        if (id > 11)
            top.fail(error_kind::malformed, "unknown section id " + std::to_string(id));
        if (id != 0)
        {
            if (seen & (1u << id))
                top.fail(error_kind::malformed, "duplicate section id " + std::to_string(id));
            seen |= 1u << id;
        }

        switch (id)
        {
        case 0:
            in.name();  // custom sections are ignored beyond their name
            break;
        case 1:
            parse_type_section(in, m);
            break;
        case 2:
            parse_import_section(in, m);
            break;
        case 3:
            parse_function_section(in, m);
            break;
        case 4:
            parse_table_section(in, m);
            break;
        case 5:
            parse_memory_section(in, m);
            break;
        case 6:
            parse_global_section(in, m);
            break;
        case 7:
            parse_export_section(in, m);
            break;
        case 8:
            m.start = in.u32();
            check_index(in, *m.start, m.function_count(), "function");
            break;
        case 9:
            parse_element_section(in, m);
            break;
        case 10:
            parse_code_section(in, m);
            break;
        case 11:
            parse_data_section(in, m);
            break;
        }
        if (id != 0 && !in.at_end())
            in.fail(error_kind::malformed, "section size mismatch");
    }

    if (m.bodies.size() != m.functions.size())
        throw parser_error{error_kind::malformed, bytes.size(),
            "function section declares bodies that the code section does not provide"};
    return m;
}
}  // namespace evulhunter
