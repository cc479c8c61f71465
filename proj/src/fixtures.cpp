// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/fixtures.hpp"
#include <cctype>
#include <sstream>
#include <vector>

namespace evulhunter
{
namespace
{
std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> lines;
    std::istringstream in{text};
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    return lines;
}

/// Directive words after ";; @", or empty for ordinary lines.
std::vector<std::string> directive(const std::string& line)
{
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line.compare(first, 4, ";; @") != 0)
        return {};
    std::istringstream in{line.substr(first + 4)};
    std::vector<std::string> words;
    for (std::string w; in >> w;)
        words.push_back(w);
    return words;
}

std::string join(const std::vector<std::string>& lines)
{
    std::string out;
    for (const auto& l : lines)
        out += l + '\n';
    return out;
}
}  // namespace

fixture_spec parse_fixture(std::string name, std::string source)
{
    fixture_spec spec;
    spec.name = std::move(name);
    int open_guards = 0;
    std::size_t line_no = 0;
    for (const auto& line : lines_of(source))
    {
        ++line_no;
        const auto words = directive(line);
        if (words.empty())
            continue;
        const auto where = spec.name + ":" + std::to_string(line_no) + ": ";
        const auto& key = words[0];
        if ((key == "label" || key == "expect") && words.size() == 3)
        {
            const auto d = parse_detector(words[1]);
            const auto v = parse_verdict(words[2]);
            if (!d || !v)
                throw fixture_error{where + "bad @" + key};
            (key == "label" ? spec.labels : spec.expected)[*d] = *v;
        }
        else if (key == "variant" && words.size() == 3)
        {
            spec.variant = std::make_pair(words[1], words[2]);
        }
        else if (key == "dispatch" && words.size() == 2)
        {
            spec.dispatch = words[1];
        }
        else if (key == "handler" && words.size() == 3)
        {
            spec.handlers[words[1]] = static_cast<uint32_t>(std::stoul(words[2]));
        }
        else if (key == "guard" && words.size() == 2)
        {
            spec.guarded = parse_detector(words[1]);
            if (!spec.guarded)
                throw fixture_error{where + "bad @guard detector"};
        }
        else if (key == "dispatch-begin" || key == "dispatch-end")
        {
        }
        else if (key == "guard-begin")
        {
            if (open_guards++ != 0)
                throw fixture_error{where + "nested @guard-begin"};
        }
        else if (key == "guard-end")
        {
            if (--open_guards != 0)
                throw fixture_error{where + "@guard-end without @guard-begin"};
        }
        else
        {
            throw fixture_error{where + "unknown directive '" + key + "'"};
        }
    }
    if (open_guards != 0)
        throw fixture_error{spec.name + ": unterminated @guard-begin"};
    spec.source = std::move(source);
    return spec;
}

std::pair<fixture_spec, fixture_spec> generate_pairs(const fixture_spec& base)
{
    std::vector<std::string> kept;
    bool inside = false;
    bool any_region = false;
    for (const auto& line : lines_of(base.source))
    {
        const auto words = directive(line);
        if (!words.empty() && words[0] == "guard-begin")
        {
            inside = true;
            any_region = true;
            continue;
        }
        if (!words.empty() && words[0] == "guard-end")
        {
            inside = false;
            continue;
        }
        if (inside || (!words.empty() && words[0] == "guard"))
            continue;
        kept.push_back(line);
    }
    if (!any_region || !base.guarded)
        throw no_guard_marker{base.name + ": template has no guard region"};

    auto vulnerable = base;
    vulnerable.source = join(kept);
    vulnerable.guarded.reset();
    vulnerable.labels[*base.guarded] = verdict::vulnerable;
    if (const auto at = base.name.find("safe"); at != std::string::npos)
        vulnerable.name = base.name.substr(0, at) + "vuln" + base.name.substr(at + 4);
    else
        vulnerable.name = base.name + "_vuln";
    return {base, std::move(vulnerable)};
}

fixture_spec insert_code_guard(const fixture_spec& spec)
{
    std::vector<std::string> out;
    int wrapped = 0;
    for (const auto& line : lines_of(spec.source))
    {
        const auto words = directive(line);
        const auto indent = line.substr(0, line.find_first_not_of(" \t"));
        if (!words.empty() && words[0] == "dispatch-begin")
        {
            ++wrapped;
            for (const auto* l : {"local.get 1", "i64.const 0x5530ea033482a600", "i64.eq", "if"})
                out.push_back(indent + l);
        }
        out.push_back(line);
        if (!words.empty() && words[0] == "dispatch-end")
            out.push_back(indent + "end");
    }
    if (wrapped == 0)
        throw fixture_error{spec.name + ": template has no dispatcher region"};
    auto guarded = spec;
    guarded.source = join(out);
    guarded.name = spec.name + "_guarded";
    guarded.labels[detector_kind::fake_eos_transfer] = verdict::safe;
    return guarded;
}

std::string render_fixture(const fixture_spec& spec)
{
    std::vector<std::string> out;
    for (const auto& [d, v] : spec.labels)
    {
        auto label = std::string{to_string(v)};
        for (auto& c : label)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        out.push_back(";; @label " + std::string{to_string(d)} + " " + label);
    }
    for (const auto& line : lines_of(spec.source))
    {
        const auto words = directive(line);
        if (!words.empty() && words[0] == "label")
            continue;
        out.push_back(line);
    }
    return join(out);
}

std::string pad_source(const std::string& source, std::size_t functions, std::size_t steps)
{
    const auto close = source.rfind(')');
    if (close == std::string::npos)
        throw fixture_error{"source has no closing parenthesis"};
    std::ostringstream pad;
    uint64_t x = 0x9e3779b97f4a7c15ull;
    for (std::size_t f = 0; f < functions; ++f)
    {
        pad << "  (func $__pad_" << f << " (result i64)\n";
        pad << "    i64.const " << (x >> 4) << '\n';
        for (std::size_t s = 0; s < steps; ++s)
        {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            pad << "    i64.const " << (x >> 4) << "\n    i64.add\n";
        }
        pad << "  )\n";
    }
    return source.substr(0, close) + pad.str() + source.substr(close);
}
}  // namespace evulhunter
