// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/whitelist.hpp"
#include <fstream>
#include <sstream>

namespace evulhunter
{
whitelist whitelist::parse(std::string_view text)
{
    whitelist wl;
    std::size_t line_no = 0;
    std::size_t pos = text.starts_with("\xEF\xBB\xBF") ? 3 : 0;
    while (pos <= text.size())
    {
        const auto eol = std::min(text.find('\n', pos), text.size());
        auto line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;

        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos)
            continue;
        const auto last = line.find_last_not_of(" \t\r");
        line = line.substr(first, last - first + 1);

        if (!is_valid_name(line))
            throw whitelist_error{line_no, "invalid account name '" + std::string{line} + "'"};
        wl.add(encode_name(line));
    }
    return wl;
}

whitelist whitelist::load(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw std::runtime_error{"cannot open whitelist " + path.string()};
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}
}  // namespace evulhunter
