// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <evulhunter/parser.hpp>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace evulhunter::test
{
inline const std::filesystem::path corpus_dir{EVULHUNTER_CORPUS_DIR};
inline const std::filesystem::path perf_dir{EVULHUNTER_PERF_DIR};
inline const std::filesystem::path flip_dir{EVULHUNTER_FLIP_DIR};
inline const std::filesystem::path wat_dir{EVULHUNTER_TEST_WAT_DIR};

inline std::vector<uint8_t> read_bytes(const std::filesystem::path& p)
{
    std::ifstream in{p, std::ios::binary};
    if (!in)
        throw std::runtime_error{"cannot read " + p.string()};
    return {std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}

inline wasm_module load(const std::filesystem::path& p)
{
    return parse_module(read_bytes(p));
}

inline wasm_module test_module(const std::string& name)
{
    return load(wat_dir / (name + ".wasm"));
}

inline wasm_module corpus_module(const std::string& rel)
{
    return load(corpus_dir / rel);
}

/// Every *.wasm under a directory, sorted.
inline std::vector<std::filesystem::path> wasm_files(const std::filesystem::path& dir)
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::recursive_directory_iterator{dir})
    {
        if (e.is_regular_file() && e.path().extension() == ".wasm")
            out.push_back(e.path());
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Rows of a generated CSV table, header skipped.
inline std::vector<std::vector<std::string>> csv_rows(const std::filesystem::path& p)
{
    std::ifstream in{p};
    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> cells;
        std::istringstream s{line};
        for (std::string cell; std::getline(s, cell, ',');)
            cells.push_back(cell);
        rows.push_back(std::move(cells));
    }
    return rows;
}
}  // namespace evulhunter::test
