// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/batch.hpp"
#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace evulhunter
{
namespace
{
std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string_view> split_csv(std::string_view line)
{
    std::vector<std::string_view> cells;
    std::size_t pos = 0;
    while (true)
    {
        const auto comma = line.find(',', pos);
        cells.push_back(trim(line.substr(pos, comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return cells;
}

std::vector<uint8_t> read_file(const std::filesystem::path& path)
{
    std::ifstream in{path, std::ios::binary};
    if (!in)
        throw std::runtime_error{"cannot open " + path.string()};
    return {std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}
}  // namespace

std::vector<label_row> parse_labels(std::string_view csv)
{
    std::vector<label_row> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    bool header_seen = false;
    while (pos < csv.size())
    {
        const auto eol = std::min(csv.find('\n', pos), csv.size());
        const auto line = trim(csv.substr(pos, eol - pos));
        pos = eol + 1;
        ++line_no;
        if (line.empty())
            continue;

        const auto cells = split_csv(line);
        if (!header_seen)
        {
            if (cells.size() != 3 || cells[0] != "file" || cells[1] != "detector" || cells[2] != "label")
                throw labels_error{"labels: expected header 'file,detector,label'"};
            header_seen = true;
            continue;
        }
        const auto where = "labels line " + std::to_string(line_no) + ": ";
        if (cells.size() != 3)
            throw labels_error{where + "expected 3 columns"};
        const auto detector = parse_detector(cells[1]);
        if (!detector)
            throw labels_error{where + "unknown detector '" + std::string{cells[1]} + "'"};
        if (cells[2] != "vulnerable" && cells[2] != "safe")
            throw labels_error{where + "label must be vulnerable or safe"};
        rows.push_back({std::string{cells[0]}, *detector, cells[2] == "vulnerable"});
    }
    if (!header_seen)
        throw labels_error{"labels: missing header"};
    return rows;
}

std::vector<label_row> load_labels(const std::filesystem::path& path)
{
    const auto raw = read_file(path);
    return parse_labels(std::string_view{reinterpret_cast<const char*>(raw.data()), raw.size()});
}

batch_result run_batch(
    const std::filesystem::path& dir, const std::vector<label_row>& labels, const batch_options& opts)
{
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator{dir})
    {
        if (entry.is_regular_file() && entry.path().extension() == ".wasm")
            files.push_back(entry.path());
    }
    std::vector<std::string> names;
    names.reserve(files.size());
    for (const auto& f : files)
        names.push_back(std::filesystem::relative(f, dir).generic_string());

    std::vector<std::size_t> order(files.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });

    batch_result result;
    result.reports.resize(files.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (auto i = next++; i < order.size(); i = next++)
        {
            const auto idx = order[i];
            auto& report = result.reports[i];
            try
            {
                const auto bytes = read_file(files[idx]);
                report = analyze(bytes, opts.wl, opts.which, names[idx]);
            }
            catch (const std::exception& e)
            {
                report.input = names[idx];
                report.errors.push_back(std::string{"IOError: "} + e.what());
            }
        }
    };

    auto jobs = opts.jobs != 0 ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(files.size(), 1)));
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < jobs; ++t)
        pool.emplace_back(worker);
    worker();
    for (auto& t : pool)
        t.join();

    std::multimap<std::string, const label_row*> by_file;
    for (const auto& row : labels)
        by_file.emplace(row.file, &row);

    for (const auto& report : result.reports)
    {
        if (!report.errors.empty())
        {
            result.errors.push_back(report.input);
            continue;
        }
        const auto [lo, hi] = by_file.equal_range(report.input);
        if (lo == hi)
        {
            result.unlabeled.push_back(report.input);
            continue;
        }
        for (auto it = lo; it != hi; ++it)
        {
            const auto* f = report.find(it->second->detector);
            if (f)
                result.metrics.per_detector[f->detector].add(it->second->vulnerable, f->result);
        }
    }
    return result;
}

std::string timing_csv(const batch_result& result)
{
    std::ostringstream out;
    out << "file,bytes,milliseconds\n";
    for (const auto& r : result.reports)
        out << r.input << ',' << r.bytes << ',' << r.duration_ms << '\n';
    return out.str();
}

nlohmann::json metrics_json(const batch_result& result)
{
    auto j = to_json(result.metrics);
    j["files"] = result.reports.size();
    j["unlabeled"] = result.unlabeled;
    j["errors"] = result.errors;
    return j;
}
}  // namespace evulhunter
