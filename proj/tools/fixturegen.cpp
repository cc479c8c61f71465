// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

// Expands the fixture templates into the build corpus: safe/vulnerable twins,
// labels.csv, expected.csv, handlers.csv, variants.csv, guard-flip variants and
// padded modules for timing runs.

#include <evulhunter/fixtures.hpp>
#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace evulhunter;

namespace
{
std::string read_file(const fs::path& p)
{
    std::ifstream in{p, std::ios::binary};
    if (!in)
        throw std::runtime_error{"cannot read " + p.string()};
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const fs::path& p, const std::string& text)
{
    fs::create_directories(p.parent_path());
    std::ofstream out{p, std::ios::binary};
    out << text;
    if (!out)
        throw std::runtime_error{"cannot write " + p.string()};
}

std::string lower(std::string_view s)
{
    std::string out{s};
    std::transform(out.begin(), out.end(), out.begin(),
        [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

struct corpus_tables
{
    std::ostringstream labels{"file,detector,label\n", std::ios::ate};
    std::ostringstream expected{"file,detector,verdict\n", std::ios::ate};
    std::ostringstream handlers{"file,action,function\n", std::ios::ate};
    std::ostringstream variants{"file,detector,pattern,pair,dispatch,role\n", std::ios::ate};

    void add(const std::string& file, const fixture_spec& spec, std::string_view role)
    {
        for (const auto& [d, v] : spec.labels)
        {
            if (v != verdict::inconclusive)
                labels << file << ',' << to_string(d) << ',' << lower(to_string(v)) << '\n';
            expected << file << ',' << to_string(d) << ',' << to_string(v) << '\n';
        }
        for (const auto& [d, v] : spec.expected)
        {
            if (!spec.labels.contains(d))
                expected << file << ',' << to_string(d) << ',' << to_string(v) << '\n';
        }
        for (const auto& [action, func] : spec.handlers)
            handlers << file << ',' << action << ',' << func << '\n';
        if (spec.variant && spec.guarded.has_value() == (role == "safe"))
        {
            variants << file << ',' << to_string(*spec.guarded) << ',' << spec.variant->first << ','
                     << spec.variant->second << ',' << spec.dispatch << ',' << role << '\n';
        }
    }
};
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Expand fixture templates into an assembled-ready corpus"};
    fs::path source_dir;
    fs::path out_dir;
    std::string perf_base = "fake-transfer/P1-A/exec_safe.wat";
    std::size_t perf_sizes = 10;
    std::size_t perf_step = 45;
    app.add_option("source", source_dir, "Directory of *.wat templates")->required()->check(CLI::ExistingDirectory);
    app.add_option("output", out_dir, "Output directory")->required();
    app.add_option("--perf-base", perf_base, "Template used for padded timing modules");
    app.add_option("--perf-sizes", perf_sizes, "Number of padded modules");
    app.add_option("--perf-step", perf_step, "Dead functions added per size step");
    CLI11_PARSE(app, argc, argv);

    try
    {
        std::vector<fs::path> templates;
        for (const auto& e : fs::recursive_directory_iterator{source_dir})
        {
            if (e.is_regular_file() && e.path().extension() == ".wat")
                templates.push_back(e.path());
        }
        std::sort(templates.begin(), templates.end());

        const auto corpus = out_dir / "corpus";
        fs::remove_all(corpus);
        corpus_tables tables;
        // Vulnerable twins with a code check re-inserted around the dispatcher.
        const auto flip = out_dir / "guard-flip";
        fs::remove_all(flip);
        corpus_tables flip_tables;
        std::optional<fixture_spec> perf_template;

        for (const auto& path : templates)
        {
            const auto rel = fs::relative(path, source_dir);
            auto spec = parse_fixture(rel.stem().string(), read_file(path));
            const auto rel_dir = rel.parent_path();
            auto emit = [&](const fixture_spec& s, std::string_view role) {
                const auto file = (rel_dir / (s.name + ".wasm")).generic_string();
                write_file(corpus / rel_dir / (s.name + ".wat"), render_fixture(s));
                tables.add(file, s, role);
            };
            if (rel.generic_string() == perf_base)
                perf_template = spec;
            if (spec.guarded)
            {
                const auto [safe, vulnerable] = generate_pairs(spec);
                emit(safe, "safe");
                emit(vulnerable, "vulnerable");
                if (spec.guarded == detector_kind::fake_eos_transfer)
                {
                    const auto flipped = insert_code_guard(vulnerable);
                    const auto file = (rel_dir / (flipped.name + ".wasm")).generic_string();
                    write_file(flip / rel_dir / (flipped.name + ".wat"), render_fixture(flipped));
                    flip_tables.add(file, flipped, "guarded");
                }
            }
            else
            {
                emit(spec, "single");
            }
        }

        write_file(corpus / "labels.csv", tables.labels.str());
        write_file(corpus / "expected.csv", tables.expected.str());
        write_file(corpus / "handlers.csv", tables.handlers.str());
        write_file(corpus / "variants.csv", tables.variants.str());
        write_file(flip / "labels.csv", flip_tables.labels.str());

        if (!perf_template)
            throw std::runtime_error{"timing template " + perf_base + " not found"};
        const auto perf = out_dir / "perf";
        fs::remove_all(perf);
        for (std::size_t k = 1; k <= perf_sizes; ++k)
        {
            std::ostringstream name;
            name << "padded_" << (k < 10 ? "0" : "") << k << ".wat";
            write_file(perf / name.str(), pad_source(perf_template->source, k * perf_step));
        }
        std::cout << "fixturegen: " << templates.size() << " templates expanded into " << corpus.string() << '\n';
    }
    catch (const std::exception& e)
    {
        std::cerr << "fixturegen: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
