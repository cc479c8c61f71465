// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include <evulhunter/batch.hpp>
#include <evulhunter/cfg.hpp>
#include <evulhunter/parser.hpp>
#include <evulhunter/report.hpp>
#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <iterator>

namespace fs = std::filesystem;
using namespace evulhunter;

namespace
{
constexpr int exit_error = 2;

std::vector<uint8_t> read_binary(const fs::path& p)
{
    std::ifstream in{p, std::ios::binary};
    if (!in)
        throw std::runtime_error{"cannot read " + p.string()};
    return {std::istreambuf_iterator<char>{in}, std::istreambuf_iterator<char>{}};
}

void write_text(const fs::path& p, const std::string& text)
{
    std::ofstream out{p, std::ios::binary};
    out << text;
    if (!out)
        throw std::runtime_error{"cannot write " + p.string()};
}

detector_set selected(const std::string& name)
{
    if (name == "all")
        return all_detectors;
    return {*parse_detector(name)};
}

whitelist whitelist_from(const std::string& path)
{
    return path.empty() ? whitelist{} : whitelist::load(path);
}

std::optional<uint32_t> resolve_function(const wasm_module& m, const std::string& which)
{
    uint32_t index = 0;
    const auto* end = which.data() + which.size();
    if (const auto [p, ec] = std::from_chars(which.data(), end, index); ec == std::errc{} && p == end)
    {
        if (index < m.function_count() && !m.is_imported_function(index))
            return index;
        return std::nullopt;
    }
    const auto exported = find_export(m, which);
    if (exported && !m.is_imported_function(*exported))
        return exported;
    return std::nullopt;
}

std::string render_metrics(const metrics_summary& summary)
{
    std::ostringstream out;
    out << "detector        tp   fp   tn   fn   precision  recall    accuracy\n";
    auto row = [&out](std::string_view label, const confusion& c) {
        char line[160];
        std::snprintf(line, sizeof line, "%-14s %4zu %4zu %4zu %4zu   %-10s %-9s %s\n",
            std::string{label}.c_str(), c.tp, c.fp, c.tn, c.fn, format_percent(c.precision()).c_str(),
            format_percent(c.recall()).c_str(), format_percent(c.accuracy()).c_str());
        out << line;
    };
    for (const auto& [d, c] : summary.per_detector)
        row(to_string(d), c);
    row("total", summary.total());
    return out.str();
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"evulhunter: detect fake EOS transfer and fake transfer notice vulnerabilities "
                 "in EOSIO WebAssembly contracts"};
    app.set_version_flag("--version", std::string{EVULHUNTER_VERSION});
    app.require_subcommand(1);

    const std::vector<std::string> detector_names{"fake-transfer", "fake-notice", "all"};

    std::string input;
    std::string detector = "all";
    std::string wl_path;
    std::string format = "text";
    auto* analyze_cmd = app.add_subcommand("analyze",
        "Analyze one contract. Exit status: 0 when every verdict is Safe, 1 when any verdict "
        "is Vulnerable or Inconclusive, 2 when the input cannot be read or parsed.");
    analyze_cmd->add_option("file", input, "Contract binary (.wasm)")->required();
    analyze_cmd->add_option("--detector", detector, "Detector to run")
        ->check(CLI::IsMember(detector_names));
    analyze_cmd->add_option("--whitelist", wl_path,
        "Extra token accounts accepted as genuine, one name per line; eosio.token is always included");
    analyze_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));

    std::string dir;
    std::string labels_path;
    std::string metrics_path;
    std::string timing_path;
    std::string reports_path;
    unsigned jobs = 0;
    auto* batch_cmd = app.add_subcommand("batch",
        "Analyze every *.wasm under a directory and score verdicts against labels. Inconclusive "
        "verdicts are scored as vulnerable predictions. Files without a label row are reported "
        "as unlabeled and left out of the metrics.");
    batch_cmd->add_option("dir", dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
    batch_cmd->add_option("--labels", labels_path, "CSV with header file,detector,label")
        ->required()
        ->check(CLI::ExistingFile);
    batch_cmd->add_option("--metrics", metrics_path, "Write precision/recall/accuracy JSON here");
    batch_cmd->add_option("--timing", timing_path, "Write per-file timing CSV (file,bytes,milliseconds) here");
    batch_cmd->add_option("--reports", reports_path, "Write all per-file reports as a JSON array here");
    batch_cmd->add_option("--jobs", jobs, "Worker threads (0: one per hardware thread)");
    batch_cmd->add_option("--whitelist", wl_path, "Extra token accounts, as for analyze");
    batch_cmd->add_option("--detector", detector, "Detector to run")->check(CLI::IsMember(detector_names));

    std::string function;
    auto* cfg_cmd = app.add_subcommand("dump-cfg",
        "Print the control-flow graph of one function as Graphviz DOT. Exit status 2 when the "
        "function does not exist.");
    cfg_cmd->add_option("file", input, "Contract binary (.wasm)")->required();
    cfg_cmd->add_option("function", function, "Function index or export name")->required();

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (analyze_cmd->parsed())
        {
            const auto wl = whitelist_from(wl_path);
            const auto bytes = read_binary(input);
            const auto report = analyze(bytes, wl, selected(detector), input);
            if (format == "json")
                std::cout << to_json(report).dump(2) << '\n';
            else
                std::cout << render_text(report);
            for (const auto& e : report.errors)
                std::cerr << "evulhunter: " << input << ": " << e << '\n';
            return exit_status(report);
        }
        if (batch_cmd->parsed())
        {
            batch_options opts;
            opts.wl = whitelist_from(wl_path);
            opts.which = selected(detector);
            opts.jobs = jobs;
            const auto result = run_batch(dir, load_labels(labels_path), opts);
            for (const auto& r : result.reports)
            {
                std::cout << r.input;
                for (const auto& f : r.findings)
                    std::cout << "  " << to_string(f.detector) << '=' << to_string(f.result);
                for (const auto& e : r.errors)
                    std::cout << "  error=" << e;
                std::cout << '\n';
            }
            std::cout << '\n' << render_metrics(result.metrics);
            if (!result.unlabeled.empty())
                std::cout << result.unlabeled.size() << " unlabeled file(s) excluded from metrics\n";
            for (const auto& e : result.errors)
                std::cerr << "evulhunter: " << e << '\n';
            if (!metrics_path.empty())
                write_text(metrics_path, metrics_json(result).dump(2) + '\n');
            if (!timing_path.empty())
                write_text(timing_path, timing_csv(result));
            if (!reports_path.empty())
            {
                auto all = nlohmann::json::array();
                for (const auto& r : result.reports)
                    all.push_back(to_json(r));
                write_text(reports_path, all.dump(2) + '\n');
            }
            return 0;
        }
        const auto bytes = read_binary(input);
        const auto module = parse_module(bytes);
        const auto index = resolve_function(module, function);
        if (!index)
        {
            std::cerr << "evulhunter: " << input << ": no defined function '" << function << "'\n";
            return exit_error;
        }
        std::cout << to_dot(build_cfg(module.body(*index)), module.body(*index), function);
        return 0;
    }
    catch (const parser_error& e)
    {
        std::cerr << "evulhunter: " << input << ": " << to_string(e.which) << ": " << e.what() << '\n';
    }
    catch (const std::exception& e)
    {
        std::cerr << "evulhunter: " << e.what() << '\n';
    }
    return exit_error;
}
