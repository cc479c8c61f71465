// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/report.hpp"
#include "evulhunter/cfg.hpp"
#include "evulhunter/parser.hpp"
#include <chrono>
#include <sstream>
#include <stdexcept>

namespace evulhunter
{
const finding* analysis_report::find(detector_kind d) const noexcept
{
    for (const auto& f : findings)
    {
        if (f.detector == d)
            return &f;
    }
    return nullptr;
}

analysis_report analyze(
    std::span<const uint8_t> bytes, const whitelist& wl, const detector_set& which, std::string input)
{
    analysis_report report;
    report.input = std::move(input);
    report.bytes = bytes.size();

    const auto start = std::chrono::steady_clock::now();
    try
    {
        const auto module = parse_module(bytes);
        for (const auto d : which)
        {
            if (d == detector_kind::fake_eos_transfer)
                report.findings.push_back(detect_fake_eos_transfer(module, wl));
            else
                report.findings.push_back(detect_fake_notice(module));
        }
    }
    catch (const parser_error& e)
    {
        report.errors.push_back(std::string{to_string(e.which)} + ": " + e.what());
    }
    catch (const cfg_error& e)
    {
        report.errors.push_back(std::string{"UnbalancedControl: "} + e.what());
    }
    catch (const std::exception& e)
    {
        report.errors.push_back(std::string{"InternalError: "} + e.what());
    }
    if (!report.errors.empty())
        report.findings.clear();
    report.duration_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return report;
}

int exit_status(const analysis_report& report) noexcept
{
    if (!report.errors.empty())
        return 2;
    for (const auto& f : report.findings)
    {
        if (f.result != verdict::safe)
            return 1;
    }
    return 0;
}

nlohmann::json to_json(const analysis_report& report)
{
    auto findings = nlohmann::json::array();
    for (const auto& f : report.findings)
    {
        auto ev = nlohmann::json::array();
        for (const auto& e : f.evidence)
            ev.push_back({{"function", e.function}, {"offset", e.offset}, {"message", e.message}});
        nlohmann::json jf{{"detector", to_string(f.detector)}, {"verdict", to_string(f.result)},
            {"degraded", f.degraded}, {"evidence", std::move(ev)}};
        if (!f.reason.empty())
            jf["reason"] = f.reason;
        findings.push_back(std::move(jf));
    }
    return {{"input", report.input}, {"bytes", report.bytes}, {"duration_ms", report.duration_ms},
        {"tool_version", report.tool_version}, {"findings", std::move(findings)},
        {"errors", report.errors}};
}

analysis_report report_from_json(const nlohmann::json& j)
{
    analysis_report r;
    r.input = j.at("input").get<std::string>();
    r.bytes = j.at("bytes").get<std::size_t>();
    r.duration_ms = j.at("duration_ms").get<double>();
    if (j.contains("tool_version"))
        r.tool_version = j.at("tool_version").get<std::string>();
    r.errors = j.at("errors").get<std::vector<std::string>>();
    for (const auto& jf : j.at("findings"))
    {
        finding f;
        const auto d = parse_detector(jf.at("detector").get<std::string>());
        const auto v = parse_verdict(jf.at("verdict").get<std::string>());
        if (!d || !v)
            throw std::invalid_argument{"unknown detector or verdict in report"};
        f.detector = *d;
        f.result = *v;
        f.degraded = jf.at("degraded").get<bool>();
        if (jf.contains("reason"))
            f.reason = jf.at("reason").get<std::string>();
        for (const auto& je : jf.at("evidence"))
            f.evidence.push_back({je.at("function").get<uint32_t>(), je.at("offset").get<uint32_t>(),
                je.at("message").get<std::string>()});
        r.findings.push_back(std::move(f));
    }
    return r;
}

std::string render_text(const analysis_report& report)
{
    std::ostringstream out;
    out << report.input << " (" << report.bytes << " bytes, " << report.duration_ms << " ms)\n";
    for (const auto& e : report.errors)
        out << "  error: " << e << '\n';
    for (const auto& f : report.findings)
    {
        out << "  " << to_string(f.detector) << ": " << to_string(f.result);
        if (f.degraded)
            out << " (degraded)";
        if (!f.reason.empty())
            out << " [" << f.reason << ']';
        out << '\n';
        for (const auto& e : f.evidence)
            out << "    func " << e.function << " @0x" << std::hex << e.offset << std::dec << ": "
                << e.message << '\n';
    }
    return out.str();
}
}  // namespace evulhunter
