// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "evulhunter/metrics.hpp"
#include <cmath>
#include <cstdio>

namespace evulhunter
{
namespace
{
nlohmann::json ratio_json(std::optional<double> r)
{
    if (!r)
        return "n/a";
    return std::round(*r * 10000.0) / 10000.0;
}
}  // namespace

std::optional<double> confusion::precision() const noexcept
{
    if (tp + fp == 0)
        return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

std::optional<double> confusion::recall() const noexcept
{
    if (tp + fn == 0)
        return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

std::optional<double> confusion::accuracy() const noexcept
{
    if (total() == 0)
        return std::nullopt;
    return static_cast<double>(tp + tn) / static_cast<double>(total());
}

confusion& confusion::operator+=(const confusion& o) noexcept
{
    tp += o.tp;
    fp += o.fp;
    tn += o.tn;
    fn += o.fn;
    return *this;
}

void confusion::add(bool labeled_vulnerable, verdict predicted) noexcept
{
    const bool flagged = predicted != verdict::safe;
    if (labeled_vulnerable)
        ++(flagged ? tp : fn);
    else
        ++(flagged ? fp : tn);
}

confusion metrics_summary::total() const noexcept
{
    confusion sum;
    for (const auto& [d, c] : per_detector)
        sum += c;
    return sum;
}

nlohmann::json to_json(const confusion& c)
{
    return {{"tp", c.tp}, {"fp", c.fp}, {"tn", c.tn}, {"fn", c.fn},
        {"precision", ratio_json(c.precision())}, {"recall", ratio_json(c.recall())},
        {"accuracy", ratio_json(c.accuracy())}};
}

nlohmann::json to_json(const metrics_summary& m)
{
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [d, c] : m.per_detector)
        j[std::string{to_string(d)}] = to_json(c);
    j["total"] = to_json(m.total());
    return j;
}

std::string format_percent(std::optional<double> ratio)
{
    if (!ratio)
        return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f%%", *ratio * 100.0);
    return buf;
}
}  // namespace evulhunter
