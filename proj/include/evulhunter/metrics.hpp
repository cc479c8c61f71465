// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "detectors.hpp"
#include <nlohmann/json.hpp>
#include <cstddef>
#include <map>
#include <optional>
#include <string>

namespace evulhunter
{
struct confusion
{
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const noexcept { return tp + fp + tn + fn; }

    /// Absent when there are no positive predictions.
    std::optional<double> precision() const noexcept;
    /// Absent when there are no positive labels.
    std::optional<double> recall() const noexcept;
    std::optional<double> accuracy() const noexcept;

    confusion& operator+=(const confusion& o) noexcept;

    /// Scores one prediction; Inconclusive counts as a vulnerable prediction.
    void add(bool labeled_vulnerable, verdict predicted) noexcept;
};

struct metrics_summary
{
    std::map<detector_kind, confusion> per_detector;

    confusion total() const noexcept;
};

/// Ratios rounded to 4 decimal places; "n/a" for undefined ratios.
nlohmann::json to_json(const confusion& c);
nlohmann::json to_json(const metrics_summary& m);

/// Percentage with two decimals, e.g. "74.26%", or "n/a".
std::string format_percent(std::optional<double> ratio);
}  // namespace evulhunter
