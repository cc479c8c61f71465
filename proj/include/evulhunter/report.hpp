// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "detectors.hpp"
#include "whitelist.hpp"
#include <nlohmann/json.hpp>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace evulhunter
{
using detector_set = std::set<detector_kind>;

inline const detector_set all_detectors{
    detector_kind::fake_eos_transfer, detector_kind::fake_transfer_notice};

struct analysis_report
{
    std::string input;
    std::size_t bytes = 0;
    std::vector<finding> findings;
    double duration_ms = 0.0;
    std::string tool_version = EVULHUNTER_VERSION;
    std::vector<std::string> errors;

    const finding* find(detector_kind d) const noexcept;
};

/// Parses and runs the selected detectors. Malformed input yields a report
/// with an error entry instead of throwing. The duration covers parsing and
/// detection only.
analysis_report analyze(std::span<const uint8_t> bytes, const whitelist& wl = {},
    const detector_set& which = all_detectors, std::string input = {});

/// Process exit status: 0 all safe, 1 any vulnerable or inconclusive, 2 input error.
int exit_status(const analysis_report& report) noexcept;

nlohmann::json to_json(const analysis_report& report);
/// Throws nlohmann::json::exception or std::invalid_argument on schema violations.
analysis_report report_from_json(const nlohmann::json& j);

std::string render_text(const analysis_report& report);
}  // namespace evulhunter
