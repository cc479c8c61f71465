// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "metrics.hpp"
#include "report.hpp"
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace evulhunter
{
struct label_row
{
    /// Path relative to the batch directory, '/'-separated.
    std::string file;
    detector_kind detector = detector_kind::fake_eos_transfer;
    bool vulnerable = false;
};

struct labels_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

/// CSV with header `file,detector,label`, label in {vulnerable, safe}.
std::vector<label_row> parse_labels(std::string_view csv);
std::vector<label_row> load_labels(const std::filesystem::path& path);

struct batch_options
{
    whitelist wl;
    detector_set which = all_detectors;
    /// Worker threads; 0 means one per hardware thread.
    unsigned jobs = 0;
};

struct batch_result
{
    /// One report per *.wasm file, sorted by relative path.
    std::vector<analysis_report> reports;
    metrics_summary metrics;
    /// Analyzed files without any label row.
    std::vector<std::string> unlabeled;
    /// Files that could not be read or parsed.
    std::vector<std::string> errors;
};

/// Analyzes every *.wasm under `dir` (recursively) and scores verdicts
/// against `labels`. Inconclusive verdicts score as vulnerable.
batch_result run_batch(
    const std::filesystem::path& dir, const std::vector<label_row>& labels, const batch_options& opts = {});

/// Rows `file,bytes,milliseconds` under that header.
std::string timing_csv(const batch_result& result);

nlohmann::json metrics_json(const batch_result& result);
}  // namespace evulhunter
