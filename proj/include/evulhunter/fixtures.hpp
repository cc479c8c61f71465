// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "detectors.hpp"
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace evulhunter
{
/// Text-format contract with authoring-time metadata carried in `;; @`
/// comment directives:
///
///   ;; @label <detector> <vulnerable|safe|inconclusive>
///   ;; @expect <detector> <verdict>  expected verdict for fixtures kept out of labels.csv
///   ;; @variant <P1|P2|P3> <A|B>
///   ;; @dispatch <execute_action|direct>
///   ;; @handler <action> <function index>
///   ;; @guard <detector>          detector whose label flips when the guard is removed
///   ;; @guard-begin / ;; @guard-end   delimit a guard region (may repeat)
///   ;; @dispatch-begin / ;; @dispatch-end   delimit apply's action dispatcher
struct fixture_spec
{
    std::string name;
    std::string source;
    std::map<detector_kind, verdict> labels;
    std::map<detector_kind, verdict> expected;
    std::optional<std::pair<std::string, std::string>> variant;
    std::string dispatch;
    std::map<std::string, uint32_t> handlers;
    std::optional<detector_kind> guarded;
};

struct fixture_error : std::runtime_error
{
    using std::runtime_error::runtime_error;
};

struct no_guard_marker : fixture_error
{
    using fixture_error::fixture_error;
};

fixture_spec parse_fixture(std::string name, std::string source);

/// The template with its guard intact (labels unchanged) and a twin with every
/// guard region excised, labeled vulnerable for the guarded detector.
/// Throws no_guard_marker when the template has no guard region.
std::pair<fixture_spec, fixture_spec> generate_pairs(const fixture_spec& base);

/// Wraps the dispatcher region in `if (code == eosio.token) ... end` and
/// labels the result safe for the fake-transfer detector. Throws
/// fixture_error when the source has no dispatcher region.
fixture_spec insert_code_guard(const fixture_spec& spec);

/// Source with `@label` directives regenerated from `spec.labels`.
std::string render_fixture(const fixture_spec& spec);

/// Appends `functions` never-called functions of `steps` constant additions
/// each before the module's closing parenthesis.
std::string pad_source(const std::string& source, std::size_t functions, std::size_t steps = 100);
}  // namespace evulhunter
