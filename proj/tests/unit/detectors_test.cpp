// evulhunter: fake-transfer detection for EOSIO WebAssembly contracts
// Copyright 2026 The evulhunter Authors.
// SPDX-License-Identifier: Apache-2.0

#include "unit/test_util.hpp"
#include <evulhunter/detectors.hpp>
#include <evulhunter/report.hpp>
#include <gtest/gtest.h>

using namespace evulhunter;

namespace
{
verdict transfer_verdict(const wasm_module& m, const whitelist& wl = {})
{
    return detect_fake_eos_transfer(m, wl).result;
}

verdict notice_verdict(const wasm_module& m)
{
    return detect_fake_notice(m).result;
}

whitelist with_eosbet()
{
    whitelist wl;
    wl.add(encode_name("eosbettokens"));
    return wl;
}
}  // namespace

TEST(detectors, transfer_guard_decides)
{
    EXPECT_EQ(transfer_verdict(test::corpus_module("fake-transfer/P1-A/exec_vuln.wasm")), verdict::vulnerable);
    EXPECT_EQ(transfer_verdict(test::corpus_module("fake-transfer/P1-A/exec_safe.wasm")), verdict::safe);
    EXPECT_EQ(transfer_verdict(test::corpus_module("fake-transfer/P3-B/direct_safe.wasm")), verdict::safe);
    EXPECT_EQ(transfer_verdict(test::corpus_module("fake-transfer/P3-B/direct_vuln.wasm")), verdict::vulnerable);
}

TEST(detectors, vulnerable_transfer_evidence_names_the_call)
{
    const auto f = detect_fake_eos_transfer(test::corpus_module("fake-transfer/P2-A/direct_vuln.wasm"), {});
    ASSERT_EQ(f.result, verdict::vulnerable);
    ASSERT_EQ(f.evidence.size(), 1u);
    EXPECT_NE(f.evidence[0].message.find("developer function 7"), std::string::npos);
    EXPECT_FALSE(f.degraded);
}

TEST(detectors, two_tokens_needs_whitelist)
{
    const auto m = test::corpus_module("fake-transfer/whitelist/two_tokens.wasm");
    EXPECT_EQ(transfer_verdict(m), verdict::vulnerable);
    EXPECT_EQ(transfer_verdict(m, with_eosbet()), verdict::safe);
}

TEST(detectors, whitelist_is_monotone)
{
    const auto wl = with_eosbet();
    for (const auto& path : test::wasm_files(test::corpus_dir))
    {
        const auto m = test::load(path);
        if (transfer_verdict(m) == verdict::safe)
            EXPECT_EQ(transfer_verdict(m, wl), verdict::safe) << path;
    }
}

TEST(detectors, xor_assert_guard)
{
    EXPECT_EQ(transfer_verdict(test::test_module("xor_assert")), verdict::safe);
}

TEST(detectors, runtime_helpers_are_not_developer_code)
{
    const auto m = test::test_module("runtime_only");
    const auto dev = developer_functions(m);
    EXPECT_FALSE(dev[*find_export(m, "apply")]);
    EXPECT_FALSE(dev[2 + 1]);
    const auto f = detect_fake_eos_transfer(m, {});
    EXPECT_EQ(f.result, verdict::safe);
    ASSERT_EQ(f.evidence.size(), 1u);
    EXPECT_NE(f.evidence[0].message.find("no developer function call"), std::string::npos);
}

TEST(detectors, developer_functions_follow_call_graph)
{
    const auto m = test::corpus_module("fake-transfer/P1-A/exec_safe.wasm");
    const auto dev = developer_functions(m);
    EXPECT_FALSE(dev[4]);  // __wasm_call_ctors
    EXPECT_TRUE(dev[5]);   // apply reaches execute_action
    EXPECT_TRUE(dev[6]);   // execute_action holds call_indirect
    EXPECT_TRUE(dev[7]);
    EXPECT_TRUE(dev[8]);
}

TEST(detectors, path_budget_is_conservative)
{
    const auto f = detect_fake_eos_transfer(test::test_module("path_budget"), {});
    EXPECT_EQ(f.result, verdict::vulnerable);
    EXPECT_TRUE(f.degraded);
    ASSERT_FALSE(f.evidence.empty());
    EXPECT_NE(f.evidence[0].message.find("PathBudgetExceeded"), std::string::npos);
}

TEST(detectors, locate_handlers_direct_call)
{
    const auto map = locate_handlers(test::test_module("handlers_hi"));
    EXPECT_EQ(map.lookup(encode_name("hi")), std::set<uint32_t>{2});
    EXPECT_FALSE(map.degraded);
}

TEST(detectors, locate_handlers_execute_action)
{
    const auto map = locate_handlers(test::corpus_module("fake-notice/P1-A/exec_safe.wasm"));
    EXPECT_EQ(map.lookup(names::transfer), std::set<uint32_t>{8});
    EXPECT_EQ(map.unresolved_sites, 0u);
    const auto pair_b = locate_handlers(test::corpus_module("fake-transfer/P2-B/exec_safe.wasm"));
    EXPECT_EQ(pair_b.lookup(encode_name("hi")), std::set<uint32_t>{7});
    EXPECT_EQ(pair_b.lookup(names::transfer), std::set<uint32_t>{8});
}

TEST(detectors, unresolved_dispatch_counts)
{
    const auto m = test::test_module("indirect_unknown");
    const auto map = locate_handlers(m);
    EXPECT_EQ(map.unresolved_sites, 1u);
    const auto f = detect_fake_eos_transfer(m, {});
    EXPECT_EQ(f.result, verdict::vulnerable);
    EXPECT_TRUE(f.degraded);
}

TEST(detectors, notice_check)
{
    EXPECT_EQ(notice_verdict(test::corpus_module("fake-notice/P3-A/direct_safe.wasm")), verdict::safe);
    EXPECT_EQ(notice_verdict(test::corpus_module("fake-notice/P3-A/direct_vuln.wasm")), verdict::vulnerable);
    EXPECT_EQ(notice_verdict(test::corpus_module("fake-notice/P1-B/exec_safe.wasm")), verdict::safe);
    EXPECT_EQ(notice_verdict(test::corpus_module("fake-notice/P1-B/exec_vuln.wasm")), verdict::vulnerable);
}

TEST(detectors, notice_check_in_direct_callee)
{
    const auto f = detect_fake_notice(test::test_module("notice_in_callee"));
    EXPECT_EQ(f.result, verdict::safe);
    ASSERT_FALSE(f.evidence.empty());
    EXPECT_EQ(f.evidence[0].function, 5u);
}

TEST(detectors, notice_check_position_is_irrelevant)
{
    EXPECT_EQ(notice_verdict(test::test_module("notice_late_check")), verdict::safe);
}

TEST(detectors, no_transfer_handler)
{
    for (const auto* rel : {"misc/apply_min.wasm", "fake-notice/no-handler/no_transfer_handler.wasm"})
    {
        const auto f = detect_fake_notice(test::corpus_module(rel));
        EXPECT_EQ(f.result, verdict::inconclusive);
        EXPECT_EQ(f.reason, "NoTransferHandler");
    }
}

TEST(detectors, bad_apply_is_inconclusive)
{
    const auto m = test::test_module("apply_two_params");
    const auto t = detect_fake_eos_transfer(m, {});
    EXPECT_EQ(t.result, verdict::inconclusive);
    EXPECT_NE(t.reason.find("BadApplySignature"), std::string::npos);
    EXPECT_EQ(detect_fake_notice(m).result, verdict::inconclusive);
}

TEST(detectors, findings_carry_evidence_or_reason)
{
    for (const auto& path : test::wasm_files(test::corpus_dir))
    {
        const auto report = analyze(test::read_bytes(path));
        ASSERT_TRUE(report.errors.empty()) << path;
        ASSERT_EQ(report.findings.size(), 2u);
        for (const auto& f : report.findings)
        {
            if (f.result == verdict::inconclusive)
                EXPECT_FALSE(f.reason.empty()) << path;
            else
                EXPECT_FALSE(f.evidence.empty()) << path;
        }
    }
}

TEST(detectors, guard_flip_variants_are_safe)
{
    const auto rows = test::csv_rows(test::flip_dir / "labels.csv");
    std::size_t checked = 0;
    for (const auto& row : rows)
    {
        if (row[1] != "fake-transfer")
            continue;
        EXPECT_EQ(row[2], "safe");
        EXPECT_EQ(transfer_verdict(test::load(test::flip_dir / row[0])), verdict::safe) << row[0];
        ++checked;
    }
    EXPECT_EQ(checked, 12u);
}

TEST(detectors, analysis_is_deterministic)
{
    for (const auto& path : test::wasm_files(test::corpus_dir))
    {
        const auto bytes = test::read_bytes(path);
        auto a = to_json(analyze(bytes));
        auto b = to_json(analyze(bytes));
        a.erase("duration_ms");
        b.erase("duration_ms");
        EXPECT_EQ(a, b) << path;
    }
}
