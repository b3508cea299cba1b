// SPDX-License-Identifier: MIT
// Suite reports: canonical JSON (sorted keys, cases sorted by id), text output
// and field-by-field comparison against golden fixtures.
#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace acalc {

enum class CaseStatus { Pass, Fail, Skipped };
std::string to_string(CaseStatus s);
CaseStatus parse_status(const std::string& s);

struct CaseRecord {
    std::string id;
    CaseStatus expected = CaseStatus::Pass;  // negative controls expect Fail
    CaseStatus status = CaseStatus::Pass;
    std::string witness;                     // set whenever status is Fail
    bool ok() const { return status == CaseStatus::Skipped || status == expected; }
};

struct SuiteParams {
    long p = 3;
    int M = 4, N = 6, K = 2;
    long n_max = 0;
    friend bool operator==(const SuiteParams&, const SuiteParams&) = default;
};

struct SuiteReport {
    std::string suite;
    SuiteParams params;
    std::vector<CaseRecord> cases;
    double duration_ms = 0;

    bool ok() const;
    void sort_cases();
};

nlohmann::json to_json(const SuiteReport& r, bool with_duration = true);
SuiteReport report_from_json(const nlohmann::json& j);  // ParseError on malformed input
// Canonical serialization used for fixtures: no duration, two-space indent, trailing newline.
std::string canonical(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

// Mismatches between a report and a fixture, as "path: expected X, got Y".
// A header mismatch (suite or parameters) is reported first.
std::vector<std::string> golden_diff(const SuiteReport& actual, const SuiteReport& fixture);

}  // namespace acalc
