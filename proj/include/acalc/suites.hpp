// SPDX-License-Identifier: MIT
// Declarative registry of verification suites: name -> defaults -> runner.
// Every suite carries at least one mutated-identity case expected to fail.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acalc/report.hpp"

namespace acalc {

// Parameters as given on the command line; unset fields take the suite defaults.
struct SuiteRequest {
    long p = 3;
    std::optional<int> M, N, K;
    std::optional<long> n_max;
};

struct SuiteSpec {
    std::string name;
    std::string summary;
    std::function<SuiteParams(const SuiteRequest&)> resolve;
    std::function<std::vector<CaseRecord>(const SuiteParams&)> run;
};

const std::vector<SuiteSpec>& suite_registry();
const SuiteSpec& find_suite(const std::string& name);  // UnknownSuite
SuiteReport run_suite(const std::string& name, const SuiteRequest& req);

}  // namespace acalc
