// SPDX-License-Identifier: MIT
// Acceptance run: one PASS/FAIL line per criterion, with wall time against its budget.
// Criteria 1-12 judge the non-control cases of their suites; criterion 13 judges
// the negative controls of every suite run here.
#include <chrono>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "acalc/suites.hpp"

using namespace acalc;

namespace {

struct Run {
    std::string suite;
    SuiteRequest req;
};

struct Criterion {
    int id;
    std::string title;
    double budget_s;
    std::vector<Run> runs;
};

SuiteRequest req(long p, std::optional<int> M = {}, std::optional<int> N = {}, std::optional<int> K = {}, std::optional<long> n_max = {}) {
    SuiteRequest r;
    r.p = p;
    r.M = M;
    r.N = N;
    r.K = K;
    r.n_max = n_max;
    return r;
}

std::vector<Run> over(const std::vector<std::string>& suites, const std::vector<long>& primes,
                      const std::function<SuiteRequest(long)>& make) {
    std::vector<Run> out;
    for (const auto& s : suites)
        for (long p : primes) out.push_back({s, make(p)});
    return out;
}

bool is_control(const CaseRecord& c) { return c.expected == CaseStatus::Fail; }

std::vector<Criterion> criteria() {
    const auto plain = [](long p) { return req(p); };
    return {
        {1, "combinatorial identities", 10,
         over({"stirling-orthogonality", "stirling-elementary-symmetric", "stirling-qbinom", "stirling-functional"}, {2, 3, 5},
              [](long p) { return req(p, {}, {}, {}, 10); })},
        {2, "higher-derivative closed form", 10, over({"taylor-closed-form"}, {2, 3, 5}, [](long p) { return req(p, {}, {}, 6, 12); })},
        {3, "L(omega) by exact division", 5, over({"l-omega"}, {2, 3, 5, 7}, [](long p) { return req(p, {}, {}, 6); })},
        {4, "flip involution", 30, over({"flip"}, {3, 5}, [](long p) { return req(p, 6, 8, static_cast<int>(p) - 1); })},
        {5, "comultiplication", 60, over({"comult"}, {2, 3, 5}, [](long p) { return req(p, {}, {}, {}, 4); })},
        {6, "structure mod (p, q - 1)", 30, over({"modp-structure"}, {2, 3, 5}, [](long p) { return req(p, {}, {}, {}, 4); })},
        {7, "little Poincare solver", 60,
         over({"little-poincare"}, {3, 5}, [](long p) { return req(p, 4, 6, static_cast<int>(p) - 1, 20); })},
        {8, "hyperstratification solver", 60, {{"hyperstrat", req(5, 4, 8, 4)}}},
        {9, "cohomology", 10, over({"cohomology"}, {2, 3, 5, 7}, plain)},
        {10, "frobenius", 10, over({"frobenius"}, {2, 3, 5}, plain)},
        {11, "cyclotomic identities", 5, over({"cyclotomic"}, {2, 3, 5, 7}, [](long p) { return req(p, {}, {}, {}, 100); })},
        {12, "basis-change integrality", 30, over({"basis-change"}, {2, 3, 5}, [](long p) { return req(p, {}, {}, {}, 8); })},
    };
}

void print_line(int id, const std::string& title, bool pass, double secs, double budget, const std::vector<std::string>& notes) {
    std::printf("criterion %2d: %s  %-32s %7.2fs (budget %.0fs)\n", id, pass ? "PASS" : "FAIL", title.c_str(), secs, budget);
    for (const auto& n : notes) std::printf("               %s\n", n.c_str());
    std::fflush(stdout);
}

}  // namespace

int main() {
    int failed = 0;
    std::vector<SuiteReport> all;
    double control_secs = 0;
    for (const auto& c : criteria()) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<std::string> notes;
        for (const auto& r : c.runs) {
            SuiteReport rep = run_suite(r.suite, r.req);
            for (const auto& cs : rep.cases)
                if (!is_control(cs) && !cs.ok())
                    notes.push_back("p=" + std::to_string(rep.params.p) + " " + rep.suite + "/" + cs.id + ": " + cs.witness);
            all.push_back(std::move(rep));
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (secs > c.budget_s) notes.push_back("over budget");
        const bool pass = notes.empty();
        if (!pass) ++failed;
        print_line(c.id, c.title, pass, secs, c.budget_s, notes);
    }

    // Suites outside criteria 1-12 still contribute their controls.
    const auto t0 = std::chrono::steady_clock::now();
    for (long p : {2L, 3L, 5L}) all.push_back(run_suite("hodge-tate", req(p)));
    control_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    std::vector<std::string> notes;
    std::size_t controls = 0;
    for (const auto& s : suite_registry()) {
        bool seen = false;
        for (const auto& rep : all) {
            if (rep.suite != s.name) continue;
            seen = true;
            std::size_t here = 0;
            for (const auto& cs : rep.cases) {
                if (!is_control(cs)) continue;
                ++here;
                if (cs.status != CaseStatus::Fail) notes.push_back("p=" + std::to_string(rep.params.p) + " " + rep.suite + "/" + cs.id + " was not detected");
            }
            if (here == 0) notes.push_back("p=" + std::to_string(rep.params.p) + " " + rep.suite + " has no negative control");
            controls += here;
        }
        if (!seen) notes.push_back(s.name + " was not run");
    }
    const bool pass = notes.empty();
    if (!pass) ++failed;
    print_line(13, "negative controls (" + std::to_string(controls) + " cases)", pass, control_secs, 60, notes);

    std::printf("%d of 13 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
