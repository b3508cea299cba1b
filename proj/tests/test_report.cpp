// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include "acalc/errors.hpp"
#include "acalc/parse.hpp"
#include "acalc/suites.hpp"

using namespace acalc;

namespace {

SuiteReport sample() {
    SuiteReport r;
    r.suite = "demo";
    r.params = {5, 4, 8, 4, 3};
    r.cases = {{"b", CaseStatus::Pass, CaseStatus::Pass, ""},
               {"a", CaseStatus::Fail, CaseStatus::Fail, "x != y"},
               {"c", CaseStatus::Pass, CaseStatus::Skipped, "n/a"}};
    r.duration_ms = 12.5;
    return r;
}

}  // namespace

TEST(Parse, Literals) {
    EXPECT_EQ(parse_qpoly("q^2"), IntQPoly::q_pow(2));
    EXPECT_EQ(parse_qpoly("3q^2 - q + 1"), (IntQPoly{1, -1, 3}));
    EXPECT_EQ(parse_qpoly(" -2*q^3+q^3 "), (IntQPoly{0, 0, 0, -1}));
    EXPECT_EQ(parse_qpoly("7"), IntQPoly(7L));
    EXPECT_EQ(parse_qpoly("q - q"), IntQPoly());
    EXPECT_EQ(parse_qpoly("123456789012345678901234567890 q").coeff(1), mpz_class("123456789012345678901234567890"));
    for (const char* bad : {"", "q^", "3q^^2", "x", "2 3", "q^-1", "1/2", "q +", "*q"})
        EXPECT_THROW(parse_qpoly(bad), ParseError) << bad;
}

TEST(Report, JsonRoundTripAndCanonical) {
    const SuiteReport r = sample();
    const nlohmann::json j = to_json(r);
    EXPECT_EQ(j.at("duration_ms"), 12);
    EXPECT_EQ(j.at("cases")[0].at("id"), "a");
    const SuiteReport back = report_from_json(j);
    EXPECT_EQ(back.params, r.params);
    EXPECT_EQ(canonical(back), canonical(r));
    EXPECT_EQ(canonical(r).find("duration"), std::string::npos);
    EXPECT_TRUE(golden_diff(back, r).empty());
    EXPECT_THROW(report_from_json(nlohmann::json{{"suite", "x"}}), ParseError);
    EXPECT_THROW(parse_status("maybe"), ParseError);
}

TEST(Report, Ok) {
    SuiteReport r = sample();
    EXPECT_TRUE(r.ok());
    r.cases[1].status = CaseStatus::Pass;  // negative control that no longer fails
    EXPECT_FALSE(r.ok());
}

TEST(Report, GoldenDiff) {
    const SuiteReport f = sample();
    SuiteReport a = f;
    a.cases[0].witness = "x != z";
    const auto d = golden_diff(a, f);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d[0], "cases[b].witness: expected \"\", got \"x != z\"");

    a = f;
    a.params.K = 2;
    a.cases.clear();
    const auto h = golden_diff(a, f);
    ASSERT_EQ(h.size(), 1u);
    EXPECT_EQ(h[0], "header.params.K: expected 4, got 2");

    a = f;
    a.cases.push_back({"z", CaseStatus::Pass, CaseStatus::Pass, ""});
    a.cases.erase(a.cases.begin());
    const auto m = golden_diff(a, f);
    ASSERT_EQ(m.size(), 2u);
    EXPECT_EQ(m[0], "cases[b]: missing");
    EXPECT_EQ(m[1], "cases[z]: not in fixture");
}

TEST(Suites, Registry) {
    EXPECT_THROW(find_suite("nope"), UnknownSuite);
    for (const auto& s : suite_registry()) {
        const SuiteParams p = s.resolve(SuiteRequest{});
        EXPECT_EQ(p.p, 3) << s.name;
    }
    SuiteRequest req;
    req.p = 5;
    req.K = 3;
    EXPECT_EQ(find_suite("flip").resolve(req).K, 3);
    req.K.reset();
    EXPECT_EQ(find_suite("flip").resolve(req).K, 4);
}

TEST(Suites, DeterministicAndControlled) {
    for (const char* name : {"stirling-qbinom", "l-omega", "cyclotomic", "cohomology", "frobenius", "hodge-tate", "little-poincare"}) {
        const SuiteReport a = run_suite(name, {});
        const SuiteReport b = run_suite(name, {});
        EXPECT_EQ(canonical(a), canonical(b)) << name;
        bool control = false;
        for (const auto& c : a.cases) {
            if (c.expected == CaseStatus::Fail) control = true;
            if (c.status == CaseStatus::Fail) EXPECT_FALSE(c.witness.empty()) << name << " " << c.id;
        }
        EXPECT_TRUE(control) << name;
    }
}
