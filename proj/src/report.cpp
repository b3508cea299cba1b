// SPDX-License-Identifier: MIT
#include "acalc/report.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "acalc/errors.hpp"

namespace acalc {

std::string to_string(CaseStatus s) {
    switch (s) {
        case CaseStatus::Pass: return "pass";
        case CaseStatus::Fail: return "fail";
        case CaseStatus::Skipped: return "skipped";
    }
    return "?";
}

CaseStatus parse_status(const std::string& s) {
    if (s == "pass") return CaseStatus::Pass;
    if (s == "fail") return CaseStatus::Fail;
    if (s == "skipped") return CaseStatus::Skipped;
    throw ParseError("unknown case status '" + s + "'");
}

bool SuiteReport::ok() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseRecord& c) { return c.ok(); });
}

void SuiteReport::sort_cases() {
    std::sort(cases.begin(), cases.end(), [](const CaseRecord& a, const CaseRecord& b) { return a.id < b.id; });
}

namespace {

nlohmann::json params_json(const SuiteParams& p) {
    return {{"K", p.K}, {"M", p.M}, {"N", p.N}, {"n_max", p.n_max}, {"p", p.p}};
}

}  // namespace

nlohmann::json to_json(const SuiteReport& r, bool with_duration) {
    SuiteReport s = r;
    s.sort_cases();
    nlohmann::json cases = nlohmann::json::array();
    for (const auto& c : s.cases)
        cases.push_back({{"expected", to_string(c.expected)}, {"id", c.id}, {"status", to_string(c.status)}, {"witness", c.witness}});
    nlohmann::json j = {{"cases", cases}, {"ok", s.ok()}, {"params", params_json(s.params)}, {"suite", s.suite}};
    if (with_duration) j["duration_ms"] = static_cast<long long>(s.duration_ms);
    return j;
}

SuiteReport report_from_json(const nlohmann::json& j) {
    try {
        SuiteReport r;
        r.suite = j.at("suite").get<std::string>();
        const auto& p = j.at("params");
        r.params = {p.at("p").get<long>(), p.at("M").get<int>(), p.at("N").get<int>(), p.at("K").get<int>(), p.at("n_max").get<long>()};
        for (const auto& c : j.at("cases"))
            r.cases.push_back({c.at("id").get<std::string>(), parse_status(c.at("expected").get<std::string>()),
                               parse_status(c.at("status").get<std::string>()), c.at("witness").get<std::string>()});
        if (j.contains("duration_ms")) r.duration_ms = j.at("duration_ms").get<double>();
        r.sort_cases();
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what());
    }
}

std::string canonical(const SuiteReport& r) { return to_json(r, false).dump(2) + "\n"; }

std::string to_text(const SuiteReport& r) {
    SuiteReport s = r;
    s.sort_cases();
    std::ostringstream os;
    const auto& p = s.params;
    os << "suite " << s.suite << " (p=" << p.p << " M=" << p.M << " N=" << p.N << " K=" << p.K << " n_max=" << p.n_max << ")\n";
    int bad = 0;
    for (const auto& c : s.cases) {
        os << "  " << (c.ok() ? "ok  " : "BAD ") << to_string(c.status);
        if (c.expected == CaseStatus::Fail) os << " (expected fail)";
        os << "  " << c.id;
        if (!c.witness.empty()) os << "  -- " << c.witness;
        os << "\n";
        if (!c.ok()) ++bad;
    }
    os << (bad == 0 ? "all " + std::to_string(s.cases.size()) + " cases as expected" : std::to_string(bad) + " unexpected result(s)") << " in "
       << static_cast<long long>(s.duration_ms) << " ms\n";
    return os.str();
}

std::vector<std::string> golden_diff(const SuiteReport& actual, const SuiteReport& fixture) {
    std::vector<std::string> out;
    if (actual.suite != fixture.suite) out.push_back("header.suite: expected " + fixture.suite + ", got " + actual.suite);
    const nlohmann::json pa = params_json(actual.params), pf = params_json(fixture.params);
    for (const auto& [k, v] : pf.items())
        if (pa.at(k) != v) out.push_back("header.params." + k + ": expected " + v.dump() + ", got " + pa.at(k).dump());
    if (!out.empty()) return out;

    std::map<std::string, const CaseRecord*> got;
    for (const auto& c : actual.cases) got[c.id] = &c;
    std::map<std::string, const CaseRecord*> want;
    for (const auto& c : fixture.cases) want[c.id] = &c;
    for (const auto& [id, f] : want) {
        auto it = got.find(id);
        if (it == got.end()) {
            out.push_back("cases[" + id + "]: missing");
            continue;
        }
        const CaseRecord& a = *it->second;
        if (a.expected != f->expected) out.push_back("cases[" + id + "].expected: expected " + to_string(f->expected) + ", got " + to_string(a.expected));
        if (a.status != f->status) out.push_back("cases[" + id + "].status: expected " + to_string(f->status) + ", got " + to_string(a.status));
        if (a.witness != f->witness) out.push_back("cases[" + id + "].witness: expected \"" + f->witness + "\", got \"" + a.witness + "\"");
    }
    for (const auto& [id, a] : got)
        if (!want.count(id)) out.push_back("cases[" + id + "]: not in fixture");
    return out;
}

}  // namespace acalc
