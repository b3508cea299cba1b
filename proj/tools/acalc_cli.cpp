// SPDX-License-Identifier: MIT
// acalc: run verification suites, print tables, Taylor expansions and cohomology.
// Exit codes: 0 all pass, 1 verification failure, 2 usage or parse error.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "acalc/connections.hpp"
#include "acalc/errors.hpp"
#include "acalc/omega.hpp"
#include "acalc/parse.hpp"
#include "acalc/qcombinatorics.hpp"
#include "acalc/suites.hpp"

using namespace acalc;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("'" + path + "': " + e.what());
    }
}

void require_prime(long p) {
    if (p < 2) throw UsageError("--p must be a prime");
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) throw UsageError("--p must be a prime, got " + std::to_string(p));
}

struct SuiteOpts {
    std::string name, format = "text", golden, emit;
    SuiteRequest req;
    bool list = false;
};

int cmd_suite(const SuiteOpts& o) {
    if (o.list) {
        for (const auto& s : suite_registry()) std::cout << s.name << "  " << s.summary << "\n";
        return kPass;
    }
    if (o.name.empty()) throw UsageError("suite run: --name is required (see 'suite run --list')");
    require_prime(o.req.p);
    if (!o.golden.empty() && !std::filesystem::exists(o.golden)) throw UsageError("fixture '" + o.golden + "' does not exist");
    const SuiteReport rep = run_suite(o.name, o.req);
    if (o.format == "json")
        std::cout << to_json(rep).dump(2) << "\n";
    else
        std::cout << to_text(rep);
    if (!o.emit.empty()) {
        std::ofstream out(o.emit, std::ios::binary);
        if (!out) throw UsageError("cannot write '" + o.emit + "'");
        out << canonical(rep);
    }
    int code = rep.ok() ? kPass : kFail;
    if (!o.golden.empty()) {
        const auto diff = golden_diff(rep, report_from_json(read_json(o.golden)));
        for (const auto& d : diff) std::cerr << "golden mismatch: " << d << "\n";
        if (diff.empty())
            std::cerr << "golden: identical to " << o.golden << "\n";
        else
            code = kFail;
    }
    return code;
}

int cmd_table(const std::string& kind, long n, unsigned r) {
    if (n < 0) throw UsageError("--n must be non-negative");
    if (r < 1) throw UsageError("--qpow must be positive");
    for (long m = 0; m <= n; ++m)
        for (long k = 0; k <= m; ++k) {
            IntQPoly v;
            if (kind == "qbinom")
                v = q_binomial(m, k, r);
            else if (kind == "stirling-first")
                v = stirling_q(StirlingKind::First, m, k, r);
            else
                v = stirling_q(StirlingKind::Second, m, k, r);
            std::cout << "(" << m << "," << k << ")  " << v.to_string() << "\n";
        }
    return kPass;
}

int cmd_taylor(const std::string& poly, long p, int K) {
    require_prime(p);
    if (K < 0) throw UsageError("--omega-order must be non-negative");
    const IntQPoly f = parse_qpoly(poly);
    const OmegaI t = taylor_theta(f, p, K);
    std::cout << "theta(" << f.to_string() << ") at p=" << p << ", K=" << K << "\n";
    for (int k = 0; k <= K; ++k) std::cout << "omega^{{" << k << "}}: " << t.coeff(k).to_string() << "\n";
    return kPass;
}

ZZeta integral(const QZeta& a) {
    std::vector<mpz_class> c;
    for (const auto& x : a.coords()) {
        if (x.get_den() != 1) throw Error("connection is not integral at q = zeta");
        c.push_back(x.get_num());
    }
    return ZZeta(a.p(), std::move(c));
}

// Connection scalar of the rank one module at q = zeta.
ZZeta reduced_scalar(const std::string& module, long n, long p) {
    if (module == "Gn") return build_reduced(p, n).A[0][0];
    if (module == "Fn") {
        if (n < 0) throw UsageError("F_n needs n >= 0");
        return ZZeta::from_poly(p, alpha_n(p, n));
    }
    // BK(n): ((p+1)^n / (p+1)_q^n - 1) / (q^2 - q), and (p+1)_zeta = 1.
    mpq_class pow = 1;
    for (long i = 0; i < std::labs(n); ++i) pow *= p + 1;
    if (n < 0) pow = 1 / pow;
    const ZZeta z = ZZeta::zeta(p);
    const QZeta num(p, pow - 1);
    return integral(num * inverse(to_qzeta(z * z - z)));
}

int cmd_cohomology(const std::string& module, long n, long p) {
    require_prime(p);
    const ZZeta a = reduced_scalar(module, n, p);
    const Rank1Cohomology c = rank1_cohomology_OK(a);
    const auto [h0, h1] = rank1_cohomology_mod_p(a);
    std::cout << module << " n=" << n << " p=" << p << ": d = " << a.to_string() << "\n";
    std::cout << "H1 invariants [";
    for (std::size_t i = 0; i < c.h1_torsion.size(); ++i) std::cout << (i ? ", " : "") << c.h1_torsion[i].get_str();
    std::cout << "]\n" << c.to_string() << "\n";
    std::cout << "mod p: dim H0 = " << h0 << ", dim H1 = " << h1 << "\n";
    return kPass;
}

int cmd_merge(const std::vector<std::string>& paths) {
    nlohmann::json all = nlohmann::json::array();
    bool ok = true;
    for (const auto& path : paths) {
        const SuiteReport r = report_from_json(read_json(path));
        ok = ok && r.ok();
        all.push_back(to_json(r, false));
    }
    std::cout << nlohmann::json{{"ok", ok}, {"reports", all}}.dump(2) << "\n";
    return ok ? kPass : kFail;
}

int cmd_diff(const std::string& report, const std::string& fixture) {
    if (!std::filesystem::exists(fixture)) throw UsageError("fixture '" + fixture + "' does not exist");
    const auto diff = golden_diff(report_from_json(read_json(report)), report_from_json(read_json(fixture)));
    for (const auto& d : diff) std::cout << d << "\n";
    return diff.empty() ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact calculus over W[[q-1]]: verification suites and computations"};
    app.require_subcommand(1);

    SuiteOpts so;
    auto* suite = app.add_subcommand("suite", "verification suites");
    suite->require_subcommand(1);
    auto* run = suite->add_subcommand("run", "run one suite");
    run->add_option("--name", so.name, "suite id");
    run->add_flag("--list", so.list, "list suites");
    run->add_option("--p", so.req.p, "prime")->default_val(3);
    run->add_option("--padic-prec", so.req.M, "p-adic precision M");
    run->add_option("--t-prec", so.req.N, "t-adic precision N");
    run->add_option("--omega-order", so.req.K, "omega truncation K");
    run->add_option("--nmax", so.req.n_max, "index bound");
    run->add_option("--format", so.format, "output format")->check(CLI::IsMember({"text", "json"}));
    run->add_option("--golden", so.golden, "compare against a fixture");
    run->add_option("--emit-golden", so.emit, "write the canonical report");

    std::string kind;
    long n = 0;
    unsigned qpow = 1;
    auto* table = app.add_subcommand("table", "q-binomial and q-Stirling tables");
    table->add_option("--kind", kind)->required()->check(CLI::IsMember({"qbinom", "stirling-first", "stirling-second"}));
    table->add_option("--n", n)->required();
    table->add_option("--qpow", qpow, "q-power base r")->default_val(1);

    std::string poly;
    long p = 3;
    int K = 2;
    auto* taylor = app.add_subcommand("taylor", "Taylor expansion theta(f) in divided powers of omega");
    taylor->add_option("--poly", poly)->required();
    taylor->add_option("--p", p)->required();
    taylor->add_option("--omega-order", K)->required();

    std::string module;
    auto* coh = app.add_subcommand("cohomology", "cohomology of a rank one module over O_K");
    coh->add_option("--module", module)->required()->check(CLI::IsMember({"Fn", "Gn", "BK"}));
    coh->add_option("--n", n)->required();
    coh->add_option("--p", p)->required();

    std::vector<std::string> paths;
    std::string report_path, fixture_path;
    auto* report = app.add_subcommand("report", "report files");
    report->require_subcommand(1);
    auto* merge = report->add_subcommand("merge", "merge reports into one document");
    merge->add_option("paths", paths)->required();
    auto* diff = report->add_subcommand("diff", "compare a report with a golden fixture");
    diff->add_option("report", report_path)->required();
    diff->add_option("fixture", fixture_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*run) return cmd_suite(so);
        if (*table) return cmd_table(kind, n, qpow);
        if (*taylor) return cmd_taylor(poly, p, K);
        if (*coh) return cmd_cohomology(module, n, p);
        if (*merge) return cmd_merge(paths);
        if (*diff) return cmd_diff(report_path, fixture_path);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const UnknownSuite& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFail;
    }
    return kUsage;
}
