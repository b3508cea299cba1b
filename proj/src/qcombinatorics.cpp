// SPDX-License-Identifier: MIT
#include "acalc/qcombinatorics.hpp"

#include <mutex>
#include <numeric>
#include <sstream>

#include "acalc/bipoly.hpp"

namespace acalc {

namespace {

std::mutex g_mu;

// Pascal triangle in q: row n holds binom(n,k)_q for k = 0..n.
const IntQPoly& binom_q1(long n, long k) {
    static std::vector<std::vector<IntQPoly>> rows;
    std::lock_guard lock(g_mu);
    while (static_cast<long>(rows.size()) <= n) {
        const long m = static_cast<long>(rows.size());
        std::vector<IntQPoly> row(m + 1);
        row[0] = IntQPoly(1L);
        for (long j = 1; j <= m; ++j) {
            IntQPoly v = rows[m - 1][j - 1];
            if (j <= m - 1) v += rows[m - 1][j].shift(static_cast<std::size_t>(j));
            row[j] = std::move(v);
        }
        rows.push_back(std::move(row));
    }
    return rows[n][k];
}

}  // namespace

IntQPoly q_integer(long n, unsigned r) {
    if (n <= 0) return {};
    std::vector<mpz_class> v(static_cast<std::size_t>(r) * (n - 1) + 1, mpz_class(0));
    for (long k = 0; k < n; ++k) v[static_cast<std::size_t>(r) * k] = 1;
    return IntQPoly(std::move(v));
}

IntQPoly q_binomial(long n, long k, unsigned r) {
    if (n < 0 || k < 0 || k > n) return {};
    return binom_q1(n, k).subs_qpow(r);
}

IntQPoly q_factorial(long n, unsigned r) {
    IntQPoly f(1L);
    for (long j = 2; j <= n; ++j) f *= q_integer(j, r);
    return f;
}

const IntQPoly& stirling_q(StirlingKind kind, long n, long k, unsigned r) {
    // Memoized triangular tables keyed by (kind, r).
    static std::map<std::pair<int, unsigned>, std::vector<std::vector<IntQPoly>>> tables;
    static const IntQPoly zero;
    if (n < 0 || k < 0 || k > n) return zero;
    std::lock_guard lock(g_mu);
    auto& tab = tables[{kind == StirlingKind::First ? 0 : 1, r}];
    if (tab.empty()) tab.push_back({IntQPoly(1L)});
    while (static_cast<long>(tab.size()) <= n) {
        const long m = static_cast<long>(tab.size()) - 1;  // build row m+1 from row m
        const auto& prev = tab[m];
        std::vector<IntQPoly> row(m + 2);
        for (long j = 1; j <= m + 1; ++j) {
            IntQPoly v = prev[j - 1];
            if (j <= m) {
                if (kind == StirlingKind::First)
                    v -= q_integer(m, r) * prev[j];
                else
                    v += q_integer(j, r) * prev[j];
            }
            row[j] = std::move(v);
        }
        tab.push_back(std::move(row));
    }
    return tab[n][k];
}

const IntQPoly& cyclotomic(long n) {
    static std::map<long, IntQPoly> cache;
    {
        std::lock_guard lock(g_mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    if (n < 1) throw Error("cyclotomic: n must be positive");
    IntQPoly num = IntQPoly::q_pow(static_cast<std::size_t>(n)) - IntQPoly(1L);
    for (long d = 1; d < n; ++d)
        if (n % d == 0) num = euclid_div_exact(num, cyclotomic(d));
    std::lock_guard lock(g_mu);
    return cache.emplace(n, std::move(num)).first->second;
}

CycloFactors cyclotomic_subs(long n, long m) {
    CycloFactors f;
    const long nm = n * m;
    for (long k = 1; k <= nm; ++k)
        if (nm % k == 0 && k / std::gcd(k, m) == n) f[k] += 1;
    return f;
}

void add_factors(CycloFactors& acc, const CycloFactors& f, long times) {
    for (const auto& [d, e] : f) {
        long& slot = acc[d];
        slot += e * times;
        if (slot == 0) acc.erase(d);
    }
}

CycloFactors q_integer_factors(long n, unsigned r) {
    CycloFactors f;
    for (long d = 2; d <= n; ++d)
        if (n % d == 0) add_factors(f, cyclotomic_subs(d, r));
    return f;
}

CycloFactors q_factorial_factors(long n, unsigned r) {
    CycloFactors f;
    for (long j = 2; j <= n; ++j) add_factors(f, q_integer_factors(j, r));
    return f;
}

IntQPoly expand_factors(const CycloFactors& f) {
    IntQPoly r(1L);
    for (const auto& [d, e] : f) {
        if (e < 0) throw Error("expand_factors: negative exponent");
        const IntQPoly base = d == 0 ? IntQPoly::q_pow(1) : cyclotomic(d);
        r *= base.pow(static_cast<unsigned>(e));
    }
    return r;
}

std::optional<CombSuite> parse_comb_suite(const std::string& name) {
    if (name == "stirling-orthogonality") return CombSuite::StirlingOrthogonality;
    if (name == "stirling-elementary-symmetric") return CombSuite::StirlingElementarySymmetric;
    if (name == "stirling-qbinom") return CombSuite::StirlingQBinom;
    if (name == "stirling-functional") return CombSuite::FunctionalStirling;
    return std::nullopt;
}

IntQPoly elementary_symmetric(const std::vector<IntQPoly>& xs, long k) {
    // e_j of the prefix, updated one variable at a time.
    std::vector<IntQPoly> e(static_cast<std::size_t>(k) + 1);
    if (k < 0) return {};
    e[0] = IntQPoly(1L);
    for (const auto& x : xs)
        for (long j = k; j >= 1; --j) e[j] += x * e[j - 1];
    return e[k];
}

namespace {

std::string triple(long a, long b, long c = -1) {
    std::ostringstream os;
    os << "(" << a << "," << b;
    if (c >= 0) os << "," << c;
    os << ")";
    return os.str();
}

}  // namespace

Verdict verify_combinatorics(CombSuite suite, long n_max, unsigned r, const std::optional<StirlingMutation>& mutation) {
    auto s = [&](long n, long k) {
        IntQPoly v = stirling_q(StirlingKind::First, n, k, r);
        if (mutation && mutation->kind == StirlingKind::First && mutation->n == n && mutation->k == k) v += mutation->delta;
        return v;
    };
    auto S = [&](long n, long k) {
        IntQPoly v = stirling_q(StirlingKind::Second, n, k, r);
        if (mutation && mutation->kind == StirlingKind::Second && mutation->n == n && mutation->k == k) v += mutation->delta;
        return v;
    };
    switch (suite) {
        case CombSuite::StirlingOrthogonality:
            for (long n = 0; n <= n_max; ++n)
                for (long m = 0; m <= n_max; ++m) {
                    IntQPoly a, b;
                    for (long j = 0; j <= n_max; ++j) {
                        a += s(n, j) * S(j, m);
                        b += S(n, j) * s(j, m);
                    }
                    const IntQPoly delta = n == m ? IntQPoly(1L) : IntQPoly();
                    if (a != delta || b != delta) return Verdict::fail("(n,m)=" + triple(n, m));
                }
            return Verdict::ok();
        case CombSuite::StirlingElementarySymmetric:
            for (long n = 0; n <= n_max; ++n) {
                std::vector<IntQPoly> xs;
                for (long i = 1; i < n; ++i) xs.push_back(q_integer(i, r));
                for (long k = 0; k <= n; ++k) {
                    IntQPoly rhs = elementary_symmetric(xs, n - k);
                    if ((n - k) % 2) rhs = -rhs;
                    if (s(n, k) != rhs) return Verdict::fail("(n,k)=" + triple(n, k));
                }
            }
            return Verdict::ok();
        case CombSuite::StirlingQBinom: {
            const IntQPoly qm1 = IntQPoly::q_pow(r) - IntQPoly(1L);
            for (long n = 0; n <= n_max; ++n)
                for (long k = 0; k <= n; ++k) {
                    IntQPoly rhs;
                    for (long j = k; j <= n; ++j) {
                        IntQPoly term = IntQPoly::q_pow(static_cast<std::size_t>(r * (n - j) * (n - j - 1) / 2)) *
                                        q_binomial(n, j, r) * IntQPoly(mpz_class(binomial(j, k)));
                        if ((n - j) % 2) term = -term;
                        rhs += term;
                    }
                    if (qm1.pow(static_cast<unsigned>(n - k)) * s(n, k) != rhs) return Verdict::fail("(n,k)=" + triple(n, k));
                }
            return Verdict::ok();
        }
        case CombSuite::FunctionalStirling: {
            const BiPoly X = BiPoly::X(), Y = BiPoly::Y();
            BiPoly Xn = BiPoly::term(IntQPoly(1L), 0, 0);  // X_n, built incrementally
            BiPoly Xpow = Xn;                                // X^n
            std::vector<BiPoly> falling{Xn};
            for (long n = 0; n <= n_max; ++n) {
                if (n > 0) {
                    Xn = Xn * (X - q_integer(n - 1, r) * Y);
                    Xpow = Xpow * X;
                    falling.push_back(Xn);
                }
                BiPoly first, second;
                for (long k = 0; k <= n; ++k) {
                    first += BiPoly::term(s(n, k), static_cast<unsigned>(k), static_cast<unsigned>(n - k));
                    second += S(n, k) * (falling[k] * BiPoly::term(IntQPoly(1L), 0, static_cast<unsigned>(n - k)));
                }
                if (first != Xn) return Verdict::fail("first kind at n=" + std::to_string(n));
                if (second != Xpow) return Verdict::fail("second kind at n=" + std::to_string(n));
            }
            return Verdict::ok();
        }
    }
    return Verdict::fail("unreachable");
}

}  // namespace acalc
