// SPDX-License-Identifier: MIT
#include "acalc/sen.hpp"

#include <map>
#include <mutex>

#include "acalc/coalgebra.hpp"
#include "acalc/errors.hpp"

namespace acalc {

namespace {

mpz_class pow_p(long p, int M) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(M));
    return r;
}

ZZeta mod_coords(const ZZeta& a, const mpz_class& m) {
    std::vector<mpz_class> c = a.coords();
    for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return ZZeta(a.p(), std::move(c));
}

ZZetaMatrix zmat_identity(long p, int r) {
    ZZetaMatrix m(static_cast<std::size_t>(r), std::vector<ZZeta>(static_cast<std::size_t>(r), ZZeta(p)));
    for (int i = 0; i < r; ++i) m[i][i] = ZZeta(p, mpz_class(1));
    return m;
}

ZZetaMatrix zmat_mul(const ZZetaMatrix& a, const ZZetaMatrix& b) {
    const std::size_t r = a.size();
    const long p = a[0][0].p();
    ZZetaMatrix c(r, std::vector<ZZeta>(r, ZZeta(p)));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t k = 0; k < r; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < r; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

ZZetaMatrix zmat_shift(ZZetaMatrix a, const ZZeta& s) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i][i] -= s;
    return a;
}

ZZetaMatrix zmat_mod(ZZetaMatrix a, const mpz_class& m) {
    for (auto& row : a)
        for (auto& x : row) x = mod_coords(x, m);
    return a;
}

bool zmat_is_zero(const ZZetaMatrix& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!x.is_zero()) return false;
    return true;
}

void check_square(const SenModule& s) {
    if (s.N.empty()) throw Error("SenModule: empty matrix");
    for (const auto& row : s.N) {
        if (row.size() != s.N.size()) throw Error("SenModule: matrix is not square");
        for (const auto& x : row)
            if (x.p() != s.p) throw WrongPrime("SenModule: entry over another prime");
    }
}

// Truncated bivariate polynomials over Q(zeta): c[i][j] on w1^i w2^j, i + j <= K.
struct BiTrunc {
    long p;
    int K;
    std::vector<std::vector<QZeta>> c;

    BiTrunc(long p_, int K_) : p(p_), K(K_), c(static_cast<std::size_t>(K_) + 1, std::vector<QZeta>(static_cast<std::size_t>(K_) + 1, QZeta(p_))) {}

    BiTrunc operator+(const BiTrunc& o) const {
        BiTrunc r = *this;
        for (int i = 0; i <= K; ++i)
            for (int j = 0; i + j <= K; ++j) r.c[i][j] += o.c[i][j];
        return r;
    }
    BiTrunc operator*(const BiTrunc& o) const {
        BiTrunc r(p, K);
        for (int i = 0; i <= K; ++i)
            for (int j = 0; i + j <= K; ++j) {
                if (c[i][j].is_zero()) continue;
                for (int a = 0; i + a <= K; ++a)
                    for (int b = 0; i + j + a + b <= K; ++b) r.c[i + a][j + b] += c[i][j] * o.c[a][b];
            }
        return r;
    }
    BiTrunc scaled(const QZeta& s) const {
        BiTrunc r = *this;
        for (auto& row : r.c)
            for (auto& x : row) x = s * x;
        return r;
    }
    bool operator==(const BiTrunc& o) const { return c == o.c; }
};

// log(1 + x) for x without constant term.
BiTrunc log1p(const BiTrunc& x) {
    BiTrunc r(x.p, x.K), pw = x;
    for (int n = 1; n <= x.K; ++n) {
        const mpq_class coef(n % 2 == 1 ? 1 : -1, n);
        r = r + pw.scaled(QZeta(x.p, coef));
        pw = pw * x;
    }
    return r;
}

bool p_integral(const QZeta& a, long p) {
    for (const auto& x : a.coords())
        if (mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(p))) return false;
    return true;
}

ZZeta reduce_integral(const QZeta& a, const mpz_class& m) {
    std::vector<mpz_class> c;
    for (const auto& x : a.coords()) {
        mpz_class inv;
        if (!mpz_invert(inv.get_mpz_t(), x.get_den_mpz_t(), m.get_mpz_t())) throw NotPIntegral("denominator divisible by p");
        c.push_back(x.get_num() * inv);
    }
    return mod_coords(ZZeta(a.p(), std::move(c)), m);
}

}  // namespace

Verdict verify_pq_prime(long p) {
    const ZZeta z = ZZeta::zeta(p);
    const ZZeta lhs = (z * z - z) * pq_prime(p);
    if (lhs != ZZeta(p, mpz_class(p)))
        return Verdict::fail("(zeta^2 - zeta)(p)'_zeta = " + lhs.to_string() + " at p = " + std::to_string(p));
    return Verdict::ok();
}

int pqprime_modp_sign(long p) {
    const ZZeta pw = (ZZeta::zeta(p) - ZZeta(p, mpz_class(1))).pow(static_cast<unsigned>(p - 2));
    for (int e : {1, -1})
        if (mod_coords(pq_prime(p) - pw * mpz_class(e), mpz_class(p)).is_zero()) return e;
    return 0;
}

Verdict verify_pqprime_modp(long p) {
    const ZZeta z = ZZeta::zeta(p);
    const ZZeta diff = pq_prime(p) - (z - ZZeta(p, mpz_class(1))).pow(static_cast<unsigned>(p - 2));
    if (!mod_coords(diff, mpz_class(p)).is_zero()) {
        std::string w = "(p)'_zeta - (zeta - 1)^{p-2} = " + diff.to_string() + " is not divisible by " + std::to_string(p);
        if (pqprime_modp_sign(p) == -1) w += "; the congruence holds with sign -1";
        return Verdict::fail(w);
    }
    return Verdict::ok();
}

mpz_class stirling1(long n, long k) {
    static std::map<std::pair<long, long>, mpz_class> cache;
    static std::mutex mu;
    if (n < 0 || k < 0 || k > n) return 0;
    if (n == 0) return 1;
    if (k == 0) return 0;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({n, k});
        if (it != cache.end()) return it->second;
    }
    const mpz_class v = stirling1(n - 1, k - 1) - (n - 1) * stirling1(n - 1, k);
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(n, k), v).first->second;
}

mpz_class stirling2(long n, long k) {
    static std::map<std::pair<long, long>, mpz_class> cache;
    static std::mutex mu;
    if (n < 0 || k < 0 || k > n) return 0;
    if (n == 0) return 1;
    if (k == 0) return 0;
    {
        std::lock_guard lock(mu);
        auto it = cache.find({n, k});
        if (it != cache.end()) return it->second;
    }
    const mpz_class v = stirling2(n - 1, k - 1) + k * stirling2(n - 1, k);
    std::lock_guard lock(mu);
    return cache.emplace(std::make_pair(n, k), v).first->second;
}

ZZetaMatrix sen_compose_upper(int n, const SenModule& s) {
    check_square(s);
    if (n < 0) throw Error("sen_compose_upper: negative order");
    const long p = s.p;
    const int r = s.rank();
    const ZZeta c = pq_prime(p);

    ZZetaMatrix prod = zmat_identity(p, r);
    for (int k = 0; k < n; ++k) prod = zmat_mul(prod, zmat_shift(s.N, c * mpz_class(k)));

    ZZetaMatrix stir(static_cast<std::size_t>(r), std::vector<ZZeta>(static_cast<std::size_t>(r), ZZeta(p)));
    if (n == 0) stir = zmat_identity(p, r);
    ZZetaMatrix Nk = zmat_identity(p, r);
    for (int k = 1; k <= n; ++k) {
        Nk = zmat_mul(Nk, s.N);
        const ZZeta coef = c.pow(static_cast<unsigned>(n - k)) * stirling1(n, k);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) stir[i][j] += coef * Nk[i][j];
    }
    if (prod != stir) throw Error("sen_compose_upper: product and Stirling forms differ at n = " + std::to_string(n));
    return prod;
}

bool sen_is_nilpotent(const SenModule& s, int M) {
    check_square(s);
    if (M < 1) throw PrecisionTooLow("sen_is_nilpotent: M must be positive");
    const long p = s.p;
    const int r = s.rank();
    const mpz_class mod = pow_p(p, M);
    const long bound = static_cast<long>(r) * (static_cast<long>(M) * (p - 1) + 1);
    const ZZetaMatrix N = zmat_mod(s.N, mod);

    ZZetaMatrix acc = zmat_identity(p, r);
    if (p == 2) {
        const ZZetaMatrix D = zmat_mod(zmat_mul(N, zmat_shift(N, ZZeta(p, mpz_class(1)))), mod);
        for (long n = 1; n <= bound; ++n) {
            acc = zmat_mod(zmat_mul(acc, D), mod);
            if (zmat_is_zero(acc)) return true;
        }
        return false;
    }
    const ZZeta c = pq_prime(p);
    for (long k = 0; k < bound; ++k) {
        acc = zmat_mod(zmat_mul(acc, zmat_shift(N, c * mpz_class(k))), mod);
        if (zmat_is_zero(acc)) return true;
    }
    return false;
}

Verdict ht_group_law(long p, int K) {
    if (K < 0) throw Error("ht_group_law: negative order");
    if (K == 0) return Verdict::ok();
    const ZZeta c = pq_prime(p);
    const TensorI d = comult_omega(p, K, 2);

    // Reduce q -> zeta; Delta(omega) must only involve 1, omega on each side.
    BiTrunc delta(p, K);
    for (int j = 0; j <= d.K_right(); ++j)
        for (int i = 0; i <= d.right_coeff(j).K(); ++i) {
            const ZZeta v = ZZeta::from_poly(p, d.right_coeff(j).coeff(i));
            if (v.is_zero()) continue;
            if (i > 1 || j > 1)
                return Verdict::fail("Delta(omega) mod (p)_q has a term omega^{{" + std::to_string(i) + "}} (x) omega^{{" +
                                     std::to_string(j) + "}}: " + v.to_string());
            if (i + j <= K) delta.c[i][j] = to_qzeta(v);
        }
    BiTrunc expect(p, K);
    expect.c[1][0] = QZeta(p, mpq_class(1));
    expect.c[0][1] = QZeta(p, mpq_class(1));
    if (K >= 2) expect.c[1][1] = to_qzeta(c);
    if (!(delta == expect)) return Verdict::fail("Delta(omega) mod (p)_q differs from 1 (x) w + w (x) 1 + (p)'_zeta w (x) w");

    BiTrunc w1(p, K), w2(p, K), one(p, K);
    w1.c[1][0] = QZeta(p, mpq_class(1));
    w2.c[0][1] = QZeta(p, mpq_class(1));
    one.c[0][0] = QZeta(p, mpq_class(1));
    if (p == 2) {
        if (!(one + delta == (one + w1) * (one + w2))) return Verdict::fail("1 + omega is not group-like mod (2)_q");
        return Verdict::ok();
    }
    const QZeta cq = to_qzeta(c);
    const BiTrunc lhs = log1p(delta.scaled(cq));
    const BiTrunc rhs = log1p(w1.scaled(cq)) + log1p(w2.scaled(cq));
    if (!(lhs == rhs)) return Verdict::fail("log(1 + (p)'_zeta omega) is not primitive");
    return Verdict::ok();
}

std::vector<QZeta> sen_delta_convert_exact(SenDirection dir, const std::vector<QZeta>& d) {
    if (d.empty()) return {};
    const long p = d[0].p();
    const int L = static_cast<int>(d.size());
    const QZeta z = QZeta::zeta(p);
    const QZeta step = (z - QZeta(p, mpq_class(1))) * z;  // (zeta - 1) zeta
    std::vector<QZeta> powers{QZeta(p, mpq_class(1))};
    for (int i = 1; i < L; ++i) powers.push_back(powers.back() * step);

    std::vector<QZeta> out(static_cast<std::size_t>(L), QZeta(p));
    for (int k = 0; k < L; ++k)
        for (int n = k; n < L; ++n) {
            if (d[n].is_zero()) continue;
            const mpz_class st = dir == SenDirection::ToSen ? stirling1(n, k) : stirling2(n, k);
            if (st == 0) continue;
            mpq_class coef(st * factorial(k), factorial(n));
            coef.canonicalize();
            out[k] += (powers[n - k] * coef) * d[n];
        }
    return out;
}

std::vector<OKElt> sen_delta_convert(SenDirection dir, const std::vector<OKElt>& d) {
    if (d.empty()) return {};
    const long p = d[0].p();
    const int M = d[0].M();
    std::vector<QZeta> lifted;
    for (const auto& x : d) {
        if (x.p() != p || x.M() != M) throw PrecisionMismatch("sen_delta_convert: mixed rings");
        lifted.push_back(to_qzeta(x.lift()));
    }
    const mpz_class mod = pow_p(p, M);
    std::vector<OKElt> out;
    for (const auto& y : sen_delta_convert_exact(dir, lifted)) {
        if (!p_integral(y, p)) throw NotPIntegral("sen_delta_convert: output " + std::to_string(out.size()) + " is not p-integral");
        out.emplace_back(p, M, reduce_integral(y, mod));
    }
    return out;
}

QZeta sen_operator_from_delta(const std::vector<QZeta>& d) {
    if (d.empty()) throw Error("sen_operator_from_delta: empty family");
    const long p = d[0].p();
    const QZeta z = QZeta::zeta(p);
    const QZeta step = z - z * z;
    QZeta acc(p), pw(p, mpq_class(1));
    for (std::size_t n = 1; n < d.size(); ++n) {
        acc += (pw * mpq_class(1, static_cast<long>(n))) * d[n];
        pw *= step;
    }
    return acc;
}

GnComparison gn_cohomology_compare(long n, long p) {
    if (n < 0) throw Error("gn_cohomology_compare: negative n");
    GnComparison g;
    g.p = p;
    g.n = n;
    const ZZeta c = pq_prime(p);
    g.sen = rank1_cohomology_OK(c * mpz_class(n));
    g.delta = rank1_cohomology_OK(build_reduced(p, n).A[0][0]);
    if (p == 2) {
        if (n == 2 && (g.sen.h1_torsion != std::vector<mpz_class>{2} || g.delta.h1_torsion != std::vector<mpz_class>{4}))
            g.verdict = Verdict::fail("p = 2, n = 2: expected Z/2 and Z/4, got " + g.sen.to_string() + " and " + g.delta.to_string());
        return g;
    }
    if (n > 0) {
        const Verdict lte = lte_check(n, p);
        if (!lte.pass) {
            g.verdict = lte;
            return g;
        }
    }
    if (g.sen.h1_free_rank != g.delta.h1_free_rank || g.sen.h1_order() != g.delta.h1_order())
        g.verdict = Verdict::fail("H^1 differ: Sen " + g.sen.to_string() + ", Delta " + g.delta.to_string());
    return g;
}

Verdict lte_check(long n_max, long p) {
    if (p == 2) throw WrongPrime("lte_check: p must be odd");
    mpz_class pw = 1;  // (p + 1)^n
    for (long n = 1; n <= n_max; ++n) {
        pw *= p + 1;
        const mpz_class qn = (pw - 1) / p;
        const long lhs = vp(qn, p), rhs = vp(mpz_class(n), p);
        if (lhs != rhs)
            return Verdict::fail("v_p((" + std::to_string(n) + ")_{p+1}) = " + std::to_string(lhs) + " but v_p(n) = " + std::to_string(rhs));
    }
    return Verdict::ok();
}

}  // namespace acalc
