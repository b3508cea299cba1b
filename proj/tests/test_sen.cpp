// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "acalc/errors.hpp"
#include "acalc/sen.hpp"
#include "acalc/smith.hpp"

using namespace acalc;

namespace {

ZZeta zz(long p, std::vector<long> c) {
    std::vector<mpz_class> v(c.begin(), c.end());
    return ZZeta(p, std::move(v));
}

SenModule rank1(long p, const ZZeta& c) { return {p, {{c}}}; }

ZZeta random_zz(long p, std::mt19937& rng) {
    std::uniform_int_distribution<long> d(-20, 20);
    std::vector<mpz_class> v;
    for (long i = 0; i + 1 < p; ++i) v.emplace_back(d(rng));
    return ZZeta(p, std::move(v));
}

// log family of G_n: n!/(n-k)! (p)'_zeta^k for k <= n.
std::vector<QZeta> gn_log_family(long p, long n, int L) {
    const QZeta c = to_qzeta(pq_prime(p));
    std::vector<QZeta> d(static_cast<std::size_t>(L), QZeta(p));
    mpz_class falling = 1;
    for (long k = 0; k < L && k <= n; ++k) {
        d[k] = c.pow(static_cast<unsigned>(k)) * mpq_class(falling);
        falling *= n - k;
    }
    return d;
}

}  // namespace

TEST(Sen, PqPrime) {
    EXPECT_EQ(pq_prime(2), zz(2, {1}));
    EXPECT_EQ(pq_prime(3), zz(3, {1, 2}));
    for (long p : {2L, 3L, 5L, 7L}) EXPECT_TRUE(verify_pq_prime(p).pass) << p;
    // Mod p the congruence with (zeta - 1)^{p-2} holds only up to the sign (-1)^{p-1}.
    EXPECT_TRUE(verify_pqprime_modp(2).pass);
    EXPECT_EQ(pqprime_modp_sign(2), 1);
    for (long p : {3L, 5L, 7L}) {
        const Verdict v = verify_pqprime_modp(p);
        EXPECT_FALSE(v.pass) << p;
        EXPECT_NE(v.witness.find("sign -1"), std::string::npos) << v.witness;
        EXPECT_EQ(pqprime_modp_sign(p), -1) << p;
    }
    // p = 3 by hand: 1 + 2 zeta - (zeta - 1) = 2 + zeta, while 1 + 2 zeta + (zeta - 1) = 3 zeta.
    EXPECT_EQ(pq_prime(3) - (ZZeta::zeta(3) - zz(3, {1})), zz(3, {2, 1}));
    EXPECT_EQ(pq_prime(3) + (ZZeta::zeta(3) - zz(3, {1})), zz(3, {0, 3}));
}

TEST(Sen, UniformizerValuation) {
    // v_pi(p) = p - 1 and p / (zeta - 1)^{p-1} is a unit: O_K / p = (Z/p)^{p-1}.
    for (long p : {3L, 5L, 7L}) {
        const ZZeta pi = ZZeta::zeta(p) - zz(p, {1});
        EXPECT_EQ(vpi(zz(p, {p})), p - 1);
        const std::vector<mpz_class> inv = smith_invariants(mult_matrix(pi.pow(static_cast<unsigned>(p - 1))));
        EXPECT_EQ(inv, std::vector<mpz_class>(static_cast<std::size_t>(p - 1), mpz_class(p))) << p;
        EXPECT_EQ(abs(norm(pi)), p);
    }
}

TEST(Sen, Stirling) {
    EXPECT_EQ(stirling1(4, 2), 11);
    EXPECT_EQ(stirling1(4, 1), -6);
    EXPECT_EQ(stirling2(4, 2), 7);
    EXPECT_EQ(stirling2(5, 3), 25);
    for (long n = 0; n <= 10; ++n)
        for (long m = 0; m <= 10; ++m) {
            mpz_class s = 0;
            for (long k = 0; k <= 10; ++k) s += stirling1(n, k) * stirling2(k, m);
            EXPECT_EQ(s, n == m ? 1 : 0) << n << " " << m;
        }
}

TEST(Sen, ComposeUpper) {
    const long p = 5;
    const ZZeta c = zz(p, {2, 1});
    EXPECT_EQ(sen_compose_upper(0, rank1(p, c)), (ZZetaMatrix{{zz(p, {1})}}));
    EXPECT_EQ(sen_compose_upper(2, rank1(p, c))[0][0], c * (c - pq_prime(p)));
    for (long q : {3L, 5L, 7L}) {
        EXPECT_TRUE(sen_compose_upper(2, rank1(q, pq_prime(q)))[0][0].is_zero());
        EXPECT_TRUE(sen_compose_upper(3, rank1(q, pq_prime(q)))[0][0].is_zero());
    }
    // Product and Stirling forms agree (the call throws otherwise).
    std::mt19937 rng(7);
    for (long q : {2L, 3L, 5L})
        for (int n = 0; n <= 8; ++n) {
            const SenModule s{q, {{random_zz(q, rng), random_zz(q, rng)}, {random_zz(q, rng), random_zz(q, rng)}}};
            EXPECT_NO_THROW(sen_compose_upper(n, s)) << q << " " << n;
        }
}

TEST(Sen, Nilpotency) {
    for (long p : {3L, 5L, 7L}) {
        EXPECT_TRUE(sen_is_nilpotent(rank1(p, ZZeta(p)), 3));
        for (long n = 0; n <= 5; ++n) EXPECT_TRUE(sen_is_nilpotent(rank1(p, pq_prime(p) * mpz_class(n)), 3)) << p << " " << n;
        EXPECT_FALSE(sen_is_nilpotent(rank1(p, zz(p, {1})), 3));
        EXPECT_TRUE(sen_is_nilpotent(rank1(p, zz(p, {p})), 4));
    }
    // Rank one oracle: nilpotent iff the scalar lies in (zeta - 1).
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        const ZZeta a = random_zz(5, rng);
        if (a.is_zero()) continue;
        EXPECT_EQ(sen_is_nilpotent(rank1(5, a), 3), vpi(a) > 0) << a.to_string();
    }
    // Rank two: strictly upper triangular mod pi.
    const long p = 3;
    const ZZeta pi = ZZeta::zeta(p) - zz(p, {1});
    EXPECT_TRUE(sen_is_nilpotent({p, {{pi, zz(p, {1})}, {pi * pi, pi}}}, 3));
    EXPECT_FALSE(sen_is_nilpotent({p, {{pi, zz(p, {1})}, {zz(p, {1}), pi}}}, 3));
    // p = 2 uses N^2 - N: every integer scalar qualifies, the Fibonacci matrix does not.
    EXPECT_TRUE(sen_is_nilpotent(rank1(2, zz(2, {1})), 4));
    EXPECT_TRUE(sen_is_nilpotent(rank1(2, zz(2, {3})), 4));
    EXPECT_FALSE(sen_is_nilpotent({2, {{zz(2, {0}), zz(2, {1})}, {zz(2, {1}), zz(2, {1})}}}, 4));
    EXPECT_TRUE(sen_is_nilpotent({2, {{zz(2, {0}), zz(2, {1})}, {zz(2, {1}), zz(2, {0})}}}, 4));
}

TEST(Sen, GroupLaw) {
    EXPECT_TRUE(ht_group_law(2, 3).pass);
    EXPECT_TRUE(ht_group_law(3, 3).pass);
    EXPECT_TRUE(ht_group_law(5, 4).pass);
    EXPECT_TRUE(ht_group_law(7, 2).pass);
    EXPECT_TRUE(ht_group_law(3, 0).pass);
}

TEST(Sen, ConvertZeroAndG1) {
    for (long p : {2L, 3L, 5L}) {
        const std::vector<QZeta> zero(5, QZeta(p));
        EXPECT_EQ(sen_delta_convert_exact(SenDirection::ToSen, zero), zero);
        EXPECT_EQ(sen_delta_convert_exact(SenDirection::ToDelta, zero), zero);
        // theta_{G_1}(s) = s (x) 1 + (p)'_zeta s (x) omega.
        const QZeta c = to_qzeta(pq_prime(p));
        const std::vector<QZeta> g1{QZeta(p, mpq_class(1)), c, QZeta(p), QZeta(p)};
        EXPECT_EQ(sen_operator_from_delta(g1), c);
        EXPECT_EQ(sen_delta_convert_exact(SenDirection::ToSen, g1)[1], c);
    }
}

TEST(Sen, ConvertGnRecoversMonodromy) {
    // The Delta family of G_n has first term a_n = (n)_{p+1} (p)'_zeta, and N = c_n comes back.
    for (long p : {2L, 3L, 5L})
        for (long n = 0; n <= 5; ++n) {
            const int L = static_cast<int>(n) + 2;
            const std::vector<QZeta> lg = gn_log_family(p, n, L);
            const std::vector<QZeta> dl = sen_delta_convert_exact(SenDirection::ToDelta, lg);
            EXPECT_EQ(dl[1], to_qzeta(build_reduced(p, n).A[0][0])) << p << " " << n;
            EXPECT_EQ(sen_operator_from_delta(dl), to_qzeta(pq_prime(p)) * mpq_class(n)) << p << " " << n;
            EXPECT_EQ(sen_delta_convert_exact(SenDirection::ToSen, dl), lg);
        }
}

TEST(Sen, ConvertRoundTrip) {
    std::mt19937 rng(3);
    for (long p : {2L, 3L, 5L})
        for (int M = 1; M <= 6; ++M) {
            // Decaying integral data: d_n divisible by p^{n/2}.
            std::vector<OKElt> d;
            std::vector<QZeta> dq;
            mpz_class scale = 1;
            for (int n = 0; n < 7; ++n) {
                const ZZeta x = random_zz(p, rng) * scale;
                d.emplace_back(p, M, x);
                dq.push_back(to_qzeta(x));
                if (n % 2 == 1) scale *= p;
            }
            EXPECT_EQ(sen_delta_convert_exact(SenDirection::ToDelta, sen_delta_convert_exact(SenDirection::ToSen, dq)), dq);
            EXPECT_EQ(sen_delta_convert(SenDirection::ToSen, sen_delta_convert(SenDirection::ToDelta, d)), d) << p << " " << M;
        }
    // Rational input with p in a denominator cannot be reduced.
    const std::vector<QZeta> bad{QZeta(3, mpq_class(1, 3))};
    EXPECT_FALSE(sen_delta_convert_exact(SenDirection::ToSen, bad)[0].coords()[0].get_den() == 1);
    EXPECT_THROW(sen_delta_convert(SenDirection::ToSen, {OKElt(3, 2), OKElt(5, 2)}), PrecisionMismatch);
}

TEST(Sen, GnCohomology) {
    const GnComparison g13 = gn_cohomology_compare(1, 3);
    EXPECT_TRUE(g13.verdict.pass);
    EXPECT_EQ(g13.sen.h1_torsion, std::vector<mpz_class>{3});
    EXPECT_EQ(g13.delta.h1_torsion, std::vector<mpz_class>{3});

    const GnComparison g22 = gn_cohomology_compare(2, 2);
    EXPECT_TRUE(g22.verdict.pass) << g22.verdict.witness;
    EXPECT_EQ(g22.sen.h1_torsion, std::vector<mpz_class>{2});
    EXPECT_EQ(g22.delta.h1_torsion, std::vector<mpz_class>{4});

    EXPECT_TRUE(gn_cohomology_compare(6, 5).verdict.pass);
    for (long p : {3L, 5L, 7L})
        for (long n = 0; n <= 10; ++n) {
            const GnComparison g = gn_cohomology_compare(n, p);
            EXPECT_TRUE(g.verdict.pass) << p << " " << n << ": " << g.verdict.witness;
        }
}

TEST(Sen, Lte) {
    EXPECT_TRUE(lte_check(100, 3).pass);
    EXPECT_TRUE(lte_check(60, 5).pass);
    EXPECT_TRUE(lte_check(1, 7).pass);
    EXPECT_THROW(lte_check(10, 2), WrongPrime);
}
