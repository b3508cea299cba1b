// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "acalc/bipoly.hpp"
#include "acalc/poly.hpp"
#include "acalc/qcombinatorics.hpp"
#include "acalc/qfrac.hpp"

using namespace acalc;

namespace {

IntQPoly P(std::initializer_list<long> c) { return IntQPoly(c); }

}  // namespace

TEST(QInteger, Basics) {
    EXPECT_TRUE(q_integer(0, 1).is_zero());
    EXPECT_EQ(q_integer(3, 1), P({1, 1, 1}));
    EXPECT_EQ(q_integer(2, 3), P({1, 0, 0, 1}));
}

TEST(QBinomial, Values) {
    for (long n = 0; n < 6; ++n) EXPECT_EQ(q_binomial(n, 0), IntQPoly(1L));
    EXPECT_EQ(q_binomial(2, 1), P({1, 1}));
    EXPECT_EQ(q_binomial(4, 2), P({1, 1, 2, 1, 1}));
}

TEST(QBinomial, PascalRule) {
    for (long n = 0; n < 20; ++n)
        for (long k = 1; k <= n + 1; ++k)
            EXPECT_EQ(q_binomial(n + 1, k), q_binomial(n, k - 1) + q_binomial(n, k).shift(static_cast<std::size_t>(k)))
                << n << "," << k;
}

TEST(QFactorial, Values) {
    EXPECT_EQ(q_factorial(0, 1), IntQPoly(1L));
    EXPECT_EQ(q_factorial(3, 1), P({1, 2, 2, 1}));
    EXPECT_EQ(q_factorial(2, 5), P({1, 0, 0, 0, 0, 1}));
}

TEST(Stirling, Values) {
    EXPECT_EQ(stirling_q(StirlingKind::First, 2, 1, 1), IntQPoly(-1L));
    EXPECT_EQ(stirling_q(StirlingKind::First, 3, 1, 1), P({1, 1}));
    EXPECT_EQ(stirling_q(StirlingKind::Second, 3, 2, 1), P({2, 1}));
}

TEST(Stirling, SpecializeAtOne) {
    // Ordinary signed Stirling numbers of the first kind and second kind.
    const long s5[] = {0, 24, -50, 35, -10, 1};
    const long S5[] = {0, 1, 15, 25, 10, 1};
    for (long k = 0; k <= 5; ++k) {
        EXPECT_EQ(stirling_q(StirlingKind::First, 5, k, 1).eval(mpz_class(1)), s5[k]);
        EXPECT_EQ(stirling_q(StirlingKind::Second, 5, k, 1).eval(mpz_class(1)), S5[k]);
    }
    for (long n = 0; n <= 12; ++n) {
        EXPECT_EQ(q_factorial(n, 1).eval(mpz_class(1)), factorial(n));
        for (long k = 0; k <= n; ++k) EXPECT_EQ(q_binomial(n, k).eval(mpz_class(1)), binomial(n, k));
    }
}

TEST(Stirling, MutuallyInverse) {
    for (unsigned r : {1U, 2U, 3U, 5U})
        for (long n = 0; n <= 12; ++n)
            for (long m = 0; m <= n; ++m) {
                IntQPoly acc;
                for (long j = m; j <= n; ++j)
                    acc += stirling_q(StirlingKind::First, n, j, r) * stirling_q(StirlingKind::Second, j, m, r);
                EXPECT_EQ(acc, n == m ? IntQPoly(1L) : IntQPoly()) << r << " " << n << " " << m;
            }
}

TEST(VerifyCombinatorics, Suites) {
    for (auto s : {CombSuite::StirlingOrthogonality, CombSuite::StirlingElementarySymmetric, CombSuite::StirlingQBinom,
                   CombSuite::FunctionalStirling})
        EXPECT_TRUE(verify_combinatorics(s, 8, 1).pass);
    EXPECT_TRUE(verify_combinatorics(CombSuite::FunctionalStirling, 6, 3).pass);
    const Verdict v = verify_combinatorics(CombSuite::StirlingOrthogonality, 8, 1,
                                           StirlingMutation{StirlingKind::Second, 2, 1, IntQPoly(1L)});
    EXPECT_FALSE(v.pass);
    EXPECT_EQ(v.witness, "(n,m)=(2,1)");
    EXPECT_FALSE(parse_comb_suite("nope").has_value());
}

TEST(EuclidDiv, ExactAndFailure) {
    EXPECT_EQ(euclid_div_exact(P({-1, 0, 1}), P({-1, 1})), P({1, 1}));
    EXPECT_THROW(euclid_div_exact(P({1, -2, 1}), P({1, 1})), NonzeroRemainder);
    // Round trip on deterministic pseudo-random inputs.
    unsigned long seed = 12345;
    auto next = [&] {
        seed = seed * 6364136223846793005UL + 1442695040888963407UL;
        return static_cast<long>((seed >> 33) % 19) - 9;
    };
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<mpz_class> b(8), d(6);
        for (auto& x : b) x = next();
        for (auto& x : d) x = next();
        d.back() = 1;
        const IntQPoly bp(b), dp(d);
        EXPECT_EQ(euclid_div_exact(bp * dp, dp), bp);
    }
}

TEST(PIntegrality, Basic) {
    EXPECT_TRUE(p_integrality(RatQPoly(std::vector<mpq_class>{mpq_class(1, 2), 1}), 3));
    EXPECT_FALSE(p_integrality(RatQPoly(std::vector<mpq_class>{mpq_class(1, 3), 1}), 3));
}

TEST(Cyclotomic, SubstitutionFactorization) {
    for (long n = 1; n <= 12; ++n)
        for (long m = 1; m <= 6; ++m) {
            IntQPoly prod(1L);
            for (const auto& [k, e] : cyclotomic_subs(n, m)) prod *= cyclotomic(k).pow(static_cast<unsigned>(e));
            EXPECT_EQ(prod, cyclotomic(n).subs_qpow(static_cast<unsigned>(m))) << n << " " << m;
        }
}

TEST(QFrac, ArithmeticAndIntegrality) {
    const QFrac a = QFrac(q_integer(3)).inverse();
    EXPECT_EQ(a * QFrac(q_integer(3)), QFrac(1L));
    EXPECT_TRUE(a.p_integral(2));
    EXPECT_FALSE(a.p_integral(3));
    const QFrac b = QFrac(P({-1, 1})).inverse();
    EXPECT_FALSE(b.p_integral(5));
    EXPECT_EQ(QFrac(P({-1, 0, 1})).div_poly(P({1, 1})), QFrac(P({-1, 1})));
    EXPECT_THROW((void)a.to_poly(), NonzeroRemainder);
    EXPECT_EQ(QFrac(P({1, 1})).subs_qpow(3), QFrac(P({1, 0, 0, 1})));
    EXPECT_EQ(a.eval_at_one(), mpq_class(1, 3));
}

TEST(CongruencePowers, ExactDivision) {
    // (p^{r+1})_q = p (p^r)_q mod (p^r)_q^2.
    for (long p : {2L, 3L, 5L})
        for (unsigned r = 1; r <= 2; ++r) {
            long pr = 1;
            for (unsigned i = 0; i < r; ++i) pr *= p;
            const IntQPoly a = q_integer(pr * p), b = q_integer(pr);
            const IntQPoly diff = a - b * mpz_class(p);
            auto [qt, rem] = diff.divmod_monic(b * b);
            EXPECT_TRUE(rem.is_zero()) << p << " " << r;
        }
}

TEST(BiPolyTest, FallingFactorial) {
    const BiPoly X = BiPoly::X(), Y = BiPoly::Y();
    const BiPoly x2 = X * (X - q_integer(1) * Y);
    EXPECT_EQ(x2, X * X - Y * X);
}

TEST(Poly, KroneckerMatchesSchoolbook) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 24 + rng() % 80, m = 24 + rng() % 80;
        std::vector<mpz_class> a(n), b(m);
        for (auto& x : a) x = mpz_class(static_cast<long>(rng() % 2000001) - 1000000) << static_cast<unsigned>(rng() % 200);
        for (auto& x : b) x = mpz_class(static_cast<long>(rng() % 21) - 10);
        if (trial % 3 == 0) b.back() = -1;
        std::vector<mpz_class> s(n + m - 1, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) s[i + j] += a[i] * b[j];
        EXPECT_EQ(kronecker_mul(a, b), s);
    }
}
