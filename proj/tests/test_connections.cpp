// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "acalc/coalgebra.hpp"
#include "acalc/connections.hpp"

using namespace acalc;

namespace {

TruncSeries ser(const IntQPoly& a, const Precision& pr) { return from_qpoly(a, pr); }
TruncSeries one(const Precision& pr) { return TruncSeries::constant(pr, 1); }

bool same(const TruncSeries& a, const TruncSeries& b) {
    const Precision c = meet(a.prec(), b.prec());
    return a.reduce_to(c) == b.reduce_to(c);
}

NablaModule random_rank2(const Precision& pr, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    SeriesMatrix A = zero_matrix(pr, 2);
    for (auto& row : A)
        for (auto& x : row) {
            std::vector<mpz_class> c;
            for (int k = 0; k < 4; ++k) c.emplace_back(static_cast<long>(rng() % 9) - 4);
            x = ser(IntQPoly(std::move(c)), pr);
        }
    return NablaModule{"R2", A};
}

}  // namespace

TEST(Connections, Examples) {
    const Precision pr(2, 6, 8);
    EXPECT_EQ(build_example(ExampleKind::Trivial, 0, pr).A[0][0], TruncSeries(pr));
    // BK(1) at p = 2 is -(q + 2) / (q (3)_q).
    const TruncSeries bk = -ser(IntQPoly{2, 1}, pr) * ser(IntQPoly{0, 1, 1, 1}, pr).invert();
    EXPECT_EQ(build_example(ExampleKind::BK, 1, pr).A[0][0], bk);
    for (long p : {2L, 3L, 5L}) {
        const Precision q(p, 4, 8);
        EXPECT_EQ(build_example(ExampleKind::Fn, 1, q).A[0][0], ser(dqp_pq(p), q));
        EXPECT_EQ(build_example(ExampleKind::Fn, 0, q).A[0][0], TruncSeries(q));
    }
    EXPECT_THROW(build_example(ExampleKind::Gn, 1, pr), Error);
    EXPECT_THROW(parse_example("Hn"), ParseError);
}

TEST(Connections, DerivationLawOnBasis) {
    for (long p : {2L, 3L, 5L}) {
        const Precision pr(p, 4, 8);
        for (const NablaModule& m : {build_example(ExampleKind::BK, 1, pr), build_example(ExampleKind::Fn, 2, pr),
                                     random_rank2(pr, static_cast<std::uint64_t>(p))}) {
            for (int j = 0; j < m.rank(); ++j) {
                SeriesVec e(static_cast<std::size_t>(m.rank()), TruncSeries(pr)), qe = e;
                e[j] = one(pr);
                qe[j] = TruncSeries::q(pr);
                const SeriesVec lhs = m.apply(qe), de = m.apply(e);
                for (int i = 0; i < m.rank(); ++i) {
                    const TruncSeries rhs = ser(q_integer(p), pr) * e[i] + ser(IntQPoly::q_pow(p + 1), pr) * de[i];
                    EXPECT_TRUE(same(lhs[i], rhs)) << m.name << " p=" << p;
                }
            }
        }
    }
}

TEST(Connections, WeakNilpotency) {
    for (long p : {2L, 3L, 5L}) {
        const Precision pr(p, 4, 6);
        EXPECT_TRUE(is_weakly_nilpotent(build_example(ExampleKind::Trivial, 0, pr, 3)));
        EXPECT_TRUE(is_weakly_nilpotent(build_example(ExampleKind::BK, 1, pr)));
        for (long n = 1; n <= 4; ++n) EXPECT_TRUE(is_weakly_nilpotent(build_example(ExampleKind::Fn, n, pr)));
        const NablaModule unit = rank_one("one", one(pr));
        // At p = 2 the test is on d^2 - d, which kills 1.
        EXPECT_EQ(is_weakly_nilpotent(unit), p == 2) << p;
    }
    // A nilpotent but nonzero reduction.
    const Precision pr(3, 2, 4);
    SeriesMatrix A = zero_matrix(pr, 2);
    A[0][1] = one(pr);
    EXPECT_TRUE(is_weakly_nilpotent(NablaModule{"N", A}));
}

TEST(Connections, TensorDualHom) {
    for (long p : {2L, 3L, 5L}) {
        const Precision pr(p, 5, 8);
        const NablaModule bk = build_example(ExampleKind::BK, 1, pr), f1 = build_example(ExampleKind::Fn, 1, pr);
        const NablaModule triv = build_example(ExampleKind::Trivial, 0, pr);
        EXPECT_EQ(tensor(triv, bk).A, bk.A);
        EXPECT_EQ(tensor(bk, triv).A, bk.A);

        const TruncSeries lam = ser(lambda_poly(p), pr);
        EXPECT_TRUE(same(dual(f1).A[0][0], -lam.invert() * ser(dqp_pq(p), pr))) << p;

        NablaModule pw = bk;
        for (long n = 2; n <= 3; ++n) {
            pw = tensor(pw, bk);
            EXPECT_TRUE(same(pw.A[0][0], bk_scalar(pr, n))) << p << " " << n;
        }
        EXPECT_TRUE(same(dual(bk).A[0][0], bk_scalar(pr, -1))) << p;

        // F_n = F_1^{(x) n}, and d_Delta((p)_q^n) = (p)_q^n alpha_n exactly.
        NablaModule fp = f1;
        IntQPoly pqn = q_integer(p);
        for (long n = 2; n <= 4; ++n) {
            fp = tensor(fp, f1);
            pqn *= q_integer(p);
            EXPECT_TRUE(same(fp.A[0][0], ser(alpha_n(p, n), pr)));
            EXPECT_EQ(partial_delta_exact(pqn, p), pqn * alpha_n(p, n));
        }

        for (const NablaModule& m : {bk, f1, random_rank2(pr, 11 + static_cast<std::uint64_t>(p))}) {
            const NablaModule dd = dual(dual(m));
            for (int i = 0; i < m.rank(); ++i)
                for (int j = 0; j < m.rank(); ++j) EXPECT_TRUE(same(dd.A[i][j], m.A[i][j]));
            // The identity of Hom(M, M) is horizontal.
            const NablaModule h = hom(m, m);
            const int r = m.rank();
            SeriesVec id(static_cast<std::size_t>(r * r), TruncSeries(h.prec()));
            for (int i = 0; i < r; ++i) id[static_cast<std::size_t>(i * r + i)] = one(h.prec());
            for (const auto& x : h.apply(id)) EXPECT_TRUE(x.is_zero()) << m.name;
        }
    }
}

TEST(Connections, Pullback) {
    const Precision pr(3, 4, 8);
    const NablaModule m = random_rank2(pr, 5);
    EXPECT_EQ(pullback_gr(m, 1).A, m.A);
    const NablaModule a = pullback_gr(pullback_gr(m, 2), 3), b = pullback_gr(m, 6);
    EXPECT_EQ(a.A, b.A);
    // A pullback is again a Delta-connection: check the derivation law on e_0.
    SeriesVec e{one(pr), TruncSeries(pr)}, qe{TruncSeries::q(pr), TruncSeries(pr)};
    const SeriesVec lhs = b.apply(qe), de = b.apply(e);
    for (int i = 0; i < 2; ++i)
        EXPECT_TRUE(same(lhs[i], ser(q_integer(3), pr) * e[i] + ser(IntQPoly::q_pow(4), pr) * de[i]));
    EXPECT_THROW(pullback_gr(m, 0), Error);
}

TEST(Connections, Frobenius) {
    for (long p : {2L, 3L, 5L}) {
        const Precision pr(p, 4, 8);
        const NablaModule triv = build_example(ExampleKind::Trivial, 0, pr, 2);
        EXPECT_TRUE(frobenius_check({triv, {{IntQPoly(1L), IntQPoly()}, {IntQPoly(), IntQPoly(1L)}}, 0}).pass) << p;
        const NablaModule bk = build_example(ExampleKind::BK, 1, pr);
        const Verdict v = frobenius_check({bk, {{IntQPoly(1L)}}, 1});
        EXPECT_TRUE(v.pass) << p << " " << v.witness;
        const Verdict bad = frobenius_check({bk, {{IntQPoly{0, 1}}}, 1});
        EXPECT_FALSE(bad.pass) << p;
        EXPECT_NE(bad.witness.find("basis vector 0"), std::string::npos) << bad.witness;
        // Wrong pole order on the trivial module.
        EXPECT_FALSE(frobenius_check({build_example(ExampleKind::Trivial, 0, pr), {{IntQPoly(1L)}}, 1}).pass);
        // det Phi = p is not invertible after inverting (p)_q.
        EXPECT_FALSE(frobenius_check({build_example(ExampleKind::Trivial, 0, pr), {{IntQPoly(p)}}, 0}).pass);
    }
}

TEST(Connections, HyperstratTrivialAndF1) {
    for (long p : {3L, 5L}) {
        const Precision pr(p, 4, 8);
        const int K = static_cast<int>(p) - 1;
        const auto T = hyperstrat_solve(build_example(ExampleKind::Trivial, 0, pr, 2), K);
        ASSERT_EQ(static_cast<int>(T.size()), K + 1);
        for (int k = 1; k <= K; ++k)
            for (const auto& row : T[k])
                for (const auto& x : row) EXPECT_TRUE(x.is_zero());

        const auto F = hyperstrat_solve(build_example(ExampleKind::Fn, 1, pr), K);
        const OmegaT L = to_series(L_of_omega(p, K), pr);
        for (int k = 0; k <= K; ++k) EXPECT_TRUE(same(F[k][0][0], L.coeff(k))) << p << " " << k;

        // theta_{F_2}(s) = s (x) L(omega)^2.
        const auto F2 = hyperstrat_solve(build_example(ExampleKind::Fn, 2, pr), K);
        const OmegaT L2 = L * L;
        for (int k = 0; k <= K; ++k) EXPECT_TRUE(same(F2[k][0][0], L2.coeff(k))) << p << " " << k;
    }
}

TEST(Connections, HyperstratBreuilKisin) {
    const long p = 5;
    const int K = 4;
    const Precision pr(p, 4, 8);
    const auto T = hyperstrat_solve(build_example(ExampleKind::BK, 1, pr), K);
    const Precision out = T[0][0][0].prec();
    OmegaT te(p, K, TruncSeries(out));
    for (int k = 0; k <= K; ++k) te.coeff(k) = T[k][0][0];
    // theta((q - 1) e) = theta(q - 1) theta_M(e) = (q - 1 + log_q(1 + (p)_q omega / q)) e.
    const OmegaT lhs = taylor_theta(ser(IntQPoly{-1, 1}, pr), K) * te;
    const OmegaT log = log_q_omega(pr, K);
    for (int k = 0; k <= K; ++k) {
        const TruncSeries expect = k == 0 ? ser(IntQPoly{-1, 1}, pr) : log.coeff(k);
        EXPECT_TRUE(same(lhs.coeff(k), expect)) << k;
    }
    const NablaModule bk = build_example(ExampleKind::BK, 1, pr);
    EXPECT_TRUE(hyperstrat_residual(bk, hyperstrat_expansion(bk)).pass);
}

TEST(Connections, HyperstratGuards) {
    const Precision pr(3, 3, 6);
    EXPECT_THROW(hyperstrat_solve(build_example(ExampleKind::Trivial, 0, pr), 3), OrderCapTooHigh);
    EXPECT_THROW(hyperstrat_solve(rank_one("one", one(pr)), 2), NotWeaklyNilpotent);
    // A perturbed solution is caught by the residual check.
    const NablaModule f1 = build_example(ExampleKind::Fn, 1, pr);
    auto T = hyperstrat_expansion(f1);
    ASSERT_TRUE(hyperstrat_residual(f1, T).pass);
    for (int n : {1, 2, 4}) {
        auto bad = T;
        bad[n][0][0] += one(bad[n][0][0].prec());
        EXPECT_FALSE(hyperstrat_residual(f1, bad).pass) << n;
    }
    // Truncated expansions are rejected outright.
    EXPECT_FALSE(hyperstrat_residual(f1, hyperstrat_solve(f1, 2)).pass);
    EXPECT_THROW(hyperstrat_expansion(build_example(ExampleKind::Fn, 1, Precision(2, 3, 6))), NotAUnit);
}

TEST(Connections, Rank1Cohomology) {
    EXPECT_TRUE(rank1_cohomology_OK(ZZeta(5, mpz_class(1))).h1_torsion.empty());
    for (long p : {3L, 5L, 7L}) {
        for (long n : {1L, 2L, 4L}) {
            const Rank1Cohomology c = rank1_cohomology_OK(build_reduced(p, n).A[0][0]);
            EXPECT_EQ(c.h0_free_rank, 0);
            EXPECT_EQ(c.h1_torsion, std::vector<mpz_class>(static_cast<std::size_t>(p - 2), mpz_class(p))) << c.to_string();
            EXPECT_EQ(rank1_cohomology_mod_p(build_reduced(p, n).A[0][0]), std::make_pair(static_cast<int>(p - 2), static_cast<int>(p - 2)));
        }
    }
    EXPECT_EQ(rank1_cohomology_OK(build_reduced(2, 2).A[0][0]).h1_torsion, std::vector<mpz_class>{4});
    EXPECT_EQ(rank1_cohomology_OK(build_reduced(2, 4).A[0][0]).h1_torsion, std::vector<mpz_class>{8});
    // p = 3, n = 3: the Smith form gives order 27.
    const Rank1Cohomology g3 = rank1_cohomology_OK(build_reduced(3, 3).A[0][0]);
    EXPECT_EQ(g3.h1_order(), 27);
    EXPECT_EQ(g3.h1_torsion, (std::vector<mpz_class>{3, 9}));
    // Zero connection: H0 = H1 = O_K.
    const Rank1Cohomology z = rank1_cohomology_OK(ZZeta(5));
    EXPECT_EQ(z.h0_free_rank, 4);
    EXPECT_EQ(z.h1_free_rank, 4);
}

TEST(Connections, GammaRoundtrip) {
    for (long p : {2L, 3L, 5L}) {
        const Precision pr(p, 4, 8);
        const NablaModule triv = build_example(ExampleKind::Trivial, 0, pr, 2);
        EXPECT_TRUE(gamma_roundtrip(triv).pass);
        EXPECT_EQ(triv.gamma_matrix(), identity_matrix(pr, 2));
        for (long n = 1; n <= 3; ++n) {
            const NablaModule f = build_example(ExampleKind::Fn, n, pr);
            EXPECT_TRUE(gamma_roundtrip(f).pass);
            EXPECT_EQ(f.gamma_matrix()[0][0], ser(lambda_poly(p), pr).pow(static_cast<unsigned>(n)));
        }
        const NablaModule bk = build_example(ExampleKind::BK, 1, pr);
        EXPECT_TRUE(gamma_roundtrip(bk).pass);
        EXPECT_EQ(bk.gamma_matrix()[0][0], TruncSeries::constant(pr, p + 1) * ser(q_integer(p + 1), pr).invert());
        EXPECT_TRUE(gamma_roundtrip(random_rank2(pr, 3)).pass);
    }
}
