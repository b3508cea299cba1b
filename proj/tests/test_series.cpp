// SPDX-License-Identifier: MIT
#include <gtest/gtest.h>

#include <random>

#include "acalc/qcombinatorics.hpp"
#include "acalc/series.hpp"

using namespace acalc;

namespace {

TruncSeries S(const Precision& pr, std::vector<std::uint64_t> c) { return TruncSeries(pr, std::move(c)); }

TruncSeries random_series(const Precision& pr, std::mt19937_64& rng) {
    std::vector<std::uint64_t> c(static_cast<std::size_t>(pr.N));
    for (auto& x : c) x = rng() % pr.modulus();
    return TruncSeries(pr, c);
}

}  // namespace

TEST(Precision, Validation) {
    EXPECT_THROW(Precision(4, 1, 1), Error);
    EXPECT_THROW(Precision(3, 0, 1), Error);
    EXPECT_EQ(Precision(3, 2, 4).modulus(), 9U);
}

TEST(FromQPoly, Examples) {
    const Precision p2(2, 4, 4), p3(3, 3, 5);
    EXPECT_EQ(from_qpoly(IntQPoly::q_pow(1), p2), S(p2, {1, 1}));
    EXPECT_EQ(from_qpoly(q_integer(2), p2), S(p2, {2, 1}));
    EXPECT_EQ(from_qpoly(q_integer(3), p3), S(p3, {3, 3, 1}));
}

TEST(Invert, Examples) {
    const Precision pr(3, 2, 3);
    EXPECT_EQ(TruncSeries::constant(pr, 1).invert(), TruncSeries::constant(pr, 1));
    EXPECT_EQ(S(pr, {1, 1}).invert(), S(pr, {1, 8, 1}));
    EXPECT_THROW(from_qpoly(q_integer(3), pr).invert(), NotAUnit);
}

TEST(SubstituteGr, Examples) {
    const Precision pr(2, 4, 5);
    const TruncSeries t = TruncSeries::t(pr);
    EXPECT_EQ(t.substitute_gr(1), t);
    EXPECT_EQ(t.gamma(), S(pr, {0, 3, 3, 1}));
    const Precision p3(2, 3, 3);
    EXPECT_EQ(TruncSeries::q(p3).substitute_gr(-1), S(p3, {1, 7, 1}));
}

TEST(SubstituteGr, Composes) {
    const Precision pr(3, 4, 7);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 10; ++i) {
        const TruncSeries a = random_series(pr, rng);
        EXPECT_EQ(a.substitute_gr(2).substitute_gr(3), a.substitute_gr(6));
        EXPECT_EQ(a.sigma().sigma(), a);
    }
}

TEST(PartialDelta, Examples) {
    const Precision pr(2, 5, 5);
    const Precision out(2, 5, 4);
    EXPECT_TRUE(TruncSeries::constant(pr, 1).partial_delta().is_zero());
    EXPECT_EQ(TruncSeries::q(pr).partial_delta(), S(out, {2, 1}));
    const TruncSeries t2 = TruncSeries::t(pr).pow(2);
    const TruncSeries expect = S(out, {2, 1}) * S(out, {4, 3, 1}) * TruncSeries::t(out);
    EXPECT_EQ(t2.partial_delta(), expect);
    EXPECT_EQ(partial_delta_formula(t2), expect);
}

class SeriesLaws : public ::testing::TestWithParam<Precision> {};

TEST_P(SeriesLaws, DeltaDerivationIdentities) {
    const Precision pr = GetParam();
    const Precision out(pr.p, pr.M, pr.N - 1);
    std::mt19937_64 rng(static_cast<unsigned long>(pr.p * 100 + pr.M * 10 + pr.N));
    const TruncSeries qq = TruncSeries::q(out);
    const TruncSeries h = qq * qq - qq;
    for (int i = 0; i < 20; ++i) {
        const TruncSeries a = random_series(pr, rng), b = random_series(pr, rng);
        const TruncSeries da = a.partial_delta(), db = b.partial_delta();
        const TruncSeries ar = a.reduce_to(out), br = b.reduce_to(out);
        // Twisted Leibniz and the symmetric form.
        EXPECT_EQ((a * b).partial_delta(), da * br + a.gamma().reduce_to(out) * db);
        EXPECT_EQ((a * b).partial_delta(), da * br + ar * db + h * da * db);
        // gamma = Id + (q^2 - q) d.
        EXPECT_EQ(a.gamma().reduce_to(out), ar + h * da);
        EXPECT_EQ(partial_delta_formula(a), da);
    }
}

TEST_P(SeriesLaws, GriffithsAndNygaard) {
    const Precision pr = GetParam();
    for (int n = 0; n + 1 < pr.N; ++n) {
        const TruncSeries d = TruncSeries::t(pr).pow(static_cast<unsigned>(n + 1)).partial_delta();
        for (int j = 0; j < n; ++j) EXPECT_EQ(d.coeff(j), 0U);
        mpz_class pw;
        mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(pr.p + 1), static_cast<unsigned long>(n + 1));
        const TruncSeries expect = TruncSeries::constant(d.prec(), pw - 1);
        EXPECT_EQ(d.coeff(n), expect.coeff(0));
    }
}

TEST_P(SeriesLaws, LambdaRelation) {
    const Precision pr = GetParam();
    const IntQPoly pq = q_integer(pr.p);
    const TruncSeries a = from_qpoly(pq, pr);
    // d_{q^p}((p)_q) computed exactly, then reduced.
    const IntQPoly num = pq.subs_qpow(static_cast<unsigned>(pr.p + 1)) - pq;
    const IntQPoly den = IntQPoly::q_pow(static_cast<std::size_t>(pr.p + 1)) - IntQPoly::q_pow(1);
    const TruncSeries dqp = from_qpoly(euclid_div_exact(num, den), pr);
    const Precision out = pr;
    const TruncSeries qq = TruncSeries::q(out);
    const TruncSeries lambda = TruncSeries::constant(out, 1) + (qq * qq - qq) * dqp;
    EXPECT_EQ(lambda * a, from_qpoly(pq.subs_qpow(static_cast<unsigned>(pr.p + 1)), out));
    EXPECT_TRUE(lambda.is_unit());
}

INSTANTIATE_TEST_SUITE_P(Precisions, SeriesLaws,
                         ::testing::Values(Precision(2, 6, 6), Precision(3, 4, 7), Precision(5, 3, 6), Precision(7, 2, 5)));

TEST(MixedPrecision, CoarsensAndComparisonThrows) {
    const Precision a(3, 4, 6), b(3, 2, 5);
    const TruncSeries x = TruncSeries::q(a), y = TruncSeries::q(b);
    EXPECT_EQ((x + y).prec(), Precision(3, 2, 5));
    EXPECT_THROW((void)(x == y), PrecisionMismatch);
    EXPECT_THROW((void)(x + TruncSeries::q(Precision(5, 2, 5))), PrecisionMismatch);
}

TEST(FromQFrac, MatchesInverse) {
    const Precision pr(3, 4, 6);
    const QFrac f = QFrac(q_integer(4)).inverse() * QFrac(q_integer(2));
    EXPECT_EQ(from_qfrac(f, pr) * from_qpoly(q_integer(4), pr), from_qpoly(q_integer(2), pr));
    EXPECT_THROW(from_qfrac(QFrac(q_integer(3)).inverse(), pr), NotPIntegral);
}
