// SPDX-License-Identifier: MIT
// q-analogs: twisted integers, Gaussian binomials, factorials, Stirling tables,
// cyclotomic polynomials, and the exact identity checks over them.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acalc/poly.hpp"

namespace acalc {

// (n)_{q^r} = 1 + q^r + ... + q^{r(n-1)}.
IntQPoly q_integer(long n, unsigned r = 1);
// Gaussian binomial in the variable q^r.
IntQPoly q_binomial(long n, long k, unsigned r = 1);
IntQPoly q_factorial(long n, unsigned r = 1);

enum class StirlingKind { First, Second };
const IntQPoly& stirling_q(StirlingKind kind, long n, long k, unsigned r = 1);

// n-th cyclotomic polynomial Φ_n(q), n >= 1.
const IntQPoly& cyclotomic(long n);

// Multiset of cyclotomic factors: d -> exponent, with d = 0 standing for the factor q.
using CycloFactors = std::map<long, long>;
// Φ_n(q^m) as a product of Φ_k(q).
CycloFactors cyclotomic_subs(long n, long m);
// (n)_{q^r} and (n)_{q^r}! as cyclotomic products.
CycloFactors q_integer_factors(long n, unsigned r);
CycloFactors q_factorial_factors(long n, unsigned r);
void add_factors(CycloFactors& acc, const CycloFactors& f, long times = 1);
IntQPoly expand_factors(const CycloFactors& f);

struct Verdict {
    bool pass = true;
    std::string witness;  // first counterexample, empty on pass
    static Verdict ok() { return {}; }
    static Verdict fail(std::string w) { return {false, std::move(w)}; }
};

enum class CombSuite { StirlingOrthogonality, StirlingElementarySymmetric, StirlingQBinom, FunctionalStirling };
std::optional<CombSuite> parse_comb_suite(const std::string& name);

// Optional deliberate corruption of one Stirling entry (negative controls).
struct StirlingMutation {
    StirlingKind kind = StirlingKind::Second;
    long n = 0, k = 0;
    IntQPoly delta;
};

Verdict verify_combinatorics(CombSuite suite, long n_max, unsigned r = 1,
                             const std::optional<StirlingMutation>& mutation = std::nullopt);

// Elementary symmetric polynomial e_k of the given list.
IntQPoly elementary_symmetric(const std::vector<IntQPoly>& xs, long k);

}  // namespace acalc
