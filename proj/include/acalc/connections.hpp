// SPDX-License-Identifier: MIT
// Finite free Delta-connections presented by a matrix on a fixed basis:
// d_M(s_j) = sum_i A_ij s_i, so on coordinates v -> A gamma(v) + d_Delta(v).
#pragma once

#include <string>
#include <vector>

#include "acalc/cyclo.hpp"
#include "acalc/omega.hpp"
#include "acalc/qcombinatorics.hpp"
#include "acalc/series.hpp"

namespace acalc {

using SeriesVec = std::vector<TruncSeries>;
using SeriesMatrix = std::vector<SeriesVec>;  // row-major, square

SeriesMatrix identity_matrix(const Precision& prec, int r);
SeriesMatrix zero_matrix(const Precision& prec, int r);
SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix operator*(const TruncSeries& s, const SeriesMatrix& a);
SeriesVec operator*(const SeriesMatrix& a, const SeriesVec& v);
SeriesMatrix transpose(const SeriesMatrix& a);
SeriesMatrix kronecker(const SeriesMatrix& a, const SeriesMatrix& b);
// Gauss-Jordan with unit pivots; NotAUnit when the reduction mod (p, t) is singular.
SeriesMatrix inverse(const SeriesMatrix& a);
SeriesMatrix map_entries(const SeriesMatrix& a, TruncSeries (*f)(const TruncSeries&));
bool equal_at(const SeriesMatrix& a, const SeriesMatrix& b, const Precision& prec);
std::vector<std::vector<std::string>> residues(const SeriesMatrix& a);

struct NablaModule {
    std::string name;
    SeriesMatrix A;

    int rank() const { return static_cast<int>(A.size()); }
    const Precision& prec() const { return A.at(0).at(0).prec(); }
    long p() const { return prec().p; }
    // gamma_M = I + (q^2 - q) A.
    SeriesMatrix gamma_matrix() const;
    // v -> A gamma(v) + d_Delta(v); t-precision drops by one.
    SeriesVec apply(const SeriesVec& v) const;
};

// Reduced module over O_K = Z_p[zeta]: the connection is O_K-linear.
struct ReducedModule {
    std::string name;
    long p = 2;
    std::vector<std::vector<ZZeta>> A;
};

enum class ExampleKind { Trivial, Fn, Gn, BK };
ExampleKind parse_example(const std::string& name);

// alpha_n = (lambda^n - 1) / (q^2 - q), exact; n >= 0.
IntQPoly alpha_n(long p, long n);
// d_Delta on Z[q]: (f(q^{p+1}) - f) / (q^2 - q).
IntQPoly partial_delta_exact(const IntQPoly& f, long p);
// (1/(q^2 - q)) ((p+1)^n / (p+1)_q^n - 1); n may be negative.
TruncSeries bk_scalar(const Precision& prec, long n);

// Rank one examples trivial, Fn, BK; Gn lives over O_K (use build_reduced).
NablaModule build_example(ExampleKind kind, long n, const Precision& prec, int rank = 1);
NablaModule rank_one(const std::string& name, const TruncSeries& a);
// G_n: d(s) = (n)_{p+1} (p)'_zeta s.
ReducedModule build_reduced(long p, long n);

bool is_weakly_nilpotent(const NablaModule& m);

NablaModule tensor(const NablaModule& a, const NablaModule& b);
NablaModule dual(const NablaModule& m);
NablaModule hom(const NablaModule& a, const NablaModule& b);
// Pullback along g_r: entries (r)_q q^{r-1} g_r(A_ij), r >= 1.
NablaModule pullback_gr(const NablaModule& m, long r);

// s -> Phi phi(s) / (p)_q^{r0}; Phi is given exactly.
struct FrobStructure {
    NablaModule base;
    std::vector<std::vector<IntQPoly>> Phi;
    int pole = 0;
};

// Horizontality d o phi_M = (p)_q q^{p-1} phi_M o d on basis vectors and a few
// seeded random coordinate vectors, plus invertibility of Phi away from (p)_q
// and weak nilpotency of the base.
Verdict frobenius_check(const FrobStructure& f);

// Coefficients T_0..T_K of theta_M(s_j) = sum_k T_k(:, j) (x) omega^{{k}}, as
// matrices (column j is the expansion of the j-th basis vector), at t-precision
// N - K. K <= p - 1; the base must be weakly nilpotent.
std::vector<SeriesMatrix> hyperstrat_solve(const NablaModule& m, int K);
// T_0..T_{N-1} (T_n at t-precision N - n), p odd. Evaluating theta_M at the nodes
// j_m = (m)_{p+1} gives the transports gamma_M^m, and ev_j(omega^{{n}}) vanishes
// for n > j and lies in t^n, so the system is square modulo t^N.
std::vector<SeriesMatrix> hyperstrat_expansion(const NablaModule& m);
// Node-evaluated residual of L_Delta(T) = T theta(A) at the nodes j <= N - 2,
// which include nodes not reachable by iterating gamma. Needs T_0..T_{N-1}.
Verdict hyperstrat_residual(const NablaModule& m, const std::vector<SeriesMatrix>& T);

// Cohomology of [O_K --a--> O_K] via the Smith form of multiplication by a.
struct Rank1Cohomology {
    int h0_free_rank = 0;               // Z_p-rank of the kernel
    int h1_free_rank = 0;               // Z_p-rank of the cokernel
    std::vector<mpz_class> h1_torsion;  // p-primary invariant factors > 1
    mpz_class h1_order() const;
    std::string to_string() const;
};
Rank1Cohomology rank1_cohomology_OK(const ZZeta& a);
// Same complex tensored with F_p: dimensions of kernel and cokernel.
std::pair<int, int> rank1_cohomology_mod_p(const ZZeta& a);

// gamma_M is gamma-semilinear, is I mod (q - 1), and gives back A exactly.
Verdict gamma_roundtrip(const NablaModule& m);

}  // namespace acalc
