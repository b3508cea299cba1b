// SPDX-License-Identifier: MIT
// Hodge-Tate specialization over O_K = Z_p[zeta]: (p)'_zeta, Sen operators, the
// reduced formal group and the conversions between Sen and Delta data.
#pragma once

#include <string>
#include <vector>

#include "acalc/connections.hpp"
#include "acalc/cyclo.hpp"
#include "acalc/qcombinatorics.hpp"

namespace acalc {

using ZZetaMatrix = std::vector<std::vector<ZZeta>>;  // row-major, square

// O_K-linear Sen operator N on O_K^r.
struct SenModule {
    long p = 2;
    ZZetaMatrix N;
    int rank() const { return static_cast<int>(N.size()); }
};

// p = (zeta^2 - zeta) (p)'_zeta in Z[zeta].
Verdict verify_pq_prime(long p);
// (p)'_zeta = (zeta - 1)^{p-2} mod p, checked as displayed. For odd p this fails:
// differentiating (q - 1)^{p-1} = (p)_q mod p gives (p)'_q = (p - 1)(q - 1)^{p-2}.
Verdict verify_pqprime_modp(long p);
// The e in {1, -1} with (p)'_zeta = e (zeta - 1)^{p-2} mod p, or 0 if neither holds.
int pqprime_modp_sign(long p);

// Signed Stirling numbers of the first kind and Stirling numbers of the second kind.
mpz_class stirling1(long n, long k);
mpz_class stirling2(long n, long k);

// prod_{k<n} (N - k (p)'_zeta I), also computed as sum_k s(n,k) (p)'_zeta^{n-k} N^k;
// throws Error if the two forms disagree.
ZZetaMatrix sen_compose_upper(int n, const SenModule& s);
// Whether the partial products of prod_k (N - k (p)'_zeta) (p odd) or the powers of
// N^2 - N (p = 2) vanish mod p^M within r (M (p - 1) + 1) steps.
bool sen_is_nilpotent(const SenModule& s, int M);

// Delta(omega) mod (p)_q against 1 (x) omega + omega (x) 1 + (p)'_zeta omega (x) omega,
// then group-likeness of 1 + omega (p = 2) or primitivity of log(1 + (p)'_zeta omega)
// up to total degree K (p odd).
Verdict ht_group_law(long p, int K);

enum class SenDirection { ToSen, ToDelta };
// Rank one families d_n = D^{<n>}(s), n = 0..L-1, taken as zero beyond L. ToSen maps the
// Delta family to the log family, ToDelta the reverse (Stirling numbers of the first,
// resp. second, kind against ((zeta - 1) zeta)^{n-k} k!/n!).
std::vector<QZeta> sen_delta_convert_exact(SenDirection dir, const std::vector<QZeta>& d);
// Same, reduced mod p^M; NotPIntegral when an output has p in a denominator.
std::vector<OKElt> sen_delta_convert(SenDirection dir, const std::vector<OKElt>& d);
// N = sum_{n >= 1} (zeta - zeta^2)^{n-1} / n * d_n.
QZeta sen_operator_from_delta(const std::vector<QZeta>& d);

// H^1 of G_n with the Sen operator c_n = n (p)'_zeta and with d_Delta = a_n = (n)_{p+1} (p)'_zeta.
struct GnComparison {
    long p = 2, n = 0;
    Rank1Cohomology sen, delta;
    Verdict verdict;
};
GnComparison gn_cohomology_compare(long n, long p);

// v_p((n)_{p+1}) = v_p(n) for 1 <= n <= n_max, p odd.
Verdict lte_check(long n_max, long p);

}  // namespace acalc
