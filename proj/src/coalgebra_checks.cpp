// SPDX-License-Identifier: MIT
#include <sstream>

#include "acalc/coalgebra.hpp"

namespace acalc {

namespace {

IntQPoly h_poly() { return IntQPoly{0, -1, 1}; }

OmegaQ frac(const OmegaI& a) { return to_frac(a); }


long mod_p(const mpq_class& x, long p) {
    const mpz_class r = residue_of(x, Precision(p, 1, 1));
    return r.get_si();
}

// Inverse of a square matrix over F_p; throws NotAUnit when singular.
std::vector<std::vector<long>> invert_mod_p(std::vector<std::vector<long>> a, long p) {
    const std::size_t n = a.size();
    std::vector<std::vector<long>> inv(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
    const auto inv_p = [p](long x) {
        mpz_class r;
        mpz_class xx(x), pp(p);
        if (mpz_invert(r.get_mpz_t(), xx.get_mpz_t(), pp.get_mpz_t()) == 0) throw NotAUnit("not invertible mod p");
        return r.get_si();
    };
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && a[piv][c] % p == 0) ++piv;
        if (piv == n) throw NotAUnit("L_Delta matrix singular mod (p, q - 1)");
        std::swap(a[piv], a[c]);
        std::swap(inv[piv], inv[c]);
        const long s = inv_p(a[c][c]);
        for (std::size_t j = 0; j < n; ++j) {
            a[c][j] = a[c][j] * s % p;
            inv[c][j] = inv[c][j] * s % p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || a[r][c] == 0) continue;
            const long f = a[r][c];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] = ((a[r][j] - f * a[c][j]) % p + p) % p;
                inv[r][j] = ((inv[r][j] - f * inv[c][j]) % p + p) % p;
            }
        }
    }
    return inv;
}

// The mod (p, q - 1) form predicted for L_Delta on omega^{{1..K}}, components 0..K-1.
std::vector<std::vector<long>> predicted_mod_p(long p, int K) {
    std::vector<std::vector<long>> a(K, std::vector<long>(K, 0));
    for (int n = 1; n <= K; ++n) {
        a[n - 1][n - 1] = 1;
        if (p == 2 && n <= K - 1) a[n][n - 1] = n % 2;
    }
    return a;
}

std::vector<std::vector<long>> reduced_matrix(const std::vector<std::vector<TruncSeries>>& A) {
    std::vector<std::vector<long>> r(A.size(), std::vector<long>(A.size()));
    for (std::size_t i = 0; i < A.size(); ++i)
        for (std::size_t j = 0; j < A.size(); ++j)
            r[i][j] = static_cast<long>(A[i][j].coeff(0) % static_cast<std::uint64_t>(A[i][j].prec().p));
    return r;
}

}  // namespace

Verdict verify_comult(long p, int n_max, bool mutate) {
    // (p)_q Delta(omega) = theta((p)_q) (x) omega + (p)_q omega (x) 1, the image of xi.
    const int Kl = static_cast<int>(p);
    const TensorQ dw = comult(OmegaQ::basis(p, Kl, 1, QFrac(1L), QFrac()), Kl, 2);
    TensorQ xi(p, Kl, 2, QFrac());
    xi.right_coeff(1) = frac(taylor_theta(q_integer(p), p, Kl));
    xi.right_coeff(0) = frac(OmegaI::basis(p, Kl, 1, q_integer(p), IntQPoly()));
    if (QFrac(q_integer(p)) * dw != xi) return Verdict::fail("Delta(omega) differs from the image of xi");
    for (int n = 2; n <= n_max; ++n) {
        const int K_left = std::min(comult_left_support(p, n), 2 * n);
        const TensorQ a = comult_basis(p, n, K_left, n);
        TensorQ b = comult_basis_plain(p, n, K_left, n);
        if (mutate) b.right_coeff(0).coeff(0) += QFrac(1L);
        if (a != b) return Verdict::fail("n=" + std::to_string(n) + ": falling-product and plain-power routes differ");
        // Integrality over the full left support (asserted inside comult_basis).
        comult_basis(p, n, comult_left_support(p, n), n);
    }
    return Verdict::ok();
}

std::vector<mpq_class> L_delta_at_one(long p, int n) {
    const OmegaQ l = L_delta(OmegaQ::basis(p, n, n, QFrac(1L), QFrac()));
    std::vector<mpq_class> v;
    for (const auto& c : l.coeffs()) v.push_back(c.eval_at_one());
    return v;
}

Verdict verify_modp(long p, int n, bool mutate) {
    const std::vector<mpq_class> v = L_delta_at_one(p, n);
    for (int k = 0; k < static_cast<int>(v.size()); ++k) {
        long pred = (k == n - 1) ? 1 : 0;
        if (p == 2 && k == n) pred = n % 2;
        if (mutate && k == n - 1) pred += 1;
        if (vp(v[k].get_den(), p) > 0) return Verdict::fail("coefficient not p-integral at k=" + std::to_string(k));
        const long got = mod_p(v[k], p);
        if (got != ((pred % p) + p) % p) {
            std::ostringstream os;
            os << "p=" << p << " n=" << n << ": coefficient of omega^{{" << k << "}} is " << v[k] << " = " << got
               << " mod p, predicted " << pred;
            return Verdict::fail(os.str());
        }
    }
    return Verdict::ok();
}

std::vector<mpz_class> estimates_alpha(long p) {
    std::vector<mpz_class> a(static_cast<std::size_t>(p));
    a[0] = 1;
    for (long i = 1; i < p; ++i) {
        mpz_class s = 0;
        for (long j = i; j < p; ++j) s += binomial(j, i);
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), mpz_class(p).get_mpz_t(), static_cast<unsigned long>(i - 1));
        a[i] = pw * factorial(i) * s;
    }
    return a;
}

Verdict verify_estimates(long p, int n, EstimatesReading reading, bool mutate) {
    if (n < 1) throw Error("verify_estimates: n >= 1 required");
    std::vector<mpq_class> d = L_delta_at_one(p, n);
    std::vector<mpz_class> alpha = estimates_alpha(p);
    if (mutate && p > 1) alpha[1] += 1;
    d.resize(std::max(d.size(), static_cast<std::size_t>(n + p)));
    for (long i = 0; i < p; ++i) d[n - 1 + i] -= mpq_class(binomial(n - 1 + i, n - 1) * alpha[i]);
    for (std::size_t m = 0; m < d.size(); ++m) {
        if (d[m] == 0) continue;
        // At q = 1 the ideal generated by theta(q) - 1 = p omega is span{p m omega^{{m}}}.
        const bool in_ideal = reading == EstimatesReading::TwoSided && m > 0 &&
                              vp(d[m], p) >= 1 + vp(mpz_class(static_cast<unsigned long>(m)), p);
        if (!in_ideal) {
            std::ostringstream os;
            os << "p=" << p << " n=" << n << ": L_Delta - P_{n-1} has " << d[m] << " at omega^{{" << m << "}}";
            return Verdict::fail(os.str());
        }
    }
    return Verdict::ok();
}

Verdict verify_coassoc(const OmegaQ& x, int K1, int K2, int K3, bool mutate) {
    const long p = x.p();
    // Delta(omega^{{i}}) vanishes at caps (Ka, Kb) once i > Ka + Kb + p Ka Kb.
    const int V = K1 + K2 + static_cast<int>(p) * K1 * K2;
    const int W = K2 + K3 + static_cast<int>(p) * K2 * K3;
    // Triple elements: index [right j][middle i] -> left factor at cap K1.
    using Triple = std::vector<std::vector<OmegaQ>>;
    const auto zero_triple = [&] { return Triple(K3 + 1, std::vector<OmegaQ>(K2 + 1, OmegaQ(p, K1, QFrac()))); };

    Triple lhs = zero_triple();
    const TensorQ outer_l = comult(x, V, K3);
    for (int j = 0; j <= K3; ++j) {
        const TensorQ inner = comult(outer_l.right_coeff(j), K1, K2);
        for (int i = 0; i <= K2; ++i) lhs[j][i] = inner.right_coeff(i);
    }

    Triple rhs = zero_triple();
    const TensorQ outer_r = comult(x, K1, W);
    for (int k = 0; k <= W; ++k) {
        const OmegaQ& phi = outer_r.right_coeff(k);
        if (phi.is_zero()) continue;
        const TensorQ& dk = comult_basis(p, k, K2, K3);
        for (int j = 0; j <= K3; ++j)
            for (int i = 0; i <= K2; ++i) {
                const QFrac& c = dk.right_coeff(j).coeff(i);
                if (!c.is_zero()) rhs[j][i] += phi * taylor_theta(c, p, K1);
            }
    }
    if (mutate) rhs[0][0].coeff(0) += QFrac(1L);
    for (int j = 0; j <= K3; ++j)
        for (int i = 0; i <= K2; ++i)
            if (lhs[j][i] != rhs[j][i])
                return Verdict::fail("component (" + std::to_string(i) + "," + std::to_string(j) + ") differs");
    return Verdict::ok();
}

Verdict verify_counit(const OmegaQ& x) {
    if (comult(x, x.K(), 0).right_coeff(0) != x) return Verdict::fail("(Id (x) e) Delta != Id");
    return Verdict::ok();
}

Verdict verify_rlin(long p, const IntQPoly& alpha, const OmegaQ& phi, bool mutate) {
    const int da = static_cast<int>(std::max(0L, alpha.degree()));
    const IntQPoly g_alpha = alpha.subs_qpow(static_cast<unsigned>(p + 1));
    const IntQPoly d_alpha = euclid_div_exact(g_alpha - alpha, h_poly());
    const OmegaQ l_phi = L_delta(phi);
    // Every term is a finite sum; pad to a cap past all supports.
    const int C = (static_cast<int>(p) + 1) * da + l_phi.K() + phi.K() + da + 1;
    const auto theta = [&](const IntQPoly& a) { return frac(taylor_theta(a, p, C)); };
    const OmegaQ lhs = L_delta((theta(alpha) * phi.with_cap(C)).with_cap(da + phi.K())).with_cap(C);
    const OmegaQ rhs = theta(d_alpha) * phi.with_cap(C) + theta(mutate ? alpha : g_alpha) * l_phi.with_cap(C);
    if (lhs != rhs) return Verdict::fail("L_Delta(theta(a) phi) differs from the twisted Leibniz form");
    return Verdict::ok();
}

std::vector<std::vector<TruncSeries>> L_delta_matrix(const Precision& prec, int K) {
    std::vector<std::vector<TruncSeries>> A(K, std::vector<TruncSeries>(K, TruncSeries(prec)));
    for (int n = 1; n <= K; ++n) {
        const OmegaT& l = L_delta_basis(prec, n, K);
        for (int m = 0; m < K; ++m) A[m][n - 1] = l.coeff(m);
    }
    return A;
}

Verdict verify_kernel_injective(const Precision& prec, int K) {
    const auto Abar = reduced_matrix(L_delta_matrix(prec, K));
    try {
        invert_mod_p(Abar, prec.p);
    } catch (const NotAUnit&) {
        return Verdict::fail("L_Delta on the augmentation ideal is singular mod (p, q - 1)");
    }
    return Verdict::ok();
}

OmegaT little_poincare_solve(const OmegaT& psi) {
    const long p = psi.p();
    const int K = psi.K();
    if (K > p - 1) throw OrderCapTooHigh("little_poincare_solve: K <= p - 1 required");
    const Precision pr = psi.zero().prec();
    OmegaT phi(p, K, TruncSeries(pr));
    if (K == 0) return phi;
    const auto A = L_delta_matrix(pr, K);
    const auto Abar = reduced_matrix(A);
    if (Abar != predicted_mod_p(p, K)) throw Error("little_poincare_solve: L_Delta mod (p, q - 1) differs from the predicted form");
    const auto S = invert_mod_p(Abar, p);
    std::vector<TruncSeries> x(K, TruncSeries(pr));
    for (int round = 0; round <= pr.M + pr.N; ++round) {
        std::vector<TruncSeries> r(K, TruncSeries(pr));
        bool done = true;
        for (int m = 0; m < K; ++m) {
            r[m] = psi.coeff(m);
            for (int c = 0; c < K; ++c) r[m] -= A[m][c] * x[c];
            done = done && r[m].is_zero();
        }
        if (done) {
            for (int c = 0; c < K; ++c) phi.coeff(c + 1) = x[c];
            return phi;
        }
        for (int c = 0; c < K; ++c)
            for (int m = 0; m < K; ++m)
                if (S[c][m] != 0) x[c] += r[m].scaled(S[c][m]);
    }
    throw NoConvergence("little_poincare_solve: residual did not vanish within M + N rounds");
}

}  // namespace acalc
