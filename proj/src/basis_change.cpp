// SPDX-License-Identifier: MIT
#include "acalc/cyclo.hpp"
#include "acalc/omega.hpp"
#include "acalc/sen.hpp"

namespace acalc {

namespace {

template <class T>
using Matrix = std::vector<std::vector<T>>;

template <class T>
Matrix<T> mat_mul(const Matrix<T>& a, const Matrix<T>& b, const T& zero) {
    const std::size_t n = a.size();
    Matrix<T> c(n, std::vector<T>(n, zero));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

template <class T>
std::string first_non_identity(const Matrix<T>& m, const T& one) {
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < m.size(); ++j)
            if (m[i][j] != (i == j ? one : one - one)) return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
    return {};
}

IntQPoly qm1_q_pow(long e) {
    IntQPoly r(1L);
    const IntQPoly f{0, -1, 1};  // q^2 - q
    for (long i = 0; i < e; ++i) r = r * f;
    return r;
}

bool p_integral(const QZeta& a, long p) {
    for (const auto& x : a.coords())
        if (mpz_divisible_ui_p(x.get_den_mpz_t(), static_cast<unsigned long>(p))) return false;
    return true;
}

}  // namespace

Verdict verify_basis_change(int n_max, long p, bool mutate) {
    if (n_max < 0) throw Error("verify_basis_change: negative n_max");
    const auto r = static_cast<unsigned>(p);
    const int sz = n_max + 1;

    // Over Q(q).
    Matrix<QFrac> A(sz, std::vector<QFrac>(sz)), B = A;
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k) {
            const IntQPoly g = qm1_q_pow(n - k);
            A[n][k] = QFrac(q_factorial(k, r) * stirling_q(StirlingKind::Second, n, k, r) * g);
            B[n][k] = QFrac(stirling_q(StirlingKind::First, n, k, r) * g).div_factors(q_factorial_factors(n, r));
        }
    if (mutate && n_max >= 1) A[n_max][n_max - 1] += QFrac(1L);
    for (int n = 0; n <= n_max; ++n) {
        const OmegaI pw = plain_power(p, n, n_max);
        for (int k = 0; k <= n_max; ++k)
            if (A[n][k] != QFrac(pw.coeff(k)))
                return Verdict::fail("omega^" + std::to_string(n) + " differs from the q^p-Stirling expansion at omega^{{" + std::to_string(k) + "}}");
    }
    const QFrac one(1L);
    if (auto w = first_non_identity(mat_mul(A, B, QFrac()), one); !w.empty()) return Verdict::fail("q^p-Stirling matrices: A B != I at " + w);
    if (auto w = first_non_identity(mat_mul(B, A, QFrac()), one); !w.empty()) return Verdict::fail("q^p-Stirling matrices: B A != I at " + w);

    // At q = zeta.
    const QZeta z = QZeta::zeta(p);
    const QZeta step = (z - QZeta(p, mpq_class(1))) * z;
    Matrix<QZeta> Ar(sz, std::vector<QZeta>(sz, QZeta(p))), Br = Ar;
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k) {
            mpq_class ratio(factorial(k), factorial(n));
            ratio.canonicalize();
            const QZeta g = step.pow(static_cast<unsigned>(n - k)) * ratio;
            Ar[n][k] = g * mpq_class(stirling2(n, k));
            Br[n][k] = g * mpq_class(stirling1(n, k));
        }
    if (mutate && n_max >= 1) Ar[n_max][n_max - 1] += QZeta(p, mpq_class(1, p));
    for (int n = 0; n <= n_max; ++n)
        for (int k = 0; k <= n; ++k) {
            if (!p_integral(Ar[n][k], p) || !p_integral(Br[n][k], p))
                return Verdict::fail("coefficient (" + std::to_string(n) + ", " + std::to_string(k) + ") is not p-integral at q = zeta");
        }
    for (int n = 0; n <= n_max; ++n) {
        const OmegaI pw = plain_power(p, n, n_max);
        for (int k = 0; k <= n_max; ++k) {
            const QZeta lhs = to_qzeta(ZZeta::from_poly(p, pw.coeff(k)));
            if (lhs != Ar[n][k] * mpq_class(factorial(n)))
                return Verdict::fail("omega^" + std::to_string(n) + " mod Phi_p differs from n! (k!/n!) S(n,k) at k = " + std::to_string(k));
        }
    }
    const QZeta onez(p, mpq_class(1));
    if (auto w = first_non_identity(mat_mul(Ar, Br, QZeta(p)), onez); !w.empty()) return Verdict::fail("matrices at q = zeta are not inverse at " + w);
    return Verdict::ok();
}

}  // namespace acalc
