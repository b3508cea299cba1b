// SPDX-License-Identifier: MIT
// R<omega> (x)' R<omega> at finite caps, the comultiplication and L_Delta.
#pragma once

#include <vector>

#include "acalc/omega.hpp"
#include "acalc/qcombinatorics.hpp"

namespace acalc {

// theta of a structure constant, lifted into the ring of `like` at cap K.
template <class C>
const OmegaElt<C>& routed_rule_coeff(long p, int n1, int n2, int i, int K, const C& like) {
    static std::map<std::tuple<std::tuple<long, int, int>, long, int, int, int, int>, OmegaElt<C>> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(ring_key(like), p, n1, n2, i, K);
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const IntQPoly& c = rule_coeffs_int(p, n1, n2).at(static_cast<std::size_t>(i));
    OmegaElt<C> v = taylor_theta_cached(c, p, K).map([&](const IntQPoly& x) { return lift_like(x, like); });
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(v)).first->second;
}

// sum_j phi_j (x) omega^{{j}}, j = 0..K_right, each phi_j in the left factor at
// cap K_left. Scalars of the right factor pass to the left through theta.
template <class C>
class TensorElt {
public:
    TensorElt() = default;
    TensorElt(long p, int K_left, int K_right, const C& zero)
        : p_(p), K_left_(K_left), c_(static_cast<std::size_t>(K_right) + 1, OmegaElt<C>(p, K_left, zero)) {}

    static TensorElt pure(const OmegaElt<C>& left, int j, int K_right) {
        TensorElt r(left.p(), left.K(), K_right, left.zero());
        if (j <= K_right) r.c_[static_cast<std::size_t>(j)] = left;
        return r;
    }

    long p() const { return p_; }
    int K_left() const { return K_left_; }
    int K_right() const { return static_cast<int>(c_.size()) - 1; }
    const OmegaElt<C>& right_coeff(int j) const { return c_.at(static_cast<std::size_t>(j)); }
    OmegaElt<C>& right_coeff(int j) { return c_.at(static_cast<std::size_t>(j)); }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    TensorElt& operator+=(const TensorElt& o) {
        check(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] += o.c_[j];
        return *this;
    }
    TensorElt& operator-=(const TensorElt& o) {
        check(o);
        for (std::size_t j = 0; j < c_.size(); ++j) c_[j] -= o.c_[j];
        return *this;
    }
    friend TensorElt operator+(TensorElt a, const TensorElt& b) { return a += b; }
    friend TensorElt operator-(TensorElt a, const TensorElt& b) { return a -= b; }
    // Left scalar.
    friend TensorElt operator*(const C& s, TensorElt a) {
        for (auto& x : a.c_) x = s * x;
        return a;
    }
    friend TensorElt operator*(const TensorElt& a, const TensorElt& b) {
        a.check(b);
        const int Kr = a.K_right();
        const C& zero = a.c_[0].zero();
        TensorElt r(a.p_, a.K_left_, Kr, zero);
        for (int j1 = 0; j1 <= Kr; ++j1) {
            if (a.c_[j1].is_zero()) continue;
            for (int j2 = 0; j2 <= Kr; ++j2) {
                if (b.c_[j2].is_zero()) continue;
                const OmegaElt<C> ab = a.c_[j1] * b.c_[j2];
                const int imax = std::min(j1, j2);
                for (int i = 0; i <= imax; ++i) {
                    const int d = j1 + j2 - i;
                    if (d > Kr) continue;
                    r.c_[d] += ab * routed_rule_coeff(a.p_, j1, j2, i, a.K_left_, zero);
                }
            }
        }
        return r;
    }
    friend bool operator==(const TensorElt& a, const TensorElt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const TensorElt& a, const TensorElt& b) { return !(a == b); }

    template <class F>
    auto map(F&& f) const {
        using D = decltype(f(c_[0].zero()));
        TensorElt<D> r(p_, K_left_, K_right(), f(c_[0].zero()));
        for (int j = 0; j <= K_right(); ++j) r.right_coeff(j) = c_[j].map(f);
        return r;
    }

private:
    void check(const TensorElt& o) const {
        if (p_ != o.p_) throw WrongPrime("TensorElt: different primes");
        if (K_left_ != o.K_left_ || c_.size() != o.c_.size()) throw PrecisionMismatch("TensorElt: different caps");
    }

    long p_ = 2;
    int K_left_ = 0;
    std::vector<OmegaElt<C>> c_;
};

using TensorI = TensorElt<IntQPoly>;
using TensorQ = TensorElt<QFrac>;

// Delta(omega) = L(omega) (x) omega + omega (x) 1.
TensorI comult_omega(long p, int K_left, int K_right);
// (n)_{q^p}! Delta(omega^{{n}}) = prod_{j<n} (Delta(omega) - (j)_{q^p}(q^2 - q)).
TensorI comult_numerator(long p, int n, int K_left, int K_right);
// Delta(omega^{{n}}); every coefficient is asserted p-integral. Cached.
const TensorQ& comult_basis(long p, int n, int K_left, int K_right);
// Delta(a) for a finite sum a, left-linear in the coefficients.
TensorQ comult(const OmegaQ& a, int K_left, int K_right);
// Independent route: expand Delta(omega)^n and peel off lower divided terms
// with the Stirling expansion of omega^n.
TensorQ comult_basis_plain(long p, int n, int K_left, int K_right);

// Left cap beyond which Delta(omega^{{n}}) has no left components (exact support).
int comult_left_support(long p, int n);

// Coefficient of (x) omega^{{k}} in Delta(a); L_Delta = L_upper(1, .).
// Exact: a is a finite sum and the result is its full image.
OmegaQ L_upper(int k, const OmegaQ& a);
OmegaQ L_delta(const OmegaQ& a);
// L_Delta(omega^{{n}}) reduced into the truncated layer at cap K (finite-sum convention).
const OmegaT& L_delta_basis(const Precision& prec, int n, int K);
OmegaT L_delta(const OmegaT& a, int K_out);

// Checks. `mutate` perturbs the oracle side (negative controls).

// Delta(omega) = L(omega) (x) omega + omega (x) 1, and Delta(omega^{{n}}) for
// n <= n_max agrees with the plain-power route; all coefficients p-integral.
Verdict verify_comult(long p, int n_max, bool mutate = false);
// Coefficients of L_Delta(omega^{{n}}) at q = 1, and the prediction mod p:
// omega^{{n-1}} (p odd), omega^{{n-1}} + n omega^{{n}} (p = 2).
std::vector<mpq_class> L_delta_at_one(long p, int n);
Verdict verify_modp(long p, int n, bool mutate = false);
// alpha_0 = 1, alpha_i = p^{i-1} i! sum_{j=i}^{p-1} binom(j, i).
std::vector<mpz_class> estimates_alpha(long p);
enum class EstimatesReading {
    Coefficientwise,  // q - 1 killed on the left structure only
    TwoSided,         // q - 1 and theta(q) - 1 both killed
};
Verdict verify_estimates(long p, int n, EstimatesReading reading, bool mutate = false);
// (Delta (x) Id) Delta = (Id (x) Delta) Delta on x at triple caps (K1, K2, K3).
Verdict verify_coassoc(const OmegaQ& x, int K1, int K2, int K3, bool mutate = false);
// (Id (x) e) Delta = Id.
Verdict verify_counit(const OmegaQ& x);
// L_Delta(theta(a) phi) = theta(d_Delta a) phi + theta(gamma a) L_Delta(phi).
Verdict verify_rlin(long p, const IntQPoly& alpha, const OmegaQ& phi, bool mutate = false);

// Little Poincare at cap K <= p - 1: phi in span(omega^{{1..K}}) whose L_Delta
// matches psi in components 0..K-1 (component K of L_Delta(phi) would involve
// omega^{{K+1}}). Successive approximation with the section inverse to the
// mod (p, q-1) form; NoConvergence after M + N rounds.
OmegaT little_poincare_solve(const OmegaT& psi);
// The K x K matrix of L_Delta: span(omega^{{1..K}}) -> components 0..K-1.
std::vector<std::vector<TruncSeries>> L_delta_matrix(const Precision& prec, int K);
// Injectivity on the augmentation ideal: the matrix is invertible mod (p, q-1).
Verdict verify_kernel_injective(const Precision& prec, int K);

}  // namespace acalc
