// SPDX-License-Identifier: MIT
// R<omega>_Delta truncated at omega-order K, stored on the divided basis
// omega^{{0}}, ..., omega^{{K}}. Coefficients are IntQPoly (exact integer),
// QFrac (exact rational) or TruncSeries (truncated p-adic).
#pragma once

#include <map>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "acalc/qcombinatorics.hpp"
#include "acalc/qfrac.hpp"
#include "acalc/ratseries.hpp"
#include "acalc/series.hpp"

namespace acalc {

// Structure constants of the divided basis at x = q:
// omega^{{n1}} omega^{{n2}} = sum_i c_i omega^{{n1+n2-i}}, i = 0..min(n1, n2).
const std::vector<IntQPoly>& rule_coeffs_int(long p, int n1, int n2);

inline IntQPoly lift_like(const IntQPoly& a, const IntQPoly&) { return a; }
inline QFrac lift_like(const IntQPoly& a, const QFrac&) { return QFrac(a); }
inline TruncSeries lift_like(const IntQPoly& a, const TruncSeries& like) { return from_qpoly(a, like.prec()); }
inline RatSeries lift_like(const IntQPoly& a, const RatSeries& like) { return rat_from_qpoly(a, like.N()); }

inline std::tuple<long, int, int> ring_key(const IntQPoly&) { return {0, 0, 0}; }
inline std::tuple<long, int, int> ring_key(const QFrac&) { return {1, 0, 0}; }
inline std::tuple<long, int, int> ring_key(const TruncSeries& a) { return {a.prec().p, a.prec().M, a.prec().N}; }
inline std::tuple<long, int, int> ring_key(const RatSeries& a) { return {-1, a.N(), 0}; }

inline std::string coeff_string(const IntQPoly& a) { return a.to_string(); }
inline std::string coeff_string(const QFrac& a) { return a.to_string(); }
inline std::string coeff_string(const TruncSeries& a) { return a.to_string(); }
inline std::string coeff_string(const RatSeries& a) { return a.to_string(); }

// Structure constants lifted into the coefficient ring of `like`, cached per ring.
template <class C>
const std::vector<C>& rule_coeffs(long p, int n1, int n2, const C& like) {
    static std::map<std::tuple<std::tuple<long, int, int>, long, int, int>, std::vector<C>> cache;
    static std::mutex mu;
    const auto key = std::make_tuple(ring_key(like), p, n1, n2);
    {
        std::lock_guard lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    std::vector<C> v;
    for (const auto& c : rule_coeffs_int(p, n1, n2)) v.push_back(lift_like(c, like));
    std::lock_guard lock(mu);
    return cache.emplace(key, std::move(v)).first->second;
}

template <class C>
class OmegaElt {
public:
    OmegaElt() = default;
    // Zero element; `zero` fixes the coefficient ring (and precision).
    OmegaElt(long p, int K, const C& zero) : p_(p), zero_(zero), c_(static_cast<std::size_t>(K) + 1, zero) {
        if (K < 0) throw Error("OmegaElt: negative order cap");
    }
    OmegaElt(long p, std::vector<C> coeffs, const C& zero) : p_(p), zero_(zero), c_(std::move(coeffs)) {
        if (c_.empty()) throw Error("OmegaElt: empty coefficient list");
    }

    static OmegaElt constant(long p, int K, const C& c, const C& zero) {
        OmegaElt r(p, K, zero);
        r.c_[0] = c;
        return r;
    }
    static OmegaElt basis(long p, int K, int k, const C& one, const C& zero) {
        OmegaElt r(p, K, zero);
        if (k <= K) r.c_[static_cast<std::size_t>(k)] = one;
        return r;
    }

    long p() const { return p_; }
    int K() const { return static_cast<int>(c_.size()) - 1; }
    const C& coeff(int k) const { return c_.at(static_cast<std::size_t>(k)); }
    C& coeff(int k) { return c_.at(static_cast<std::size_t>(k)); }
    const std::vector<C>& coeffs() const { return c_; }
    const C& zero() const { return zero_; }
    const C& augmentation() const { return c_[0]; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (!x.is_zero()) return false;
        return true;
    }

    OmegaElt& operator+=(const OmegaElt& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        zero_ += o.zero_;
        return *this;
    }
    OmegaElt& operator-=(const OmegaElt& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        zero_ += o.zero_;
        return *this;
    }
    friend OmegaElt operator+(OmegaElt a, const OmegaElt& b) { return a += b; }
    friend OmegaElt operator-(OmegaElt a, const OmegaElt& b) { return a -= b; }
    friend OmegaElt operator-(OmegaElt a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    // Plain (left) scalar multiplication.
    friend OmegaElt operator*(const C& s, OmegaElt a) {
        for (auto& x : a.c_) x = s * x;
        a.zero_ = s * a.zero_;
        return a;
    }
    friend OmegaElt operator*(const OmegaElt& a, const OmegaElt& b) {
        a.check(b);
        const int K = a.K();
        OmegaElt r(a.p_, K, a.zero_ + b.zero_);
        for (int n1 = 0; n1 <= K; ++n1) {
            if (a.c_[n1].is_zero()) continue;
            for (int n2 = 0; n2 <= K; ++n2) {
                if (b.c_[n2].is_zero()) continue;
                const C ab = a.c_[n1] * b.c_[n2];
                const auto& rc = rule_coeffs(a.p_, n1, n2, a.zero_);
                for (int i = 0; i < static_cast<int>(rc.size()); ++i) {
                    const int d = n1 + n2 - i;
                    if (d > K) continue;
                    r.c_[d] += ab * rc[i];
                }
            }
        }
        return r;
    }
    OmegaElt& operator*=(const OmegaElt& o) { return *this = *this * o; }
    friend bool operator==(const OmegaElt& a, const OmegaElt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const OmegaElt& a, const OmegaElt& b) { return !(a == b); }

    OmegaElt pow(unsigned e) const {
        OmegaElt r = constant(p_, K(), one_like(), zero_), b = *this;
        while (e) {
            if (e & 1U) r *= b;
            e >>= 1U;
            if (e) b *= b;
        }
        return r;
    }

    // Change the order cap (truncating or padding with zeros).
    OmegaElt with_cap(int K) const {
        OmegaElt r(p_, K, zero_);
        for (int k = 0; k <= std::min(K, this->K()); ++k) r.c_[k] = c_[k];
        return r;
    }

    template <class F>
    auto map(F&& f) const {
        using D = decltype(f(c_[0]));
        std::vector<D> v;
        v.reserve(c_.size());
        for (const auto& x : c_) v.push_back(f(x));
        return OmegaElt<D>(p_, std::move(v), f(zero_));
    }

    std::vector<std::string> to_strings() const {
        std::vector<std::string> out;
        for (const auto& x : c_) out.push_back(coeff_string(x));
        return out;
    }

private:
    C one_like() const { return lift_like(IntQPoly(1L), zero_); }
    void check(const OmegaElt& o) const {
        if (p_ != o.p_) throw WrongPrime("OmegaElt: different primes");
        if (c_.size() != o.c_.size()) throw PrecisionMismatch("OmegaElt: different order caps");
    }

    long p_ = 2;
    C zero_{};
    std::vector<C> c_{C{}};
};

using OmegaI = OmegaElt<IntQPoly>;
using OmegaQ = OmegaElt<QFrac>;
using OmegaT = OmegaElt<TruncSeries>;
using OmegaR = OmegaElt<RatSeries>;

// Convenience constructors.
OmegaI omega_int(long p, int K);                      // omega^{{1}}
OmegaQ to_frac(const OmegaI& a);
OmegaT to_series(const OmegaI& a, const Precision& prec);
OmegaT to_series(const OmegaQ& a, const Precision& prec);
OmegaT omega_series(const Precision& prec, int K);     // omega^{{1}}
OmegaT constant_series(const TruncSeries& c, int K);
OmegaT reduce_to(const OmegaT& a, const Precision& coarser);

// Delta-Taylor map q -> q + (p)_q omega.
OmegaI taylor_theta(const IntQPoly& a, long p, int K);
// Truncated input: the omega^{{k}} component is only known modulo t^{N-k}(p)_q^k,
// so the result carries t-precision N - min(K, M - 1).
OmegaT taylor_theta(const TruncSeries& a, int K);
// Rational input via the node evaluations ev_j(theta(f)) = f(q^{pj+1}).
OmegaQ taylor_theta(const QFrac& f, long p, int K);
// Cached theta of an integer polynomial (used for tensor scalar routing).
const OmegaI& taylor_theta_cached(const IntQPoly& a, long p, int K);

// ev_j(omega^{{k}}) = (q^2 - q)^k q^{p C(k,2)} binom(j, k)_{q^p}.
IntQPoly node_value(long p, int j, int k);
QFrac node_eval(const OmegaQ& a, int j);

// (p)_q^k (k)_{q^p}! binom(n, k)_{q^p} q^{n-k}.
IntQPoly closed_form_partial(long p, int k, int n);

// omega^n on the divided basis by repeated multiplication; cross-checked against
// the Stirling closed form (throws Error on disagreement).
OmegaI plain_power(long p, int n, int K);
OmegaI plain_power_stirling(long p, int n, int K);

// Changes of basis between omega^n and omega^{{n}}, n <= n_max, x = q.
// Over Q: (k)_{q^p}! S_{q^p}(n,k) ((q-1)q)^{n-k} and s_{q^p}(n,k) ((q-1)q)^{n-k} / (n)_{q^p}!
// are mutually inverse, and the first matches omega^n by repeated multiplication.
// At q = zeta: (k!/n!) S(n,k) and (k!/n!) s(n,k) times ((zeta-1)zeta)^{n-k} are
// p-integral, mutually inverse, and the first matches omega^n / n! reduced mod Phi_p.
// `mutate` perturbs one coefficient of each first matrix.
Verdict verify_basis_change(int n_max, long p, bool mutate = false);

// L(omega) with theta((p)_q) = (p)_q L(omega).
OmegaI L_of_omega(long p, int K);

// lambda = gamma((p)_q) / (p)_q and d_{q^p}((p)_q), exact.
IntQPoly lambda_poly(long p);
IntQPoly dqp_pq(long p);
IntQPoly dqp(const IntQPoly& f, long p);

// Inverse of a unit of the truncated algebra by Newton iteration.
OmegaT inverse(const OmegaT& a);
OmegaR inverse(const OmegaR& a);

// Operators on the truncated algebra; K <= p - 1 required (OrderCapTooHigh).
OmegaT gamma_alg(const OmegaT& a);
OmegaT partial_delta_alg(const OmegaT& a);
// Flip: theta on coefficients, omega -> -L^{-1} omega. Output t-precision
// N - min(K, M - 1).
OmegaT tau_flip(const OmegaT& a);
// tau(omega^{{n}}) modulo omega^{{>K_out}}, any n. Computed over Q[t]/(t^N) since
// (n)_{q^p}! is not a unit for n >= p; the reduction mod p^M checks integrality.
const OmegaT& tau_of_basis(const Precision& prec, int n, int K_out);
// tau applied to a finite sum sum_{n <= a.K()} a_n omega^{{n}}, truncated at
// K_out. tau does not preserve omega^{{>K}}, so an element known only modulo
// omega^{{>K}} must be supplied at a cap large enough for its tail to be small.
OmegaT tau_finite_sum(const OmegaT& a, int K_out);
// p = 2 only: sigma(q) = q^{-1}, sigma(omega) = q omega + q - 1.
OmegaT sigma_p2(const OmegaT& a);

// log_q(1 + (p)_q omega / q) truncated at order K.
OmegaT log_q_omega(const Precision& prec, int K);

}  // namespace acalc
