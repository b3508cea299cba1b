// SPDX-License-Identifier: MIT
// Elements of Z[zeta] and Q(zeta), zeta a primitive p-th root of unity, on the
// basis 1, zeta, ..., zeta^{p-2}; and O_K = Z_p[zeta] modulo p^M.
#pragma once

#include <string>
#include <vector>

#include "acalc/poly.hpp"
#include "acalc/series.hpp"

namespace acalc {

template <class T>
class CycloElt {
public:
    CycloElt() = default;
    explicit CycloElt(long p) : p_(p), c_(static_cast<std::size_t>(p - 1), T(0)) {}
    CycloElt(long p, const T& v) : CycloElt(p) { c_[0] = v; }
    CycloElt(long p, std::vector<T> coords) : p_(p), c_(std::move(coords)) { reduce(); }

    static CycloElt zeta(long p) { return CycloElt(p, std::vector<T>{T(0), T(1)}); }
    // Image of a polynomial in q under q -> zeta.
    static CycloElt from_poly(long p, const Poly<T>& a) { return CycloElt(p, a.coeffs()); }

    long p() const { return p_; }
    const std::vector<T>& coords() const { return c_; }
    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    CycloElt& operator+=(const CycloElt& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
        return *this;
    }
    CycloElt& operator-=(const CycloElt& o) {
        check(o);
        for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
        return *this;
    }
    CycloElt& operator*=(const T& s) {
        for (auto& x : c_) x *= s;
        return *this;
    }
    friend CycloElt operator+(CycloElt a, const CycloElt& b) { return a += b; }
    friend CycloElt operator-(CycloElt a, const CycloElt& b) { return a -= b; }
    friend CycloElt operator-(CycloElt a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend CycloElt operator*(CycloElt a, const T& s) { return a *= s; }
    friend CycloElt operator*(const T& s, CycloElt a) { return a *= s; }
    friend CycloElt operator*(const CycloElt& a, const CycloElt& b) {
        a.check(b);
        std::vector<T> r(2 * a.c_.size(), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return CycloElt(a.p_, std::move(r));
    }
    CycloElt& operator*=(const CycloElt& o) { return *this = *this * o; }
    friend bool operator==(const CycloElt& a, const CycloElt& b) { return a.p_ == b.p_ && a.c_ == b.c_; }
    friend bool operator!=(const CycloElt& a, const CycloElt& b) { return !(a == b); }

    CycloElt pow(unsigned e) const {
        CycloElt r(p_, T(1)), b = *this;
        while (e) {
            if (e & 1U) r *= b;
            e >>= 1U;
            if (e) b *= b;
        }
        return r;
    }
    Poly<T> to_poly() const { return Poly<T>(c_); }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            if (!s.empty()) s += " + ";
            s += c_[i].get_str();
            if (i == 1) s += "*z";
            if (i > 1) s += "*z^" + std::to_string(i);
        }
        return s.empty() ? "0" : s;
    }

private:
    void check(const CycloElt& o) const {
        if (p_ != o.p_) throw WrongPrime("cyclotomic elements over different primes");
    }
    // zeta^{p-1} = -(1 + zeta + ... + zeta^{p-2}); higher powers wrap mod p first.
    void reduce() {
        const std::size_t d = static_cast<std::size_t>(p_ - 1);
        std::vector<T> w(static_cast<std::size_t>(p_), T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) w[i % static_cast<std::size_t>(p_)] += c_[i];
        c_.assign(d, T(0));
        for (std::size_t i = 0; i < d; ++i) c_[i] = w[i] - w[d];
    }

    long p_ = 2;
    std::vector<T> c_{T(0)};
};

using ZZeta = CycloElt<mpz_class>;
using QZeta = CycloElt<mpq_class>;

QZeta to_qzeta(const ZZeta& a);
// (p)'_zeta = 1 + 2 zeta + ... + (p-1) zeta^{p-2}.
ZZeta pq_prime(long p);
// Inverse in Q(zeta) via the extended Euclidean algorithm against Phi_p.
QZeta inverse(const QZeta& a);
// Integer matrix of multiplication by a on the basis 1..zeta^{p-2} (columns = images).
std::vector<std::vector<mpz_class>> mult_matrix(const ZZeta& a);
// Norm N_{K/Q}(a) = det of the multiplication matrix.
mpz_class norm(const ZZeta& a);
// pi-adic valuation with pi = zeta - 1 (v_pi(p) = p - 1); returns -1 for zero.
long vpi(const ZZeta& a);
bool divisible_by_p(const ZZeta& a);

// Element of O_K / p^M with coordinates in [0, p^M).
class OKElt {
public:
    OKElt() = default;
    OKElt(long p, int M);  // zero
    OKElt(long p, int M, const ZZeta& exact);

    long p() const { return p_; }
    int M() const { return M_; }
    const ZZeta& lift() const { return v_; }
    bool is_zero() const { return v_.is_zero(); }

    friend OKElt operator+(const OKElt& a, const OKElt& b);
    friend OKElt operator-(const OKElt& a, const OKElt& b);
    friend OKElt operator*(const OKElt& a, const OKElt& b);
    friend bool operator==(const OKElt& a, const OKElt& b);
    friend bool operator!=(const OKElt& a, const OKElt& b) { return !(a == b); }

    std::vector<std::string> residues() const;
    std::string to_string() const;

private:
    long p_ = 2;
    int M_ = 1;
    ZZeta v_;
};

// Image in O_K / p^{M'} of a series mod (p^M, t^N) under q -> zeta, with
// M' = min(M, floor(N / (p - 1))) since t^N lies in p^{M'} O_K.
OKElt reduce_mod_pq(const TruncSeries& a);

}  // namespace acalc
