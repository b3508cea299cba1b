// SPDX-License-Identifier: MIT
// Rational functions in q whose denominators are products of cyclotomic
// polynomials (and powers of q): c * rest(q) * prod_d Phi_d(q)^{e_d}.
//
// This is the exact-rational layer: divided-basis coefficients such as
// Delta(omega^{{n}}) = Delta(omega^{(n)}) / (n)_{q^p}! only ever acquire
// cyclotomic denominators, so factoring them keeps arithmetic cheap and
// p-integrality decidable without general polynomial gcds.
#pragma once

#include <string>

#include "acalc/poly.hpp"
#include "acalc/qcombinatorics.hpp"

namespace acalc {

class QFrac {
public:
    QFrac() = default;                 // zero
    QFrac(long v) : QFrac(mpq_class(v)) {}  // NOLINT(google-explicit-constructor)
    QFrac(const mpq_class& v);          // NOLINT(google-explicit-constructor)
    QFrac(const IntQPoly& a);           // NOLINT(google-explicit-constructor)
    QFrac(const RatQPoly& a);           // NOLINT(google-explicit-constructor)
    static QFrac from_factors(const CycloFactors& f, const mpq_class& c = 1);

    bool is_zero() const { return c_ == 0; }
    const mpq_class& scalar() const { return c_; }
    const IntQPoly& rest() const { return rest_; }
    const CycloFactors& factors() const { return f_; }

    QFrac& operator+=(const QFrac& o);
    QFrac& operator-=(const QFrac& o);
    QFrac& operator*=(const QFrac& o);
    friend QFrac operator+(QFrac a, const QFrac& b) { return a += b; }
    friend QFrac operator-(QFrac a, const QFrac& b) { return a -= b; }
    friend QFrac operator*(QFrac a, const QFrac& b) { return a *= b; }
    friend QFrac operator-(QFrac a) {
        a.c_ = -a.c_;
        return a;
    }
    friend bool operator==(const QFrac& a, const QFrac& b) { return (a - b).is_zero(); }
    friend bool operator!=(const QFrac& a, const QFrac& b) { return !(a == b); }

    // Multiply by prod Phi_d^{times * e_d}.
    QFrac mul_factors(const CycloFactors& f, long times = 1) const;
    QFrac div_factors(const CycloFactors& f) const { return mul_factors(f, -1); }
    // Exact division by a polynomial that must factor into cyclotomics (checked).
    QFrac div_poly(const IntQPoly& d) const;
    // Inverse; only for elements whose non-cyclotomic part is constant.
    QFrac inverse() const;

    // f(q^r), r >= 1.
    QFrac subs_qpow(unsigned r) const;
    // Value at q = 1; throws NotPIntegral-like Error if Phi_1 is in the denominator.
    mpq_class eval_at_one() const;

    // Lies in Z_p[[q-1]].
    bool p_integral(long p) const;
    // True when there is no denominator at all (a polynomial over Q).
    bool is_polynomial() const;
    // Expanded polynomial; throws if a denominator remains.
    RatQPoly to_poly() const;

    std::string to_string() const;

private:
    void canonicalize();
    mpq_class c_ = 0;
    IntQPoly rest_{1L};  // primitive, positive leading coefficient
    CycloFactors f_;     // d -> e_d (d = 0: factor q)
};

// Trial-divides a polynomial by cyclotomic factors up to degree bound; returns
// the factorization or throws if a non-cyclotomic part remains.
CycloFactors factor_cyclotomic(const IntQPoly& a, mpz_class& leading);

}  // namespace acalc
