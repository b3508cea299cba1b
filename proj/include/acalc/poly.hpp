// SPDX-License-Identifier: MIT
// Dense univariate polynomials in q over Z or Q (GMP coefficients).
#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "acalc/errors.hpp"

namespace acalc {

// Product of integer coefficient vectors by Kronecker substitution (one big
// GMP multiplication); used for long operands.
std::vector<mpz_class> kronecker_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b);

template <class T>
class Poly {
public:
    Poly() = default;
    Poly(long c) { if (c != 0) c_.push_back(T(c)); }  // NOLINT(google-explicit-constructor)
    Poly(const T& c) { if (c != 0) c_.push_back(c); }  // NOLINT(google-explicit-constructor)
    Poly(std::initializer_list<long> cs) {
        for (long v : cs) c_.emplace_back(v);
        trim();
    }
    explicit Poly(std::vector<T> cs) : c_(std::move(cs)) { trim(); }

    static Poly monomial(const T& c, std::size_t deg) {
        if (c == 0) return {};
        std::vector<T> v(deg + 1, T(0));
        v[deg] = c;
        return Poly(std::move(v));
    }
    static Poly q_pow(std::size_t deg) { return monomial(T(1), deg); }

    const std::vector<T>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    // Degree of the zero polynomial is -1.
    long degree() const { return static_cast<long>(c_.size()) - 1; }
    T coeff(std::size_t i) const { return i < c_.size() ? c_[i] : T(0); }
    const T& lead() const { return c_.back(); }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }
    Poly& operator*=(const T& s) {
        if (s == 0) { c_.clear(); return *this; }
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& x : a.c_) x = -x;
        return a;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        if constexpr (std::is_same_v<T, mpz_class>) {
            if (std::min(a.c_.size(), b.c_.size()) >= 24) return Poly(kronecker_mul(a.c_, b.c_));
        }
        std::vector<T> r(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(r));
    }
    friend Poly operator*(Poly a, const T& s) { return a *= s; }
    friend Poly operator*(const T& s, Poly a) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    Poly pow(unsigned e) const {
        Poly r(1L), b = *this;
        while (e) {
            if (e & 1U) r *= b;
            e >>= 1U;
            if (e) b *= b;
        }
        return r;
    }

    // Multiply by q^k.
    Poly shift(std::size_t k) const {
        if (is_zero()) return {};
        std::vector<T> v(k, T(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Poly(std::move(v));
    }

    // a(q^r) for r >= 1.
    Poly subs_qpow(unsigned r) const {
        if (is_zero() || r == 1) return *this;
        std::vector<T> v((c_.size() - 1) * r + 1, T(0));
        for (std::size_t i = 0; i < c_.size(); ++i) v[i * r] = c_[i];
        return Poly(std::move(v));
    }

    // a(b(q)) by Horner.
    Poly compose(const Poly& b) const {
        Poly r;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            r = r * b;
            r += Poly(*it);
        }
        return r;
    }

    template <class U>
    U eval(const U& x) const {
        U r(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + U(*it);
        return r;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<T> v(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * static_cast<long>(i);
        return Poly(std::move(v));
    }

    // Quotient and remainder by a monic divisor (valid over Z and Q).
    std::pair<Poly, Poly> divmod_monic(const Poly& d) const {
        if (d.is_zero() || d.lead() != 1) throw Error("divmod_monic: divisor must be monic");
        if (degree() < d.degree()) return {Poly(), *this};
        std::vector<T> r = c_;
        const std::size_t dd = d.c_.size() - 1;
        std::vector<T> qv(r.size() - dd, T(0));
        for (std::size_t i = r.size(); i-- > dd;) {
            const T f = r[i];
            if (f == 0) continue;
            qv[i - dd] = f;
            for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= f * d.c_[j];
        }
        r.resize(dd);
        return {Poly(std::move(qv)), Poly(std::move(r))};
    }

    std::string to_string(const char* var = "q") const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<T> c_;
};

using IntQPoly = Poly<mpz_class>;
using RatQPoly = Poly<mpq_class>;

template <class T>
std::string Poly<T>::to_string(const char* var) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        const T& c = c_[i];
        if (c == 0) continue;
        T a = c < 0 ? T(-c) : c;
        if (first) {
            if (c < 0) os << "-";
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            os << a;
        } else {
            if (a != 1) os << a << "*";
            os << var;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

template <class T>
std::ostream& operator<<(std::ostream& os, const Poly<T>& p) {
    return os << p.to_string();
}

// Exact quotient a / d for monic d; throws NonzeroRemainder otherwise.
template <class T>
Poly<T> euclid_div_exact(const Poly<T>& a, const Poly<T>& d) {
    auto [qt, r] = a.divmod_monic(d);
    if (!r.is_zero()) throw NonzeroRemainder("remainder " + r.to_string() + " on division by " + d.to_string());
    return qt;
}

// Exact quotient by an arbitrary nonzero integer polynomial (leading coefficient must divide).
IntQPoly div_exact_int(const IntQPoly& a, const IntQPoly& d);

// Divide by an arbitrary nonzero polynomial over Q.
std::pair<RatQPoly, RatQPoly> divmod_rat(const RatQPoly& a, const RatQPoly& d);
RatQPoly poly_gcd(RatQPoly a, RatQPoly b);

RatQPoly to_rat(const IntQPoly& a);
mpz_class content(const IntQPoly& a);
// Primitive part with positive leading coefficient; content (with sign) returned via out-param.
IntQPoly primitive_part(const IntQPoly& a, mpz_class* cont = nullptr);
// Clear denominators: a = (num / den) with num integral, den > 0.
IntQPoly clear_denominators(const RatQPoly& a, mpz_class& den);

// True iff every coefficient has denominator coprime to p.
bool p_integrality(const RatQPoly& a, long p);

// p-adic valuation of a nonzero rational (throws on zero).
long vp(const mpq_class& x, long p);
long vp(const mpz_class& x, long p);

mpz_class binomial(long n, long k);
mpz_class factorial(long n);

}  // namespace acalc
