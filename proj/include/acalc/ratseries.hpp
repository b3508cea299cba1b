// SPDX-License-Identifier: MIT
// Q[t]/(t^N), t = q - 1: exact rational power series. Used where a computation
// divides by twisted factorials that are not units in Z_p[[q-1]] but whose
// quotients are known to be p-integral.
#pragma once

#include <string>
#include <vector>

#include "acalc/poly.hpp"
#include "acalc/series.hpp"

namespace acalc {

class RatSeries {
public:
    RatSeries() = default;
    explicit RatSeries(int N) : c_(static_cast<std::size_t>(N)) {}
    RatSeries(int N, std::vector<mpq_class> c);

    int N() const { return static_cast<int>(c_.size()); }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const;

    RatSeries& operator+=(const RatSeries& o);
    RatSeries& operator-=(const RatSeries& o);
    friend RatSeries operator+(RatSeries a, const RatSeries& b) { return a += b; }
    friend RatSeries operator-(RatSeries a, const RatSeries& b) { return a -= b; }
    friend RatSeries operator-(RatSeries a);
    friend RatSeries operator*(const RatSeries& a, const RatSeries& b);
    RatSeries& operator*=(const RatSeries& o) { return *this = *this * o; }
    friend bool operator==(const RatSeries& a, const RatSeries& b);
    friend bool operator!=(const RatSeries& a, const RatSeries& b) { return !(a == b); }

    RatSeries truncated(int N) const;
    RatSeries invert() const;  // needs a nonzero constant term
    // Reduction mod (p^M, t^N); every coefficient must be p-integral.
    TruncSeries to_series(const Precision& prec) const;
    std::string to_string() const;

private:
    std::vector<mpq_class> c_;
};

RatSeries rat_from_qpoly(const IntQPoly& a, int N);

}  // namespace acalc
