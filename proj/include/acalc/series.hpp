// SPDX-License-Identifier: MIT
// Truncated p-adic power series (Z/p^M)[t]/(t^N), t = q - 1.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "acalc/poly.hpp"
#include "acalc/qfrac.hpp"

namespace acalc {

struct Precision {
    long p = 2;
    int M = 1;  // p-adic precision exponent
    int N = 1;  // t-adic truncation order

    Precision() = default;
    Precision(long p_, int M_, int N_);
    std::uint64_t modulus() const;
    friend bool operator==(const Precision&, const Precision&) = default;
    std::string to_string() const;
};

bool is_prime(long n);
// Coarser of two precisions (same p required).
Precision meet(const Precision& a, const Precision& b);

class TruncSeries {
public:
    TruncSeries() = default;
    explicit TruncSeries(const Precision& prec);  // zero
    TruncSeries(const Precision& prec, std::vector<std::uint64_t> coeffs);

    static TruncSeries constant(const Precision& prec, const mpz_class& c);
    static TruncSeries constant(const Precision& prec, long c) { return constant(prec, mpz_class(c)); }
    static TruncSeries t(const Precision& prec);
    static TruncSeries q(const Precision& prec);

    const Precision& prec() const { return prec_; }
    const std::vector<std::uint64_t>& coeffs() const { return c_; }
    std::uint64_t coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : 0; }
    bool is_zero() const;

    TruncSeries& operator+=(const TruncSeries& o);
    TruncSeries& operator-=(const TruncSeries& o);
    TruncSeries& operator*=(const TruncSeries& o);
    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b);
    friend TruncSeries operator-(const TruncSeries& a);
    TruncSeries scaled(const mpz_class& s) const;
    // Comparisons require equal precision (PrecisionMismatch otherwise).
    friend bool operator==(const TruncSeries& a, const TruncSeries& b);
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    TruncSeries pow(unsigned e) const;
    // Raises NotAUnit when the constant term is divisible by p.
    TruncSeries invert() const;
    bool is_unit() const;

    // g_r : q -> q^r (r may be negative).
    TruncSeries substitute_gr(long r) const;
    TruncSeries gamma() const { return substitute_gr(prec_.p + 1); }
    TruncSeries phi() const { return substitute_gr(prec_.p); }
    TruncSeries sigma() const { return substitute_gr(-1); }
    // (gamma(a) - a) / (q^2 - q); result has t-precision N - 1.
    TruncSeries partial_delta() const;
    // Exact division by t^k (checked); t-precision drops by k.
    TruncSeries div_t(int k) const;
    TruncSeries reduce_to(const Precision& coarser) const;

    // min_j (v_p(c_j) + j): the (p,t)-adic order, or M+N when zero.
    int pt_order() const;

    std::string to_string() const;
    std::vector<std::string> residues() const;

private:
    Precision prec_;
    std::vector<std::uint64_t> c_;
};

TruncSeries from_qpoly(const IntQPoly& a, const Precision& prec);
TruncSeries from_ratpoly(const RatQPoly& a, const Precision& prec);  // denominators prime to p
TruncSeries from_qfrac(const QFrac& a, const Precision& prec);        // must be p-integral
mpz_class residue_of(const mpq_class& x, const Precision& prec);     // x p-integral

// Nygaard/Griffiths checks use the literal formula d(t^n) = (p)_q (n)_{(p+1)_q} t^{n-1}.
TruncSeries partial_delta_formula(const TruncSeries& a);

}  // namespace acalc
