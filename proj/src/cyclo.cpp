// SPDX-License-Identifier: MIT
#include "acalc/cyclo.hpp"

#include "acalc/qcombinatorics.hpp"
#include "acalc/smith.hpp"

namespace acalc {

namespace {

mpz_class pow_p(long p, int M) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(M));
    return r;
}

ZZeta reduce_coords(const ZZeta& a, const mpz_class& m) {
    std::vector<mpz_class> c = a.coords();
    for (auto& x : c) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return ZZeta(a.p(), std::move(c));
}

}  // namespace

QZeta to_qzeta(const ZZeta& a) {
    std::vector<mpq_class> c(a.coords().begin(), a.coords().end());
    return QZeta(a.p(), std::move(c));
}

ZZeta pq_prime(long p) {
    std::vector<mpz_class> c;
    for (long k = 1; k < p; ++k) c.emplace_back(k);
    return ZZeta(p, std::move(c));
}

QZeta inverse(const QZeta& a) {
    if (a.is_zero()) throw NotAUnit("inverse of zero in Q(zeta)");
    const long p = a.p();
    // Extended Euclid: track s with s*a = r mod Phi_p.
    RatQPoly r0 = to_rat(cyclotomic(p)), r1 = a.to_poly();
    RatQPoly s0, s1(mpq_class(1));
    while (r1.degree() > 0) {
        auto [qt, rem] = divmod_rat(r0, r1);
        RatQPoly s2 = s0 - qt * s1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.is_zero()) throw NotAUnit("element shares a factor with Phi_p");
    return QZeta::from_poly(p, s1 * (mpq_class(1) / r1.coeff(0)));
}

std::vector<std::vector<mpz_class>> mult_matrix(const ZZeta& a) {
    const std::size_t d = a.coords().size();
    IntMatrix m(d, std::vector<mpz_class>(d));
    ZZeta col = a;
    const ZZeta z = ZZeta::zeta(a.p());
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) m[i][j] = col.coords()[i];
        col *= z;
    }
    return m;
}

mpz_class norm(const ZZeta& a) { return determinant(mult_matrix(a)); }

long vpi(const ZZeta& a) {
    if (a.is_zero()) return -1;
    return vp(norm(a), a.p());
}

bool divisible_by_p(const ZZeta& a) {
    for (const auto& x : a.coords())
        if (x % a.p() != 0) return false;
    return true;
}

OKElt::OKElt(long p, int M) : p_(p), M_(M), v_(p) {}

OKElt::OKElt(long p, int M, const ZZeta& exact) : p_(p), M_(M), v_(reduce_coords(exact, pow_p(p, M))) {
    if (exact.p() != p) throw WrongPrime("OKElt: prime mismatch");
}

namespace {

void same_ring(const OKElt& a, const OKElt& b) {
    if (a.p() != b.p() || a.M() != b.M()) throw PrecisionMismatch("OKElt: different (p, M)");
}

}  // namespace

OKElt operator+(const OKElt& a, const OKElt& b) {
    same_ring(a, b);
    return OKElt(a.p_, a.M_, a.v_ + b.v_);
}

OKElt operator-(const OKElt& a, const OKElt& b) {
    same_ring(a, b);
    return OKElt(a.p_, a.M_, a.v_ - b.v_);
}

OKElt operator*(const OKElt& a, const OKElt& b) {
    same_ring(a, b);
    return OKElt(a.p_, a.M_, a.v_ * b.v_);
}

bool operator==(const OKElt& a, const OKElt& b) {
    same_ring(a, b);
    return a.v_ == b.v_;
}

std::vector<std::string> OKElt::residues() const {
    std::vector<std::string> out;
    for (const auto& x : v_.coords()) out.push_back(x.get_str());
    return out;
}

std::string OKElt::to_string() const { return v_.to_string() + " [p=" + std::to_string(p_) + ",M=" + std::to_string(M_) + "]"; }

OKElt reduce_mod_pq(const TruncSeries& a) {
    const Precision& pr = a.prec();
    const long p = pr.p;
    if (pr.N < p - 1) throw PrecisionTooLow("reduce_mod_pq needs t-precision at least p - 1");
    const int M = std::min<int>(pr.M, static_cast<int>(pr.N / (p - 1)));
    // sum c_j t^j with t = zeta - 1, evaluated by Horner in Z[zeta].
    const ZZeta t = ZZeta::zeta(p) - ZZeta(p, mpz_class(1));
    ZZeta acc(p);
    for (int j = pr.N - 1; j >= 0; --j) acc = acc * t + ZZeta(p, mpz_class(std::to_string(a.coeff(j))));
    return OKElt(p, M, acc);
}

}  // namespace acalc
