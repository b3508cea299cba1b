// SPDX-License-Identifier: MIT
#include "acalc/poly.hpp"

#include <cstdint>

namespace acalc {

namespace {

// Writes |v| into limbs [pos, pos + width) of `out` (little endian).
void put_limbs(std::vector<std::uint64_t>& out, std::size_t pos, const mpz_class& v) {
    std::size_t count = 0;
    mpz_export(out.data() + pos, &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
}

mpz_class from_limbs(const std::uint64_t* p, std::size_t n) {
    mpz_class r;
    mpz_import(r.get_mpz_t(), n, -1, sizeof(std::uint64_t), 0, 0, p);
    return r;
}

}  // namespace

std::vector<mpz_class> kronecker_mul(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b) {
    const auto max_bits = [](const std::vector<mpz_class>& v) {
        std::size_t m = 0;
        for (const auto& x : v) m = std::max(m, mpz_sizeinbase(x.get_mpz_t(), 2));
        return m;
    };
    const std::size_t n_out = a.size() + b.size() - 1;
    // Each output digit satisfies |c_k| < 2^(ba + bb + log2(min len)), plus a sign bit.
    const std::size_t need = max_bits(a) + max_bits(b) + mpz_sizeinbase(mpz_class(std::min(a.size(), b.size())).get_mpz_t(), 2) + 2;
    const std::size_t w = (need + 63) / 64;
    const auto pack = [w](const std::vector<mpz_class>& v) {
        std::vector<std::uint64_t> pos(v.size() * w, 0), neg(v.size() * w, 0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] > 0) put_limbs(pos, i * w, v[i]);
            if (v[i] < 0) put_limbs(neg, i * w, -v[i]);
        }
        return mpz_class(from_limbs(pos.data(), pos.size()) - from_limbs(neg.data(), neg.size()));
    };
    mpz_class c = pack(a) * pack(b);
    const bool negative = c < 0;
    if (negative) c = -c;
    std::vector<std::uint64_t> limbs(n_out * w + 1, 0);
    put_limbs(limbs, 0, c);
    const mpz_class half = mpz_class(1) << static_cast<mp_bitcnt_t>(64 * w - 1);
    const mpz_class full = half * 2;
    std::vector<mpz_class> r(n_out);
    int carry = 0;
    for (std::size_t k = 0; k < n_out; ++k) {
        mpz_class d = from_limbs(limbs.data() + k * w, w) + carry;
        carry = 0;
        if (d >= half) {
            d -= full;
            carry = 1;
        }
        r[k] = negative ? mpz_class(-d) : d;
    }
    return r;
}

IntQPoly div_exact_int(const IntQPoly& a, const IntQPoly& d) {
    if (d.is_zero()) throw Error("division by zero polynomial");
    if (a.degree() < d.degree()) {
        if (a.is_zero()) return {};
        throw NonzeroRemainder("degree too small for exact division");
    }
    std::vector<mpz_class> r = a.coeffs();
    const auto& dc = d.coeffs();
    const std::size_t dd = dc.size() - 1;
    std::vector<mpz_class> qv(r.size() - dd);
    for (std::size_t i = r.size(); i-- > dd;) {
        if (r[i] == 0) continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), dc[dd].get_mpz_t()))
            throw NonzeroRemainder("leading coefficient does not divide");
        mpz_class f = r[i] / dc[dd];
        qv[i - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= f * dc[j];
    }
    for (std::size_t i = 0; i < dd; ++i)
        if (r[i] != 0) throw NonzeroRemainder("nonzero remainder in exact division by " + d.to_string());
    return IntQPoly(std::move(qv));
}

std::pair<RatQPoly, RatQPoly> divmod_rat(const RatQPoly& a, const RatQPoly& d) {
    if (d.is_zero()) throw Error("division by zero polynomial");
    if (a.degree() < d.degree()) return {RatQPoly(), a};
    std::vector<mpq_class> r = a.coeffs();
    const auto& dc = d.coeffs();
    const std::size_t dd = dc.size() - 1;
    std::vector<mpq_class> qv(r.size() - dd);
    for (std::size_t i = r.size(); i-- > dd;) {
        if (r[i] == 0) continue;
        mpq_class f = r[i] / dc[dd];
        qv[i - dd] = f;
        for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] -= f * dc[j];
    }
    r.resize(dd);
    return {RatQPoly(std::move(qv)), RatQPoly(std::move(r))};
}

RatQPoly poly_gcd(RatQPoly a, RatQPoly b) {
    while (!b.is_zero()) {
        auto r = divmod_rat(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    mpq_class l = a.lead();
    return a * mpq_class(1 / l);
}

RatQPoly to_rat(const IntQPoly& a) {
    std::vector<mpq_class> v;
    v.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) v.emplace_back(c);
    return RatQPoly(std::move(v));
}

mpz_class content(const IntQPoly& a) {
    mpz_class g = 0;
    for (const auto& c : a.coeffs()) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

IntQPoly primitive_part(const IntQPoly& a, mpz_class* cont) {
    if (a.is_zero()) {
        if (cont) *cont = 0;
        return a;
    }
    mpz_class g = content(a);
    if (a.lead() < 0) g = -g;
    if (cont) *cont = g;
    if (g == 1) return a;
    std::vector<mpz_class> v = a.coeffs();
    for (auto& c : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
    return IntQPoly(std::move(v));
}

IntQPoly clear_denominators(const RatQPoly& a, mpz_class& den) {
    den = 1;
    for (const auto& c : a.coeffs()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> v;
    v.reserve(a.coeffs().size());
    for (const auto& c : a.coeffs()) v.push_back(c.get_num() * (den / c.get_den()));
    return IntQPoly(std::move(v));
}

bool p_integrality(const RatQPoly& a, long p) {
    for (const auto& c : a.coeffs())
        if (mpz_divisible_ui_p(c.get_den_mpz_t(), static_cast<unsigned long>(p))) return false;
    return true;
}

long vp(const mpz_class& x, long p) {
    if (x == 0) throw Error("valuation of zero");
    mpz_class y = x;
    long v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
        mpz_divexact_ui(y.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(p));
        ++v;
    }
    return v;
}

long vp(const mpq_class& x, long p) {
    if (x == 0) throw Error("valuation of zero");
    return vp(mpz_class(x.get_num()), p) - vp(mpz_class(x.get_den()), p);
}

mpz_class binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

mpz_class factorial(long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

}  // namespace acalc
