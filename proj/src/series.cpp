// SPDX-License-Identifier: MIT
#include "acalc/series.hpp"

#include <limits>
#include <map>
#include <mutex>
#include <sstream>
#include <tuple>

namespace acalc {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 reduce_mpz(const mpz_class& x, u64 m) {
    mpz_class r;
    mpz_class mm;
    mpz_import(mm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &m);
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mm.get_mpz_t());
    u64 out = 0;
    mpz_export(&out, nullptr, 1, sizeof(u64), 0, 0, r.get_mpz_t());
    return out;
}

u64 inv_mod(u64 a, u64 m) {
    mpz_class aa, mm, r;
    mpz_import(aa.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &a);
    mpz_import(mm.get_mpz_t(), 1, 1, sizeof(u64), 0, 0, &m);
    if (!mpz_invert(r.get_mpz_t(), aa.get_mpz_t(), mm.get_mpz_t())) throw NotAUnit("residue not invertible");
    return reduce_mpz(r, m);
}

}  // namespace

bool is_prime(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

Precision::Precision(long p_, int M_, int N_) : p(p_), M(M_), N(N_) {
    if (!is_prime(p)) throw Error("Precision: p must be prime");
    if (M < 1 || N < 1) throw Error("Precision: M and N must be positive");
    (void)modulus();
}

std::uint64_t Precision::modulus() const {
    u128 m = 1;
    for (int i = 0; i < M; ++i) {
        m *= static_cast<u128>(p);
        if (m >= (static_cast<u128>(1) << 62)) throw Error("Precision: p^M must stay below 2^62");
    }
    return static_cast<u64>(m);
}

std::string Precision::to_string() const {
    std::ostringstream os;
    os << "p=" << p << ",M=" << M << ",N=" << N;
    return os.str();
}

Precision meet(const Precision& a, const Precision& b) {
    if (a.p != b.p) throw PrecisionMismatch("different primes " + a.to_string() + " vs " + b.to_string());
    return Precision(a.p, std::min(a.M, b.M), std::min(a.N, b.N));
}

TruncSeries::TruncSeries(const Precision& prec) : prec_(prec), c_(static_cast<std::size_t>(prec.N), 0) {}

TruncSeries::TruncSeries(const Precision& prec, std::vector<u64> coeffs) : prec_(prec), c_(std::move(coeffs)) {
    c_.resize(static_cast<std::size_t>(prec.N), 0);
    const u64 m = prec.modulus();
    for (auto& x : c_) x %= m;
}

TruncSeries TruncSeries::constant(const Precision& prec, const mpz_class& c) {
    TruncSeries r(prec);
    r.c_[0] = reduce_mpz(c, prec.modulus());
    return r;
}

TruncSeries TruncSeries::t(const Precision& prec) {
    TruncSeries r(prec);
    if (prec.N > 1) r.c_[1] = 1 % prec.modulus();
    return r;
}

TruncSeries TruncSeries::q(const Precision& prec) { return constant(prec, 1) + t(prec); }

bool TruncSeries::is_zero() const {
    for (u64 x : c_)
        if (x) return false;
    return true;
}

TruncSeries TruncSeries::reduce_to(const Precision& coarser) const {
    if (coarser.p != prec_.p || coarser.M > prec_.M || coarser.N > prec_.N)
        throw PrecisionMismatch("reduce_to: " + coarser.to_string() + " is not coarser than " + prec_.to_string());
    if (coarser == prec_) return *this;
    std::vector<u64> v(c_.begin(), c_.begin() + coarser.N);
    return TruncSeries(coarser, std::move(v));
}

TruncSeries& TruncSeries::operator+=(const TruncSeries& o) {
    if (!(prec_ == o.prec_)) {
        const Precision pr = meet(prec_, o.prec_);
        *this = reduce_to(pr);
        return *this += o.reduce_to(pr);
    }
    const u64 m = prec_.modulus();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = (c_[i] + o.c_[i]) % m;
    return *this;
}

TruncSeries& TruncSeries::operator-=(const TruncSeries& o) { return *this += -o; }

TruncSeries operator-(const TruncSeries& a) {
    TruncSeries r = a;
    const u64 m = a.prec_.modulus();
    for (auto& x : r.c_) x = x ? m - x : 0;
    return r;
}

TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
    if (!(a.prec_ == b.prec_)) {
        const Precision pr = meet(a.prec_, b.prec_);
        return a.reduce_to(pr) * b.reduce_to(pr);
    }
    const u64 m = a.prec_.modulus();
    const int n = a.prec_.N;
    std::vector<u128> acc(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        if (!a.c_[i]) continue;
        for (int j = 0; i + j < n; ++j) {
            acc[i + j] += static_cast<u128>(a.c_[i]) * b.c_[j] % m;
        }
    }
    std::vector<u64> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[i] = static_cast<u64>(acc[i] % m);
    return TruncSeries(a.prec_, std::move(r));
}

TruncSeries& TruncSeries::operator*=(const TruncSeries& o) { return *this = *this * o; }

TruncSeries TruncSeries::scaled(const mpz_class& s) const {
    const u64 m = prec_.modulus();
    const u64 f = reduce_mpz(s, m);
    TruncSeries r = *this;
    for (auto& x : r.c_) x = mulmod(x, f, m);
    return r;
}

bool operator==(const TruncSeries& a, const TruncSeries& b) {
    if (!(a.prec_ == b.prec_))
        throw PrecisionMismatch("comparison at " + a.prec_.to_string() + " vs " + b.prec_.to_string());
    return a.c_ == b.c_;
}

TruncSeries TruncSeries::pow(unsigned e) const {
    TruncSeries r = constant(prec_, 1), b = *this;
    while (e) {
        if (e & 1U) r *= b;
        e >>= 1U;
        if (e) b *= b;
    }
    return r;
}

bool TruncSeries::is_unit() const { return c_[0] % static_cast<u64>(prec_.p) != 0; }

TruncSeries TruncSeries::invert() const {
    if (!is_unit()) throw NotAUnit("constant term divisible by p: " + to_string());
    const u64 m = prec_.modulus();
    const u64 inv0 = inv_mod(c_[0], m);
    const int n = prec_.N;
    std::vector<u64> r(static_cast<std::size_t>(n), 0);
    r[0] = inv0;
    for (int k = 1; k < n; ++k) {
        u128 s = 0;
        for (int i = 1; i <= k; ++i) s += static_cast<u128>(c_[i]) * r[k - i] % m;
        const u64 sm = static_cast<u64>(s % m);
        r[k] = mulmod(sm ? m - sm : 0, inv0, m);
    }
    return TruncSeries(prec_, std::move(r));
}

TruncSeries TruncSeries::substitute_gr(long r) const {
    // u = (1+t)^r - 1 has zero constant term, so a(u) mod t^N is well defined.
    const TruncSeries qs = q(prec_);
    TruncSeries qr = r >= 0 ? qs.pow(static_cast<unsigned>(r)) : qs.invert().pow(static_cast<unsigned>(-r));
    const TruncSeries u = qr - constant(prec_, 1);
    TruncSeries out(prec_);
    for (int i = prec_.N - 1; i >= 0; --i) {
        out = out * u;
        out.c_[0] = (out.c_[0] + c_[i]) % prec_.modulus();
    }
    return out;
}

TruncSeries TruncSeries::div_t(int k) const {
    if (k == 0) return *this;
    if (k >= prec_.N) throw PrecisionTooLow("div_t: t-precision exhausted");
    for (int i = 0; i < k; ++i)
        if (c_[i]) throw NonzeroRemainder("div_t: series not divisible by t^" + std::to_string(k));
    const Precision pr(prec_.p, prec_.M, prec_.N - k);
    return TruncSeries(pr, std::vector<u64>(c_.begin() + k, c_.end()));
}

TruncSeries TruncSeries::partial_delta() const {
    if (prec_.N < 2) throw PrecisionTooLow("partial_delta needs t-precision at least 2");
    const TruncSeries d = (gamma() - *this).div_t(1);
    return d * q(d.prec()).invert();
}

int TruncSeries::pt_order() const {
    int best = prec_.M + prec_.N;
    for (int j = 0; j < prec_.N; ++j) {
        if (!c_[j]) continue;
        int v = 0;
        u64 x = c_[j];
        while (x % static_cast<u64>(prec_.p) == 0) {
            x /= static_cast<u64>(prec_.p);
            ++v;
        }
        best = std::min(best, v + j);
    }
    return best;
}

std::vector<std::string> TruncSeries::residues() const {
    std::vector<std::string> out;
    out.reserve(c_.size());
    for (u64 x : c_) out.push_back(std::to_string(x));
    return out;
}

std::string TruncSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < prec_.N; ++i) {
        if (!c_[i]) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i];
        if (i == 1) os << "*t";
        if (i > 1) os << "*t^" << i;
    }
    if (first) os << "0";
    os << " [" << prec_.to_string() << "]";
    return os.str();
}

TruncSeries from_qpoly(const IntQPoly& a, const Precision& prec) {
    // a(1 + t): coefficient of t^j is sum_i a_i binom(i, j).
    const u64 m = prec.modulus();
    std::vector<u64> v(static_cast<std::size_t>(prec.N), 0);
    const auto& c = a.coeffs();
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        const u64 ai = reduce_mpz(c[i], m);
        for (std::size_t j = 0; j <= i && j < v.size(); ++j) {
            const u64 b = reduce_mpz(binomial(static_cast<long>(i), static_cast<long>(j)), m);
            v[j] = (v[j] + mulmod(ai, b, m)) % m;
        }
    }
    return TruncSeries(prec, std::move(v));
}

mpz_class residue_of(const mpq_class& x, const Precision& prec) {
    const u64 m = prec.modulus();
    const u64 den = reduce_mpz(x.get_den(), m);
    if (den % static_cast<u64>(prec.p) == 0) throw NotPIntegral("residue_of: denominator divisible by p");
    const u64 r = mulmod(reduce_mpz(x.get_num(), m), inv_mod(den, m), m);
    return mpz_class(std::to_string(r));
}

TruncSeries from_ratpoly(const RatQPoly& a, const Precision& prec) {
    mpz_class den;
    IntQPoly num = clear_denominators(a, den);
    return from_qpoly(num, prec).scaled(residue_of(mpq_class(1, den), prec));
}

TruncSeries from_qfrac(const QFrac& a, const Precision& prec) {
    if (a.is_zero()) return TruncSeries(prec);
    if (!a.p_integral(prec.p)) throw NotPIntegral("from_qfrac: not p-integral: " + a.to_string());
    static std::map<std::tuple<long, int, int, long>, std::pair<TruncSeries, TruncSeries>> cache;
    static std::mutex mu;
    auto factor_series = [&](long d) -> std::pair<TruncSeries, TruncSeries> {
        std::lock_guard lock(mu);
        auto key = std::make_tuple(prec.p, prec.M, prec.N, d);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        TruncSeries s = d == 0 ? TruncSeries::q(prec) : from_qpoly(cyclotomic(d), prec);
        TruncSeries inv = s.is_unit() ? s.invert() : TruncSeries(prec);
        return cache.emplace(key, std::make_pair(s, inv)).first->second;
    };
    TruncSeries r = from_qpoly(a.rest(), prec).scaled(residue_of(a.scalar(), prec));
    for (const auto& [d, e] : a.factors()) {
        auto [s, inv] = factor_series(d);
        r *= (e > 0 ? s : inv).pow(static_cast<unsigned>(e > 0 ? e : -e));
    }
    return r;
}

TruncSeries partial_delta_formula(const TruncSeries& a) {
    const Precision& pr = a.prec();
    if (pr.N < 2) throw PrecisionTooLow("partial_delta needs t-precision at least 2");
    const Precision out(pr.p, pr.M, pr.N - 1);
    const TruncSeries pq = from_qpoly(q_integer(pr.p), out);
    const TruncSeries p1 = from_qpoly(q_integer(pr.p + 1), out);
    TruncSeries r(out);
    TruncSeries pw = TruncSeries::constant(out, 1);   // (p+1)_q^{n-1}
    TruncSeries qn = TruncSeries::constant(out, 0);   // (n)_{(p+1)_q}
    for (int n = 1; n < pr.N; ++n) {
        qn += pw;
        pw *= p1;
        std::vector<std::uint64_t> tn(static_cast<std::size_t>(out.N), 0);
        tn[n - 1] = a.coeff(n);
        r += pq * qn * TruncSeries(out, std::move(tn));
    }
    return r;
}

}  // namespace acalc
