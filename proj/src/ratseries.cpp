// SPDX-License-Identifier: MIT
#include "acalc/ratseries.hpp"

#include <sstream>

namespace acalc {

RatSeries::RatSeries(int N, std::vector<mpq_class> c) : c_(std::move(c)) { c_.resize(static_cast<std::size_t>(N)); }

bool RatSeries::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

RatSeries RatSeries::truncated(int N) const {
    if (N > this->N()) throw PrecisionMismatch("RatSeries: cannot raise t-precision");
    return RatSeries(N, std::vector<mpq_class>(c_.begin(), c_.begin() + N));
}

RatSeries& RatSeries::operator+=(const RatSeries& o) {
    if (o.N() < N()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

RatSeries& RatSeries::operator-=(const RatSeries& o) {
    if (o.N() < N()) c_.resize(o.c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

RatSeries operator-(RatSeries a) {
    for (auto& x : a.c_) x = -x;
    return a;
}

RatSeries operator*(const RatSeries& a, const RatSeries& b) {
    const int n = std::min(a.N(), b.N());
    RatSeries r(n);
    for (int i = 0; i < n; ++i) {
        if (a.c_[i] == 0) continue;
        for (int j = 0; i + j < n; ++j)
            if (b.c_[j] != 0) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

bool operator==(const RatSeries& a, const RatSeries& b) {
    if (a.N() != b.N()) throw PrecisionMismatch("RatSeries comparison at different t-precision");
    return a.c_ == b.c_;
}

RatSeries RatSeries::invert() const {
    if (c_.empty() || c_[0] == 0) throw NotAUnit("RatSeries: zero constant term");
    const int n = N();
    RatSeries r(n);
    const mpq_class inv0 = 1 / c_[0];
    r.c_[0] = inv0;
    for (int k = 1; k < n; ++k) {
        mpq_class s = 0;
        for (int i = 1; i <= k; ++i)
            if (c_[i] != 0) s += c_[i] * r.c_[k - i];
        r.c_[k] = -s * inv0;
    }
    return r;
}

TruncSeries RatSeries::to_series(const Precision& prec) const {
    if (prec.N > N()) throw PrecisionMismatch("RatSeries::to_series: t-precision too high");
    std::vector<std::uint64_t> v(static_cast<std::size_t>(prec.N));
    for (int i = 0; i < prec.N; ++i) {
        const mpz_class r = residue_of(c_[i], prec);
        v[i] = std::stoull(r.get_str());
    }
    return TruncSeries(prec, std::move(v));
}

std::string RatSeries::to_string() const {
    std::ostringstream os;
    bool first = true;
    for (int i = 0; i < N(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << c_[i];
        if (i > 0) os << "*t^" << i;
    }
    if (first) os << "0";
    os << " [N=" << N() << "]";
    return os.str();
}

RatSeries rat_from_qpoly(const IntQPoly& a, int N) {
    // Horner in q = 1 + t.
    std::vector<mpq_class> r(static_cast<std::size_t>(N));
    const auto& c = a.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        for (int i = N - 1; i >= 1; --i) r[i] += r[i - 1];
        r[0] += mpq_class(*it);
    }
    return RatSeries(N, std::move(r));
}

}  // namespace acalc
