// SPDX-License-Identifier: MIT
#include "acalc/qfrac.hpp"

#include <sstream>

namespace acalc {

namespace {

const IntQPoly& factor_poly(long d) {
    static const IntQPoly q = IntQPoly::q_pow(1);
    return d == 0 ? q : cyclotomic(d);
}

IntQPoly expand_nonneg(const CycloFactors& f) {
    IntQPoly r(1L);
    for (const auto& [d, e] : f)
        if (e > 0) r *= factor_poly(d).pow(static_cast<unsigned>(e));
    return r;
}

}  // namespace

QFrac::QFrac(const mpq_class& v) : c_(v) {}

QFrac::QFrac(const IntQPoly& a) {
    if (a.is_zero()) return;
    mpz_class cont;
    rest_ = primitive_part(a, &cont);
    c_ = cont;
}

QFrac::QFrac(const RatQPoly& a) {
    if (a.is_zero()) return;
    mpz_class den;
    IntQPoly num = clear_denominators(a, den);
    mpz_class cont;
    rest_ = primitive_part(num, &cont);
    c_ = mpq_class(cont, den);
    c_.canonicalize();
}

QFrac QFrac::from_factors(const CycloFactors& f, const mpq_class& c) {
    QFrac r(c);
    if (r.is_zero()) return r;
    r.f_ = f;
    for (auto it = r.f_.begin(); it != r.f_.end();) it = it->second == 0 ? r.f_.erase(it) : std::next(it);
    return r;
}

void QFrac::canonicalize() {
    if (c_ == 0) {
        rest_ = IntQPoly(1L);
        f_.clear();
        return;
    }
    for (auto it = f_.begin(); it != f_.end();) {
        auto& [d, e] = *it;
        while (e < 0 && rest_.degree() > 0) {
            auto [qt, r] = rest_.divmod_monic(factor_poly(d));
            if (!r.is_zero()) break;
            rest_ = std::move(qt);
            ++e;
        }
        it = e == 0 ? f_.erase(it) : std::next(it);
    }
}

QFrac& QFrac::operator+=(const QFrac& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) return *this = o;
    CycloFactors common, ea, eb;
    auto collect = [&](const CycloFactors& f) {
        for (const auto& [d, e] : f) common.emplace(d, 0);
    };
    collect(f_);
    collect(o.f_);
    for (auto& [d, m] : common) {
        const long a = f_.count(d) ? f_.at(d) : 0;
        const long b = o.f_.count(d) ? o.f_.at(d) : 0;
        m = std::min(a, b);
        if (a - m) ea[d] = a - m;
        if (b - m) eb[d] = b - m;
    }
    const IntQPoly pa = rest_ * expand_nonneg(ea);
    const IntQPoly pb = o.rest_ * expand_nonneg(eb);
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), c_.get_den_mpz_t(), o.c_.get_den_mpz_t());
    const mpz_class ma = c_.get_num() * (l / c_.get_den());
    const mpz_class mb = o.c_.get_num() * (l / o.c_.get_den());
    IntQPoly s = pa * ma + pb * mb;
    if (s.is_zero()) return *this = QFrac();
    mpz_class cont;
    rest_ = primitive_part(s, &cont);
    c_ = mpq_class(cont, l);
    c_.canonicalize();
    for (auto it = common.begin(); it != common.end();) it = it->second == 0 ? common.erase(it) : std::next(it);
    f_ = std::move(common);
    canonicalize();
    return *this;
}

QFrac& QFrac::operator-=(const QFrac& o) { return *this += -o; }

QFrac& QFrac::operator*=(const QFrac& o) {
    if (is_zero() || o.is_zero()) return *this = QFrac();
    c_ *= o.c_;
    rest_ *= o.rest_;
    add_factors(f_, o.f_);
    canonicalize();
    return *this;
}

QFrac QFrac::mul_factors(const CycloFactors& f, long times) const {
    if (is_zero()) return *this;
    QFrac r = *this;
    add_factors(r.f_, f, times);
    r.canonicalize();
    return r;
}

QFrac QFrac::div_poly(const IntQPoly& d) const {
    mpz_class lead;
    CycloFactors f = factor_cyclotomic(d, lead);
    QFrac r = div_factors(f);
    r.c_ /= lead;
    return r;
}

QFrac QFrac::inverse() const {
    if (is_zero()) throw Error("QFrac: inverse of zero");
    mpz_class lead = 1;
    CycloFactors f;
    if (rest_.degree() > 0) f = factor_cyclotomic(rest_, lead);
    add_factors(f, f_);
    return from_factors({}, mpq_class(1) / (c_ * lead)).div_factors(f);
}

QFrac QFrac::subs_qpow(unsigned r) const {
    if (is_zero() || r == 1) return *this;
    QFrac out;
    out.c_ = c_;
    out.rest_ = rest_.subs_qpow(r);
    for (const auto& [d, e] : f_) {
        if (d == 0)
            add_factors(out.f_, CycloFactors{{0, static_cast<long>(r)}}, e);
        else
            add_factors(out.f_, cyclotomic_subs(d, r), e);
    }
    out.canonicalize();
    return out;
}

mpq_class QFrac::eval_at_one() const {
    if (is_zero()) return 0;
    mpq_class v = c_ * mpq_class(rest_.eval(mpz_class(1)));
    for (const auto& [d, e] : f_) {
        if (d == 0) continue;
        const mpz_class phi1 = cyclotomic(d).eval(mpz_class(1));
        if (phi1 == 0) {
            if (e < 0) throw NotPIntegral("eval_at_one: pole at q = 1");
            return 0;
        }
        mpz_class pw;
        mpz_pow_ui(pw.get_mpz_t(), phi1.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
        if (e > 0)
            v *= pw;
        else
            v /= pw;
    }
    return v;
}

bool QFrac::p_integral(long p) const {
    if (is_zero()) return true;
    if (vp(c_, p) < 0) return false;
    for (const auto& [d, e] : f_) {
        if (e >= 0 || d == 0) continue;
        if (d == 1) return false;
        long m = d;
        while (m % p == 0) m /= p;
        if (m == 1) return false;  // d is a power of p: Phi_d(1) = p
    }
    return true;
}

bool QFrac::is_polynomial() const {
    for (const auto& [d, e] : f_)
        if (e < 0) return false;
    return true;
}

RatQPoly QFrac::to_poly() const {
    if (is_zero()) return {};
    if (!is_polynomial()) throw NonzeroRemainder("QFrac::to_poly: denominator " + to_string());
    return to_rat(rest_ * expand_nonneg(f_)) * c_;
}

std::string QFrac::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    os << c_;
    if (rest_.degree() > 0) os << "*(" << rest_.to_string() << ")";
    for (const auto& [d, e] : f_) {
        if (d == 0)
            os << "*q^" << e;
        else
            os << "*Phi" << d << "^" << e;
    }
    return os.str();
}

CycloFactors factor_cyclotomic(const IntQPoly& a, mpz_class& leading) {
    if (a.is_zero()) throw Error("factor_cyclotomic: zero");
    CycloFactors f;
    IntQPoly r = a;
    long shift = 0;
    while (r.coeff(0) == 0) {
        r = IntQPoly(std::vector<mpz_class>(r.coeffs().begin() + 1, r.coeffs().end()));
        ++shift;
    }
    if (shift) f[0] = shift;
    const long bound = 6 * std::max<long>(r.degree(), 1) + 12;
    for (long d = 1; d <= bound && r.degree() > 0; ++d) {
        const IntQPoly& phi = cyclotomic(d);
        if (phi.degree() > r.degree()) continue;
        for (;;) {
            auto [qt, rem] = r.divmod_monic(phi);
            if (!rem.is_zero()) break;
            r = std::move(qt);
            ++f[d];
        }
    }
    if (r.degree() != 0) throw NonzeroRemainder("factor_cyclotomic: non-cyclotomic factor " + r.to_string());
    leading = r.coeff(0);
    return f;
}

}  // namespace acalc
