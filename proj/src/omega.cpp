// SPDX-License-Identifier: MIT
#include "acalc/omega.hpp"

#include "acalc/qcombinatorics.hpp"

namespace acalc {

namespace {

std::mutex g_mu;

long choose2(long k) { return k * (k - 1) / 2; }

IntQPoly qminus1() { return IntQPoly{-1, 1}; }
IntQPoly h_poly() { return IntQPoly{0, -1, 1}; }  // q^2 - q

void require_small_cap(long p, int K, const char* what) {
    if (K > p - 1) throw OrderCapTooHigh(std::string(what) + ": order cap " + std::to_string(K) + " needs K <= p - 1");
}

TruncSeries one_series(const Precision& pr) { return TruncSeries::constant(pr, 1); }

}  // namespace

const std::vector<IntQPoly>& rule_coeffs_int(long p, int n1, int n2) {
    static std::map<std::tuple<long, int, int>, std::vector<IntQPoly>> cache;
    const auto key = std::make_tuple(p, n1, n2);
    {
        std::lock_guard lock(g_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const unsigned up = static_cast<unsigned>(p);
    std::vector<IntQPoly> v;
    for (int i = 0; i <= std::min(n1, n2); ++i) {
        IntQPoly c = IntQPoly::q_pow(static_cast<std::size_t>(p * choose2(i) + i));
        c *= q_binomial(n1 + n2 - i, n1, up) * q_binomial(n1, i, up);
        c *= qminus1().pow(static_cast<unsigned>(i));
        v.push_back(std::move(c));
    }
    std::lock_guard lock(g_mu);
    return cache.emplace(key, std::move(v)).first->second;
}

OmegaI omega_int(long p, int K) { return OmegaI::basis(p, K, 1, IntQPoly(1L), IntQPoly()); }

OmegaQ to_frac(const OmegaI& a) {
    return a.map([](const IntQPoly& x) { return QFrac(x); });
}

OmegaT to_series(const OmegaI& a, const Precision& prec) {
    return a.map([&](const IntQPoly& x) { return from_qpoly(x, prec); });
}

OmegaT to_series(const OmegaQ& a, const Precision& prec) {
    return a.map([&](const QFrac& x) { return from_qfrac(x, prec); });
}

OmegaT omega_series(const Precision& prec, int K) {
    return OmegaT::basis(prec.p, K, 1, one_series(prec), TruncSeries(prec));
}

OmegaT constant_series(const TruncSeries& c, int K) {
    return OmegaT::constant(c.prec().p, K, c, TruncSeries(c.prec()));
}

OmegaT reduce_to(const OmegaT& a, const Precision& coarser) {
    return a.map([&](const TruncSeries& x) { return x.reduce_to(coarser); });
}

OmegaI taylor_theta(const IntQPoly& a, long p, int K) {
    const OmegaI theta_q = OmegaI::constant(p, K, IntQPoly::q_pow(1), IntQPoly()) +
                           OmegaI::basis(p, K, 1, q_integer(p), IntQPoly());
    OmegaI r(p, K, IntQPoly());
    const auto& c = a.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        r = r * theta_q;
        r.coeff(0) += IntQPoly(*it);
    }
    return r;
}

OmegaT taylor_theta(const TruncSeries& a, int K) {
    const Precision& pr = a.prec();
    const int loss = std::min(K, pr.M - 1);
    if (pr.N - loss < 1) throw PrecisionTooLow("taylor_theta: t-precision exhausted");
    const Precision out(pr.p, pr.M, pr.N - loss);
    const OmegaT theta_t = constant_series(TruncSeries::t(pr), K) +
                           OmegaT::basis(pr.p, K, 1, from_qpoly(q_integer(pr.p), pr), TruncSeries(pr));
    OmegaT r(pr.p, K, TruncSeries(pr));
    for (int j = pr.N - 1; j >= 0; --j) {
        r = r * theta_t;
        r.coeff(0) += TruncSeries::constant(pr, mpz_class(std::to_string(a.coeff(j))));
    }
    return reduce_to(r, out);
}

IntQPoly node_value(long p, int j, int k) {
    if (k > j) return {};
    return h_poly().pow(static_cast<unsigned>(k)) * IntQPoly::q_pow(static_cast<std::size_t>(p * choose2(k))) *
           q_binomial(j, k, static_cast<unsigned>(p));
}

QFrac node_eval(const OmegaQ& a, int j) {
    QFrac s;
    for (int k = 0; k <= std::min(j, a.K()); ++k) s += a.coeff(k) * QFrac(node_value(a.p(), j, k));
    return s;
}

OmegaQ taylor_theta(const QFrac& f, long p, int K) {
    OmegaQ r(p, K, QFrac());
    for (int j = 0; j <= K; ++j) {
        QFrac v = f.subs_qpow(static_cast<unsigned>(p * j + 1));
        for (int k = 0; k < j; ++k) v -= r.coeff(k) * QFrac(node_value(p, j, k));
        // Diagonal entry (q^2 - q)^j q^{p C(j,2)} = q^{j + p C(j,2)} Phi_1^j.
        r.coeff(j) = v.div_factors(CycloFactors{{0, j + p * choose2(j)}, {1, j}});
    }
    return r;
}

const OmegaI& taylor_theta_cached(const IntQPoly& a, long p, int K) {
    static std::map<std::tuple<long, int, std::vector<mpz_class>>, OmegaI> cache;
    const auto key = std::make_tuple(p, K, a.coeffs());
    {
        std::lock_guard lock(g_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    OmegaI v = taylor_theta(a, p, K);
    std::lock_guard lock(g_mu);
    return cache.emplace(key, std::move(v)).first->second;
}

IntQPoly closed_form_partial(long p, int k, int n) {
    if (k > n) return {};
    const unsigned up = static_cast<unsigned>(p);
    return q_integer(p).pow(static_cast<unsigned>(k)) * q_factorial(k, up) * q_binomial(n, k, up) *
           IntQPoly::q_pow(static_cast<std::size_t>(n - k));
}

OmegaI plain_power_stirling(long p, int n, int K) {
    OmegaI r(p, K, IntQPoly());
    const unsigned up = static_cast<unsigned>(p);
    const IntQPoly h = h_poly();
    for (int k = 0; k <= std::min(n, K); ++k)
        r.coeff(k) = stirling_q(StirlingKind::Second, n, k, up) * h.pow(static_cast<unsigned>(n - k)) * q_factorial(k, up);
    return r;
}

OmegaI plain_power(long p, int n, int K) {
    if (n > K) throw OrderCapTooHigh("plain_power: n exceeds the order cap");
    const OmegaI w = omega_int(p, K);
    OmegaI r = OmegaI::constant(p, K, IntQPoly(1L), IntQPoly());
    for (int i = 0; i < n; ++i) r *= w;
    if (r != plain_power_stirling(p, n, K)) throw Error("plain_power: Stirling expansion disagrees at n=" + std::to_string(n));
    return r;
}

OmegaI L_of_omega(long p, int K) {
    const IntQPoly pq = q_integer(p);
    return taylor_theta(pq, p, K).map([&](const IntQPoly& c) { return euclid_div_exact(c, pq); });
}

IntQPoly dqp(const IntQPoly& f, long p) {
    const IntQPoly num = f.subs_qpow(static_cast<unsigned>(p + 1)) - f;
    const IntQPoly den = IntQPoly::q_pow(static_cast<std::size_t>(p + 1)) - IntQPoly::q_pow(1);
    return euclid_div_exact(num, den);
}

IntQPoly dqp_pq(long p) { return dqp(q_integer(p), p); }

IntQPoly lambda_poly(long p) {
    const IntQPoly pq = q_integer(p);
    return euclid_div_exact(pq.subs_qpow(static_cast<unsigned>(p + 1)), pq);
}

namespace {

template <class C, class Inv>
OmegaElt<C> newton_inverse(const OmegaElt<C>& a, Inv&& invert_scalar) {
    const C two = lift_like(IntQPoly(2L), a.zero());
    const OmegaElt<C> two_e = OmegaElt<C>::constant(a.p(), a.K(), two, a.zero());
    OmegaElt<C> y = OmegaElt<C>::constant(a.p(), a.K(), invert_scalar(a.augmentation()), a.zero());
    // The (t, omega)-filtration is multiplicative, so the error squares each round.
    for (int round = 0; round < 64; ++round) {
        OmegaElt<C> next = y * (two_e - a * y);
        if (next == y) return y;
        y = std::move(next);
    }
    throw NoConvergence("OmegaElt inverse: Newton iteration did not stabilize");
}

}  // namespace

OmegaT inverse(const OmegaT& a) {
    return newton_inverse(a, [](const TruncSeries& x) { return x.invert(); });
}

OmegaR inverse(const OmegaR& a) {
    return newton_inverse(a, [](const RatSeries& x) { return x.invert(); });
}

OmegaT gamma_alg(const OmegaT& a) {
    const long p = a.p();
    const int K = a.K();
    require_small_cap(p, K, "gamma_alg");
    const Precision pr = a.zero().prec();
    const unsigned g = static_cast<unsigned>(p + 1);
    const TruncSeries lam_inv = from_qpoly(lambda_poly(p), pr).invert();
    const OmegaT gw = lam_inv * (omega_series(pr, K) - constant_series(from_qpoly(h_poly(), pr), K));
    OmegaT r(p, K, TruncSeries(pr));
    OmegaT falling = constant_series(one_series(pr), K);  // gamma(omega^{(k)})
    for (int k = 0; k <= K; ++k) {
        if (k > 0) {
            const IntQPoly cj = q_integer(k - 1, static_cast<unsigned>(p)) * h_poly();
            falling = falling * (gw - constant_series(from_qpoly(cj.subs_qpow(g), pr), K));
        }
        const TruncSeries fac_inv = from_qpoly(q_factorial(k, static_cast<unsigned>(p)).subs_qpow(g), pr).invert();
        r += (a.coeff(k).gamma() * fac_inv) * falling;
    }
    return r;
}

OmegaT partial_delta_alg(const OmegaT& a) {
    const OmegaT d = gamma_alg(a) - a;
    return d.map([](const TruncSeries& x) {
        const TruncSeries y = x.div_t(1);
        return y * TruncSeries::q(y.prec()).invert();
    });
}

const OmegaT& tau_of_basis(const Precision& prec, int n, int K_out) {
    static std::map<std::tuple<long, int, int, int, int>, OmegaT> cache;
    const auto key = std::make_tuple(prec.p, prec.M, prec.N, n, K_out);
    {
        std::lock_guard lock(g_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const long p = prec.p;
    const unsigned up = static_cast<unsigned>(p);
    const RatSeries zero(prec.N);
    const auto lift = [&](const OmegaI& x) { return x.map([&](const IntQPoly& c) { return rat_from_qpoly(c, prec.N); }); };
    const OmegaR w = OmegaR::basis(p, K_out, 1, rat_from_qpoly(IntQPoly(1L), prec.N), zero);
    const OmegaR tw = -(inverse(lift(L_of_omega(p, K_out))) * w);
    OmegaR falling = OmegaR::constant(p, K_out, rat_from_qpoly(IntQPoly(1L), prec.N), zero);
    for (int k = 1; k <= n; ++k)
        falling *= tw - lift(taylor_theta_cached(q_integer(k - 1, up) * h_poly(), p, K_out));
    const OmegaR r = falling * inverse(lift(taylor_theta_cached(q_factorial(n, up), p, K_out)));
    OmegaT v = r.map([&](const RatSeries& c) { return c.to_series(prec); });
    std::lock_guard lock(g_mu);
    return cache.emplace(key, std::move(v)).first->second;
}

OmegaT tau_finite_sum(const OmegaT& a, int K_out) {
    const Precision pr = a.zero().prec();
    const int loss = std::min(K_out, pr.M - 1);
    if (pr.N - loss < 1) throw PrecisionTooLow("tau: t-precision exhausted");
    const Precision out(pr.p, pr.M, pr.N - loss);
    OmegaT r(a.p(), K_out, TruncSeries(out));
    for (int n = 0; n <= a.K(); ++n) {
        if (a.coeff(n).is_zero()) continue;
        r += taylor_theta(a.coeff(n), K_out) * tau_of_basis(out, n, K_out);
    }
    return r;
}

OmegaT tau_flip(const OmegaT& a) {
    require_small_cap(a.p(), a.K(), "tau_flip");
    return tau_finite_sum(a, a.K());
}

OmegaT sigma_p2(const OmegaT& a) {
    if (a.p() != 2) throw WrongPrime("sigma_p2 requires p = 2");
    require_small_cap(2, a.K(), "sigma_p2");
    const Precision pr = a.zero().prec();
    const TruncSeries q = TruncSeries::q(pr);
    OmegaT r = constant_series(a.coeff(0).sigma(), a.K());
    if (a.K() >= 1) {
        const OmegaT sw = q * omega_series(pr, a.K()) + constant_series(q - one_series(pr), a.K());
        r += a.coeff(1).sigma() * sw;
    }
    return r;
}

OmegaT log_q_omega(const Precision& prec, int K) {
    const long p = prec.p;
    OmegaT r(p, K, TruncSeries(prec));
    for (int k = 1; k <= K; ++k) {
        QFrac c = QFrac(q_factorial(k - 1, static_cast<unsigned>(p)) * q_integer(p).pow(static_cast<unsigned>(k - 1)));
        c = c.mul_factors(CycloFactors{{0, -(p * choose2(k) + k)}});
        c = c * QFrac(mpq_class((k % 2 == 1) ? p : -p));
        r.coeff(k) = from_qfrac(c, prec);
    }
    return r;
}

}  // namespace acalc
