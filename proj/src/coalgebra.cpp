// SPDX-License-Identifier: MIT
#include "acalc/coalgebra.hpp"

#include "acalc/qcombinatorics.hpp"

namespace acalc {

namespace {

std::mutex g_mu;

IntQPoly h_poly() { return IntQPoly{0, -1, 1}; }

// Left support of prod_{s<n}(Delta(omega) - c_s) at right cap K_right: step s
// multiplies a right degree <= min(s, K_right) by Delta(omega), adding at most
// p - 1 (from L(omega)) plus deg theta(c_i) <= deg c_i <= p min(s, K_right).
int left_support_bound(long p, int n, int K_right) {
    long s = 0;
    for (int j = 0; j < n; ++j) s += p - 1 + p * std::min(j, K_right);
    return static_cast<int>(s);
}

TensorQ to_frac(const TensorI& a) {
    return a.map([](const IntQPoly& x) { return QFrac(x); });
}

TensorQ with_left_cap(const TensorQ& a, int K_left) {
    TensorQ r(a.p(), K_left, a.K_right(), QFrac());
    for (int j = 0; j <= a.K_right(); ++j) r.right_coeff(j) = a.right_coeff(j).with_cap(K_left);
    return r;
}

void assert_integral(const TensorQ& a, const char* what) {
    for (int j = 0; j <= a.K_right(); ++j)
        for (const auto& c : a.right_coeff(j).coeffs())
            if (!c.p_integral(a.p())) throw Error(std::string(what) + ": non-p-integral coefficient " + c.to_string());
}

}  // namespace

int comult_left_support(long p, int n) { return left_support_bound(p, n, n); }

TensorI comult_omega(long p, int K_left, int K_right) {
    TensorI r(p, K_left, K_right, IntQPoly());
    if (K_right >= 1) r.right_coeff(1) = L_of_omega(p, K_left);
    r.right_coeff(0) = omega_int(p, K_left);
    return r;
}

TensorI comult_numerator(long p, int n, int K_left, int K_right) {
    const TensorI dw = comult_omega(p, K_left, K_right);
    const TensorI one = TensorI::pure(OmegaI::constant(p, K_left, IntQPoly(1L), IntQPoly()), 0, K_right);
    TensorI r = one;
    for (int j = 0; j < n; ++j) r = r * (dw - (q_integer(j, static_cast<unsigned>(p)) * h_poly()) * one);
    return r;
}

const TensorQ& comult_basis(long p, int n, int K_left, int K_right) {
    static std::map<std::tuple<long, int, int, int>, TensorQ> cache;
    const auto key = std::make_tuple(p, n, K_left, K_right);
    {
        std::lock_guard lock(g_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    // Past the support bound the cap only adds zeros.
    const int cap = std::min(K_left, left_support_bound(p, n, K_right));
    const CycloFactors fac = q_factorial_factors(n, static_cast<unsigned>(p));
    TensorQ v = to_frac(comult_numerator(p, n, cap, K_right)).map([&](const QFrac& x) { return x.div_factors(fac); });
    assert_integral(v, "comult");
    if (cap < K_left) v = with_left_cap(v, K_left);
    std::lock_guard lock(g_mu);
    return cache.emplace(key, std::move(v)).first->second;
}

TensorQ comult(const OmegaQ& a, int K_left, int K_right) {
    TensorQ r(a.p(), K_left, K_right, QFrac());
    for (int n = 0; n <= a.K(); ++n)
        if (!a.coeff(n).is_zero()) r += a.coeff(n) * comult_basis(a.p(), n, K_left, K_right);
    return r;
}

TensorQ comult_basis_plain(long p, int n, int K_left, int K_right) {
    const TensorQ dw = to_frac(comult_omega(p, K_left, K_right));
    TensorQ power = TensorQ::pure(OmegaQ::constant(p, K_left, QFrac(1L), QFrac()), 0, K_right);
    std::vector<TensorQ> divided{power};
    for (int m = 1; m <= n; ++m) {
        power = power * dw;
        const OmegaI s = plain_power_stirling(p, m, m);
        TensorQ rest = power;
        for (int k = 0; k < m; ++k) rest -= QFrac(s.coeff(k)) * divided[k];
        divided.push_back(QFrac(s.coeff(m)).inverse() * rest);
    }
    return divided[n];
}

OmegaQ L_upper(int k, const OmegaQ& a) {
    const long p = a.p();
    int cap = 0;
    for (int n = 0; n <= a.K(); ++n)
        if (!a.coeff(n).is_zero()) cap = std::max(cap, left_support_bound(p, n, k));
    OmegaQ r(p, cap, QFrac());
    for (int n = 0; n <= a.K(); ++n)
        if (!a.coeff(n).is_zero()) r += a.coeff(n) * comult_basis(p, n, cap, k).right_coeff(k);
    return r;
}

OmegaQ L_delta(const OmegaQ& a) { return L_upper(1, a); }

const OmegaT& L_delta_basis(const Precision& prec, int n, int K) {
    static std::map<std::tuple<long, int, int, int, int>, OmegaT> cache;
    const auto key = std::make_tuple(prec.p, prec.M, prec.N, n, K);
    {
        std::lock_guard lock(g_mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const OmegaQ exact = L_delta(OmegaQ::basis(prec.p, n, n, QFrac(1L), QFrac()));
    OmegaT v = exact.with_cap(K).map([&](const QFrac& c) { return from_qfrac(c, prec); });
    std::lock_guard lock(g_mu);
    return cache.emplace(key, std::move(v)).first->second;
}

OmegaT L_delta(const OmegaT& a, int K_out) {
    const Precision pr = a.zero().prec();
    OmegaT r(a.p(), K_out, TruncSeries(pr));
    for (int n = 0; n <= a.K(); ++n)
        if (!a.coeff(n).is_zero()) r += a.coeff(n) * L_delta_basis(pr, n, K_out);
    return r;
}

}  // namespace acalc
