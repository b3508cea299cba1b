// SPDX-License-Identifier: MIT
#include "acalc/connections.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "acalc/coalgebra.hpp"
#include "acalc/errors.hpp"
#include "acalc/ratseries.hpp"
#include "acalc/smith.hpp"

namespace acalc {

namespace {

IntQPoly h_poly() { return IntQPoly{0, -1, 1}; }  // q^2 - q

TruncSeries one(const Precision& prec) { return TruncSeries::constant(prec, 1); }

void check_square(const SeriesMatrix& a, const SeriesMatrix& b) {
    if (a.size() != b.size()) throw PrecisionMismatch("matrix sizes differ");
}

Precision min_prec(const SeriesMatrix& a) {
    Precision pr = a.at(0).at(0).prec();
    for (const auto& row : a)
        for (const auto& x : row) pr = meet(pr, x.prec());
    return pr;
}

SeriesMatrix reduce_all(const SeriesMatrix& a, const Precision& prec) {
    SeriesMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = x.reduce_to(prec);
    return r;
}

SeriesVec reduce_all(const SeriesVec& v, const Precision& prec) {
    SeriesVec r = v;
    for (auto& x : r) x = x.reduce_to(prec);
    return r;
}

SeriesMatrix from_int_matrix(const std::vector<std::vector<IntQPoly>>& a, const Precision& prec) {
    SeriesMatrix r;
    for (const auto& row : a) {
        SeriesVec v;
        for (const auto& x : row) v.push_back(from_qpoly(x, prec));
        r.push_back(std::move(v));
    }
    return r;
}

IntQPoly int_det(std::vector<std::vector<IntQPoly>> a) {
    const std::size_t n = a.size();
    if (n == 0) return IntQPoly(1L);
    if (n == 1) return a[0][0];
    IntQPoly d;
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::vector<IntQPoly>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<IntQPoly> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(a[i][k]);
            minor.push_back(std::move(row));
        }
        const IntQPoly term = a[0][j] * int_det(std::move(minor));
        if (j % 2) d -= term;
        else d += term;
    }
    return d;
}

using FpMatrix = std::vector<std::vector<long>>;

FpMatrix fp_mul(const FpMatrix& a, const FpMatrix& b, long p) {
    const std::size_t n = a.size();
    FpMatrix r(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) r[i][j] = (r[i][j] + a[i][k] * b[k][j]) % p;
    return r;
}

long fp_inverse(long x, long p) {
    mpz_class r;
    const mpz_class a(x), m(p);
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r.get_si();
}

// Entries are expected in [0, p).
long fp_rank(FpMatrix a, long p) {
    const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[rank]);
        const long inv = fp_inverse(a[rank][c], p);
        for (auto& v : a[rank]) v = v * inv % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][c] == 0) continue;
            const long f = a[i][c];
            for (std::size_t j = 0; j < cols; ++j) a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return static_cast<long>(rank);
}

std::string vec_string(const SeriesVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
    return s + ")";
}

}  // namespace

SeriesMatrix identity_matrix(const Precision& prec, int r) {
    SeriesMatrix m = zero_matrix(prec, r);
    for (int i = 0; i < r; ++i) m[i][i] = one(prec);
    return m;
}

SeriesMatrix zero_matrix(const Precision& prec, int r) {
    return SeriesMatrix(static_cast<std::size_t>(r), SeriesVec(static_cast<std::size_t>(r), TruncSeries(prec)));
}

SeriesMatrix operator+(const SeriesMatrix& a, const SeriesMatrix& b) {
    check_square(a, b);
    SeriesMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] += b[i][j];
    return r;
}

SeriesMatrix operator-(const SeriesMatrix& a, const SeriesMatrix& b) {
    check_square(a, b);
    SeriesMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] -= b[i][j];
    return r;
}

SeriesMatrix operator*(const SeriesMatrix& a, const SeriesMatrix& b) {
    check_square(a, b);
    const std::size_t n = a.size();
    SeriesMatrix r(n, SeriesVec(n, TruncSeries(meet(min_prec(a), min_prec(b)))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
    return r;
}

SeriesMatrix operator*(const TruncSeries& s, const SeriesMatrix& a) {
    SeriesMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = s * x;
    return r;
}

SeriesVec operator*(const SeriesMatrix& a, const SeriesVec& v) {
    if (a.size() != v.size()) throw PrecisionMismatch("matrix and vector sizes differ");
    SeriesVec r(v.size(), TruncSeries(meet(min_prec(a), v.at(0).prec())));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += a[i][j] * v[j];
    return r;
}

SeriesMatrix transpose(const SeriesMatrix& a) {
    SeriesMatrix r = a;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r[i][j] = a[j][i];
    return r;
}

SeriesMatrix kronecker(const SeriesMatrix& a, const SeriesMatrix& b) {
    const std::size_t n = a.size(), m = b.size();
    SeriesMatrix r(n * m, SeriesVec(n * m, TruncSeries(meet(min_prec(a), min_prec(b)))));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < m; ++l) r[i * m + k][j * m + l] = a[i][j] * b[k][l];
    return r;
}

SeriesMatrix inverse(const SeriesMatrix& a) {
    const std::size_t n = a.size();
    const Precision pr = min_prec(a);
    SeriesMatrix w = reduce_all(a, pr), r = identity_matrix(pr, static_cast<int>(n));
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        while (piv < n && !w[piv][c].is_unit()) ++piv;
        if (piv == n) throw NotAUnit("matrix is singular modulo (p, q - 1)");
        std::swap(w[piv], w[c]);
        std::swap(r[piv], r[c]);
        const TruncSeries inv = w[c][c].invert();
        for (std::size_t j = 0; j < n; ++j) {
            w[c][j] = inv * w[c][j];
            r[c][j] = inv * r[c][j];
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (i == c || w[i][c].is_zero()) continue;
            const TruncSeries f = w[i][c];
            for (std::size_t j = 0; j < n; ++j) {
                w[i][j] -= f * w[c][j];
                r[i][j] -= f * r[c][j];
            }
        }
    }
    return r;
}

SeriesMatrix map_entries(const SeriesMatrix& a, TruncSeries (*f)(const TruncSeries&)) {
    SeriesMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = f(x);
    return r;
}

bool equal_at(const SeriesMatrix& a, const SeriesMatrix& b, const Precision& prec) {
    if (a.size() != b.size()) return false;
    return reduce_all(a, prec) == reduce_all(b, prec);
}

std::vector<std::vector<std::string>> residues(const SeriesMatrix& a) {
    std::vector<std::vector<std::string>> out;
    for (const auto& row : a) {
        std::vector<std::string> r;
        for (const auto& x : row) r.push_back(x.to_string());
        out.push_back(std::move(r));
    }
    return out;
}

SeriesMatrix NablaModule::gamma_matrix() const {
    const TruncSeries h = from_qpoly(h_poly(), prec());
    return identity_matrix(prec(), rank()) + h * A;
}

SeriesVec NablaModule::apply(const SeriesVec& v) const {
    SeriesVec g, d;
    for (const auto& x : v) {
        g.push_back(x.gamma());
        d.push_back(x.partial_delta());
    }
    SeriesVec r = A * g;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = d[i] + r[i];
    return r;
}

ExampleKind parse_example(const std::string& name) {
    if (name == "trivial") return ExampleKind::Trivial;
    if (name == "Fn") return ExampleKind::Fn;
    if (name == "Gn") return ExampleKind::Gn;
    if (name == "BK") return ExampleKind::BK;
    throw ParseError("unknown module '" + name + "' (expected trivial, Fn, Gn or BK)");
}

IntQPoly partial_delta_exact(const IntQPoly& f, long p) {
    return euclid_div_exact(f.subs_qpow(static_cast<unsigned>(p + 1)) - f, h_poly());
}

IntQPoly alpha_n(long p, long n) {
    if (n < 0) throw Error("alpha_n: n must be non-negative");
    const IntQPoly lam = lambda_poly(p);
    IntQPoly pw(1L);
    for (long i = 0; i < n; ++i) pw *= lam;
    return euclid_div_exact(pw - IntQPoly(1L), h_poly());
}

TruncSeries bk_scalar(const Precision& prec, long n) {
    // One extra t-digit is consumed by the division by q - 1.
    const Precision work(prec.p, prec.M, prec.N + 1);
    const TruncSeries g = TruncSeries::constant(work, prec.p + 1) * from_qpoly(q_integer(prec.p + 1), work).invert();
    const TruncSeries gn = n >= 0 ? g.pow(static_cast<unsigned>(n)) : g.invert().pow(static_cast<unsigned>(-n));
    const TruncSeries d = (gn - one(work)).div_t(1);
    return d * TruncSeries::q(d.prec()).invert();
}

NablaModule rank_one(const std::string& name, const TruncSeries& a) { return NablaModule{name, {{a}}}; }

NablaModule build_example(ExampleKind kind, long n, const Precision& prec, int rank) {
    if (kind != ExampleKind::Trivial && rank != 1) throw Error("only the trivial example has rank > 1");
    switch (kind) {
        case ExampleKind::Trivial:
            return NablaModule{"trivial", zero_matrix(prec, rank)};
        case ExampleKind::Fn:
            return rank_one("F" + std::to_string(n), from_qpoly(alpha_n(prec.p, n), prec));
        case ExampleKind::BK:
            return rank_one("BK(" + std::to_string(n) + ")", bk_scalar(prec, n));
        case ExampleKind::Gn:
            break;
    }
    throw Error("G_n is a module over O_K; use build_reduced");
}

ReducedModule build_reduced(long p, long n) {
    if (n < 0) throw Error("build_reduced: n must be non-negative");
    // (n)_{p+1} = ((p+1)^n - 1) / p.
    mpz_class pw;
    mpz_ui_pow_ui(pw.get_mpz_t(), static_cast<unsigned long>(p + 1), static_cast<unsigned long>(n));
    const mpz_class qn = (pw - 1) / p;
    return ReducedModule{"G" + std::to_string(n), p, {{pq_prime(p) * qn}}};
}

bool is_weakly_nilpotent(const NablaModule& m) {
    const long p = m.p();
    const std::size_t r = static_cast<std::size_t>(m.rank());
    FpMatrix a(r, std::vector<long>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a[i][j] = static_cast<long>(m.A[i][j].coeff(0) % static_cast<std::uint64_t>(p));
    FpMatrix b = a;
    if (p == 2) {
        b = fp_mul(a, a, p);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) b[i][j] = ((b[i][j] - a[i][j]) % p + p) % p;
    }
    FpMatrix pw = b;
    for (std::size_t k = 1; k < r; ++k) pw = fp_mul(pw, b, p);
    for (const auto& row : pw)
        for (long x : row)
            if (x) return false;
    return true;
}

NablaModule tensor(const NablaModule& a, const NablaModule& b) {
    const Precision pr = meet(a.prec(), b.prec());
    const SeriesMatrix A = kronecker(a.A, identity_matrix(pr, b.rank())) + kronecker(a.gamma_matrix(), b.A);
    return NablaModule{a.name + "(x)" + b.name, A};
}

NablaModule dual(const NablaModule& m) {
    const SeriesMatrix At = transpose(m.A);
    const SeriesMatrix D = inverse(transpose(m.gamma_matrix())) * At;
    return NablaModule{m.name + "^v", zero_matrix(D[0][0].prec(), m.rank()) - D};
}

NablaModule hom(const NablaModule& a, const NablaModule& b) {
    NablaModule r = tensor(dual(a), b);
    r.name = "Hom(" + a.name + "," + b.name + ")";
    return r;
}

NablaModule pullback_gr(const NablaModule& m, long r) {
    if (r < 1) throw Error("pullback_gr: r must be positive");
    const Precision& pr = m.prec();
    const TruncSeries f = from_qpoly(q_integer(r) * IntQPoly::q_pow(static_cast<std::size_t>(r - 1)), pr);
    NablaModule out{"g_" + std::to_string(r) + "^*" + m.name, m.A};
    for (auto& row : out.A)
        for (auto& x : row) x = f * x.substitute_gr(r);
    return out;
}

Verdict frobenius_check(const FrobStructure& f) {
    const NablaModule& m = f.base;
    const long p = m.p();
    const int r = m.rank();
    if (static_cast<int>(f.Phi.size()) != r) return Verdict::fail("Phi has the wrong size");

    // det Phi must be a unit times a power of (p)_q.
    IntQPoly det = int_det(f.Phi);
    if (det.is_zero()) return Verdict::fail("det Phi = 0");
    const IntQPoly pq = q_integer(p);
    while (true) {
        auto [quo, rem] = divmod_rat(to_rat(det), to_rat(pq));
        mpz_class den;
        const IntQPoly qi = clear_denominators(quo, den);
        if (!rem.is_zero() || den != 1) break;
        det = qi;
    }
    mpz_class at_one = 0;
    for (const auto& c : det.coeffs()) at_one += c;
    if (at_one % p == 0) return Verdict::fail("det Phi is not invertible after inverting (p)_q: " + det.to_string());

    const Precision& pr = m.prec();
    const SeriesMatrix Phi = from_int_matrix(f.Phi, pr);
    const TruncSeries lam_inv = from_qpoly(lambda_poly(p), pr).invert().pow(static_cast<unsigned>(f.pole));
    const TruncSeries alpha = from_qpoly(alpha_n(p, f.pole), pr);
    const TruncSeries scale = from_qpoly(q_integer(p) * IntQPoly::q_pow(static_cast<std::size_t>(p - 1)), pr);

    auto phi_vec = [](const SeriesVec& v) {
        SeriesVec r;
        for (const auto& x : v) r.push_back(x.phi());
        return r;
    };
    // Both sides carry the common factor (p)_q^{-pole}; compare numerators.
    auto lhs = [&](const SeriesVec& v) {
        const SeriesVec w = Phi * phi_vec(v);
        SeriesVec d = m.apply(w);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = lam_inv * (d[i] - alpha * w[i]);
        return d;
    };
    auto rhs = [&](const SeriesVec& v) {
        SeriesVec d = Phi * phi_vec(m.apply(v));
        for (auto& x : d) x = scale * x;
        return d;
    };

    std::vector<SeriesVec> tests;
    for (int j = 0; j < r; ++j) {
        SeriesVec e(static_cast<std::size_t>(r), TruncSeries(pr));
        e[static_cast<std::size_t>(j)] = one(pr);
        tests.push_back(e);
    }
    std::mt19937_64 rng(static_cast<std::uint64_t>(p) * 7919U + static_cast<std::uint64_t>(r));
    for (int t = 0; t < 3; ++t) {
        SeriesVec v;
        for (int i = 0; i < r; ++i) {
            std::vector<long> c;
            for (int k = 0; k < 4; ++k) c.push_back(static_cast<long>(rng() % 11) - 5);
            v.push_back(from_qpoly(IntQPoly(std::vector<mpz_class>(c.begin(), c.end())), pr));
        }
        tests.push_back(v);
    }
    for (std::size_t t = 0; t < tests.size(); ++t) {
        const SeriesVec a = lhs(tests[t]), b = rhs(tests[t]);
        const Precision cmp = meet(a[0].prec(), b[0].prec());
        if (reduce_all(a, cmp) != reduce_all(b, cmp)) {
            const std::string what = t < static_cast<std::size_t>(r) ? "basis vector " + std::to_string(t)
                                                                     : "random vector " + vec_string(tests[t]);
            return Verdict::fail("horizontality fails on " + what + ": " + vec_string(a) + " vs " + vec_string(b));
        }
    }
    if (!is_weakly_nilpotent(m)) return Verdict::fail("horizontal frobenius on a module that is not weakly nilpotent");
    return Verdict::ok();
}

namespace {

// (k)_{q^p} in Q[t]/(t^N) from (1+t)^{pk} - 1 = sum_i binom(pk, i) t^i.
RatSeries rat_q_integer(long p, long k, int N) {
    auto shifted = [N](long e) {
        std::vector<mpq_class> c(static_cast<std::size_t>(N));
        mpz_class b;
        for (int i = 0; i < N; ++i) {
            mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(e), static_cast<unsigned long>(i + 1));
            c[static_cast<std::size_t>(i)] = b;
        }
        return RatSeries(N, std::move(c));
    };
    return shifted(p * k) * shifted(p).invert();
}

// ev_j(omega^{{n}}) = (q^2 - q)^n q^{p C(n,2)} binom(j, n)_{q^p} as a series; j may be huge.
TruncSeries node_series(long p, long j, int n, const Precision& prec) {
    const int N = prec.N;
    RatSeries r = rat_from_qpoly(IntQPoly{0, -1, 1}, N);
    RatSeries v = rat_from_qpoly(IntQPoly(1L), N);
    for (int i = 0; i < n; ++i) v *= r;
    v *= rat_from_qpoly(IntQPoly::q_pow(static_cast<std::size_t>(p * n * (n - 1) / 2)), N);
    for (int i = 0; i < n; ++i) v *= rat_q_integer(p, j - i, N) * rat_q_integer(p, i + 1, N).invert();
    return v.to_series(prec);
}

// Nodes j_m = (m)_{p+1}, for which q^{p j_m + 1} = q^{(p+1)^m}.
long gamma_node(long p, int m) {
    long j = 0;
    for (int i = 0; i < m; ++i) j = j * (p + 1) + 1;
    return j;
}

SeriesMatrix gamma_entries(const SeriesMatrix& a) {
    SeriesMatrix r = a;
    for (auto& row : r)
        for (auto& x : row) x = x.gamma();
    return r;
}

}  // namespace

std::vector<SeriesMatrix> hyperstrat_expansion(const NablaModule& m) {
    const long p = m.p();
    const Precision& pr = m.prec();
    const int N = pr.N;
    const int r = m.rank();
    if (p == 2) throw NotAUnit("hyperstrat_expansion: the gamma-node system is not invertible at p = 2");

    // Gamma_m: matrix of the transport along q -> q^{(p+1)^m}, i.e. gamma_M iterated.
    std::vector<SeriesMatrix> Gam{identity_matrix(pr, r)};
    const SeriesMatrix G = m.gamma_matrix();
    for (int k = 1; k < N; ++k) Gam.push_back(G * gamma_entries(Gam.back()));

    // sum_n ev_{j_m}(omega^{{n}}) T_n = Gamma_m. With ev = t^n u_{m,n} the matrix u
    // is a unit: its value at q = 1 is binom(j_m, n), of determinant prod v_p(..) = 0.
    const Precision work(p, pr.M, N);
    SeriesMatrix U = zero_matrix(work, N);
    for (int k = 0; k < N; ++k)
        for (int n = 0; n < N; ++n) {
            const TruncSeries ev = node_series(p, gamma_node(p, k), n, work);
            if (ev.is_zero()) continue;
            const Precision hi(p, pr.M, N + n);
            U[k][n] = TruncSeries(hi, std::vector<std::uint64_t>(ev.coeffs().begin() + n, ev.coeffs().end())).reduce_to(work);
        }
    const SeriesMatrix Ui = inverse(U);

    std::vector<SeriesMatrix> T;
    for (int n = 0; n < N; ++n) {
        SeriesMatrix Y = zero_matrix(pr, r);
        for (int k = 0; k < N; ++k) Y = Y + Ui[n][k] * Gam[k];
        for (auto& row : Y)
            for (auto& x : row) x = x.div_t(n);
        T.push_back(std::move(Y));
    }
    return T;
}

std::vector<SeriesMatrix> hyperstrat_solve(const NablaModule& m, int K) {
    const long p = m.p();
    if (K > p - 1) throw OrderCapTooHigh("hyperstrat_solve: K must be at most p - 1");
    if (K < 0) throw Error("hyperstrat_solve: negative order cap");
    if (K >= m.prec().N) throw PrecisionTooLow("hyperstrat_solve: t-precision must exceed K");
    if (!is_weakly_nilpotent(m)) throw NotWeaklyNilpotent("hyperstrat_solve: " + m.name + " is not weakly nilpotent");

    std::vector<SeriesMatrix> T;
    if (p == 2) {
        T.push_back(identity_matrix(m.prec(), m.rank()));
        if (K == 1) T.push_back(m.A);
    } else {
        const auto full = hyperstrat_expansion(m);
        const Verdict v = hyperstrat_residual(m, full);
        if (!v.pass) throw Error("hyperstrat_solve: " + v.witness);
        T.assign(full.begin(), full.begin() + K + 1);
    }
    const Precision out = T.back()[0][0].prec();
    for (auto& t : T) t = reduce_all(t, out);
    if (K >= 1 && !equal_at(T[1], m.A, out)) throw Error("hyperstrat_solve: first derivative differs from A");
    return T;
}

Verdict hyperstrat_residual(const NablaModule& m, const std::vector<SeriesMatrix>& T) {
    // ev_j applied to L_Delta(T) = T theta(A):
    //   sum_n ev_j(L_Delta(omega^{{n}})) T_n = (sum_n ev_j(omega^{{n}}) T_n) g_{pj+1}(A).
    // ev_j(L_Delta(omega^{{n}})) lies in t^{n-1}, so T_n with t-precision N - n gives
    // t-precision N - 1; T_N would be needed beyond that.
    const long p = m.p();
    const int r = m.rank();
    const int N = m.prec().N;
    const int nT = static_cast<int>(T.size());
    if (nT != N) return Verdict::fail("residual needs T_0..T_{N-1}");
    const Precision cmp(p, m.prec().M, N - 1);
    const int cap = N - 2;
    for (int j = 0; j <= cap; ++j) {
        SeriesMatrix lhs = zero_matrix(cmp, r), evT = zero_matrix(cmp, r);
        for (int n = 0; n < nT; ++n) {
            const OmegaT& ld = L_delta_basis(m.prec(), n, cap);
            TruncSeries e(m.prec());
            for (int i = 0; i <= j; ++i) e += ld.coeff(i) * node_series(p, j, i, m.prec());
            const TruncSeries ev = node_series(p, j, n, m.prec());
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    // T_n is known mod t^{N-n}; both factors below are divisible by t^{n-1}.
                    const TruncSeries tn = T[n][a][b];
                    const int sh = std::max(n - 1, 0);
                    const Precision lift(p, m.prec().M, std::min(N, tn.prec().N + sh));
                    auto mul = [&](const TruncSeries& f) {
                        if (f.is_zero()) return TruncSeries(cmp);
                        const TruncSeries fs = f.div_t(sh);
                        std::vector<std::uint64_t> c(static_cast<std::size_t>(sh), 0);
                        const TruncSeries prod = fs * tn;
                        c.insert(c.end(), prod.coeffs().begin(), prod.coeffs().end());
                        c.resize(static_cast<std::size_t>(lift.N), 0);
                        return TruncSeries(lift, c).reduce_to(cmp);
                    };
                    lhs[a][b] += mul(e);
                    evT[a][b] += mul(ev);
                }
        }
        SeriesMatrix gA = m.A;
        for (auto& row : gA)
            for (auto& x : row) x = x.substitute_gr(p * j + 1);
        const SeriesMatrix rhs = evT * gA;
        if (!equal_at(lhs, rhs, cmp))
            return Verdict::fail("L_Delta residual at node " + std::to_string(j) + ": " + residues(lhs - rhs)[0][0]);
    }
    return Verdict::ok();
}

mpz_class Rank1Cohomology::h1_order() const {
    mpz_class o = 1;
    for (const auto& d : h1_torsion) o *= d;
    return o;
}

std::string Rank1Cohomology::to_string() const {
    std::ostringstream os;
    os << "H0 free rank " << h0_free_rank << "; H1 free rank " << h1_free_rank << ", torsion [";
    for (std::size_t i = 0; i < h1_torsion.size(); ++i) os << (i ? ", " : "") << h1_torsion[i].get_str();
    os << "]";
    return os.str();
}

Rank1Cohomology rank1_cohomology_OK(const ZZeta& a) {
    const long p = a.p();
    Rank1Cohomology c;
    for (const auto& d : smith_invariants(mult_matrix(a))) {
        if (d == 0) {
            ++c.h0_free_rank;
            ++c.h1_free_rank;
            continue;
        }
        mpz_class part = 1, x = d;
        while (x % p == 0) {
            x /= p;
            part *= p;
        }
        if (part > 1) c.h1_torsion.push_back(part);
    }
    return c;
}

std::pair<int, int> rank1_cohomology_mod_p(const ZZeta& a) {
    const long p = a.p();
    const auto mat = mult_matrix(a);
    FpMatrix f;
    for (const auto& row : mat) {
        std::vector<long> r;
        for (const auto& x : row) r.push_back(mpz_class(((x % p) + p) % p).get_si());
        f.push_back(std::move(r));
    }
    const int n = static_cast<int>(f.size());
    const int rk = static_cast<int>(fp_rank(f, p));
    return {n - rk, n - rk};
}

Verdict gamma_roundtrip(const NablaModule& m) {
    const Precision& pr = m.prec();
    const int r = m.rank();
    const SeriesMatrix G = m.gamma_matrix();
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (G[i][j].coeff(0) != (i == j ? 1U : 0U))
                return Verdict::fail("gamma_M is not the identity mod (q - 1) at entry " + std::to_string(i) + "," +
                                     std::to_string(j));

    const TruncSeries h = from_qpoly(h_poly(), pr);
    auto gamma_def = [&](const SeriesVec& v) {
        SeriesVec d = m.apply(v);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = v[i] + h * d[i];
        return d;
    };
    auto gamma_vec = [](const SeriesVec& v) {
        SeriesVec g;
        for (const auto& x : v) g.push_back(x.gamma());
        return g;
    };
    std::mt19937_64 rng(static_cast<std::uint64_t>(pr.p) * 104729U + static_cast<std::uint64_t>(r));
    auto random_series = [&]() {
        std::vector<mpz_class> c;
        for (int k = 0; k < 5; ++k) c.emplace_back(static_cast<long>(rng() % 21) - 10);
        return from_qpoly(IntQPoly(std::move(c)), pr);
    };
    for (int t = 0; t < 3; ++t) {
        SeriesVec v;
        for (int i = 0; i < r; ++i) v.push_back(random_series());
        const TruncSeries f = random_series();
        SeriesVec fv;
        for (const auto& x : v) fv.push_back(f * x);
        const SeriesVec a = gamma_def(v), b = G * gamma_vec(v);
        const Precision c = meet(a[0].prec(), b[0].prec());
        if (reduce_all(a, c) != reduce_all(b, c)) return Verdict::fail("gamma_M differs from I + (q^2-q) d_M on " + vec_string(v));
        SeriesVec lhs = gamma_def(fv), rhs = a;
        for (auto& x : rhs) x = f.gamma() * x;
        const Precision c2 = meet(lhs[0].prec(), rhs[0].prec());
        if (reduce_all(lhs, c2) != reduce_all(rhs, c2))
            return Verdict::fail("gamma_M is not gamma-semilinear on " + vec_string(v) + " with f = " + f.to_string());
    }
    SeriesMatrix back = G - identity_matrix(pr, r);
    for (auto& row : back)
        for (auto& x : row) {
            const TruncSeries d = x.div_t(1);
            x = d * TruncSeries::q(d.prec()).invert();
        }
    if (!equal_at(back, m.A, back[0][0].prec())) return Verdict::fail("A is not recovered from gamma_M");
    return Verdict::ok();
}

}  // namespace acalc
