#include "padmzv/lipoly.hpp"

#include <algorithm>

namespace padmzv {

namespace {

LogPoly lp_alloc(long L, long D) {
    LogPoly P;
    P.D = D;
    P.c.assign((size_t)L + 1, std::vector<Rational>((size_t)D + 1, Rational(0)));
    return P;
}

void lp_trim(LogPoly& P) {
    while (P.c.size() > 1) {
        const auto& row = P.c.back();
        bool all0 = true;
        for (const auto& q : row)
            if (q != 0) { all0 = false; break; }
        if (!all0) break;
        P.c.pop_back();
    }
}

mpz_class factorial(long k) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), (unsigned long)k);
    return r;
}

// int t^(n-1) l^k dt = t^n sum_{j<=k} (-1)^(k-j) (k!/j!) l^j / n^(k-j+1),
// valid for n >= 1; this deposits that antiderivative scaled by a.
void deposit_integral(LogPoly& out, long k, long n, const Rational& a) {
    mpz_class kf = factorial(k);
    for (long j = 0; j <= k; ++j) {
        mpz_class np;
        mpz_ui_pow_ui(np.get_mpz_t(), (unsigned long)n, (unsigned long)(k - j + 1));
        Rational term = a * Rational(kf) / (Rational(factorial(j)) * Rational(np));
        if ((k - j) % 2 != 0) term = -term;
        out.c[(size_t)j][(size_t)n] += term;
    }
}

// Antiderivative of A/t with constant term 0; the t^0 l^k part of A
// integrates to l^(k+1)/(k+1).
LogPoly integrate_dt_over_t(const LogPoly& A) {
    LogPoly out = lp_alloc(A.ldeg() + 1, A.D);
    for (long k = 0; k <= A.ldeg(); ++k)
        for (long n = 0; n <= A.D; ++n) {
            const Rational& a = A.c[(size_t)k][(size_t)n];
            if (a == 0) continue;
            if (n == 0)
                out.c[(size_t)k + 1][0] += a / Rational(k + 1);
            else
                deposit_integral(out, k, n, a);
        }
    lp_trim(out);
    return out;
}

// Antiderivative of A/(1-t) with constant term 0: expand the geometric
// factor, so the t^m coefficient of the integrand is a prefix sum of A.
LogPoly integrate_dt_over_1mt(const LogPoly& A) {
    LogPoly out = lp_alloc(A.ldeg(), A.D);
    for (long k = 0; k <= A.ldeg(); ++k) {
        Rational pref = 0;
        for (long m = 0; m < A.D; ++m) {
            pref += A.c[(size_t)k][(size_t)m];
            if (pref != 0) deposit_integral(out, k, m + 1, pref);
        }
    }
    lp_trim(out);
    return out;
}

Word swap_letters(const Word& w) {
    Word s = w;
    for (char& ch : s) ch = (ch == '0') ? '1' : '0';
    return s;
}

}  // namespace

LogPoly lp_const(const Rational& q, long D) {
    LogPoly P = lp_alloc(0, D);
    P.c[0][0] = q;
    return P;
}

LogPoly lp_add(const LogPoly& a, const LogPoly& b) {
    if (a.D != b.D) throw SeriesError("depth mismatch");
    LogPoly out = lp_alloc(std::max(a.ldeg(), b.ldeg()), a.D);
    for (long l = 0; l <= out.ldeg(); ++l)
        for (long n = 0; n <= out.D; ++n)
            out.c[(size_t)l][(size_t)n] = a.coeff(l, n) + b.coeff(l, n);
    lp_trim(out);
    return out;
}

LogPoly lp_sub(const LogPoly& a, const LogPoly& b) { return lp_add(a, lp_neg(b)); }

LogPoly lp_neg(const LogPoly& a) {
    LogPoly out = a;
    for (auto& row : out.c)
        for (auto& q : row) q = -q;
    return out;
}

LogPoly lp_mul(const LogPoly& a, const LogPoly& b, long lcap) {
    if (a.D != b.D) throw SeriesError("depth mismatch");
    LogPoly out = lp_alloc(a.ldeg() + b.ldeg(), a.D);
    for (long la = 0; la <= a.ldeg(); ++la)
        for (long na = 0; na <= a.D; ++na) {
            const Rational& qa = a.c[(size_t)la][(size_t)na];
            if (qa == 0) continue;
            for (long lb = 0; lb <= b.ldeg(); ++lb)
                for (long nb = 0; nb + na <= b.D; ++nb) {
                    const Rational& qb = b.c[(size_t)lb][(size_t)nb];
                    if (qb == 0) continue;
                    out.c[(size_t)(la + lb)][(size_t)(na + nb)] += qa * qb;
                }
        }
    if (lcap >= 0 && out.ldeg() > lcap) {
        for (long l = lcap + 1; l <= out.ldeg(); ++l)
            for (long n = 0; n <= out.D; ++n)
                if (out.c[(size_t)l][(size_t)n] != 0)
                    throw SeriesError("log-degree exceeds the ring cap");
        out.c.resize((size_t)lcap + 1);
    }
    lp_trim(out);
    return out;
}

LogPoly lp_scale(const LogPoly& a, const Rational& q) {
    LogPoly out = a;
    for (auto& row : out.c)
        for (auto& x : row) x *= q;
    lp_trim(out);
    return out;
}

bool lp_is_zero(const LogPoly& a) {
    for (const auto& row : a.c)
        for (const auto& q : row)
            if (q != 0) return false;
    return true;
}

bool lp_eq(const LogPoly& a, const LogPoly& b) {
    long L = std::max(a.ldeg(), b.ldeg());
    long D = std::max(a.D, b.D);
    for (long l = 0; l <= L; ++l)
        for (long n = 0; n <= D; ++n)
            if (a.coeff(l, n) != b.coeff(l, n)) return false;
    return true;
}

LogPoly lp_derivative(const LogPoly& a) {
    if (a.D < 1) throw SeriesError("depth too small to differentiate");
    LogPoly out = lp_alloc(a.ldeg(), a.D - 1);
    for (long l = 0; l <= a.ldeg(); ++l)
        for (long m = 0; m < a.D; ++m)
            out.c[(size_t)l][(size_t)m] =
                Rational(m + 1) * a.coeff(l, m + 1) + Rational(l + 1) * a.coeff(l + 1, m + 1);
    lp_trim(out);
    return out;
}

LogPoly lp_geom(const LogPoly& a) {
    LogPoly out = a;
    for (auto& row : out.c)
        for (long n = 1; n <= out.D; ++n) row[(size_t)n] += row[(size_t)n - 1];
    return out;
}

LogPoly lp_shift_down(const LogPoly& a) {
    if (a.D < 1) throw SeriesError("depth too small to shift");
    LogPoly out = lp_alloc(a.ldeg(), a.D - 1);
    for (long l = 0; l <= a.ldeg(); ++l) {
        if (a.coeff(l, 0) != 0) throw SeriesError("shift of a series with constant term");
        for (long n = 0; n < a.D; ++n) out.c[(size_t)l][(size_t)n] = a.coeff(l, n + 1);
    }
    lp_trim(out);
    return out;
}

std::map<Word, LogPoly, WordLess> build_li_table(long W, long D) {
    std::map<Word, LogPoly, WordLess> T;
    for (const auto& w : all_words(W)) {
        if (w.empty()) {
            T.emplace(w, lp_const(1, D));
            continue;
        }
        const LogPoly& A = T.at(w.substr(1));
        T.emplace(w, w[0] == '0' ? integrate_dt_over_t(A) : integrate_dt_over_1mt(A));
    }
    return T;
}

std::map<Word, LogPoly, WordLess> build_h_table(long W, long D) {
    std::map<Word, LogPoly, WordLess> li = build_li_table(W, D);
    std::map<Word, LogPoly, WordLess> H;
    for (auto& [w, P] : li) {
        Word sw = swap_letters(w);
        H.emplace(sw, (weight(w) % 2 != 0) ? lp_neg(P) : P);
    }
    return H;
}

Padic eval_logpoly(const LogPoly& P, const Padic& z, const Padic& logz) {
    long p = z.prime();
    long Nc = z.rel_precision() + 2 * (P.ldeg() + 1) + 8;
    std::vector<Padic> zpow;
    zpow.reserve((size_t)P.D + 1);
    zpow.push_back(Padic::one(p, Nc));
    for (long n = 1; n <= P.D; ++n) zpow.push_back(zpow.back() * z);
    Padic total = Padic::exact_zero(p);
    Padic lpow = Padic::one(p, Nc);
    for (long l = 0; l <= P.ldeg(); ++l) {
        Padic row = Padic::exact_zero(p);
        for (long n = 0; n <= P.D; ++n) {
            const Rational& q = P.c[(size_t)l][(size_t)n];
            if (q == 0) continue;
            row = row + Padic::from_rational(q, p, Nc) * zpow[(size_t)n];
        }
        if (!row.is_exact_zero()) total = total + row * lpow;
        if (l < P.ldeg()) lpow = lpow * logz;
    }
    return total;
}

long li_depth(long p, long W, long vz, long T) {
    long D = 16;
    while ((D + 1) * vz - W * (floor_log_base(p, D + 1) + 1) < T) {
        D *= 2;
        if (D > (1L << 22)) throw SolverError("series depth escalation failed");
    }
    return D;
}

Padic eval_li_at_depth(const Word& w, const Padic& z, long D) {
    if (z.is_zero() || z.valuation() < 1)
        throw PadicError("evaluation point must lie in the open unit disc around 0");
    long p = z.prime();
    long T = z.abs_precision();
    LogPoly P = lp_const(1, D);
    for (size_t i = w.size(); i-- > 0;)
        P = (w[i] == '0') ? integrate_dt_over_t(P) : integrate_dt_over_1mt(P);
    Padic logz = (P.ldeg() > 0) ? iwasawa_log(z) : Padic::zero_at(p, T);
    Padic s = eval_logpoly(P, z, logz);
    long decl = std::min(T, s.abs_precision());
    return s.clamped(decl).with_abs_precision(decl);
}

Padic eval_li(const Word& w, const Padic& z) {
    if (z.is_zero() || z.valuation() < 1)
        throw PadicError("evaluation point must lie in the open unit disc around 0");
    long D = li_depth(z.prime(), std::max<long>(weight(w), 1), z.valuation(), z.abs_precision());
    return eval_li_at_depth(w, z, D);
}

}  // namespace padmzv
