#pragma once

#include <map>
#include <vector>

#include "padmzv/ncseries.hpp"

namespace padmzv {

// Polynomial in l (= log of the coordinate) whose coefficients are rational
// power series in t truncated at degree D: c[l][n] is the coefficient of
// l^l * t^n.
struct LogPoly {
    long D = 0;
    std::vector<std::vector<Rational>> c;  // c[l] has D+1 entries

    long ldeg() const { return (long)c.size() - 1; }
    Rational coeff(long l, long n) const {
        if (l < 0 || l >= (long)c.size() || n < 0 || n > D) return 0;
        return c[l][n];
    }
};

LogPoly lp_const(const Rational& q, long D);
LogPoly lp_add(const LogPoly& a, const LogPoly& b);
LogPoly lp_sub(const LogPoly& a, const LogPoly& b);
LogPoly lp_neg(const LogPoly& a);
// Product truncated at t-degree D; l-degrees add.  lcap < 0 means no cap;
// otherwise a nonzero coefficient beyond lcap throws.
LogPoly lp_mul(const LogPoly& a, const LogPoly& b, long lcap = -1);
LogPoly lp_scale(const LogPoly& a, const Rational& q);
bool lp_is_zero(const LogPoly& a);
bool lp_eq(const LogPoly& a, const LogPoly& b);
// d/dt with dl/dt = 1/t; the t^(-1) coefficient must cancel, which holds for
// every integral of a closed form built here.  Output depth D-1.
LogPoly lp_derivative(const LogPoly& a);
// Multiplication by 1/(1-t): per-l running prefix sums.
LogPoly lp_geom(const LogPoly& a);
// Division by t for series with no constant t-term in any l-degree.
LogPoly lp_shift_down(const LogPoly& a);

// Coefficient ring for weight-truncated series over LogPoly; lcap bounds the
// l-degree (the letter-weight bounds it in every use here).
struct LogPolyRing {
    long lcap;
    long D;
    using V = LogPoly;
    V zero() const { return lp_const(0, D); }
    V one() const { return lp_const(1, D); }
    V add(const V& a, const V& b) const { return lp_add(a, b); }
    V sub(const V& a, const V& b) const { return lp_sub(a, b); }
    V neg(const V& a) const { return lp_neg(a); }
    V mul(const V& a, const V& b) const { return lp_mul(a, b, lcap); }
    V from_ratio(const Rational& q) const { return lp_const(q, D); }
    V times_int(const V& a, const mpz_class& c) const { return lp_scale(a, Rational(c)); }
    V div_int(const V& a, const mpz_class& c) const {
        if (c == 0) throw SeriesError("division by zero");
        return lp_scale(a, Rational(1) / Rational(c));
    }
    bool is_zero(const V& a) const { return lp_is_zero(a); }
    bool eq(const V& a, const V& b) const { return lp_eq(a, b); }
};

// Iterated-integral table on the punctured line, expanded at the tangential
// basepoint at 0: T[empty] = 1, T[e0 w] = int T[w] dt/t, T[e1 w] =
// int T[w] dt/(1-t), all integration constants 0.  Entries for all words of
// weight <= W at t-depth D.
std::map<Word, LogPoly, WordLess> build_li_table(long W, long D);

// The same system expanded at the tangential basepoint at 1, in the local
// coordinate s = 1-t: H[w](s) = (-1)^|w| T[swap w](s) with swap exchanging
// the letters.  Then dH[e0 w]/ds = -H[w]/(1-s) and dH[e1 w]/ds = -H[w]/s.
std::map<Word, LogPoly, WordLess> build_h_table(long W, long D);

// Sum over l, n of c[l][n] z^n logz^l.  logz must be iwasawa_log(z) when the
// caller wants the actual function value.
Padic eval_logpoly(const LogPoly& P, const Padic& z, const Padic& logz);

// Value at z with v(z) >= 1 of the table entry for w: series depth is
// escalated until the tail drops below the target absolute precision
// v(z) + relprec(z), and the result is truncated there, so the declared
// digits do not depend on the chosen depth.
Padic eval_li(const Word& w, const Padic& z);
// Same with a caller-pinned depth (must satisfy the tail bound; for tests).
Padic eval_li_at_depth(const Word& w, const Padic& z, long D);

// Smallest depth passing the tail bound for weight W at valuation vz and
// target absolute precision T.
long li_depth(long p, long W, long vz, long T);

// The l-free factor of the group-like generating series G = f * exp(l e0):
// per-word coefficient streams f_w[n], 0 <= n <= nmax, over any ring.
// f_empty = delta at n=0, pure-e0 words vanish, and
//   n f_w[n] = [w = e0 u] f_u[n] - [w = u' e0] f_u'[n]
//            + [w = e1 u''] sum_{m < n} f_u''[m].
template <class Ring>
std::map<Word, std::vector<typename Ring::V>, WordLess>
f_streams(const Ring& R, long W, long nmax) {
    std::map<Word, std::vector<typename Ring::V>, WordLess> f;
    for (const auto& w : all_words(W)) {
        std::vector<typename Ring::V> arr((size_t)nmax + 1, R.zero());
        if (w.empty()) {
            arr[0] = R.one();
        } else if (w.find('1') != Word::npos) {
            const auto* head = (w.front() == '0') ? &f.at(w.substr(1)) : nullptr;
            const auto* tail_pref = (w.front() == '1') ? &f.at(w.substr(1)) : nullptr;
            const auto* init = (w.back() == '0') ? &f.at(w.substr(0, w.size() - 1)) : nullptr;
            typename Ring::V pref = R.zero();
            for (long n = 1; n <= nmax; ++n) {
                if (tail_pref) pref = R.add(pref, (*tail_pref)[n - 1]);
                typename Ring::V acc = R.zero();
                if (head) acc = R.add(acc, (*head)[n]);
                if (tail_pref) acc = R.add(acc, pref);
                if (init) acc = R.sub(acc, (*init)[n]);
                arr[(size_t)n] = R.div_int(acc, n);
            }
        }
        f.emplace(w, std::move(arr));
    }
    return f;
}

}  // namespace padmzv
