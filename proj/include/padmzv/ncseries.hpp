#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "padmzv/padic.hpp"
#include "padmzv/words.hpp"

namespace padmzv {

struct SeriesError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Coefficient rings.  A ring context carries the modulus/precision data and
// exposes the operations the series templates need.

struct RatRing {
    using V = Rational;
    V zero() const { return 0; }
    V one() const { return 1; }
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V neg(const V& a) const { return -a; }
    V mul(const V& a, const V& b) const { return a * b; }
    V div(const V& a, const V& b) const {
        if (b == 0) throw SeriesError("division by zero");
        return a / b;
    }
    V from_ratio(const Rational& q) const { return q; }
    V times_int(const V& a, const mpz_class& c) const { return a * c; }
    V div_int(const V& a, const mpz_class& c) const {
        if (c == 0) throw SeriesError("division by zero");
        return a / Rational(c);
    }
    bool is_zero(const V& a) const { return a == 0; }
    bool eq(const V& a, const V& b) const { return a == b; }
};

struct PadicRing {
    long p;
    long N;
    using V = Padic;
    V zero() const { return Padic::exact_zero(p); }
    V one() const { return Padic::one(p, N); }
    V add(const V& a, const V& b) const { return a + b; }
    V sub(const V& a, const V& b) const { return a - b; }
    V neg(const V& a) const { return -a; }
    V mul(const V& a, const V& b) const { return a * b; }
    V div(const V& a, const V& b) const { return a / b; }
    V from_ratio(const Rational& q) const { return Padic::from_rational(q, p, N); }
    V times_int(const V& a, const mpz_class& c) const { return a.times_int(c); }
    V div_int(const V& a, const mpz_class& c) const { return a.div_int(c); }
    bool is_zero(const V& a) const { return a.is_zero(); }
    bool eq(const V& a, const V& b) const { return (a - b).is_zero(); }
};

// Weight-truncated series over words in {e0, e1}: every word of weight <= W
// has a stored coefficient (dense).
template <class Ring>
struct NCSeries {
    long W = 0;
    std::map<Word, typename Ring::V, WordLess> c;

    const typename Ring::V& at(const Word& w) const {
        auto it = c.find(w);
        if (it == c.end()) throw SeriesError("coefficient beyond truncation: " + w);
        return it->second;
    }
    typename Ring::V& at(const Word& w) {
        auto it = c.find(w);
        if (it == c.end()) throw SeriesError("coefficient beyond truncation: " + w);
        return it->second;
    }
};

template <class Ring>
NCSeries<Ring> nc_zero(const Ring& R, long W) {
    NCSeries<Ring> s;
    s.W = W;
    for (const auto& w : all_words(W)) s.c.emplace(w, R.zero());
    return s;
}

template <class Ring>
NCSeries<Ring> nc_one(const Ring& R, long W) {
    NCSeries<Ring> s = nc_zero(R, W);
    s.at("") = R.one();
    return s;
}

template <class Ring>
NCSeries<Ring> nc_add(const Ring& R, const NCSeries<Ring>& a, const NCSeries<Ring>& b) {
    if (a.W != b.W) throw SeriesError("truncation mismatch");
    NCSeries<Ring> s = a;
    for (auto& [w, v] : s.c) v = R.add(v, b.at(w));
    return s;
}

template <class Ring>
NCSeries<Ring> nc_sub(const Ring& R, const NCSeries<Ring>& a, const NCSeries<Ring>& b) {
    if (a.W != b.W) throw SeriesError("truncation mismatch");
    NCSeries<Ring> s = a;
    for (auto& [w, v] : s.c) v = R.sub(v, b.at(w));
    return s;
}

template <class Ring>
NCSeries<Ring> nc_neg(const Ring& R, const NCSeries<Ring>& a) {
    NCSeries<Ring> s = a;
    for (auto& [w, v] : s.c) v = R.neg(v);
    return s;
}

// Concatenation product: coeff(w) = sum over cuts w = uv of a(u) b(v).
template <class Ring>
NCSeries<Ring> nc_mul(const Ring& R, const NCSeries<Ring>& a, const NCSeries<Ring>& b) {
    if (a.W != b.W) throw SeriesError("truncation mismatch");
    NCSeries<Ring> s = nc_zero(R, a.W);
    for (auto& [w, v] : s.c)
        for (size_t i = 0; i <= w.size(); ++i)
            v = R.add(v, R.mul(a.at(w.substr(0, i)), b.at(w.substr(i))));
    return s;
}

template <class Ring>
NCSeries<Ring> nc_scale(const Ring& R, const NCSeries<Ring>& a, const typename Ring::V& k) {
    NCSeries<Ring> s = a;
    for (auto& [w, v] : s.c) v = R.mul(v, k);
    return s;
}

// Geometric series in (1 - S/S(empty)); S(empty) must be invertible.
template <class Ring>
NCSeries<Ring> nc_inverse(const Ring& R, const NCSeries<Ring>& a) {
    typename Ring::V c0 = a.at("");
    if (R.is_zero(c0)) throw SeriesError("inverse of series with zero constant term");
    typename Ring::V c0i = R.div(R.one(), c0);
    // y = 1 - a/c0 has zero constant term, so y^k vanishes below weight k.
    NCSeries<Ring> y = nc_sub(R, nc_one(R, a.W), nc_scale(R, a, c0i));
    NCSeries<Ring> acc = nc_one(R, a.W);
    NCSeries<Ring> pw = nc_one(R, a.W);
    for (long k = 1; k <= a.W; ++k) {
        pw = nc_mul(R, pw, y);
        acc = nc_add(R, acc, pw);
    }
    return nc_scale(R, acc, c0i);
}

template <class Ring>
typename Ring::V pair(const Ring& R, const ShuffleElement& f, const NCSeries<Ring>& s) {
    typename Ring::V acc = R.zero();
    for (const auto& [w, q] : f)
        acc = R.add(acc, R.mul(R.from_ratio(q), s.at(w)));
    return acc;
}

// Letter rescaling e_i -> c * e_i: multiplies the coefficient of w by c^|w|.
template <class Ring>
NCSeries<Ring> scale_letters(const Ring& R, const NCSeries<Ring>& a, const mpz_class& k) {
    NCSeries<Ring> s = a;
    for (auto& [w, v] : s.c) {
        mpz_class f;
        mpz_pow_ui(f.get_mpz_t(), k.get_mpz_t(), (unsigned long)w.size());
        v = R.times_int(v, f);
    }
    return s;
}

// T(w) = (-1)^|w| S(reverse w); the inverse of a group-like series.
template <class Ring>
NCSeries<Ring> antipode_series(const Ring& R, const NCSeries<Ring>& a) {
    NCSeries<Ring> s = nc_zero(R, a.W);
    for (auto& [w, v] : s.c) {
        Word r(w.rbegin(), w.rend());
        const auto& x = a.at(r);
        v = (w.size() % 2 == 0) ? x : R.neg(x);
    }
    return s;
}

template <class Ring>
NCSeries<Ring> nc_exp(const Ring& R, const NCSeries<Ring>& a) {
    if (!R.is_zero(a.at(""))) throw SeriesError("exp needs zero constant term");
    NCSeries<Ring> acc = nc_one(R, a.W);
    NCSeries<Ring> pw = nc_one(R, a.W);
    mpz_class kfact = 1;
    for (long k = 1; k <= a.W; ++k) {
        pw = nc_mul(R, pw, a);
        kfact *= k;
        NCSeries<Ring> term = pw;
        for (auto& [w, v] : term.c) v = R.div_int(v, kfact);
        acc = nc_add(R, acc, term);
    }
    return acc;
}

template <class Ring>
NCSeries<Ring> nc_log(const Ring& R, const NCSeries<Ring>& a) {
    NCSeries<Ring> x = nc_sub(R, a, nc_one(R, a.W));
    if (!R.is_zero(x.at(""))) throw SeriesError("log needs constant term 1");
    NCSeries<Ring> acc = nc_zero(R, a.W);
    NCSeries<Ring> pw = nc_one(R, a.W);
    for (long k = 1; k <= a.W; ++k) {
        pw = nc_mul(R, pw, x);
        NCSeries<Ring> term = pw;
        for (auto& [w, v] : term.c) {
            v = R.div_int(v, k);
            if (k % 2 == 0) v = R.neg(v);
        }
        acc = nc_add(R, acc, term);
    }
    return acc;
}

// Dynkin-Specht-Wever projection: S -> sum_w S(w) d(w)/|w|.  Fixes Lie
// elements degreewise and kills the rest.
template <class Ring>
NCSeries<Ring> pi_lie(const Ring& R, const NCSeries<Ring>& a) {
    NCSeries<Ring> s = nc_zero(R, a.W);
    for (const auto& [w, v] : a.c) {
        if (w.empty() || R.is_zero(v)) continue;
        for (const auto& [t, k] : dynkin_word(w))
            s.at(t) = R.add(s.at(t), R.div_int(R.times_int(v, k), (long)w.size()));
    }
    return s;
}

struct GrouplikeReport {
    bool ok = true;
    long checked = 0;
    Word u, v;  // first failing pair, if any ("","" means constant term)
};

// Checks S(empty) = 1 and pair(sh(u,v), S) = S(u) S(v) for all nonempty u, v
// with |u|+|v| <= W.
template <class Ring>
GrouplikeReport is_grouplike(const Ring& R, const NCSeries<Ring>& s) {
    GrouplikeReport rep;
    if (!R.is_zero(R.sub(s.at(""), R.one()))) {
        rep.ok = false;
        return rep;
    }
    ++rep.checked;
    for (const auto& u : all_words(s.W)) {
        if (u.empty()) continue;
        for (const auto& v : all_words(s.W - weight(u))) {
            if (v.empty()) continue;
            typename Ring::V r = R.sub(pair(R, shuffle(u, v), s), R.mul(s.at(u), s.at(v)));
            ++rep.checked;
            if (!R.is_zero(r)) {
                rep.ok = false;
                rep.u = u;
                rep.v = v;
                return rep;
            }
        }
    }
    return rep;
}

template <class Ring>
NCSeries<Ring> nc_truncate(const Ring& R, const NCSeries<Ring>& a, long W) {
    if (W > a.W) throw SeriesError("cannot raise truncation weight");
    NCSeries<Ring> s = nc_zero(R, W);
    for (auto& [w, v] : s.c) v = a.at(w);
    return s;
}

}  // namespace padmzv
