#pragma once

#include <gmpxx.h>
#include <climits>
#include <stdexcept>
#include <string>

#include "padmzv/rational.hpp"

namespace padmzv {

struct PadicError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Capped-precision p-adic number.  Nonzero: value = p^v * u known to N unit
// digits, 1 <= u < p^N, p does not divide u.  Zero: known to vanish to
// absolute precision v (u = 0, N = 0).  An exact zero (v = kAbsInf) is the
// additive identity; it never leaves the library through a renderer.
class Padic {
public:
    static constexpr long kAbsInf = LONG_MAX / 4;
    static constexpr long kMaxRel = 4096;

    Padic() : p_(0), v_(kAbsInf), n_(0), u_(0), zero_(true) {}

    static Padic exact_zero(long p) { return Padic(check_p(p), kAbsInf, 0, 0, true); }
    static Padic zero_at(long p, long abs) { return Padic(check_p(p), abs, 0, 0, true); }
    static Padic one(long p, long N) { return from_long(1, p, N); }

    // Exact integer input: unit digits are exact, truncated to N of them.
    static Padic from_mpz(const mpz_class& x, long p, long N);
    static Padic from_long(long x, long p, long N) { return from_mpz(mpz_class(x), p, N); }
    static Padic from_rational(const Rational& q, long p, long N);

    long prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact_zero() const { return zero_ && v_ == kAbsInf; }
    // Valuation of a nonzero element; for a zero, a lower bound (its precision).
    long valuation() const { return v_; }
    long abs_precision() const { return zero_ ? v_ : v_ + n_; }
    long rel_precision() const { return n_; }
    const mpz_class& unit() const { return u_; }

    Padic operator-() const;
    friend Padic operator+(const Padic& a, const Padic& b);
    friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }
    friend Padic operator*(const Padic& a, const Padic& b);
    friend Padic operator/(const Padic& a, const Padic& b);

    // Exact scalar ops: relative precision is preserved, valuation shifts.
    Padic times_int(const mpz_class& c) const;
    Padic div_int(const mpz_class& c) const;
    Padic times_int(long c) const { return times_int(mpz_class(c)); }
    Padic div_int(long c) const { return div_int(mpz_class(c)); }
    Padic pow_int(long k) const;

    Padic with_abs_precision(long k) const;
    Padic with_rel_precision(long N) const;
    // Exact zero clamped to a stated precision; anything else unchanged.
    Padic clamped(long abs) const { return is_exact_zero() ? zero_at(p_, abs) : *this; }

    // Representation equality: same p, same kind, same (v, N, u).
    bool same_bits(const Padic& o) const {
        return p_ == o.p_ && zero_ == o.zero_ && v_ == o.v_ && n_ == o.n_ && u_ == o.u_;
    }

    std::string to_text() const;

private:
    Padic(long p, long v, long n, mpz_class u, bool zero)
        : p_(p), v_(v), n_(n), u_(std::move(u)), zero_(zero) {}

    static long check_p(long p);
    // Value x * p^shift with x known mod p^rel (x may be 0 or p-divisible).
    static Padic make(long p, long shift, const mpz_class& x, long rel);

    long p_;
    long v_;
    long n_;
    mpz_class u_;
    bool zero_;

    friend Padic padic_add(const Padic& a, const Padic& b);
};

inline bool eq_at_precision(const Padic& a, const Padic& b) { return (a - b).is_zero(); }
inline bool eq_at_precision(const Padic& a, const Padic& b, long k) {
    return (a - b).with_abs_precision(k).is_zero();
}

mpz_class pow_mpz(long p, long e);
long valuation_mpz(const mpz_class& x, long p, mpz_class* unit_out);
// Largest e >= 0 with p^e <= n; requires n >= 1.
long floor_log_base(long p, long n);

// Teichmuller representative of the unit part: the root of x^(p-1) = 1
// congruent to u mod p, to the input's relative precision.
Padic teichmuller(const Padic& a);

// Iwasawa branch: log p = 0 and log vanishes on roots of unity, so the
// valuation and Teichmuller part of the input are discarded.  Absolute
// precision of the result equals the input's relative precision.
Padic iwasawa_log(const Padic& a);

// Defined for valuation >= 1 (p odd).  Absolute precision is preserved.
Padic padic_exp(const Padic& a);

}  // namespace padmzv
