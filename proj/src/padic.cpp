#include "padmzv/padic.hpp"

#include <cassert>
#include <sstream>

namespace padmzv {

mpz_class pow_mpz(long p, long e) {
    assert(e >= 0);
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), (unsigned long)p, (unsigned long)e);
    return r;
}

long valuation_mpz(const mpz_class& x, long p, mpz_class* unit_out) {
    assert(x != 0);
    mpz_class u = x;
    long t = 0;
    while (mpz_divisible_ui_p(u.get_mpz_t(), (unsigned long)p)) {
        mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), (unsigned long)p);
        ++t;
    }
    if (unit_out) *unit_out = u;
    return t;
}

long floor_log_base(long p, long n) {
    assert(p >= 2 && n >= 1);
    long e = 0;
    long q = n / p;
    while (q > 0) {
        ++e;
        q /= p;
    }
    return e;
}

long Padic::check_p(long p) {
    if (p < 3 || p % 2 == 0) throw PadicError("p must be an odd prime");
    for (long d = 3; d * d <= p; d += 2)
        if (p % d == 0) throw PadicError("p must be an odd prime");
    if (p > 997) throw PadicError("p out of supported range (<= 997)");
    return p;
}

Padic Padic::make(long p, long shift, const mpz_class& x, long rel) {
    if (rel <= 0) return zero_at(p, shift + rel);
    mpz_class m = pow_mpz(p, rel);
    mpz_class r = x % m;
    if (r < 0) r += m;
    if (r == 0) return zero_at(p, shift + rel);
    mpz_class u;
    long t = valuation_mpz(r, p, &u);
    assert(t < rel);
    u %= pow_mpz(p, rel - t);
    return Padic(p, shift + t, rel - t, u, false);
}

Padic Padic::from_mpz(const mpz_class& x, long p, long N) {
    check_p(p);
    if (N < 1 || N > kMaxRel) throw PadicError("relative precision out of range");
    if (x == 0) return exact_zero(p);
    mpz_class u;
    long t = valuation_mpz(x, p, &u);
    mpz_class m = pow_mpz(p, N);
    u %= m;
    if (u < 0) u += m;
    return Padic(p, t, N, u, false);
}

Padic Padic::from_rational(const Rational& q, long p, long N) {
    check_p(p);
    if (N < 1 || N > kMaxRel) throw PadicError("relative precision out of range");
    if (q == 0) return exact_zero(p);
    mpz_class nu, du;
    long vn = valuation_mpz(q.get_num(), p, &nu);
    long vd = valuation_mpz(q.get_den(), p, &du);
    mpz_class m = pow_mpz(p, N);
    mpz_class di;
    if (!mpz_invert(di.get_mpz_t(), mpz_class(du % m).get_mpz_t(), m.get_mpz_t()))
        throw PadicError("denominator not invertible");
    mpz_class u = (nu % m) * di % m;
    if (u < 0) u += m;
    return Padic(p, vn - vd, N, u, false);
}

Padic Padic::operator-() const {
    if (zero_) return *this;
    mpz_class m = pow_mpz(p_, n_);
    return Padic(p_, v_, n_, (m - u_) % m, false);
}

Padic operator+(const Padic& a, const Padic& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    if (a.p_ != b.p_) throw PadicError("prime mismatch");
    long A = std::min(a.abs_precision(), b.abs_precision());
    if (a.zero_ && b.zero_) return Padic::zero_at(a.p_, A);
    if (a.zero_) return Padic::make(b.p_, b.v_, b.u_, A - b.v_);
    if (b.zero_) return Padic::make(a.p_, a.v_, a.u_, A - a.v_);
    long m = std::min(a.v_, b.v_);
    mpz_class x = a.u_ * pow_mpz(a.p_, a.v_ - m) + b.u_ * pow_mpz(b.p_, b.v_ - m);
    return Padic::make(a.p_, m, x, A - m);
}

Padic operator*(const Padic& a, const Padic& b) {
    if (a.is_exact_zero() || b.is_exact_zero())
        return Padic::exact_zero(a.p_ ? a.p_ : b.p_);
    if (a.p_ != b.p_) throw PadicError("prime mismatch");
    if (a.zero_ || b.zero_) {
        long abs = (a.zero_ ? a.v_ : a.v_) + (b.zero_ ? b.v_ : b.v_);
        return Padic::zero_at(a.p_, abs);
    }
    long N = std::min(a.n_, b.n_);
    mpz_class u = a.u_ * b.u_ % pow_mpz(a.p_, N);
    return Padic(a.p_, a.v_ + b.v_, N, u, false);
}

Padic operator/(const Padic& a, const Padic& b) {
    if (b.is_zero()) throw PadicError("division by zero");
    if (a.is_exact_zero()) return a;
    if (a.p_ != b.p_) throw PadicError("prime mismatch");
    if (a.zero_) return Padic::zero_at(a.p_, a.v_ - b.v_);
    long N = std::min(a.n_, b.n_);
    mpz_class m = pow_mpz(a.p_, N);
    mpz_class bi;
    mpz_invert(bi.get_mpz_t(), mpz_class(b.u_ % m).get_mpz_t(), m.get_mpz_t());
    return Padic(a.p_, a.v_ - b.v_, N, a.u_ * bi % m, false);
}

Padic Padic::times_int(const mpz_class& c) const {
    if (c == 0) return exact_zero(p_);
    if (is_exact_zero()) return *this;
    mpz_class cu;
    long t = valuation_mpz(c, p_, &cu);
    if (zero_) return zero_at(p_, v_ + t);
    mpz_class m = pow_mpz(p_, n_);
    mpz_class u = u_ * (cu % m) % m;
    if (u < 0) u += m;
    return Padic(p_, v_ + t, n_, u, false);
}

Padic Padic::div_int(const mpz_class& c) const {
    if (c == 0) throw PadicError("division by zero");
    if (is_exact_zero()) return *this;
    mpz_class cu;
    long t = valuation_mpz(c, p_, &cu);
    if (zero_) return zero_at(p_, v_ - t);
    mpz_class m = pow_mpz(p_, n_);
    mpz_class ci;
    mpz_invert(ci.get_mpz_t(), mpz_class(((cu % m) + m) % m).get_mpz_t(), m.get_mpz_t());
    return Padic(p_, v_ - t, n_, u_ * ci % m, false);
}

Padic Padic::pow_int(long k) const {
    if (zero_) {
        if (k <= 0) throw PadicError("zero to nonpositive power");
        if (is_exact_zero()) return *this;
        return zero_at(p_, v_ * k);
    }
    if (k == 0) return one(p_, n_);
    if (k < 0) return one(p_, n_) / pow_int(-k);
    Padic acc = one(p_, n_);
    Padic base = *this;
    for (long e = k; e > 0; e >>= 1) {
        if (e & 1) acc = acc * base;
        if (e > 1) base = base * base;
    }
    return acc;
}

Padic Padic::with_abs_precision(long k) const {
    if (zero_) return zero_at(p_, std::min(v_, k));
    if (k <= v_) return zero_at(p_, k);
    long N = std::min(n_, k - v_);
    return Padic(p_, v_, N, u_ % pow_mpz(p_, N), false);
}

Padic Padic::with_rel_precision(long N) const {
    if (zero_) return *this;
    if (N < 1) throw PadicError("relative precision out of range");
    long M = std::min(n_, N);
    return Padic(p_, v_, M, u_ % pow_mpz(p_, M), false);
}

std::string Padic::to_text() const {
    if (is_exact_zero()) throw PadicError("cannot render exact zero");
    std::ostringstream os;
    if (zero_) {
        os << "O(" << p_ << "^(" << v_ << "))";
    } else {
        os << p_ << "^" << v_ << " * " << u_ << " + O(" << p_ << "^(" << v_ + n_ << "))";
    }
    return os.str();
}

Padic teichmuller(const Padic& a) {
    if (a.is_zero()) throw PadicError("teichmuller of zero");
    long p = a.prime(), N = a.rel_precision();
    mpz_class m = pow_mpz(p, N);
    mpz_class x = a.unit() % m;
    for (long i = 0; i <= N + 1; ++i) {
        mpz_class y;
        mpz_powm_ui(y.get_mpz_t(), x.get_mpz_t(), (unsigned long)p, m.get_mpz_t());
        if (y == x) break;
        x = y;
    }
    return Padic::from_mpz(x, p, N);
}

Padic iwasawa_log(const Padic& a) {
    if (a.is_zero()) throw PadicError("log of zero");
    long p = a.prime(), N = a.rel_precision();
    Padic u = Padic::from_mpz(a.unit(), p, N);
    Padic z = u / teichmuller(u) - Padic::one(p, N);
    if (z.is_zero()) return Padic::zero_at(p, N);
    // v(z) >= 1 and v_p(n) <= n/2 for p >= 3, so every term with
    // n >= 2N/v(z) has valuation >= N.
    long nstop = 2 * N / z.valuation() + 1;
    Padic sum = Padic::exact_zero(p);
    Padic zn = z;
    for (long n = 1; n <= nstop; ++n) {
        Padic term = zn.div_int(n);
        sum = (n % 2 == 1) ? sum + term : sum - term;
        zn = zn * z;
    }
    return sum.with_abs_precision(N);
}

Padic padic_exp(const Padic& a) {
    long p = a.prime();
    if (a.is_exact_zero()) return Padic::one(p, Padic::kMaxRel);
    if (a.is_zero()) return Padic(Padic::one(p, a.abs_precision()));
    if (a.valuation() < 1) throw PadicError("exp requires valuation >= 1");
    long T = a.abs_precision();
    // v(a) >= 1 and v_p(n!) <= n/2 for p >= 3, so every term with
    // n >= 2T/v(a) has valuation >= T.
    long nstop = 2 * T / a.valuation() + 1;
    Padic sum = Padic::one(p, T);
    Padic term = Padic::one(p, T);
    for (long n = 1; n <= nstop; ++n) {
        term = (term * a).div_int(n);
        sum = sum + term;
    }
    return sum.with_abs_precision(T);
}

}  // namespace padmzv
