#pragma once

#include <vector>

#include "padmzv/padic.hpp"

namespace padmzv_test {

using padmzv::Padic;

// Direct nested-sum evaluation at z in the open unit disc around 0:
//   sum over n1 > n2 > ... > nr >= 1 of z^n1 / (n1^k1 * ... * nr^kr),
// computed by dynamic programming over the inner chains and cut off once
// every dropped term's valuation clears the target absolute precision
// v(z) + relprec(z).  Declared precision is the minimum of that target and
// the tracked precision of the sum.
inline Padic nested_sum_value(const std::vector<long>& ks, const Padic& z) {
    long p = z.prime();
    long vz = z.valuation();
    long T = z.abs_precision();
    long K = 0;
    for (long k : ks) K += k;
    auto flog = [&](long n) {
        long e = 0, q = n / p;
        while (q > 0) {
            ++e;
            q /= p;
        }
        return e;
    };
    long M = 4;
    while ((M + 1) * vz - K * (flog(M + 1) + 1) < T) M *= 2;
    long Nw = z.rel_precision() + 8;
    size_t r = ks.size();

    // B[n] holds, for the current level j, the sum over chains
    // n >= n_j > n_{j+1} > ... >= 1 of the product of n_i^(-k_i); the
    // starting level r+1 is the empty chain.
    std::vector<Padic> B((size_t)M + 1, Padic::one(p, Nw));
    for (size_t j = r; j >= 2; --j) {
        std::vector<Padic> nb((size_t)M + 1, Padic::exact_zero(p));
        for (long n = 1; n <= M; ++n) {
            Padic inv = Padic::one(p, Nw) / Padic::from_long(n, p, Nw).pow_int(ks[j - 1]);
            nb[(size_t)n] = nb[(size_t)n - 1] + inv * B[(size_t)n - 1];
        }
        B = std::move(nb);
    }

    Padic zp = Padic::one(p, Nw);
    Padic acc = Padic::exact_zero(p);
    for (long n = 1; n <= M; ++n) {
        zp = zp * z;
        acc = acc + zp * B[(size_t)n - 1] / Padic::from_long(n, p, Nw).pow_int(ks[0]);
    }
    long decl = std::min(T, acc.abs_precision());
    return acc.clamped(decl).with_abs_precision(decl);
}

// Exponent list of an e1-terminated word: runs of e0 before each e1 give
// k_i = run + 1, leftmost letter first.
inline std::vector<long> word_exponents(const std::string& w) {
    std::vector<long> ks;
    long run = 0;
    for (char ch : w) {
        if (ch == '0') {
            ++run;
        } else {
            ks.push_back(run + 1);
            run = 0;
        }
    }
    return ks;
}

}  // namespace padmzv_test
