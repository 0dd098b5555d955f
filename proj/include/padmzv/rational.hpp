#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace padmzv {

using Rational = mpq_class;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// "a/b" or "a", decimal, optional leading minus.  Throws ParseError on junk
// or zero denominator.
inline Rational parse_rational(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational");
    auto ok_int = [](const std::string& t) {
        if (t.empty()) return false;
        size_t i = (t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s, den = "1";
    if (auto slash = s.find('/'); slash != std::string::npos) {
        num = s.substr(0, slash);
        den = s.substr(slash + 1);
    }
    if (!ok_int(num) || !ok_int(den))
        throw ParseError("bad rational: " + s);
    mpz_class n{num}, d{den};
    if (d == 0) throw ParseError("zero denominator: " + s);
    Rational q{n, d};
    q.canonicalize();
    return q;
}

inline long parse_long(const std::string& s) {
    try {
        size_t pos = 0;
        long x = std::stol(s, &pos);
        if (pos != s.size()) throw ParseError("bad integer: " + s);
        return x;
    } catch (const std::logic_error&) {
        throw ParseError("bad integer: " + s);
    }
}

}  // namespace padmzv
