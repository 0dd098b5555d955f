#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "padmzv/words.hpp"

using namespace padmzv;

namespace {

// Oracle: enumerate interleavings directly by choosing the positions of u
// inside a word of length |u|+|v|.
ShuffleElement shuffle_by_enumeration(const Word& u, const Word& v) {
    size_t n = u.size() + v.size();
    ShuffleElement out;
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        if ((size_t)__builtin_popcountl(mask) != u.size()) continue;
        Word w;
        size_t iu = 0, iv = 0;
        for (size_t i = 0; i < n; ++i)
            w.push_back((mask >> i) & 1 ? u[iu++] : v[iv++]);
        add_term(out, w, 1);
    }
    return out;
}

Rational mass(const ShuffleElement& e) {
    Rational s = 0;
    for (const auto& [w, c] : e) s += c;
    return s;
}

long binom(long n, long k) {
    long r = 1;
    for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("shuffle of e0e1 with e0") {
    ShuffleElement got = shuffle("01", "0");
    ShuffleElement want{{"001", 2}, {"010", 1}};
    CHECK(got == want);
}

TEST_CASE("shuffle against interleaving enumeration") {
    std::mt19937 rng(4242);
    for (int trial = 0; trial < 200; ++trial) {
        size_t lu = rng() % 5, lv = rng() % 4;
        Word u, v;
        for (size_t i = 0; i < lu; ++i) u.push_back('0' + rng() % 2);
        for (size_t i = 0; i < lv; ++i) v.push_back('0' + rng() % 2);
        CHECK(shuffle(u, v) == shuffle_by_enumeration(u, v));
    }
}

TEST_CASE("total mass is a binomial coefficient") {
    CHECK(mass(shuffle("01", "0")) == 3);
    CHECK(mass(shuffle("0110", "101")) == binom(7, 3));
    CHECK(mass(shuffle("00", "00")) == binom(4, 2));
}

TEST_CASE("shuffle is commutative and associative") {
    std::vector<Word> ws = {"", "0", "1", "01", "10", "11", "001", "101"};
    for (const auto& u : ws)
        for (const auto& v : ws) {
            CHECK(shuffle(u, v) == shuffle(v, u));
            if (u.size() + v.size() <= 5)
                for (const auto& w : ws) {
                    if (u.size() + v.size() + w.size() > 5) continue;
                    ShuffleElement l = shuffle_mul(shuffle(u, v), {{w, 1}});
                    ShuffleElement r = shuffle_mul({{u, 1}}, shuffle(v, w));
                    CHECK(l == r);
                }
        }
}

TEST_CASE("antipode identity") {
    // sum over cuts w = uv of S(u) shuffled with v vanishes for w nonempty.
    for (const auto& w : all_words(5)) {
        ShuffleElement acc;
        for (const auto& [u, v] : deconcat(w)) {
            for (const auto& [x, c] : shuffle_mul(antipode(u), {{v, 1}}))
                add_term(acc, x, c);
        }
        if (w.empty()) {
            CHECK(acc == ShuffleElement{{"", 1}});
        } else {
            CHECK(acc.empty());
        }
    }
}

TEST_CASE("deconcatenation is compatible with shuffle") {
    // Delta(u sh v) = Delta(u) sh Delta(v) with Delta = deconcatenation.
    using Tensor = std::map<std::pair<Word, Word>, Rational>;
    auto delta = [](const ShuffleElement& e) {
        Tensor t;
        for (const auto& [w, c] : e)
            for (const auto& [a, b] : deconcat(w))
                t[{a, b}] += c;
        return t;
    };
    auto clean = [](Tensor t) {
        for (auto it = t.begin(); it != t.end();)
            it = (it->second == 0) ? t.erase(it) : std::next(it);
        return t;
    };
    std::vector<Word> ws = {"0", "1", "01", "10", "11"};
    for (const auto& u : ws)
        for (const auto& v : ws) {
            if (u.size() + v.size() > 4) continue;
            Tensor lhs = delta(shuffle(u, v));
            Tensor rhs;
            for (const auto& [u1, u2] : deconcat(u))
                for (const auto& [v1, v2] : deconcat(v))
                    for (const auto& [a, ca] : shuffle(u1, v1))
                        for (const auto& [b, cb] : shuffle(u2, v2))
                            rhs[{a, b}] += ca * cb;
            CHECK(clean(lhs) == clean(rhs));
        }
}

TEST_CASE("index to word") {
    CHECK(index_to_word({3, 2}) == "00101");
    CHECK(index_to_word({2}) == "01");
    CHECK(index_to_word({2, 1}) == "011");
    CHECK(index_to_word({4}) == "0001");
    CHECK(index_to_word({1}, true) == "1");
    CHECK_THROWS_AS((void)index_to_word({1}), ParseError);
    CHECK_THROWS_AS((void)index_to_word({1, 2}), ParseError);
    CHECK_THROWS_AS((void)index_to_word({2, 0}), ParseError);
    CHECK_THROWS_AS((void)index_to_word({}), ParseError);
}

TEST_CASE("index parsing") {
    CHECK(parse_index("2,1") == std::vector<long>{2, 1});
    CHECK(parse_index("(3, 2)") == std::vector<long>{3, 2});
    CHECK(parse_index("2") == std::vector<long>{2});
    CHECK_THROWS_AS((void)parse_index("2,,1"), ParseError);
    CHECK_THROWS_AS((void)parse_index("(2,1"), ParseError);
    CHECK_THROWS_AS((void)parse_index("a"), ParseError);
}

TEST_CASE("word parsing and graded order") {
    CHECK(parse_word("0101") == "0101");
    CHECK_THROWS_AS((void)parse_word("012"), ParseError);
    auto ws = all_words(3);
    CHECK(ws.size() == 1 + 2 + 4 + 8);
    WordLess less;
    for (size_t i = 0; i + 1 < ws.size(); ++i)
        CHECK(less(ws[i], ws[i + 1]));
    CHECK(ws[0] == "");
    CHECK(ws[1] == "0");
    CHECK(ws[3] == "00");
}
