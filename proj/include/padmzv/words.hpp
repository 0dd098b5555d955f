#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "padmzv/rational.hpp"

namespace padmzv {

// Words over the two-letter alphabet {e0, e1}, stored as strings of '0'/'1'.
using Word = std::string;

inline long weight(const Word& w) { return (long)w.size(); }

// Graded order: by weight, then lexicographic.  All serialized word lists
// use this order.
struct WordLess {
    bool operator()(const Word& a, const Word& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    }
};

// Finite rational linear combination of words.
using ShuffleElement = std::map<Word, Rational, WordLess>;

void add_term(ShuffleElement& e, const Word& w, const Rational& c);

Word parse_word(const std::string& s);
std::vector<Word> all_words(long max_weight);

ShuffleElement shuffle(const Word& u, const Word& v);
ShuffleElement shuffle_mul(const ShuffleElement& a, const ShuffleElement& b);

// All ways to cut w into (prefix, suffix), including the trivial ones.
std::vector<std::pair<Word, Word>> deconcat(const Word& w);

// (-1)^|w| times the reversed word.
ShuffleElement antipode(const Word& w);
ShuffleElement antipode(const ShuffleElement& e);

// Right-normed Dynkin bracketing of a word: d(x) = x,
// d(x u) = x d(u) - d(u) x, as an integer combination of words.
const std::map<Word, mpz_class>& dynkin_word(const Word& w);

// (k1,...,kr) -> e0^(k1-1) e1 ... e0^(kr-1) e1.  Requires every ki >= 1 and,
// unless regularized is set, k1 >= 2 (the word then starts with e0, i.e. the
// corresponding sum converges).
Word index_to_word(const std::vector<long>& ks, bool regularized = false);

// "2,1" or "(2,1)" with optional spaces.
std::vector<long> parse_index(const std::string& s);

}  // namespace padmzv
