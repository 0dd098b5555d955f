#include "padmzv/words.hpp"

#include <map>

namespace padmzv {

void add_term(ShuffleElement& e, const Word& w, const Rational& c) {
    auto it = e.find(w);
    if (it == e.end()) {
        if (c != 0) e.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second == 0) e.erase(it);
}

Word parse_word(const std::string& s) {
    for (char ch : s)
        if (ch != '0' && ch != '1') throw ParseError("bad word: " + s);
    return s;
}

std::vector<Word> all_words(long max_weight) {
    std::vector<Word> out{""};
    for (long m = 1; m <= max_weight; ++m) {
        for (long i = 0; i < (1L << m); ++i) {
            Word w(m, '0');
            for (long j = 0; j < m; ++j)
                if (i & (1L << (m - 1 - j))) w[j] = '1';
            out.push_back(w);
        }
    }
    return out;
}

ShuffleElement shuffle(const Word& u, const Word& v) {
    static std::map<std::pair<Word, Word>, ShuffleElement> memo;
    if (u.empty()) return {{v, 1}};
    if (v.empty()) return {{u, 1}};
    auto key = std::make_pair(u, v);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    ShuffleElement out;
    for (const auto& [w, c] : shuffle(u.substr(0, u.size() - 1), v))
        add_term(out, w + u.back(), c);
    for (const auto& [w, c] : shuffle(u, v.substr(0, v.size() - 1)))
        add_term(out, w + v.back(), c);
    memo.emplace(key, out);
    return out;
}

ShuffleElement shuffle_mul(const ShuffleElement& a, const ShuffleElement& b) {
    ShuffleElement out;
    for (const auto& [u, cu] : a)
        for (const auto& [v, cv] : b)
            for (const auto& [w, c] : shuffle(u, v))
                add_term(out, w, cu * cv * c);
    return out;
}

std::vector<std::pair<Word, Word>> deconcat(const Word& w) {
    std::vector<std::pair<Word, Word>> out;
    for (size_t i = 0; i <= w.size(); ++i)
        out.emplace_back(w.substr(0, i), w.substr(i));
    return out;
}

ShuffleElement antipode(const Word& w) {
    Word r(w.rbegin(), w.rend());
    return {{r, (w.size() % 2 == 0) ? Rational(1) : Rational(-1)}};
}

ShuffleElement antipode(const ShuffleElement& e) {
    ShuffleElement out;
    for (const auto& [w, c] : e) {
        Word r(w.rbegin(), w.rend());
        add_term(out, r, (w.size() % 2 == 0) ? c : -c);
    }
    return out;
}

const std::map<Word, mpz_class>& dynkin_word(const Word& w) {
    static std::map<Word, std::map<Word, mpz_class>> memo;
    if (auto it = memo.find(w); it != memo.end()) return it->second;
    std::map<Word, mpz_class> out;
    if (w.size() == 1) {
        out[w] = 1;
    } else if (w.size() > 1) {
        char x = w[0];
        for (const auto& [t, k] : dynkin_word(w.substr(1))) {
            out[x + t] += k;
            out[t + x] -= k;
        }
        for (auto it = out.begin(); it != out.end();)
            it = (it->second == 0) ? out.erase(it) : std::next(it);
    }
    return memo.emplace(w, std::move(out)).first->second;
}

Word index_to_word(const std::vector<long>& ks, bool regularized) {
    if (ks.empty()) throw ParseError("empty index");
    for (long k : ks)
        if (k < 1) throw ParseError("index entries must be >= 1");
    if (!regularized && ks.front() < 2)
        throw ParseError("leading index entry must be >= 2");
    Word w;
    for (long k : ks) {
        w.append(k - 1, '0');
        w.push_back('1');
    }
    return w;
}

std::vector<long> parse_index(const std::string& s) {
    std::string t = s;
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw ParseError("bad index: " + s);
        t = t.substr(1, t.size() - 2);
    }
    std::vector<long> ks;
    std::string cur;
    auto flush = [&] {
        size_t a = cur.find_first_not_of(' ');
        size_t b = cur.find_last_not_of(' ');
        if (a == std::string::npos) throw ParseError("bad index: " + s);
        ks.push_back(parse_long(cur.substr(a, b - a + 1)));
        cur.clear();
    };
    for (char ch : t) {
        if (ch == ',') flush();
        else cur.push_back(ch);
    }
    flush();
    return ks;
}

}  // namespace padmzv
