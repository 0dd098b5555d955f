#pragma once

#include <cstdio>
#include <fstream>
#include <string>

#include "json.hpp"

#include "padmzv/frobenius.hpp"
#include "padmzv/ncseries.hpp"
#include "padmzv/padic.hpp"
#include "padmzv/words.hpp"

namespace padmzv {

using ordered_json = nlohmann::ordered_json;

// {"p","v","unit","prec","zero"}; unit is a decimal string reduced so that no
// digit beyond the declared absolute precision appears.
inline ordered_json padic_json(const Padic& x) {
    if (x.is_exact_zero()) throw PadicError("cannot render exact zero");
    ordered_json j;
    j["p"] = x.prime();
    if (x.is_zero()) {
        j["v"] = 0;
        j["unit"] = "0";
        j["prec"] = x.abs_precision();
        j["zero"] = true;
        return j;
    }
    mpz_class m = pow_mpz(x.prime(), x.rel_precision());
    mpz_class u = ((x.unit() % m) + m) % m;
    j["v"] = x.valuation();
    j["unit"] = u.get_str();
    j["prec"] = x.abs_precision();
    j["zero"] = false;
    return j;
}

// {"terms":[{"word","num","den"},…]} in (weight, lex) order; exact decimal
// strings for the rational parts.
inline ordered_json shuffle_json(const ShuffleElement& f) {
    ordered_json terms = ordered_json::array();
    for (const auto& [w, q] : f) {
        ordered_json t;
        t["word"] = w;
        t["num"] = q.get_num().get_str();
        t["den"] = q.get_den().get_str();
        terms.push_back(std::move(t));
    }
    ordered_json j;
    j["terms"] = std::move(terms);
    return j;
}

// {"W","alphabet","coeffs"} with coefficient keys in (weight, lex) order.
inline ordered_json ncseries_json(const NCSeries<PadicRing>& s) {
    ordered_json coeffs;
    for (const auto& w : all_words(s.W)) coeffs[w] = padic_json(s.at(w));
    ordered_json j;
    j["W"] = s.W;
    j["alphabet"] = "01";
    j["coeffs"] = std::move(coeffs);
    return j;
}

// Run metadata kept apart from the value payload so reruns with the same
// configuration stay byte-identical.
inline ordered_json manifest_json(const Associator& A) {
    ordered_json j;
    j["p"] = A.p;
    j["N"] = A.N;
    j["W"] = A.W;
    j["D"] = A.D;
    j["n_int"] = A.info.n_int;
    j["k_decl"] = A.info.k_decl;
    j["k_run"] = A.info.k_run;
    j["terms"] = A.info.terms;
    j["pair_solves"] = A.info.pair_solves;
    ordered_json ach;
    for (const auto& [s, a] : A.info.achieved) ach[std::to_string(s)] = a;
    j["achieved"] = std::move(ach);
    return j;
}

// Writes through a sibling temp file and renames, so a crash never leaves a
// truncated output behind.
inline void save_json(const std::string& path, const ordered_json& doc, bool pretty) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw PadicError("cannot open output file: " + tmp);
        os << (pretty ? doc.dump(2) : doc.dump()) << "\n";
        if (!os) throw PadicError("write failed: " + tmp);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw PadicError("cannot move output into place: " + path);
}

}  // namespace padmzv
