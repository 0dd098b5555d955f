#include <algorithm>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "padmzv/frobenius.hpp"
#include "padmzv/jsonio.hpp"
#include "padmzv/lipoly.hpp"
#include "padmzv/rational.hpp"

namespace {

using namespace padmzv;

struct Shared {
    long p = 7, N = 10, W = 4, D = 0;
    long threads = 1;
    std::string json_out;
    bool pretty = false;
};

void add_shared(CLI::App* c, Shared& s) {
    c->add_option("--p", s.p, "odd prime (default 7)");
    c->add_option("--N", s.N, "target absolute precision in digits of p (default 10)");
    c->add_option("--W", s.W, "weight truncation cap (default 4)");
    c->add_option("--D", s.D, "series depth override, 0 = automatic (default 0)");
    c->add_option("--json-out", s.json_out, "write the JSON document to this path instead of stdout");
    c->add_option("--threads", s.threads, "worker cap; evaluation currently runs on one thread");
    c->add_flag("--pretty", s.pretty, "indent the JSON output");
}

void check_shared(const Shared& s) {
    if (s.threads < 1) throw ParseError("--threads must be >= 1");
    if (s.W < 2 || s.W > 6) throw ParseError("W out of range (2..6)");
}

int emit(const Shared& s, const ordered_json& doc) {
    if (!s.json_out.empty()) {
        save_json(s.json_out, doc, s.pretty);
    } else {
        std::cout << (s.pretty ? doc.dump(2) : doc.dump()) << "\n";
    }
    return 0;
}

Word checked_word(const std::string& w) {
    for (char ch : w)
        if (ch != '0' && ch != '1') throw ParseError("word letters must be 0 or 1");
    return w;
}

// Exactly one of --word / --index selects the functional; an index list
// k1,k2,... expands to 0^(k1-1) 1 0^(k2-1) 1 ...
Word resolve_word(const CLI::Option* ow, const std::string& word_s, const CLI::Option* oi,
                  const std::string& index_s, bool regularized) {
    bool hw = ow->count() > 0, hi = oi->count() > 0;
    if (hw == hi) throw ParseError("give exactly one of --word or --index");
    if (hw) return checked_word(word_s);
    return index_to_word(parse_index(index_s), regularized);
}

std::string basepoint_text(const Basepoint& b) {
    switch (b.kind) {
        case Basepoint::Kind::t0: return "t0";
        case Basepoint::Kind::t1: return "t1";
        default: return b.z.get_str();
    }
}

Basepoint parse_basepoint(const std::string& s) {
    if (s == "t0") return Basepoint::tangential_zero();
    if (s == "t1") return Basepoint::tangential_one();
    return Basepoint::at(parse_rational(s));
}

int run_pmzv(const Shared& s, Word w) {
    check_shared(s);
    Associator A = compute_associator(s.p, s.N, s.W, s.D);
    Padic v = pmzv_value(w, A);
    ordered_json doc;
    doc["p"] = s.p;
    doc["N"] = s.N;
    doc["word"] = w;
    doc["route"] = route_name(Route::af);
    doc["value"] = padic_json(v);
    doc["manifest"] = manifest_json(A);
    return emit(s, doc);
}

int run_polylog(const Shared& s, Word w, const std::string& z_s) {
    check_shared(s);
    Rational z = parse_rational(z_s);
    Associator A = compute_associator(s.p, s.N, s.W, s.D);
    Padic value = Padic::exact_zero(s.p);
    Route route = Route::disc0;
    if (z == 0) {
        value = w.empty() ? Padic::one(s.p, s.N) : Padic::zero_at(s.p, s.N);
    } else {
        ColemanValue cv = coleman_iterint(Basepoint::tangential_zero(), Basepoint::at(z), w, A);
        value = cv.value;
        route = cv.route;
    }
    ordered_json doc;
    doc["p"] = s.p;
    doc["N"] = s.N;
    doc["word"] = w;
    doc["z"] = z.get_str();
    doc["route"] = route_name(route);
    doc["value"] = padic_json(value);
    if (w == "1") {
        bool consistent = true;
        if (z != 0) {
            Padic want = -iwasawa_log(Padic::from_rational(Rational(1) - z, s.p, s.N));
            consistent = (value - want).is_zero();
        }
        doc["crosscheck"] = consistent ? "consistent" : "inconsistent";
    }
    doc["manifest"] = manifest_json(A);
    return emit(s, doc);
}

int run_iterint(const Shared& s, Word w, const std::string& from_s, const std::string& to_s) {
    check_shared(s);
    Basepoint from = parse_basepoint(from_s);
    Basepoint to = parse_basepoint(to_s);
    Associator A = compute_associator(s.p, s.N, s.W, s.D);
    ColemanValue cv = coleman_iterint(from, to, w, A);
    ordered_json doc;
    doc["p"] = s.p;
    doc["N"] = s.N;
    doc["word"] = w;
    doc["from"] = basepoint_text(from);
    doc["to"] = basepoint_text(to);
    doc["route"] = route_name(cv.route);
    doc["value"] = padic_json(cv.value);
    doc["manifest"] = manifest_json(A);
    return emit(s, doc);
}

int run_shuffle(const Shared& s, const CLI::Option* ou, const std::string& u_s,
                const CLI::Option* ov, const std::string& v_s, const CLI::Option* oa,
                const std::string& a_s) {
    check_shared(s);
    bool product = ou->count() > 0 || ov->count() > 0;
    bool anti = oa->count() > 0;
    if (product == anti)
        throw ParseError("give either --u and --v (product) or --antipode (involution)");
    ordered_json doc;
    if (product) {
        if (ou->count() == 0 || ov->count() == 0) throw ParseError("product needs both --u and --v");
        Word u = checked_word(u_s), v = checked_word(v_s);
        if ((long)(u.size() + v.size()) > 12) throw ParseError("combined weight exceeds 12");
        doc["op"] = "shuffle";
        doc["u"] = u;
        doc["v"] = v;
        doc["result"] = shuffle_json(shuffle(u, v));
    } else {
        Word w = checked_word(a_s);
        if ((long)w.size() > 12) throw ParseError("weight exceeds 12");
        doc["op"] = "antipode";
        doc["word"] = w;
        doc["result"] = shuffle_json(antipode(w));
    }
    return emit(s, doc);
}

struct CheckRow {
    std::string name;
    bool ok;
    std::string residual, tolerance;
};

// Truncated nested sum over n1 > ... > nr >= 1 of z^n1 / prod n_i^k_i,
// written against the series evaluator; the cutoff clears the target
// precision because each dropped term has valuation at least
// n*v(z) - (sum k_i)*ord_p-bound.
Padic nested_sum(const std::vector<long>& ks, const Padic& z) {
    long p = z.prime(), vz = z.valuation(), T = z.abs_precision();
    long K = 0;
    for (long k : ks) K += k;
    long M = 4;
    while ((M + 1) * vz - K * (floor_log_base(p, M + 1) + 1) < T) M *= 2;
    long Nw = z.rel_precision() + 8;
    std::vector<Padic> B((size_t)M + 1, Padic::one(p, Nw));
    for (size_t j = ks.size(); j >= 2; --j) {
        std::vector<Padic> nb((size_t)M + 1, Padic::exact_zero(p));
        for (long n = 1; n <= M; ++n) {
            Padic inv = Padic::one(p, Nw) / Padic::from_long(n, p, Nw).pow_int(ks[j - 1]);
            nb[(size_t)n] = nb[(size_t)n - 1] + inv * B[(size_t)n - 1];
        }
        B = std::move(nb);
    }
    Padic zp = Padic::one(p, Nw), acc = Padic::exact_zero(p);
    for (long n = 1; n <= M; ++n) {
        zp = zp * z;
        acc = acc + zp * B[(size_t)n - 1] / Padic::from_long(n, p, Nw).pow_int(ks[0]);
    }
    long decl = std::min(T, acc.abs_precision());
    return acc.clamped(decl).with_abs_precision(decl);
}

std::vector<long> word_exponents(const Word& w) {
    std::vector<long> ks;
    long run = 0;
    for (char ch : w) {
        if (ch == '0') ++run;
        else {
            ks.push_back(run + 1);
            run = 0;
        }
    }
    return ks;
}

void suite_shuffle(long W, std::vector<CheckRow>& rows) {
    auto words = all_words(W);
    long bad_comm = 0, bad_assoc = 0, bad_anti = 0;
    for (const auto& u : words)
        for (const auto& v : words) {
            if ((long)(u.size() + v.size()) > W) continue;
            if (!(shuffle(u, v) == shuffle(v, u))) ++bad_comm;
        }
    for (const auto& u : words)
        for (const auto& v : words) {
            if ((long)(u.size() + v.size()) > W) continue;
            for (const auto& x : words) {
                if ((long)(u.size() + v.size() + x.size()) > W) continue;
                ShuffleElement ex, uv = shuffle(u, v), vx = shuffle(v, x);
                add_term(ex, x, 1);
                ShuffleElement eu;
                add_term(eu, u, 1);
                if (!(shuffle_mul(uv, ex) == shuffle_mul(eu, vx))) ++bad_assoc;
            }
        }
    for (const auto& w : words) {
        if (w.empty()) continue;
        ShuffleElement acc;
        for (const auto& [u, v] : deconcat(w)) {
            ShuffleElement ev;
            add_term(ev, v, 1);
            for (const auto& [t, c] : shuffle_mul(antipode(u), ev)) add_term(acc, t, c);
        }
        if (!acc.empty()) ++bad_anti;
    }
    rows.push_back({"shuffle_commutative", bad_comm == 0, std::to_string(bad_comm), "0"});
    rows.push_back({"shuffle_associative", bad_assoc == 0, std::to_string(bad_assoc), "0"});
    rows.push_back({"antipode_identity", bad_anti == 0, std::to_string(bad_anti), "0"});
}

void suite_grouplike(const Shared& s, const Associator& A, std::vector<CheckRow>& rows) {
    PadicRing R{s.p, s.N};
    GrouplikeReport rep = is_grouplike(R, A.series);
    std::string res = rep.ok ? "0" : "pair (" + rep.u + "," + rep.v + ")";
    std::string tol = "O(" + std::to_string(s.p) + "^(" + std::to_string(s.N) + "))";
    rows.push_back({"grouplike", rep.ok, res, tol});
}

void suite_theorem(const Shared& s, const Associator& A, std::vector<CheckRow>& rows) {
    long bad = 0;
    for (const auto& w : all_words(s.W)) {
        FormalPeriod sym{Basepoint::tangential_zero(), Basepoint::tangential_one(), {}};
        add_term(sym.functional, w, 1);
        if (!per_af(sym, A).value.same_bits(per_cl(w, A))) ++bad;
    }
    rows.push_back({"period_pipelines_agree", bad == 0, std::to_string(bad), "0"});
}

void suite_torsor(const Shared& s, const Associator& A, std::vector<CheckRow>& rows) {
    PadicRing R{s.p, s.N};
    NCSeries<PadicRing> inv = nc_inverse(R, A.series);
    NCSeries<PadicRing> prod = nc_mul(R, A.series, inv);
    long bad_unit = 0, bad_transpose = 0;
    for (const auto& w : all_words(s.W)) {
        Padic want = w.empty() ? R.one() : Padic::exact_zero(s.p);
        if (!(prod.at(w) - want).is_zero()) ++bad_unit;
        ShuffleElement ew;
        add_term(ew, w, 1);
        if (!(pair(R, ew, inv) - pair(R, antipode(w), A.series)).is_zero()) ++bad_transpose;
    }
    rows.push_back({"inverse_is_unit", bad_unit == 0, std::to_string(bad_unit), "0"});
    rows.push_back(
        {"antipode_transposes_pairing", bad_transpose == 0, std::to_string(bad_transpose), "0"});
}

void suite_oracle(const Shared& s, std::vector<CheckRow>& rows) {
    long bad = 0;
    std::string tol = "O(" + std::to_string(s.p) + "^(" + std::to_string(s.N) + "))";
    for (long z : {s.p, s.p * s.p, s.p + s.p * s.p}) {
        Padic zp = Padic::from_rational(Rational(z), s.p, s.N);
        for (const auto& w : all_words(std::min(s.W, 4L))) {
            if (w.empty() || w.back() != '1') continue;
            if (!(eval_li(w, zp) - nested_sum(word_exponents(w), zp)).is_zero()) ++bad;
        }
    }
    rows.push_back({"series_matches_nested_sums", bad == 0, std::to_string(bad), tol});
}

void suite_precision(const Shared& s, const Associator& A, std::vector<CheckRow>& rows) {
    if (s.N > 60) throw ParseError("precision suite needs N <= 60");
    long depth = 1;
    for (long i = 0; i < A.info.k_decl; ++i) depth *= s.p;
    Associator B = compute_associator(s.p, s.N + 4, s.W, 2 * std::max(A.D, depth));
    long bad = 0;
    for (const auto& w : all_words(s.W)) {
        Padic cut = B.series.at(w).with_abs_precision(A.series.at(w).abs_precision());
        if (!A.series.at(w).same_bits(cut)) ++bad;
    }
    rows.push_back({"redeclared_digits_stable", bad == 0, std::to_string(bad), "0"});
}

int run_verify(const Shared& s, const std::string& suite) {
    check_shared(s);
    static const std::vector<std::string> kAll = {"shuffle", "grouplike", "theorem",
                                                  "torsor",  "oracle",    "precision"};
    std::vector<std::string> picked;
    if (suite == "all") picked = kAll;
    else picked.push_back(suite);

    std::optional<Associator> A;
    auto getA = [&]() -> const Associator& {
        if (!A) A = compute_associator(s.p, s.N, s.W, s.D);
        return *A;
    };

    std::vector<CheckRow> rows;
    for (const std::string& name : picked) {
        if (name == "shuffle") suite_shuffle(s.W, rows);
        else if (name == "grouplike") suite_grouplike(s, getA(), rows);
        else if (name == "theorem") suite_theorem(s, getA(), rows);
        else if (name == "torsor") suite_torsor(s, getA(), rows);
        else if (name == "oracle") suite_oracle(s, rows);
        else suite_precision(s, getA(), rows);
    }

    bool all_ok = true;
    ordered_json checks = ordered_json::array();
    for (const CheckRow& r : rows) {
        all_ok = all_ok && r.ok;
        ordered_json c;
        c["name"] = r.name;
        c["ok"] = r.ok;
        c["residual"] = r.residual;
        c["tolerance"] = r.tolerance;
        checks.push_back(std::move(c));
    }
    ordered_json doc;
    doc["p"] = s.p;
    doc["N"] = s.N;
    doc["W"] = s.W;
    doc["D"] = s.D;
    doc["suites"] = picked;
    doc["checks"] = std::move(checks);
    doc["ok"] = all_ok;
    emit(s, doc);
    return all_ok ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"p-adic multiple zeta values, polylogarithms, and iterated integrals on the "
                 "thrice-punctured line"};
    app.require_subcommand(1);

    Shared s;
    std::string word_s, index_s, z_s, from_s, to_s, u_s, v_s, anti_s;
    std::string suite = "all";

    CLI::App* pmzv = app.add_subcommand("pmzv", "p-adic multiple zeta value of a word or index");
    add_shared(pmzv, s);
    CLI::Option* pm_w = pmzv->add_option("--word", word_s, "letter string over {0,1}");
    CLI::Option* pm_i = pmzv->add_option("--index", index_s, "comma-separated exponents, k1 >= 2");

    CLI::App* poly = app.add_subcommand("polylog", "p-adic multiple polylogarithm at a point");
    add_shared(poly, s);
    CLI::Option* pl_w = poly->add_option("--word", word_s, "letter string over {0,1}");
    CLI::Option* pl_i = poly->add_option("--index", index_s, "comma-separated exponents");
    poly->add_option("--z", z_s, "evaluation point, rational a/b")->required();

    CLI::App* iter = app.add_subcommand("iterint", "iterated integral between basepoints");
    add_shared(iter, s);
    CLI::Option* it_w = iter->add_option("--word", word_s, "letter string over {0,1}");
    CLI::Option* it_i = iter->add_option("--index", index_s, "comma-separated exponents");
    iter->add_option("--from", from_s, "basepoint: t0, t1, or a rational")->required();
    iter->add_option("--to", to_s, "basepoint: t0, t1, or a rational")->required();

    CLI::App* shuf = app.add_subcommand("shuffle", "exact shuffle-algebra computations");
    add_shared(shuf, s);
    CLI::Option* sh_u = shuf->add_option("--u", u_s, "left factor word");
    CLI::Option* sh_v = shuf->add_option("--v", v_s, "right factor word");
    CLI::Option* sh_a = shuf->add_option("--antipode", anti_s, "word to invert");

    CLI::App* veri = app.add_subcommand("verify", "run invariant suites and report each check");
    add_shared(veri, s);
    veri->add_option("--suite", suite, "shuffle, grouplike, theorem, torsor, oracle, precision, or all")
        ->check(CLI::IsMember(
            {"all", "shuffle", "grouplike", "theorem", "torsor", "oracle", "precision"}));

    int rc = 0;
    pmzv->callback([&] { rc = run_pmzv(s, resolve_word(pm_w, word_s, pm_i, index_s, false)); });
    poly->callback(
        [&] { rc = run_polylog(s, resolve_word(pl_w, word_s, pl_i, index_s, true), z_s); });
    iter->callback([&] {
        rc = run_iterint(s, resolve_word(it_w, word_s, it_i, index_s, true), from_s, to_s);
    });
    shuf->callback([&] { rc = run_shuffle(s, sh_u, u_s, sh_v, v_s, sh_a, anti_s); });
    veri->callback([&] { rc = run_verify(s, suite); });

    try {
        app.parse(argc, argv);
        return rc;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SeriesError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
