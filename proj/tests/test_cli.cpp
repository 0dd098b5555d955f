#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

#include "padmzv/jsonio.hpp"
#include "oracles.hpp"

using namespace padmzv;
using nlohmann::json;

namespace {

struct RunResult {
    int code = -1;
    std::string out, err;
};

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

RunResult run(const std::string& args) {
    std::string cmd = std::string(CLI_PATH) + " " + args +
                      " >/tmp/padmzv_cli_out.txt 2>/tmp/padmzv_cli_err.txt";
    int raw = std::system(cmd.c_str());
    RunResult r;
    if (raw != -1 && WIFEXITED(raw)) r.code = WEXITSTATUS(raw);
    r.out = slurp("/tmp/padmzv_cli_out.txt");
    r.err = slurp("/tmp/padmzv_cli_err.txt");
    return r;
}

}  // namespace

TEST_CASE("exit code contract") {
    CHECK(run("pmzv --p 4 --index 2").code == 2);
    CHECK(run("pmzv --p 4 --index 2").err.find("p must be an odd prime") != std::string::npos);
    CHECK(run("polylog --z 3 --p 5 --index 2").code == 2);
    CHECK(run("pmzv --index 1").code == 2);
    CHECK(run("pmzv --word 21").code == 2);
    CHECK(run("pmzv --word 01 --index 2").code == 2);
    CHECK(run("pmzv").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("pmzv --index 2 --threads 0").code == 2);
    CHECK(run("pmzv --word 00001").code == 2);
    CHECK(run("pmzv --index 2 --W 9").code == 2);
    CHECK(run("frobnicate").code == 2);
    CHECK(run("--help").code == 0);
    CHECK(run("pmzv --help").code == 0);
}

TEST_CASE("pmzv emits the documented value payload") {
    RunResult r = run("pmzv --p 7 --N 10 --index 2");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("word") == "01");
    CHECK(doc.at("route") == "af");
    CHECK(doc.at("value").at("zero") == true);
    CHECK(doc.at("value").at("prec") == 10);
    CHECK(doc.at("manifest").at("W") == 4);

    json one = json::parse(run("pmzv --p 7 --word \"\"").out);
    CHECK(one.at("value").at("unit") == "1");
    CHECK(one.at("value").at("zero") == false);

    json z21 = json::parse(run("pmzv --p 7 --index 2,1").out);
    CHECK(z21.at("word") == "011");
    CHECK(z21.at("value").at("v") == 3);
    CHECK(z21.at("value").at("unit") == "27");
    CHECK(z21.at("value").at("prec") == 5);
}

TEST_CASE("identical configurations reproduce identical bytes") {
    std::string a = run("pmzv --p 5 --N 10 --index 2,1").out;
    std::string b = run("pmzv --p 5 --N 10 --index 2,1").out;
    CHECK(a == b);
    CHECK(!a.empty());
    std::string c = run("verify --suite shuffle --W 5").out;
    std::string d = run("verify --suite shuffle --W 5").out;
    CHECK(c == d);
}

TEST_CASE("json-out writes the same document atomically") {
    std::remove("/tmp/padmzv_doc.json");
    RunResult direct = run("pmzv --p 7 --index 2,1");
    RunResult filed = run("pmzv --p 7 --index 2,1 --json-out /tmp/padmzv_doc.json");
    REQUIRE(filed.code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp("/tmp/padmzv_doc.json") == direct.out);
    std::ifstream leftover("/tmp/padmzv_doc.json.tmp");
    CHECK(!leftover.good());
}

TEST_CASE("polylog matches the nested-sum evaluation") {
    RunResult r = run("polylog --p 5 --N 8 --index 2 --z 5");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("route") == "disc0");
    Padic zp = Padic::from_rational(Rational(5), 5, 8);
    json want = padic_json(padmzv_test::nested_sum_value({2}, zp));
    CHECK(doc.at("value") == want);
}

TEST_CASE("polylog cross-checks the depth-one value against the logarithm") {
    json doc = json::parse(run("polylog --p 5 --N 10 --index 1 --z 5").out);
    CHECK(doc.at("crosscheck") == "consistent");
    json deep = json::parse(run("polylog --p 5 --N 10 --index 2 --z 5").out);
    CHECK(!deep.contains("crosscheck"));
}

TEST_CASE("polylog covers both discs and the origin") {
    json origin = json::parse(run("polylog --p 7 --index 2 --z 0").out);
    CHECK(origin.at("value").at("zero") == true);
    CHECK(origin.at("value").at("prec") == 10);
    json far = json::parse(run("polylog --p 7 --index 2 --z 8").out);
    CHECK(far.at("route") == "disc1");
    CHECK(run("polylog --p 7 --index 2 --z 1").code == 2);
}

TEST_CASE("iterint between the tangential basepoints is the pmzv route") {
    json a = json::parse(run("iterint --p 7 --from t0 --to t1 --word 011").out);
    json b = json::parse(run("pmzv --p 7 --word 011").out);
    CHECK(a.at("route") == "af");
    CHECK(a.at("value") == b.at("value"));
}

TEST_CASE("iterint composes transport within a disc") {
    json d = json::parse(run("iterint --p 7 --from 7 --to 49 --word 0").out);
    CHECK(d.at("route") == "samedisc");
    CHECK(d.at("value").at("zero") == true);
}

TEST_CASE("iterint rejects unsupported geometry") {
    CHECK(run("iterint --p 7 --from t1 --to 7 --word 1").code == 2);
    CHECK(run("iterint --p 7 --from 1/3 --to t1 --word 1").code == 2);
    CHECK(run("iterint --p 7 --from t0 --to 1/7 --word 1").code == 2);
    CHECK(run("iterint --p 7 --from t0 --to x --word 1").code == 2);
}

TEST_CASE("shuffle subcommand is exact") {
    json prod = json::parse(run("shuffle --u 01 --v 1").out);
    json expected = json::parse(
        R"({"terms":[{"word":"011","num":"2","den":"1"},{"word":"101","num":"1","den":"1"}]})");
    CHECK(prod.at("result") == expected);
    json anti = json::parse(run("shuffle --antipode 011").out);
    json want = json::parse(R"({"terms":[{"word":"110","num":"-1","den":"1"}]})");
    CHECK(anti.at("result") == want);
    CHECK(run("shuffle --u 01").code == 2);
    CHECK(run("shuffle").code == 2);
    CHECK(run("shuffle --u 01 --v 1 --antipode 0").code == 2);
}

TEST_CASE("verify reports each check and fails loudly on bad suites") {
    RunResult r = run("verify --suite shuffle --W 5");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("ok") == true);
    CHECK(doc.at("checks").size() == 3);
    for (const auto& c : doc.at("checks")) {
        CHECK(c.at("ok") == true);
        CHECK(c.at("residual") == "0");
    }
    CHECK(run("verify --suite bogus").code == 2);
}

TEST_CASE("verify runs every suite by default") {
    RunResult r = run("verify --p 5 --W 3");
    REQUIRE(r.code == 0);
    json doc = json::parse(r.out);
    CHECK(doc.at("suites").size() == 6);
    CHECK(doc.at("ok") == true);
}
