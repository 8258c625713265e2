#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "equifuse/cli.hpp"

using equifuse::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

bool has_line(const std::string &text, const std::string &line) {
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);)
        if (l == line)
            return true;
    return false;
}

bool keys_sorted(const nlohmann::json &j) {
    if (j.is_object()) {
        std::string prev;
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first && it.key() < prev)
                return false;
            prev = it.key();
            first = false;
            if (!keys_sorted(it.value()))
                return false;
        }
    } else if (j.is_array()) {
        for (const auto &e : j)
            if (!keys_sorted(e))
                return false;
    }
    return true;
}

} // namespace

TEST_CASE("table rows") {
    const Outcome c = invoke({"table", "--m", "2"});
    CHECK(c.code == 0);
    CHECK(has_line(c.out, "X2 ⊗ X+ = X2 ⊕ X-"));
    CHECK(has_line(c.out, "X2 ⊗ X- = X2 ⊕ X+"));
    CHECK(has_line(c.out, "X2 ⊗ X3 = X1 ⊕ 2X3"));
    CHECK(has_line(c.out, "X1 ⊗ X3 = X2 ⊕ X+ ⊕ X-"));

    const Outcome d = invoke({"table", "--m", "2", "--ring", "d"});
    CHECK(d.code == 0);
    CHECK(has_line(d.out, "V2 ⊗ V3 = V1 ⊕ V3 ⊕ V5"));
}

TEST_CASE("table json") {
    const Outcome c = invoke({"table", "--m", "2", "--json"});
    REQUIRE(c.code == 0);
    const auto j = nlohmann::json::parse(c.out);
    CHECK(j["m"] == 2);
    CHECK(j["kappa"] == 10);
    CHECK(keys_sorted(j));
    bool found = false;
    for (const auto &r : j["results"])
        if (r["x"] == "X2" && r["y"] == "X3" && r["z"] == "X3")
            found = (r["mult"] == 2);
    CHECK(found);
}

TEST_CASE("bad invocations") {
    const Outcome odd = invoke({"table", "--m", "3"});
    CHECK(odd.code == 2);
    CHECK(odd.err.find("unsupported-case") != std::string::npos);
    CHECK(invoke({"table", "--m", "0"}).code == 2);
    CHECK(invoke({"smatrix", "--m", "2", "--which", "bad"}).code == 2);
    CHECK(invoke({"verify", "--m", "2", "--tol", "-1"}).code == 2);
    CHECK(invoke({"frobnicate"}).code == 2);
    CHECK(invoke({}).code == 2);
    CHECK(invoke({"coeff", "--m", "2", "--i", "X9", "--j", "X1", "--k", "X1"}).code == 2);
}

TEST_CASE("smatrix values") {
    const Outcome ee = invoke({"smatrix", "--m", "2", "--which", "c-ee", "--json"});
    REQUIRE(ee.code == 0);
    const auto j = nlohmann::json::parse(ee.out);
    CHECK(keys_sorted(j));
    auto entry = [](const nlohmann::json &doc, const std::string &row, const std::string &col) {
        for (const auto &r : doc["results"])
            if (r["row"] == row && r["col"] == col)
                return r["re"].get<double>();
        return 99.0;
    };
    CHECK(entry(j, "l:+", "l:+") == doctest::Approx(-0.276393202250));
    CHECK(entry(j, "l:0", "l:2") == doctest::Approx(0.723606797750));

    const auto d = nlohmann::json::parse(invoke({"smatrix", "--m", "2", "--which", "d", "--json"}).out);
    CHECK(entry(d, "V0", "V0") == doctest::Approx(0.138196601125));

    const auto ea = nlohmann::json::parse(invoke({"smatrix", "--m", "2", "--which", "c-ea", "--json"}).out);
    CHECK(entry(ea, "l:3", "al:2") == doctest::Approx(-0.525731112119));
    CHECK(entry(ea, "l:3", "al:0") == doctest::Approx(0.850650808352));

    const Outcome text = invoke({"smatrix", "--m", "2", "--which", "c-ee"});
    CHECK(text.out.find("(-0.27639320225, 0)") != std::string::npos);
}

TEST_CASE("coeff") {
    const Outcome e = invoke({"coeff", "--m", "2", "--i", "2", "--j", "3", "--k", "3", "--formula", "ext-e", "--json"});
    REQUIRE(e.code == 0);
    const auto je = nlohmann::json::parse(e.out);
    CHECK(je["results"][0]["value"].get<double>() == doctest::Approx(2.0));
    CHECK(je["results"][0]["passed"] == true);

    const Outcome a = invoke({"coeff", "--m", "2", "--i", "1", "--j", "3", "--k", "X-", "--formula", "ext-a"});
    CHECK(a.code == 0);
    CHECK(a.out.find("= 1") != std::string::npos);

    const Outcome v = invoke({"coeff", "--m", "2", "--i", "2", "--j", "3", "--k", "5", "--formula", "verlinde"});
    CHECK(v.code == 0);
    CHECK(invoke({"coeff", "--m", "2", "--i", "1", "--j", "3", "--k", "3", "--formula", "ext-e"}).code == 2);
}

TEST_CASE("verify") {
    const Outcome ok = invoke({"verify", "--m", "2"});
    CHECK(ok.code == 0);
    CHECK(ok.out.find("checks passed") != std::string::npos);
    CHECK(ok.out.find("FAIL") == std::string::npos);

    const Outcome tight = invoke({"verify", "--m", "2", "--tol", "1e-15"});
    CHECK(tight.code == 1);
    CHECK(tight.out.find("FAIL") != std::string::npos);

    const Outcome js = invoke({"verify", "--m", "4", "--json"});
    CHECK(js.code == 0);
    const auto j = nlohmann::json::parse(js.out);
    CHECK(keys_sorted(j));
    CHECK(j["passed"] == true);
    CHECK(j["kappa"] == 18);
    CHECK(j["tolerance"].get<double>() == 1e-9);
    for (const auto &r : j["results"])
        CHECK(r.contains("max_residual"));
}

TEST_CASE("json output is byte-identical across runs") {
    for (const std::vector<std::string> &args :
         {std::vector<std::string>{"verify", "--m", "2", "--json"},
          std::vector<std::string>{"table", "--m", "4", "--json"},
          std::vector<std::string>{"smatrix", "--m", "2", "--which", "c-ee", "--json"}})
        CHECK(invoke(args).out == invoke(args).out);
}

TEST_CASE("round12") {
    using equifuse::cli::round12;
    CHECK(round12(0.0) == 0.0);
    CHECK(round12(0.27639320225002103) == 0.276393202250);
    CHECK(round12(-1234.56789012345678) == -1234.56789012);
}
