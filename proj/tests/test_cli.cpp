#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "knstat/cli.hpp"

using knstat::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) {
    return s.find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("classify a non-minimal model") {
    auto r = call({"classify", "--short", "0,16", "--prime", "2"});
    REQUIRE(r.code == 0);
    CHECK(contains(r.out, "minimal       no"));
    CHECK(contains(r.out, "rescalings    1"));
    CHECK(contains(r.out, "minimal model 0,0,1,0,0"));
    CHECK(contains(r.out, "reduction     good"));
    CHECK(contains(r.out, "kodaira       I0"));

    auto j = call({"classify", "--model", "0,-1,1,-10,-20", "--format", "json"});
    REQUIRE(j.code == 0);
    const auto doc = nlohmann::json::parse(j.out);
    CHECK(doc["conductor"] == "11");
    REQUIRE(doc["local"].size() == 1);
    CHECK(doc["local"][0]["kodaira"] == "I5");
    CHECK(doc["local"][0]["tamagawa"] == 5);
}

TEST_CASE("census csv for j = 1728 at 10^18") {
    auto r = call({"census", "--family", "j1728", "--height", "1e18", "--signs", "both",
                   "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "family,group,kodaira,count\n"
                   "j1728,all,II,310424\n"
                   "j1728,all,III,620846\n"
                   "j1728,all,I2*,77607\n"
                   "j1728,all,I3*,77607\n"
                   "j1728,all,III*,77610\n");
}

TEST_CASE("compare for trivial torsion at 10^12") {
    auto r = call({"compare", "--family", "j0", "--torsion", "trivial", "--height", "1e12",
                   "--signs", "positive", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(contains(r.out, "family,group,kodaira,observed,predicted,rel_error\n"));
    CHECK(contains(r.out, "j0,trivial,II,124138,124281.6,"));
    CHECK(contains(r.out, "j0,trivial,II*,512,511.4,"));
    CHECK_FALSE(contains(r.out, ",Z3,"));

    // a tiny tolerance constant flips the verdict
    auto tight = call({"compare", "--family", "j0", "--torsion", "trivial", "--height", "1e12",
                       "--tolerance", "0.001"});
    CHECK(tight.code == 1);
}

TEST_CASE("output is independent of the worker count") {
    for (const char* format : {"csv", "json", "table"}) {
        std::vector<std::string> base = {"compare", "--family", "j0", "--grouping", "by_torsion",
                                         "--height", "1e14", "--signs", "both", "--format", format};
        auto one = base;
        one.insert(one.end(), {"--threads", "1"});
        auto four = base;
        four.insert(four.end(), {"--threads", "4"});
        const auto a = call(one);
        const auto b = call(four);
        const auto c = call(four);
        CHECK(a.out == b.out);
        CHECK(b.out == c.out);
        CHECK(a.code == b.code);
    }
}

TEST_CASE("json output parses") {
    auto r = call({"census", "--family", "j1728", "--height", "1e12", "--graph", "T43",
                   "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc.contains("rows"));
    for (const auto& row : doc["rows"]) {
        CHECK(row["group"] == "T43");
    }

    auto c = call({"compare", "--family", "j1728", "--height", "1e12", "--format", "json"});
    REQUIRE(c.code == 0);
    CHECK_NOTHROW((void)nlohmann::json::parse(c.out));
}

TEST_CASE("unicode symbols") {
    auto plain = call({"census", "--family", "j1728", "--height", "1e9"});
    auto fancy = call({"census", "--family", "j1728", "--height", "1e9", "--unicode"});
    REQUIRE(plain.code == 0);
    REQUIRE(fancy.code == 0);
    CHECK(contains(plain.out, "III*"));
    CHECK_FALSE(contains(fancy.out, "III*"));
    CHECK(fancy.out != plain.out);
}

TEST_CASE("heights are parsed exactly") {
    // 4 * 5^3 = 500: the boundary model is included at 500 and not at 499
    auto at = call({"census", "--family", "j1728", "--height", "500", "--format", "csv"});
    auto under = call({"census", "--family", "j1728", "--height", "499", "--format", "csv"});
    REQUIRE(at.code == 0);
    CHECK(at.out != under.out);
    CHECK(call({"census", "--family", "j1728", "--height", "4.99e2", "--format", "csv"}).out ==
          under.out);
    CHECK(call({"census", "--family", "j1728", "--height", "4.995e2"}).code == 2);
    auto sci = call({"census", "--family", "j1728", "--height", "5e2", "--format", "csv"});
    CHECK(sci.out == at.out);
}

TEST_CASE("exit codes") {
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"census", "--family", "j0", "--height", "0"}).code == 2);
    CHECK(call({"census", "--family", "j0", "--height", "-5"}).code == 2);
    CHECK(call({"census", "--family", "j0", "--height", "abc"}).code == 2);
    CHECK(call({"census", "--family", "j9", "--height", "100"}).code == 2);
    CHECK(call({"census", "--family", "j0", "--height", "100", "--graph", "L22"}).code == 2);
    CHECK(call({"census", "--family", "j0", "--height", "100", "--bogus"}).code == 2);
    CHECK(call({"classify", "--short", "0,0"}).code == 2);
    CHECK(call({"classify", "--model", "1,2"}).code == 2);
    CHECK(call({"classify"}).code == 2);
    CHECK(call({"compare", "--family", "j0", "--height", "100", "--tolerance", "-1"}).code == 2);

    auto big = call({"census", "--family", "j0", "--height", "1e80"});
    CHECK(big.code == 3);
    CHECK(contains(big.err, "overflow"));
    CHECK(call({"census", "--family", "j1728", "--height", "1e34"}).code == 3);
}

TEST_CASE("output file") {
    const std::string path = std::string(KNSTAT_TEST_TMPDIR) + "/cli_output.csv";
    std::remove(path.c_str());
    auto r = call({"census", "--family", "j0", "--height", "1e6", "--format", "csv", "--output",
                   path});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream text;
    text << in.rdbuf();
    auto direct = call({"census", "--family", "j0", "--height", "1e6", "--format", "csv"});
    CHECK(text.str() == direct.out);
    std::remove(path.c_str());
}

TEST_CASE("thread count from the environment") {
    ::setenv(knstat::cli::kThreadsEnv, "3", 1);
    auto a = call({"census", "--family", "j0", "--height", "1e10", "--format", "csv"});
    CHECK(a.code == 0);
    ::setenv(knstat::cli::kThreadsEnv, "many", 1);
    auto bad = call({"census", "--family", "j0", "--height", "1e10"});
    CHECK(bad.code == 2);
    ::unsetenv(knstat::cli::kThreadsEnv);
    auto b = call({"census", "--family", "j0", "--height", "1e10", "--format", "csv"});
    CHECK(a.out == b.out);
}
