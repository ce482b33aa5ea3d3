#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Result {
    int rc;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    args.insert(args.begin(), "ncf");
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out;
    std::ostringstream err;
    const int rc = ncf::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {rc, out.str(), err.str()};
}

nlohmann::json json_of(const Result& r)
{
    return nlohmann::json::parse(r.out);
}

}  // namespace

TEST_CASE("expand output")
{
    const Result r = run({"expand", "2/3", "--n", "1", "--format", "json"});
    REQUIRE(r.rc == 0);
    const auto doc = json_of(r);
    CHECK(doc["command"] == "expand");
    CHECK(doc["config"]["x"] == "2/3");
    REQUIRE(doc["results"].size() == 2);
    CHECK(doc["results"][0]["ratio"] == "1/1");
    CHECK(doc["results"][1]["ratio"] == "2/3");
    CHECK(doc["results"][1]["A_n"] == "2");
    CHECK(doc["results"][1]["B_n"] == "3");
    CHECK(doc["results"][1]["abs_error"] == 0.0);
    CHECK(doc["summary"]["expansions"][0]["coefficients"] == nlohmann::json::array({"1", "2"}));
    CHECK(doc["summary"]["expansions"][0]["terminated"] == true);

    const Result empty = run({"expand", "0/1", "--n", "4", "--format", "json"});
    REQUIRE(empty.rc == 0);
    const auto e = json_of(empty);
    CHECK(e["results"].empty());
    CHECK(e["summary"]["expansions"][0]["coefficients"].empty());
    CHECK(e["summary"]["expansions"][0]["terminated"] == true);
}

TEST_CASE("usage errors exit with 2")
{
    CHECK(run({"expand", "2/0"}).rc == 2);
    CHECK(run({"expand", "0.5"}).rc == 2);
    CHECK(run({"expand", "3/2"}).rc == 2);
    CHECK(run({"expand"}).rc == 2);
    CHECK(run({}).rc == 2);
    CHECK(run({"frobnicate"}).rc == 2);
    CHECK(run({"constants", "--n", "0"}).rc == 2);
    CHECK(run({"constants", "--n", "3..1"}).rc == 2);
    CHECK(run({"constants", "--n", "x"}).rc == 2);
    CHECK(run({"constants", "--format", "xml"}).rc == 2);
    CHECK(run({"verify", "everything"}).rc == 2);
    CHECK(run({"verify", "levy", "--bits", "16"}).rc == 2);
    CHECK(run({"ulam", "--cells", "8"}).rc == 2);
    const Result r = run({"expand", "2/0"});
    CHECK(r.out.empty());
    CHECK(r.err.find("zero denominator") != std::string::npos);
}

TEST_CASE("help exits with 0")
{
    const Result r = run({"--help"});
    CHECK(r.rc == 0);
    CHECK(r.out.find("verify") != std::string::npos);
}

TEST_CASE("n lists")
{
    const auto doc = json_of(run({"constants", "--n", "1..3,7,9", "--r", "0.5", "--format", "json"}));
    CHECK(doc["config"]["n"] == nlohmann::json::array({1, 2, 3, 7, 9}));
    std::vector<int> seen;
    for (const auto& row : doc["results"]) {
        if (row["quantity"] == "khinchin") {
            seen.push_back(row["N"]);
        }
    }
    CHECK(seen == std::vector<int>{1, 2, 3, 7, 9});
}

TEST_CASE("constants table")
{
    const auto doc = json_of(run({"constants", "--n", "1..3", "--format", "json"}));
    CHECK(doc["config"]["r"] == nlohmann::json::array({-1.0, 0.5}));
    const double expected[] = {2.685452, 5.412652, 8.136460};
    for (const auto& row : doc["results"]) {
        if (row["quantity"] == "khinchin") {
            CHECK(std::abs(row["value"].get<double>() - expected[row["N"].get<int>() - 1]) < 1e-5);
        }
        if (row["quantity"] == "levy_lambda" && row["N"] == 1) {
            CHECK(std::abs(row["value"].get<double>() - 1.186569) < 1e-6);
        }
    }
    const auto big = json_of(run({"constants", "--n", "1000000", "--format", "json"}));
    for (const auto& row : big["results"]) {
        if (row["quantity"] == "khinchin") {
            CHECK(std::abs(row["value"].get<double>() / 1e6 - std::exp(1.0)) < 1e-3);
        }
    }

    const Result csv = run({"constants", "--n", "1", "--r=1", "--format", "csv"});
    CHECK(csv.out.rfind("N,quantity,value,status\n", 0) == 0);
    CHECK(csv.out.find("1,holder_mean[r=1],,divergent\n") != std::string::npos);
}

TEST_CASE("verify exit status follows the checks")
{
    const Result pass = run({"verify", "bounds", "--n", "1..10", "--format", "json"});
    CHECK(pass.rc == 0);
    CHECK(json_of(pass)["summary"]["status"] == "PASS");

    const Result fail = run({"verify", "bounds", "--n", "1", "--depth", "50", "--format", "json"});
    CHECK(fail.rc == 1);
    const auto doc = json_of(fail);
    CHECK(doc["summary"]["status"] == "FAIL");
    CHECK(doc["summary"]["failed"] == 1);

    CHECK(run({"verify", "ulam", "--n", "1", "--cells", "512"}).rc == 0);
}

TEST_CASE("verify birkhoff at the defaults")
{
    const Result r = run({"verify", "birkhoff", "--n", "1", "--seed", "42", "--format", "json"});
    CHECK(r.rc == 0);
    for (const auto& row : json_of(r)["results"]) {
        CHECK(row["rel_deviation"].get<double>() < 0.02);
    }
}

TEST_CASE("output is byte-identical across thread counts")
{
    const std::vector<std::vector<std::string>> commands = {
        {"verify", "birkhoff", "--n", "1,2", "--trials", "30", "--bits", "256", "--r=-1,1"},
        {"verify", "levy", "--n", "3", "--trials", "30", "--bits", "256"},
        {"constants", "--n", "1..4"},
        {"ulam", "--n", "2", "--cells", "64", "--profile"},
    };
    for (const auto& base : commands) {
        for (const char* format : {"json", "csv"}) {
            auto a = base;
            a.insert(a.end(), {"--format", format, "--threads", "1"});
            auto b = base;
            b.insert(b.end(), {"--format", format, "--threads", "4"});
            const Result ra = run(a);
            const Result rb = run(b);
            CHECK(ra.rc == rb.rc);
            CHECK(ra.out == rb.out);
            CHECK(ra.out == run(a).out);
        }
    }
}

TEST_CASE("output file")
{
    const std::string path = "test_cli_output.json";
    std::remove(path.c_str());
    const Result r = run({"expand", "1/2", "--n", "2", "--format", "json", "--output", path});
    CHECK(r.rc == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == run({"expand", "1/2", "--n", "2", "--format", "json"}).out);
    std::remove(path.c_str());
    CHECK(run({"expand", "1/2", "--output", "/nonexistent/dir/x.json"}).rc == 2);
}

TEST_CASE("seed changes sampled output")
{
    const auto a = run({"verify", "lyapunov", "--trials", "10", "--bits", "128", "--seed", "1", "--format", "csv"});
    const auto b = run({"verify", "lyapunov", "--trials", "10", "--bits", "128", "--seed", "2", "--format", "csv"});
    CHECK(a.out != b.out);
}
