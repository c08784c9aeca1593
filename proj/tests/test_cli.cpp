#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "homcat/cli_runner.hpp"

using namespace homcat;

namespace {

json run(const json& problem)
{
    RunOptions opts;
    return run_problem(problem, opts);
}

json problem(const std::string& cmd, json payload)
{
    return json{{"version", "1"}, {"command", cmd}, {"payload", std::move(payload)}};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("d0 problem: the worked example dims")
{
    json rep = run(problem("d0", json{{"n", 2}, {"polys", {{0, -1, 1}, {0, 1}}}}));
    CHECK(rep["results"]["dims"] == json({2, 4, 2}));
    CHECK(rep["command"] == "d0");
    CHECK(rep["engine"]["name"] == "homcat");
    CHECK(rep["timings"].is_null());
}

TEST_CASE("cohomology problem: acyclic two-term complex")
{
    json cx = {{"field", "Q"},
               {"lo", 0},
               {"hi", 1},
               {"dims", {1, 1}},
               {"differentials",
                {{{"field", "Q"}, {"rows", 1}, {"cols", 1}, {"entries", {"1"}}}}}};
    json rep = run(problem("cohomology", json{{"complex", cx}}));
    for (const auto& entry : rep["results"]["cohomology"])
        CHECK(entry["dim"] == 0);
}

TEST_CASE("cone command: cone and exactness ops")
{
    json one = {{"field", "Q"}, {"lo", 0}, {"hi", 0}, {"dims", {1}},
                {"differentials", json::array()}};
    json idmat = {{"field", "Q"}, {"rows", 1}, {"cols", 1}, {"entries", {"1"}}};
    json cmap = {{"src", one}, {"dst", one}, {"lo", 0}, {"components", {idmat}}};
    json rep = run(problem("cone", json{{"op", "cone"}, {"map", cmap}}));
    for (const auto& entry : rep["results"]["cohomology"])
        CHECK(entry["dim"] == 0); // cone of an isomorphism is acyclic
    json z10 = {{"field", "Q"}, {"rows", 1}, {"cols", 0}, {"entries", json::array()}};
    json z01 = {{"field", "Q"}, {"rows", 0}, {"cols", 1}, {"entries", json::array()}};
    json rep2 = run(problem("cone", json{{"op", "exactness"}, {"maps", {z10, idmat, z01}}}));
    CHECK(rep2["results"]["exact"] == true);
}

TEST_CASE("schema violations carry stable codes")
{
    CHECK_THROWS_AS(run(json{{"version", "1"}, {"command", "d0"}}), Error);
    try {
        run(problem("d0", json{{"n", 2}, {"polys", {{0, -1, 1}, {0, 1}}}, {"junk", 1}}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::schema_error);
    }
    CHECK_THROWS_AS(run(problem("frobnicate", json::object())), Error);
    CHECK_THROWS_AS(run(json{{"version", "2"}, {"command", "d0"}, {"payload", json::object()}}),
                    Error);
}

TEST_CASE("reports are byte-identical across runs")
{
    json p1 = problem("d0", json{{"n", 2}, {"polys", {{0, -1, 1}, {0, 1}}}});
    CHECK(report_to_string(run(p1)) == report_to_string(run(p1)));
    json p2 = problem("verify", json{{"suite", "d0"}});
    CHECK(report_to_string(run(p2)) == report_to_string(run(p2)));
}

TEST_CASE("verify suites pass through the runner")
{
    json rep = run(problem("verify", json{{"suite", "d0"}}));
    CHECK(rep["results"]["passed"] == true);
    for (const auto& s : rep["results"]["suites"]) {
        CHECK(s["failures"] == 0);
        CHECK(s["checks"].get<int>() > 0);
    }
    CHECK_THROWS_AS(run(problem("verify", json{{"suite", "bogus"}})), Error);
}

TEST_CASE("every module operation is reachable from a CLI command")
{
    std::set<std::string> covered;
    for (const auto& [cmd, ops] : operation_coverage()) {
        (void)cmd;
        covered.insert(ops.begin(), ops.end());
    }
    for (const auto& op : all_operations()) {
        INFO("operation " << op);
        CHECK(covered.count(op) == 1);
    }
    // and each registry command is a real command
    for (const auto& [cmd, ops] : operation_coverage()) {
        (void)ops;
        json payload = json::object();
        try {
            run(problem(cmd, payload));
        } catch (const Error& e) {
            // schema errors are fine here; unknown-command is not
            CHECK(std::string(e.what()).find("unknown command") == std::string::npos);
        }
    }
}

TEST_CASE("golden problem files reproduce committed reports")
{
    const std::string dir = std::string(HOMCAT_SOURCE_DIR) + "/tests/golden/";
    for (const std::string name : {"d0", "cohomology", "koszul", "ext", "extension", "spectral"}) {
        json prob = json::parse(slurp(dir + name + ".json"));
        std::string expect = slurp(dir + name + ".expected.json");
        CHECK(report_to_string(run(prob)) == expect);
    }
}

TEST_CASE("the homcat binary runs a golden problem deterministically")
{
    const std::string dir = std::string(HOMCAT_SOURCE_DIR) + "/tests/golden/";
    const std::string bin = HOMCAT_BIN;
    std::string out1 = "/tmp/homcat_out1.json", out2 = "/tmp/homcat_out2.json";
    std::string cmd1 = bin + " d0 --in " + dir + "d0.json --out " + out1;
    std::string cmd2 = bin + " d0 --in " + dir + "d0.json --out " + out2;
    REQUIRE(std::system(cmd1.c_str()) == 0);
    REQUIRE(std::system(cmd2.c_str()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    CHECK(slurp(out1) == slurp(dir + "d0.expected.json"));
    // text rendering is also deterministic
    std::string cmd3 = bin + " d0 --in " + dir + "d0.json --format text --out " + out1;
    REQUIRE(std::system(cmd3.c_str()) == 0);
    CHECK(slurp(out1).find("dims") != std::string::npos);
}
