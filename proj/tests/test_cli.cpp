#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mbtd/cli.hpp"
#include "mbtd/graph.hpp"

using namespace mbtd;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

}  // namespace

TEST_CASE("generate output pipes into solve and classify") {
    auto gen = run({"generate", "gp", "5", "2"});
    REQUIRE(gen.code == kExitOk);
    auto solved = run({"solve", "--first", "dominator"}, gen.out);
    CHECK(solved.code == kExitOk);
    CHECK(contains(solved.out, "winner: staller"));

    auto g6 = run({"generate", "gp", "5", "2", "--format", "graph6"});
    CHECK(g6.out == "IheA@GUAo\n");
    CHECK(parse_graph_auto(gen.out) == parse_graph_auto(run({"generate", "gp", "5", "2"}).out));

    auto neck = run({"generate", "diamond-necklace", "2"});
    auto cls = run({"classify", "-"}, neck.out);
    CHECK(cls.code == kExitOk);
    CHECK(contains(cls.out, "class: D, diamond-factor: yes"));
}

TEST_CASE("solve on K1 is a Staller win for either first player") {
    for (const char* first : {"dominator", "staller"}) {
        auto r = run({"solve", "complete:1", "--first", first});
        CHECK(r.code == kExitOk);
        CHECK(contains(r.out, "winner: staller"));
    }
}

TEST_CASE("json output") {
    auto r = run({"--json", "solve", "cycle:4", "--first", "staller"});
    REQUIRE(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("winner") == "dominator");
    auto c = run({"classify", "gp:5,2", "--json"});
    REQUIRE(c.code == kExitOk);
    CHECK(nlohmann::json::parse(c.out).at("class") == "S");
}

TEST_CASE("graph files") {
    auto path = std::filesystem::temp_directory_path() / "mbtd-cli-test.json";
    std::ofstream(path) << run({"generate", "prism"}).out;
    auto r = run({"classify", path.string()});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "class: D"));
    CHECK(contains(r.out, "triangle-factor: yes"));
    std::filesystem::remove(path);
    CHECK(run({"classify", path.string()}).code == kExitUsage);
}

TEST_CASE("usage errors and exit codes") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"generate", "nope"}).code == kExitUsage);
    CHECK(run({"generate", "gp", "5"}).code == kExitUsage);
    CHECK(run({"solve", "cycle:4"}).code == kExitUsage);  // --first is required
    CHECK(run({"solve", "cycle:4", "--first", "nobody"}).code == kExitUsage);
    CHECK(run({"solve", "-", "--first", "dominator"}, "{broken").code == kExitUsage);
    CHECK(run({"verify", "T99"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("budget exhaustion exits with 3") {
    auto r = run({"--budget", "5", "solve", "gp:8,2", "--first", "dominator"});
    CHECK(r.code == kExitBudget);
}

TEST_CASE("verify") {
    auto r = run({"verify", "T2"});
    CHECK(r.code == kExitOk);
    CHECK(contains(r.out, "passed, 0 failed"));
    auto j = run({"verify", "T5", "3", "--json"});
    CHECK(j.code == kExitOk);
    CHECK(nlohmann::json::parse(j.out).at("failed") == 0);
}

TEST_CASE("play re-prompts on illegal input") {
    auto path = std::filesystem::temp_directory_path() / "mbtd-cli-play.json";
    std::ofstream(path) << run({"generate", "gp", "5", "2"}).out;
    auto r = run({"play", path.string(), "--as", "dominator", "--hints"}, "u0\nu0\nbanana\nquit\n");
    CHECK(contains(r.out, "engine plays"));
    CHECK(contains(r.out, "illegal move 'u0'"));
    CHECK(contains(r.out, "illegal move 'banana'"));
    // A full game against the engine ends with Staller winning.
    std::string moves;
    for (int i = 0; i < 10; ++i) moves += "u" + std::to_string(i) + "\nv" + std::to_string(i) + "\n";
    auto full = run({"play", path.string(), "--as", "dominator"}, moves);
    CHECK(contains(full.out, "winner: staller"));
    std::filesystem::remove(path);
}
