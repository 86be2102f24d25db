#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <random>
#include <thread>

#include "mbtd/service.hpp"
#include "support.hpp"

using namespace mbtd;
using nlohmann::json;

namespace {

struct Call {
    int status;
    json body;
};

Call call(GameService& svc, const std::string& method, const std::string& path, const json& body = nullptr) {
    auto r = svc.handle(method, path, body.is_null() ? "" : body.dump());
    return {r.status, r.body.empty() ? json() : json::parse(r.body)};
}

std::string create(GameService& svc, json req) {
    auto r = call(svc, "POST", "/games", req);
    REQUIRE(r.status == 201);
    return r.body.at("session_id").get<std::string>();
}

// Transcript inside any returned state replays to the reported ownership.
void check_round_trip(const json& state) {
    Transcript t = transcript_from_json(state.at("transcript").dump());
    Position p = replay(t);
    for (Vertex v = 0; v < p.order(); ++v) CHECK(to_string(p.owner(v)) == state.at("ownership")[v].get<std::string>());
    CHECK(to_string(p.to_move()) == state.at("to_move").get<std::string>());
}

// Plays a full game where the human picks uniformly random legal moves.
json play_random(GameService& svc, const std::string& id, std::mt19937_64& rng) {
    json state = call(svc, "GET", "/games/" + id).body;
    while (state.at("status") == "ongoing") {
        if (state.at("to_move") == state.at("human_role")) {
            auto legal = state.at("legal_moves");
            int v = legal[rng() % legal.size()].get<int>();
            auto r = call(svc, "POST", "/games/" + id + "/moves", {{"vertex", v}});
            REQUIRE(r.status == 200);
            state = r.body;
        } else {
            auto r = call(svc, "POST", "/games/" + id + "/engine-move");
            REQUIRE(r.status == 200);
            CHECK(r.body.at("move").is_number_integer());
            state = r.body.at("state");
        }
        check_round_trip(state);
    }
    return state;
}

}  // namespace

TEST_CASE("generators catalog") {
    GameService svc;
    auto r = call(svc, "GET", "/generators");
    CHECK(r.status == 200);
    bool has_gp = false;
    for (const auto& g : r.body.at("generators"))
        if (g.at("name") == "gp") has_gp = g.at("params") == json::array({"n", "k"});
    CHECK(has_gp);
}

TEST_CASE("session creation") {
    GameService svc;
    auto r = call(svc, "POST", "/games", {{"generator", "gp"}, {"params", {5, 2}}, {"human_role", "dominator"}});
    REQUIRE(r.status == 201);
    const json& st = r.body.at("state");
    CHECK(st.at("ownership").size() == 10);
    CHECK(st.at("status") == "ongoing");
    CHECK(st.at("to_move") == "dominator");
    CHECK(st.at("legal_moves").size() == 10);
    CHECK(st.at("live_sets").size() == 10);
    CHECK(st.at("engine_role") == "staller");
    CHECK(st.at("threats").at("double_trap") == false);

    auto raw = call(svc, "POST", "/games", {{"graph", {{"n", 4}, {"edges", {{0, 1}, {1, 2}, {2, 3}, {3, 0}}}}}});
    CHECK(raw.status == 201);
    auto g6 = call(svc, "POST", "/games", {{"graph", "C~"}, {"first", "staller"}});
    CHECK(g6.status == 201);
    CHECK(g6.body.at("state").at("to_move") == "staller");
    CHECK(svc.session_count() == 3);

    CHECK(call(svc, "POST", "/games", {{"generator", "nope"}}).status == 400);
    CHECK(call(svc, "POST", "/games", {{"graph", {{"n", 2}, {"edges", {{0, 0}}}}}}).status == 400);
    CHECK(call(svc, "POST", "/games", {{"generator", "cycle"}, {"params", {4}}, {"human_role", "king"}}).status == 400);
    CHECK(call(svc, "POST", "/games", json::object()).status == 400);
    CHECK(svc.handle("POST", "/games", "{not json").status == 400);
}

TEST_CASE("routing and error codes") {
    GameService svc;
    CHECK(call(svc, "GET", "/games/g99").status == 404);
    CHECK(call(svc, "POST", "/games/g99/moves", {{"vertex", 0}}).status == 404);
    CHECK(call(svc, "POST", "/games/g99/engine-move").status == 404);
    CHECK(call(svc, "GET", "/nowhere").status == 404);
    CHECK(call(svc, "DELETE", "/games").status == 404);
    CHECK(svc.handle("OPTIONS", "/games", "").status == 204);

    std::string id = create(svc, {{"generator", "cycle"}, {"params", {4}}, {"human_role", "staller"}});
    // Dominator (engine) moves first: the human may not move yet.
    CHECK(call(svc, "POST", "/games/" + id + "/moves", {{"vertex", 0}}).status == 409);
    auto e = call(svc, "POST", "/games/" + id + "/engine-move");
    REQUIRE(e.status == 200);
    int taken = e.body.at("move").get<int>();
    CHECK(e.body.at("state").at("last_engine_move").at("vertex") == taken);
    CHECK(call(svc, "POST", "/games/" + id + "/engine-move").status == 409);

    // Illegal move: 400 with the legal list, and the state is untouched.
    json before = call(svc, "GET", "/games/" + id).body;
    auto bad = call(svc, "POST", "/games/" + id + "/moves", {{"vertex", taken}});
    CHECK(bad.status == 400);
    CHECK(bad.body.at("legal_moves").size() == 3);
    CHECK(call(svc, "POST", "/games/" + id + "/moves", {{"vertex", 17}}).status == 400);
    CHECK(call(svc, "POST", "/games/" + id + "/moves", {{"vertex", "zz"}}).status == 400);
    CHECK(call(svc, "POST", "/games/" + id + "/moves", json::object()).status == 400);
    CHECK(call(svc, "GET", "/games/" + id).body == before);

    // Labels are accepted as vertex names.
    std::string gid = create(svc, {{"generator", "gp"}, {"params", {5, 2}}});
    auto lr = call(svc, "POST", "/games/" + gid + "/moves", {{"vertex", "v3"}});
    CHECK(lr.status == 200);
    CHECK(lr.body.at("ownership")[8] == "dominator");
}

TEST_CASE("game over is reported as a conflict") {
    GameService svc;
    std::string id = create(svc, {{"generator", "complete"}, {"params", {1}}});
    auto st = call(svc, "GET", "/games/" + id).body;
    CHECK(st.at("status") == "staller_won");
    CHECK(st.at("legal_moves").empty());
    CHECK(call(svc, "POST", "/games/" + id + "/moves", {{"vertex", 0}}).status == 409);
    CHECK(call(svc, "POST", "/games/" + id + "/engine-move").status == 409);
}

TEST_CASE("engine as Dominator wins every C4 line") {
    GameService svc;
    std::mt19937_64 rng(3);
    for (int game = 0; game < 40; ++game) {
        std::string id = create(svc, {{"generator", "cycle"}, {"params", {4}}, {"human_role", "staller"},
                                      {"first", game % 2 ? "staller" : "dominator"}});
        CHECK(play_random(svc, id, rng).at("status") == "dominator_won");
    }
}

TEST_CASE("engine as Staller wins GP(6,2) after every opening") {
    GameService svc;
    std::mt19937_64 rng(4);
    for (int opening = 0; opening < 12; ++opening) {
        for (int rep = 0; rep < 3; ++rep) {
            std::string id = create(svc, {{"generator", "gp"}, {"params", {6, 2}}, {"human_role", "dominator"}});
            auto r = call(svc, "POST", "/games/" + id + "/moves", {{"vertex", opening}});
            REQUIRE(r.status == 200);
            json end = play_random(svc, id, rng);
            CHECK(end.at("status") == "staller_won");
            CHECK(end.at("engine_source") == "solver");
        }
    }
}

TEST_CASE("certified strategies are preferred by the engine") {
    GameService svc;
    auto c = [&](json req) { return call(svc, "POST", "/games", req).body.at("state").at("engine_source"); };
    CHECK(c({{"generator", "gp"}, {"params", {7, 1}}, {"human_role", "staller"}}) == "strategy:gp1-pairing");
    CHECK(c({{"generator", "eta"}, {"human_role", "dominator"}}) == "strategy:eta-staller");
    CHECK(c({{"generator", "gp"}, {"params", {5, 2}}, {"human_role", "dominator"}}) == "solver");

    std::mt19937_64 rng(5);
    for (int game = 0; game < 10; ++game) {
        std::string id = create(svc, {{"generator", "eta"}, {"human_role", "staller"}, {"first", "dominator"}});
        CHECK(play_random(svc, id, rng).at("status") == "dominator_won");
        std::string id2 = create(svc, {{"generator", "diamond-necklace"}, {"params", {3}}, {"human_role", "staller"},
                                       {"first", "staller"}});
        CHECK(play_random(svc, id2, rng).at("status") == "dominator_won");
    }
}

TEST_CASE("engine budget exhaustion returns 503") {
    ServiceConfig cfg;
    cfg.engine.node_budget = 3;
    GameService svc(cfg);
    std::string id = create(svc, {{"generator", "gp"}, {"params", {8, 2}}, {"human_role", "staller"}});
    auto r = call(svc, "POST", "/games/" + id + "/engine-move");
    CHECK(r.status == 503);
    CHECK(r.body.contains("detail"));
}

TEST_CASE("concurrent sessions") {
    GameService svc;
    std::vector<std::thread> pool;
    std::atomic<int> wins{0};
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&, t] {
            std::mt19937_64 rng(100 + t);
            for (int g = 0; g < 5; ++g) {
                auto r = svc.handle("POST", "/games", R"({"generator":"gp","params":[5,2]})");
                std::string id = json::parse(r.body).at("session_id");
                json state = json::parse(svc.handle("GET", "/games/" + id, "").body);
                while (state.at("status") == "ongoing") {
                    if (state.at("to_move") == "dominator") {
                        auto legal = state.at("legal_moves");
                        json mv{{"vertex", legal[rng() % legal.size()]}};
                        state = json::parse(svc.handle("POST", "/games/" + id + "/moves", mv.dump()).body);
                    } else {
                        state = json::parse(svc.handle("POST", "/games/" + id + "/engine-move", "").body).at("state");
                    }
                }
                if (state.at("status") == "staller_won") ++wins;
            }
        });
    for (auto& t : pool) t.join();
    CHECK(wins == 20);
    CHECK(svc.session_count() == 20);
}

TEST_CASE("snapshots are written on mutation") {
    auto dir = std::filesystem::temp_directory_path() / "mbtd-snapshots-test";
    std::filesystem::remove_all(dir);
    ServiceConfig cfg;
    cfg.snapshot_dir = dir.string();
    GameService svc(cfg);
    std::string id = create(svc, {{"generator", "cycle"}, {"params", {4}}});
    call(svc, "POST", "/games/" + id + "/moves", {{"vertex", 1}});
    auto snap = json::parse(testsupport::read_file(dir / (id + ".json")));
    CHECK(snap.at("transcript").at("moves").size() == 1);
    std::filesystem::remove_all(dir);
}
