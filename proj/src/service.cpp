#include "mbtd/service.hpp"

#include <bit>
#include <filesystem>
#include <fstream>
#include <regex>

#include <httplib.h>
#include <json.hpp>

#include "mbtd/generators.hpp"

namespace mbtd {

using nlohmann::json;

struct GameService::Session {
    std::string id;
    Graph graph;
    WinningSetSystem sets;
    Position position;
    Player human = Player::Dominator;
    std::string family;
    std::vector<int> params;
    EngineChoice engine;
    json last_engine = nullptr;
    mutable std::mutex mutex;
};

namespace {

HttpResponse reply(int status, const json& j) { return {status, j.dump()}; }
HttpResponse error(int status, const std::string& message, json extra = json::object()) {
    extra["error"] = message;
    return reply(status, extra);
}

json vertex_list(VertexMask m) { return mask_to_vertices(m); }

json state_json(const GameService::Session& s) {
    const Position& p = s.position;
    GameStatus st = status(p, s.sets);
    json ownership = json::array();
    for (Vertex v = 0; v < p.order(); ++v) ownership.push_back(to_string(p.owner(v)));
    json live = json::array();
    for (const auto& l : s.sets.live(p)) {
        const auto& set = s.sets.sets()[l.index];
        live.push_back({{"members", vertex_list(set.members)}, {"watched", set.watched}, {"needed", vertex_list(l.needed)}});
    }
    json threats = nullptr;
    if (st == GameStatus::Ongoing) {
        Threats t = immediate_threats(p, s.sets);
        threats = {{"staller_wins_now", vertex_list(t.staller_wins_now)},
                   {"dominator_forced", vertex_list(t.dominator_forced)},
                   {"double_trap", t.double_trap()},
                   {"double_trap_move", nullptr}};
        if (p.to_move() == Player::Staller)
            if (auto v = find_double_trap_move(p, s.sets)) threats["double_trap_move"] = *v;
    }
    json history = json::array();
    for (const auto& m : p.history()) history.push_back({{"player", to_string(m.player)}, {"vertex", m.vertex}});
    return {{"session_id", s.id},
            {"graph", json::parse(serialize_graph(s.graph, GraphFormat::JsonEdges))},
            {"human_role", to_string(s.human)},
            {"engine_role", to_string(opponent(s.human))},
            {"engine_source", s.engine.source},
            {"first", to_string(*p.first())},
            {"to_move", to_string(p.to_move())},
            {"status", to_string(st)},
            {"ownership", ownership},
            {"legal_moves", legal_move_list(p, s.sets)},
            {"live_sets", live},
            {"threats", threats},
            {"history", history},
            {"last_engine_move", s.last_engine},
            {"transcript", json::parse(transcript_to_json(make_transcript(s.graph, p)))}};
}

std::optional<Vertex> parse_vertex(const Graph& g, const json& v) {
    if (v.is_number_integer()) {
        long long id = v.get<long long>();
        if (id >= 0 && id < g.order()) return static_cast<Vertex>(id);
        return std::nullopt;
    }
    if (v.is_string()) return g.find_label(v.get<std::string>());
    return std::nullopt;
}

}  // namespace

EngineChoice choose_engine(const Graph& g, const std::string& family, const std::vector<int>& params, Player role,
                           Player first) {
    auto use = [](StrategyPtr s) { return EngineChoice{s, "strategy:" + s->name()}; };
    try {
        if (role == Player::Dominator) {
            if (family == "gp" && params.size() == 2 && params[1] == 1) return use(pairing_strategy(gp1_pairing_plan(params[0]), "gp1-pairing"));
            if (family == "diamond-necklace") return use(diamond_necklace_strategy(g));
            if (family == "claw-necklace" && params == std::vector<int>{2}) return use(two_claw_strategy(g));
            if (family == "circulant" && !params.empty()) return use(bipartite_circulant_strategy(params[0]));
            if (family == "prism" && first == Player::Staller) return use(prism_strategy());
            if (family == "eta" && first == Player::Dominator) return use(eta_strategies().dominator_first);
            if (family == "omega" && first == Player::Dominator && !params.empty())
                return use(omega_strategies(params[0]).dominator_first);
            if (g.order() <= 24)
                if (auto plan = find_pairing_plan(g, 1'000'000)) return use(pairing_strategy(*plan));
        } else {
            if (family == "eta") return use(eta_strategies().staller);
            if (family == "omega" && !params.empty()) return use(omega_strategies(params[0]).staller);
        }
    } catch (const BudgetExhausted&) {
    }
    return {nullptr, "solver"};
}

GameService::GameService(ServiceConfig cfg) : cfg_(std::move(cfg)) {
    if (!cfg_.snapshot_dir.empty()) std::filesystem::create_directories(cfg_.snapshot_dir);
}

GameService::~GameService() = default;

std::size_t GameService::session_count() const {
    std::shared_lock lock(sessions_mutex_);
    return sessions_.size();
}

std::shared_ptr<GameService::Session> GameService::find(const std::string& id) const {
    std::shared_lock lock(sessions_mutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void GameService::snapshot(const Session& s) const {
    if (cfg_.snapshot_dir.empty()) return;
    json j{{"human_role", to_string(s.human)},
           {"family", s.family},
           {"params", s.params},
           {"transcript", json::parse(transcript_to_json(make_transcript(s.graph, s.position)))}};
    std::ofstream(std::filesystem::path(cfg_.snapshot_dir) / (s.id + ".json")) << j.dump() << '\n';
}

HttpResponse GameService::handle(const std::string& method, const std::string& path, const std::string& body) {
    static const std::regex game(R"(^/games/([A-Za-z0-9_-]+)$)");
    static const std::regex moves(R"(^/games/([A-Za-z0-9_-]+)/moves$)");
    static const std::regex engine(R"(^/games/([A-Za-z0-9_-]+)/engine-move$)");
    std::smatch m;
    try {
        if (method == "OPTIONS") return {204, ""};
        if (path == "/generators" && method == "GET") return generators();
        if (path == "/games" && method == "POST") return create(body);
        if (std::regex_match(path, m, game) && method == "GET") return get(m[1]);
        if (std::regex_match(path, m, moves) && method == "POST") return human_move(m[1], body);
        if (std::regex_match(path, m, engine) && method == "POST") return engine_move(m[1]);
    } catch (const json::exception& e) {
        return error(400, std::string("malformed JSON: ") + e.what());
    }
    return error(404, "no route for " + method + " " + path);
}

HttpResponse GameService::generators() const {
    json list = json::array();
    for (const auto& g : generator_catalog())
        list.push_back({{"name", g.name}, {"params", g.params}, {"description", g.description}});
    return reply(200, {{"generators", list}});
}

HttpResponse GameService::create(const std::string& body) {
    json req = body.empty() ? json::object() : json::parse(body);
    auto s = std::make_shared<Session>();
    try {
        if (req.contains("generator")) {
            s->family = req.at("generator").get<std::string>();
            s->params = req.value("params", std::vector<int>{});
            s->graph = generate_family(s->family, s->params);
        } else if (req.contains("graph")) {
            const json& g = req.at("graph");
            s->graph = parse_graph_auto(g.is_string() ? g.get<std::string>() : g.dump());
        } else {
            return error(400, "expected \"graph\" or \"generator\"");
        }
    } catch (const GraphError& e) {
        return error(400, e.what());
    }
    if (s->graph.order() == 0) return error(400, "empty graph");
    auto human = parse_player(req.value("human_role", "dominator"));
    auto first = parse_player(req.value("first", "dominator"));
    if (!human || !first) return error(400, "roles must be dominator or staller");
    s->human = *human;
    s->sets = winning_sets(s->graph);
    s->position = Position(s->graph.order(), *first);
    s->engine = choose_engine(s->graph, s->family, s->params, opponent(*human), *first);
    {
        std::unique_lock lock(sessions_mutex_);
        s->id = "g" + std::to_string(next_id_++);
        sessions_[s->id] = s;
    }
    std::lock_guard lock(s->mutex);
    snapshot(*s);
    return reply(201, {{"session_id", s->id}, {"state", state_json(*s)}});
}

HttpResponse GameService::get(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session " + id);
    std::lock_guard lock(s->mutex);
    return reply(200, state_json(*s));
}

HttpResponse GameService::human_move(const std::string& id, const std::string& body) {
    auto s = find(id);
    if (!s) return error(404, "unknown session " + id);
    json req = json::parse(body.empty() ? "{}" : body);
    std::lock_guard lock(s->mutex);
    const Position& p = s->position;
    json legal = legal_move_list(p, s->sets);
    if (status(p, s->sets) != GameStatus::Ongoing) return error(409, "game is over", {{"legal_moves", legal}});
    if (p.to_move() != s->human) return error(409, "not your turn", {{"to_move", to_string(p.to_move())}});
    auto v = req.contains("vertex") ? parse_vertex(s->graph, req.at("vertex")) : std::nullopt;
    if (!v || !p.is_free(*v)) return error(400, "illegal move", {{"legal_moves", legal}});
    s->position = apply_move(p, *v, s->sets);
    snapshot(*s);
    return reply(200, state_json(*s));
}

HttpResponse GameService::engine_move(const std::string& id) {
    auto s = find(id);
    if (!s) return error(404, "unknown session " + id);
    std::lock_guard lock(s->mutex);
    const Position& p = s->position;
    if (status(p, s->sets) != GameStatus::Ongoing) return error(409, "game is over");
    if (p.to_move() == s->human) return error(409, "it is the human's turn");
    Vertex v = -1;
    std::string source = "solver";
    bool fallback = false;
    try {
        if (s->engine.strategy) {
            Decision d = s->engine.strategy->decide(p);
            if (d.vertex >= 0 && d.vertex < p.order() && p.is_free(d.vertex)) {
                v = d.vertex;
                source = s->engine.source;
                fallback = d.fallback;
            }
        }
        if (v < 0) {
            Solver solver(cfg_.engine);
            v = solver.best_response(s->sets, p);
        }
    } catch (const BudgetExhausted& e) {
        return error(503, "solver budget exhausted", {{"detail", e.what()}});
    }
    s->position = apply_move(p, v, s->sets);
    s->last_engine = {{"vertex", v}, {"source", source}, {"fallback", fallback}};
    snapshot(*s);
    return reply(200, {{"move", v}, {"state", state_json(*s)}});
}

bool serve(GameService& service, const std::string& host, int port) {
    httplib::Server server;
    auto bridge = [&service](const httplib::Request& req, httplib::Response& res) {
        HttpResponse r = service.handle(req.method, req.path, req.body);
        res.status = r.status;
        res.set_header("Access-Control-Allow-Origin", service.config().cors_origin);
        res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        if (!r.body.empty()) res.set_content(r.body, "application/json");
    };
    const char* any = R"(/.*)";
    server.Get(any, bridge);
    server.Post(any, bridge);
    server.Options(any, bridge);
    return server.listen(host, port);
}

}  // namespace mbtd
