#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "mbtd/game.hpp"
#include "mbtd/solver.hpp"
#include "mbtd/strategy.hpp"

namespace mbtd {

struct ServiceConfig {
    SolverConfig engine;
    /// Empty: sessions live in memory only. Otherwise each mutation rewrites
    /// <dir>/<session id>.json.
    std::string snapshot_dir;
    std::string cors_origin = "*";
};

struct HttpResponse {
    int status = 200;
    std::string body;  // JSON
};

/// Engine policy for one side of a game: a certified strategy when the graph
/// comes from a family that has one, otherwise the solver.
struct EngineChoice {
    StrategyPtr strategy;  // null: solver
    std::string source;    // "strategy:<name>" or "solver"
};
EngineChoice choose_engine(const Graph& g, const std::string& family, const std::vector<int>& params, Player role,
                           Player first);

/// Transport-independent routing; serve() wraps it in an HTTP server.
class GameService {
public:
    explicit GameService(ServiceConfig cfg = {});
    ~GameService();

    HttpResponse handle(const std::string& method, const std::string& path, const std::string& body);

    const ServiceConfig& config() const { return cfg_; }
    std::size_t session_count() const;

    struct Session;

private:
    HttpResponse create(const std::string& body);
    HttpResponse get(const std::string& id);
    HttpResponse human_move(const std::string& id, const std::string& body);
    HttpResponse engine_move(const std::string& id);
    HttpResponse generators() const;
    std::shared_ptr<Session> find(const std::string& id) const;
    void snapshot(const Session& s) const;

    ServiceConfig cfg_;
    mutable std::shared_mutex sessions_mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_id_ = 1;
};

/// Blocks serving HTTP on host:port until the process is stopped.
/// Returns false if the socket could not be bound.
bool serve(GameService& service, const std::string& host, int port);

}  // namespace mbtd
