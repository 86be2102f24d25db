#pragma once

#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mbtd/game.hpp"

namespace mbtd {

struct PruningToggles {
    bool hit_set_removal = true;  // residual canonical keys with superset absorption
    bool dominated_move = true;
    bool threat_extension = true;
};

struct SolverConfig {
    std::size_t memo_capacity = std::size_t{1} << 24;
    std::uint64_t node_budget = 2'000'000'000ULL;
    std::chrono::milliseconds time_budget{std::chrono::minutes(10)};
    PruningToggles pruning;
    bool root_parallelism = false;
    unsigned threads = 0;  // 0: hardware concurrency
};

struct SolverStats {
    std::uint64_t nodes = 0;
    std::uint64_t memo_hits = 0;
    int max_depth = 0;
    double elapsed_ms = 0;
    std::string to_json() const;
};

struct SolveResult {
    Winner winner = Winner::Unknown;
    std::optional<Vertex> best_move;
    std::vector<Move> principal_line;
    bool from_cache = false;
    SolverStats stats;
    bool known() const { return winner != Winner::Unknown; }
};

class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class TranspositionTable;

/// Exact Maker-Breaker solver. The transposition table persists across calls
/// on the same instance, so repeated queries on related positions are cheap.
/// Not safe to call concurrently on one instance; give each worker its own.
class Solver {
public:
    explicit Solver(SolverConfig cfg = {});
    ~Solver();
    Solver(Solver&&) noexcept;
    Solver& operator=(Solver&&) noexcept;

    const SolverConfig& config() const { return cfg_; }

    /// Winner with best move and a principal line to a terminal position.
    SolveResult solve(const WinningSetSystem& w, const Position& p);
    /// Winner only; no line reconstruction.
    Winner winner(const WinningSetSystem& w, const Position& p);
    /// Lowest-id move achieving the value of p for the side to move.
    /// Throws BudgetExhausted or GameError (game over).
    Vertex best_response(const WinningSetSystem& w, const Position& p);

    std::size_t memo_size() const;
    void clear_memo();

private:
    SolverConfig cfg_;
    std::unique_ptr<TranspositionTable> table_;
};

SolveResult solve(const Graph& g, Player first, const SolverConfig& cfg = {});
OutcomeResult classify_outcome(const Graph& g, const SolverConfig& cfg = {});

struct Threats {
    VertexMask staller_wins_now = 0;
    VertexMask dominator_forced = 0;
    /// Two or more distinct forced blocks: no single Dominator move survives.
    bool double_trap() const;
};

/// Singleton `needed` parts of live sets, reported for the side to move.
Threats immediate_threats(const Position& p, const WinningSetSystem& w);

/// Lowest-id Staller move (other than an immediate win) after which
/// Dominator faces two distinct forced blocks.
std::optional<Vertex> find_double_trap_move(const Position& p, const WinningSetSystem& w);

}  // namespace mbtd
