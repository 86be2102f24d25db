#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mbtd/graph.hpp"

namespace mbtd {

enum class Player : std::uint8_t { Dominator, Staller };
enum class Owner : std::uint8_t { Free, Dominator, Staller };
enum class GameStatus { Ongoing, DominatorWon, StallerWon };
enum class Winner { Dominator, Staller, Unknown };
enum class OutcomeClass { D, S, N, Unknown };

constexpr Player opponent(Player p) { return p == Player::Dominator ? Player::Staller : Player::Dominator; }
constexpr Owner owner_of(Player p) { return p == Player::Dominator ? Owner::Dominator : Owner::Staller; }
constexpr Winner winner_of(Player p) { return p == Player::Dominator ? Winner::Dominator : Winner::Staller; }

std::string to_string(Player p);
std::string to_string(Owner o);
std::string to_string(GameStatus s);
std::string to_string(Winner w);
std::string to_string(OutcomeClass c);
std::optional<Player> parse_player(std::string_view name);

class GameError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Move {
    Vertex vertex = -1;
    Player player = Player::Dominator;
    friend bool operator==(const Move&, const Move&) = default;
};

/// Ownership of every vertex plus the side to move. Positions that arise from
/// play carry the player who started; mid-game setups do not and are only
/// required to keep the two ownership sets disjoint.
class Position {
public:
    Position() = default;
    Position(int n, Player first);

    static Position setup(int n, VertexMask dominator, VertexMask staller, Player to_move);
    /// Mid-game setup that keeps a move list; moves need not alternate.
    static Position from_moves(int n, std::span<const Move> moves, Player to_move);

    int order() const { return order_; }
    Player to_move() const { return to_move_; }
    std::optional<Player> first() const { return first_; }
    const std::vector<Move>& history() const { return history_; }

    VertexMask dominator() const { return dominator_; }
    VertexMask staller() const { return staller_; }
    VertexMask claimed() const { return dominator_ | staller_; }
    VertexMask free_mask() const;
    VertexMask owned_by(Player p) const { return p == Player::Dominator ? dominator_ : staller_; }

    Owner owner(Vertex v) const;
    bool is_free(Vertex v) const { return owner(v) == Owner::Free; }

    /// Claims v for the side to move. Throws GameError when v is taken.
    /// Does not look at the winning sets; see apply_move for the checked form.
    Position play(Vertex v) const;

    /// Claim counts consistent with alternating play from `first`.
    bool alternation_consistent() const;

    friend bool operator==(const Position&, const Position&) = default;

private:
    int order_ = 0;
    VertexMask dominator_ = 0;
    VertexMask staller_ = 0;
    Player to_move_ = Player::Dominator;
    std::optional<Player> first_;
    std::vector<Move> history_;
};

/// One distinct winning set; `watched` lists every vertex whose open
/// neighbourhood it is (kept for display only).
struct WinningSet {
    VertexMask members = 0;
    std::vector<Vertex> watched;
};

/// Staller's winning sets, deduplicated.
class WinningSetSystem {
public:
    WinningSetSystem() = default;
    WinningSetSystem(int board_order, std::vector<WinningSet> sets);

    int order() const { return order_; }
    const std::vector<WinningSet>& sets() const { return sets_; }
    std::size_t size() const { return sets_.size(); }
    /// Number of watched vertices, i.e. the count before deduplication.
    std::size_t raw_count() const;

    struct LiveSet {
        std::size_t index = 0;
        VertexMask needed = 0;  // members not yet claimed by Staller
    };
    /// Sets containing no Dominator vertex.
    std::vector<LiveSet> live(const Position& p) const;

private:
    int order_ = 0;
    std::vector<WinningSet> sets_;
};

/// One set per vertex: its open neighbourhood.
WinningSetSystem winning_sets(const Graph& g);

/// Winning sets of a gadget played inside a host of the given regularity:
/// only vertices whose full neighbourhood lies in the gadget are watched.
WinningSetSystem interior_winning_sets(const Graph& gadget, int host_degree = 3);

GameStatus status(const Position& p, const WinningSetSystem& w);

/// Free vertices, or nothing once the game is decided.
VertexMask legal_moves(const Position& p, const WinningSetSystem& w);
std::vector<Vertex> legal_move_list(const Position& p, const WinningSetSystem& w);

/// Checked move: v must be free and the game undecided.
Position apply_move(const Position& p, Vertex v, const WinningSetSystem& w);

/// Residual system: sets hit by Dominator dropped, the others shrunk to their
/// still-needed members, duplicates merged.
WinningSetSystem reduce(const Position& p, const WinningSetSystem& w);

struct OutcomeResult {
    OutcomeClass cls = OutcomeClass::Unknown;
    Winner d_game = Winner::Unknown;  // Dominator moves first
    Winner s_game = Winner::Unknown;  // Staller moves first
};

/// Maps the two per-start winners to D/S/N. Staller winning the D-game while
/// Dominator wins the S-game contradicts first-move advantage and throws.
OutcomeClass outcome_from_winners(Winner d_game, Winner s_game);

struct Transcript {
    Graph graph;
    Player first = Player::Dominator;
    std::vector<Move> moves;
    GameStatus status = GameStatus::Ongoing;
};

std::string transcript_to_json(const Transcript& t);
Transcript transcript_from_json(std::string_view text);
/// Replays and checks alternation, legality and the recorded status.
Position replay(const Transcript& t);
Transcript make_transcript(const Graph& g, const Position& p);

std::vector<Vertex> mask_to_vertices(VertexMask m);
VertexMask vertices_to_mask(std::span<const Vertex> vs);

}  // namespace mbtd
