#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbtd/game.hpp"
#include "mbtd/solver.hpp"

namespace mbtd {

struct Decision {
    Vertex vertex = -1;
    /// Chosen by solver search because the strategy's own rules had no answer.
    bool fallback = false;
};

/// A player's policy as a pure function of the position (progress is read
/// from the move history, never stored).
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual std::string name() const = 0;
    virtual Player role() const = 0;
    /// Pre: the strategy's role is to move and the game is undecided.
    virtual Decision decide(const Position& p) const = 0;
    Vertex next_move(const Position& p) const { return decide(p).vertex; }
    /// Everything besides ownership and side to move that decide() reads.
    /// Validators key their memo on (ownership, to_move, salt).
    virtual std::uint64_t memo_salt(const Position& p) const;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

std::uint64_t hash_moves(std::span<const Move> moves);

// ---- pairing ---------------------------------------------------------------

using VertexPair = std::pair<Vertex, Vertex>;

struct PairingPlan {
    std::vector<VertexPair> pairs;
    /// For each distinct winning set (in winning_sets(g) order) the index of
    /// a pair it contains. Filled by verify/find.
    std::vector<std::size_t> coverage;
};

/// Pairs disjoint and every winning set contains a pair. Fills coverage on
/// success.
bool verify_pairing_plan(const Graph& g, PairingPlan& plan);
bool verify_pairing_plan(const Graph& g, const PairingPlan& plan);

/// Exhaustive search. Throws BudgetExhausted past `node_budget` search nodes.
std::optional<PairingPlan> find_pairing_plan(const Graph& g, std::uint64_t node_budget = 50'000'000);

/// Pairs (u_j, v_{j-1}) on generate_gp(n, 1).
PairingPlan gp1_pairing_plan(int n);

/// Answers Staller in the partner vertex; see pairing_strategy notes in the README.
StrategyPtr pairing_strategy(PairingPlan plan, std::string name = "pairing");

// ---- partition -------------------------------------------------------------

/// `strategy` plays Dominator on g.induced(part); local vertex i is part[i].
struct PartStrategy {
    std::vector<Vertex> part;
    StrategyPtr strategy;
};

/// Opposite-vertex pairing on a 4-cycle given in cyclic order.
PartStrategy c4_part(const Graph& g, std::vector<Vertex> cycle);

/// Throws std::invalid_argument when parts do not partition V(g) or, with
/// `certify`, when a part strategy fails exhaustive second-player validation.
StrategyPtr partition_strategy(const Graph& g, std::vector<PartStrategy> parts, bool certify = true);

/// Diamonds of generate_necklace(Diamond, count), each played as its C4.
StrategyPtr diamond_necklace_strategy(const Graph& g);
/// The two C4s {x1,t1,y1,y2}, {z1,z2,t2,x2} of the two-claw graph.
StrategyPtr two_claw_strategy(const Graph& g);

// ---- family-specific Dominator strategies -----------------------------------

/// Common-neighbour completion with the index-1 / index+1 fallback on
/// generate_bipartite_circulant(m).
StrategyPtr bipartite_circulant_strategy(int m);

/// Dominator as second player on the triangular prism generate_gp(3, 1).
StrategyPtr prism_strategy();

/// Case-table pairing: static pairs always answered; inside each region the
/// first Staller move that is not in a static pair selects a rule, whose
/// reply is played and whose pairs become active.
struct RegionRule {
    std::string trigger;
    std::string reply;
    std::vector<std::pair<std::string, std::string>> pairs;
};
struct Region {
    std::vector<std::string> members;
    std::vector<RegionRule> rules;
};
struct RegionalPlan {
    std::string opening;  // empty: no opening move
    std::vector<std::pair<std::string, std::string>> static_pairs;
    std::vector<Region> regions;
};
StrategyPtr regional_pairing_strategy(const Graph& g, const RegionalPlan& plan, std::string name);

// ---- scripted Staller ------------------------------------------------------

struct ScriptStep;
using Script = std::shared_ptr<const ScriptStep>;

/// "*" in `replies` matches any Dominator move.
struct ScriptBranch {
    std::vector<std::string> replies;
    Script next;
};

/// Staller plays `play` (empty: wait for Dominator), then follows the branch
/// matching Dominator's answer.
struct ScriptStep {
    std::string play;
    std::vector<ScriptBranch> branches;
};

Script step(std::string play, std::vector<ScriptBranch> branches = {});
ScriptBranch on(std::vector<std::string> replies, Script next);
Script relabel(const Script& s, const std::map<std::string, std::string>& names);
/// Labels appearing in the script.
std::vector<std::string> script_labels(const Script& s);

/// Each turn: win immediately if possible, else follow the script, else play
/// a double-trap move, else fall back to solver best_response (flagged).
/// `d_game` is used when Dominator made the first recorded move, `s_game`
/// otherwise; either may be null.
StrategyPtr scripted_staller(const Graph& host, WinningSetSystem w, Script d_game, Script s_game, std::string name,
                             SolverConfig fallback = {});

// ---- gadgets ---------------------------------------------------------------

enum class GadgetId { G1, G2, G3, G4, Eta, Omega, Tau, ThreeClaws };
std::string to_string(GadgetId id);
std::optional<GadgetId> parse_gadget_id(std::string_view name);

/// Template graphs with their labels. Eta and Omega map to generate_eta() and
/// generate_omega(1).
Graph gadget_template(GadgetId id);
/// Winning sets of the template played inside a cubic host.
WinningSetSystem gadget_winning_sets(GadgetId id);
/// Scripts in template labels; s_game also serves mid-game lemma setups.
Script gadget_d_script(GadgetId id);
Script gadget_s_script(GadgetId id);

struct GadgetEmbedding {
    GadgetId id{};
    /// Template vertex i maps to host vertex map[i].
    std::vector<Vertex> map;
    /// Host vertices that were free when the embedding was taken.
    VertexMask free_snapshot = 0;
};

/// Scripted Staller on the host through the embedding. Throws
/// std::invalid_argument if a mapped template vertex was not free.
StrategyPtr staller_gadget_strategy(const Graph& host, const GadgetEmbedding& e, SolverConfig fallback = {});
/// Same on the standalone template with interior winning sets.
StrategyPtr standalone_gadget_strategy(GadgetId id, SolverConfig fallback = {});

struct EtaStrategies {
    StrategyPtr dominator_first;  // opens with z1
    StrategyPtr dominator_first_alt;  // opens with z3
    StrategyPtr staller;
};
EtaStrategies eta_strategies();

struct OmegaStrategies {
    StrategyPtr dominator_first;  // opens with a1
    StrategyPtr staller;
};
OmegaStrategies omega_strategies(int chain_len);

}  // namespace mbtd
