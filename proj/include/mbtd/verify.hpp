#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mbtd/game.hpp"
#include "mbtd/solver.hpp"
#include "mbtd/strategy.hpp"

namespace mbtd {

enum class AdversaryKind { Exhaustive, SolverBest, Random };

struct Adversary {
    AdversaryKind kind = AdversaryKind::Exhaustive;
    std::uint64_t seed = 1;
    int count = 100;  // games, random mode only
};

std::string to_string(AdversaryKind k);
std::optional<AdversaryKind> parse_adversary(std::string_view name);

struct ValidationOptions {
    Adversary adversary;
    SolverConfig solver;
    /// Distinct positions the exhaustive adversary may visit.
    std::uint64_t position_budget = 20'000'000;
};

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct InstanceResult {
    std::string instance;
    std::string expected;
    std::string observed;
    std::string method;  // solver | strategy-vs-exhaustive | strategy-vs-solver | strategy-vs-random
    std::uint64_t nodes = 0;
    double elapsed_ms = 0;
    Verdict verdict = Verdict::Inconclusive;
    std::uint64_t fallbacks = 0;
    /// Losing line in vertex labels, "d:x s:y ..."; empty on pass.
    std::string counterexample;
};

struct ValidationReport {
    std::string subject;
    std::vector<InstanceResult> instances;

    /// Pass iff every instance passed; any inconclusive instance makes the
    /// whole report inconclusive unless some instance failed.
    Verdict verdict() const;
    std::uint64_t fallbacks() const;
    /// With `timing` false the elapsed fields are omitted, which makes the
    /// output byte-identical across runs.
    std::string to_json(bool timing = true) const;
};

/// Plays `s` (in its role) against the adversary from the empty board with
/// `first` to move, on winning_sets(g).
ValidationReport validate_strategy(const Strategy& s, const Graph& g, Player first,
                                   const ValidationOptions& opt = {});
/// Same from an arbitrary start position and winning-set system.
ValidationReport validate_strategy(const Strategy& s, const Graph& g, const WinningSetSystem& w,
                                   const Position& start, const ValidationOptions& opt = {});

/// Exhaustive check that `s` wins as Dominator when Staller moves first on g.
bool certify_second_player_dominator(const Strategy& s, const Graph& g);

// ---- theorem campaigns -----------------------------------------------------

/// One verifiable claim. Solver cases compare `expected` (and the optional
/// per-first-move D-game winners); strategy cases run a named built-in
/// validation from `strategy_cases()`.
struct TheoremCase {
    std::string id;
    std::string theorem;  // T1..T6, L1..L6, GP1, Remark
    std::string family;
    std::vector<int> params;
    OutcomeClass expected = OutcomeClass::Unknown;
    std::map<std::string, Winner> d_game_first_moves;
    std::string strategy;
};

/// Names accepted in TheoremCase::strategy.
std::vector<std::string> strategy_cases();

ValidationReport run_case(const TheoremCase& c, const SolverConfig& cfg = {});

/// Built-in cases of one theorem id; `params` narrows parametrized families
/// (e.g. T5 with {3,4}) and is ignored otherwise. Throws std::invalid_argument
/// for an unknown id.
std::vector<TheoremCase> theorem_cases(const std::string& id, const std::vector<int>& params = {});
ValidationReport verify_theorem(const std::string& id, const std::vector<int>& params = {},
                                const SolverConfig& cfg = {});

/// Every theorem id known to theorem_cases.
std::vector<std::string> theorem_ids();
std::vector<TheoremCase> default_suite();

struct CampaignSummary {
    std::vector<ValidationReport> reports;  // in suite order
    int passed = 0;
    int failed = 0;
    int inconclusive = 0;
    bool ok() const { return failed == 0 && inconclusive == 0; }
    std::string to_json(bool timing = true) const;
    std::string to_text() const;
};

/// Runs cases concurrently (`threads` 0 = hardware concurrency). When `out`
/// is non-empty writes <out>.json and <out>.txt.
CampaignSummary run_campaign(const std::vector<TheoremCase>& suite, const std::string& out = {},
                             const SolverConfig& cfg = {}, unsigned threads = 0);

}  // namespace mbtd
