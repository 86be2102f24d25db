#include "mbtd/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>

#include <json.hpp>

#include "mbtd/gadgets.hpp"
#include "mbtd/generators.hpp"

namespace mbtd {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

std::string to_string(AdversaryKind k) {
    switch (k) {
    case AdversaryKind::Exhaustive: return "exhaustive";
    case AdversaryKind::SolverBest: return "solver_best";
    case AdversaryKind::Random: return "random";
    }
    return "?";
}

std::optional<AdversaryKind> parse_adversary(std::string_view name) {
    for (auto k : {AdversaryKind::Exhaustive, AdversaryKind::SolverBest, AdversaryKind::Random})
        if (to_string(k) == name) return k;
    return std::nullopt;
}

std::string to_string(Verdict v) {
    switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

Verdict ValidationReport::verdict() const {
    bool unknown = false;
    for (const auto& i : instances) {
        if (i.verdict == Verdict::Fail) return Verdict::Fail;
        unknown |= i.verdict == Verdict::Inconclusive;
    }
    return unknown ? Verdict::Inconclusive : Verdict::Pass;
}

std::uint64_t ValidationReport::fallbacks() const {
    std::uint64_t n = 0;
    for (const auto& i : instances) n += i.fallbacks;
    return n;
}

namespace {

json report_json(const ValidationReport& r, bool timing) {
    json inst = json::array();
    for (const auto& i : r.instances) {
        json j{{"instance", i.instance}, {"expected", i.expected}, {"observed", i.observed},
               {"method", i.method},     {"nodes", i.nodes},       {"verdict", to_string(i.verdict)},
               {"fallbacks", i.fallbacks}};
        if (!i.counterexample.empty()) j["counterexample"] = i.counterexample;
        if (timing) j["elapsed_ms"] = i.elapsed_ms;
        inst.push_back(std::move(j));
    }
    return {{"subject", r.subject}, {"verdict", to_string(r.verdict())}, {"instances", inst}};
}

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string line_text(const Graph& g, const std::vector<Move>& moves) {
    std::string s;
    for (const auto& m : moves) {
        if (!s.empty()) s += ' ';
        s += (m.player == Player::Dominator ? "d:" : "s:") + g.label(m.vertex);
    }
    return s;
}

struct MemoKey {
    VertexMask d, s;
    std::uint64_t salt;
    Player to_move;
    bool operator==(const MemoKey&) const = default;
};
struct MemoKeyHash {
    std::size_t operator()(const MemoKey& k) const {
        std::uint64_t h = k.d * 0x9e3779b97f4a7c15ULL;
        h ^= (k.s + 0x632be59bd9b4e019ULL) * 0xbf58476d1ce4e5b9ULL;
        h ^= (k.salt + (h << 6) + (h >> 2)) * 0x94d049bb133111ebULL;
        return static_cast<std::size_t>(h ^ static_cast<std::uint64_t>(k.to_move));
    }
};

class Run {
public:
    Run(const Strategy& s, const WinningSetSystem& w, const ValidationOptions& opt)
        : s_(s), w_(w), opt_(opt), role_(s.role()) {}

    bool exhaustive(const Position& p) {
        GameStatus st = status(p, w_);
        if (st != GameStatus::Ongoing) return finish(p, st);
        MemoKey key{p.dominator(), p.staller(), s_.memo_salt(p), p.to_move()};
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        if (++nodes > opt_.position_budget) throw BudgetExhausted("validation position budget exhausted");
        bool ok = true;
        if (p.to_move() == role_) {
            auto next = own_move(p);
            ok = next && exhaustive(*next);
        } else {
            for (Vertex y : mask_to_vertices(p.free_mask()))
                if (!exhaustive(p.play(y))) {
                    ok = false;
                    break;
                }
        }
        memo_.emplace(key, ok);
        return ok;
    }

    template <class Pick>
    bool line(Position p, Pick&& pick) {
        for (;;) {
            GameStatus st = status(p, w_);
            if (st != GameStatus::Ongoing) return finish(p, st);
            ++nodes;
            if (p.to_move() == role_) {
                auto next = own_move(p);
                if (!next) return false;
                p = std::move(*next);
            } else {
                p = p.play(pick(p));
            }
        }
    }

    std::uint64_t nodes = 0;
    std::uint64_t fallbacks = 0;
    std::string failure;
    std::vector<Move> counterexample;

private:
    bool finish(const Position& p, GameStatus st) {
        bool ok = (st == GameStatus::StallerWon) == (role_ == Player::Staller);
        if (!ok && failure.empty()) {
            failure = "lost";
            counterexample = p.history();
        }
        return ok;
    }

    std::optional<Position> own_move(const Position& p) {
        Decision d = s_.decide(p);
        if (d.fallback) ++fallbacks;
        if (d.vertex < 0 || d.vertex >= p.order() || !p.is_free(d.vertex)) {
            if (failure.empty()) {
                failure = "illegal move " + std::to_string(d.vertex);
                counterexample = p.history();
            }
            return std::nullopt;
        }
        return p.play(d.vertex);
    }

    const Strategy& s_;
    const WinningSetSystem& w_;
    const ValidationOptions& opt_;
    Player role_;
    std::unordered_map<MemoKey, bool, MemoKeyHash> memo_;
};

std::string start_text(const Graph& g, const Position& start) {
    if (start.history().empty() && start.claimed() == 0) return "first=" + to_string(start.to_move());
    std::vector<Move> owned = start.history();
    if (owned.empty()) {
        for (Vertex v : mask_to_vertices(start.dominator())) owned.push_back({v, Player::Dominator});
        for (Vertex v : mask_to_vertices(start.staller())) owned.push_back({v, Player::Staller});
    }
    return "start=[" + line_text(g, owned) + "] to_move=" + to_string(start.to_move());
}

}  // namespace

std::string ValidationReport::to_json(bool timing) const { return report_json(*this, timing).dump(2); }

ValidationReport validate_strategy(const Strategy& s, const Graph& g, Player first, const ValidationOptions& opt) {
    return validate_strategy(s, g, winning_sets(g), Position(g.order(), first), opt);
}

ValidationReport validate_strategy(const Strategy& s, const Graph& g, const WinningSetSystem& w, const Position& start,
                                   const ValidationOptions& opt) {
    auto t0 = Clock::now();
    InstanceResult r;
    r.instance = s.name() + " " + start_text(g, start);
    r.expected = to_string(winner_of(s.role()));
    r.method = "strategy-vs-" + to_string(opt.adversary.kind);
    Run run(s, w, opt);
    try {
        bool ok = true;
        switch (opt.adversary.kind) {
        case AdversaryKind::Exhaustive: ok = run.exhaustive(start); break;
        case AdversaryKind::SolverBest: {
            Solver solver(opt.solver);
            ok = run.line(start, [&](const Position& p) { return solver.best_response(w, p); });
            break;
        }
        case AdversaryKind::Random: {
            std::mt19937_64 rng(opt.adversary.seed);
            for (int game = 0; game < opt.adversary.count && ok; ++game)
                ok = run.line(start, [&](const Position& p) {
                    auto free = mask_to_vertices(p.free_mask());
                    return free[std::uniform_int_distribution<std::size_t>(0, free.size() - 1)(rng)];
                });
            break;
        }
        }
        r.verdict = ok ? Verdict::Pass : Verdict::Fail;
        r.observed = ok ? r.expected : run.failure;
        if (!ok) r.counterexample = line_text(g, run.counterexample);
    } catch (const BudgetExhausted& e) {
        r.verdict = Verdict::Inconclusive;
        r.observed = std::string("unknown: ") + e.what();
    }
    r.nodes = run.nodes;
    r.fallbacks = run.fallbacks;
    r.elapsed_ms = ms_since(t0);
    return {s.name(), {std::move(r)}};
}

bool certify_second_player_dominator(const Strategy& s, const Graph& g) {
    if (s.role() != Player::Dominator) return false;
    return validate_strategy(s, g, Player::Staller).verdict() == Verdict::Pass;
}

// ---- theorem cases ---------------------------------------------------------

namespace {

std::string instance_name(const std::string& family, const std::vector<int>& params) {
    std::string s = family;
    if (!params.empty()) {
        s += '(';
        for (std::size_t i = 0; i < params.size(); ++i) s += (i ? "," : "") + std::to_string(params[i]);
        s += ')';
    }
    return s;
}

InstanceResult solver_instance(const TheoremCase& c, const SolverConfig& cfg) {
    auto t0 = Clock::now();
    InstanceResult r;
    r.instance = instance_name(c.family, c.params);
    r.method = "solver";
    Graph g = generate_family(c.family, c.params);
    WinningSetSystem w = winning_sets(g);
    Solver solver(cfg);
    auto run = [&](const Position& p) {
        SolveResult s = solver.solve(w, p);
        r.nodes += s.stats.nodes;
        return s.winner;
    };
    Winner dw = run(Position(g.order(), Player::Dominator));
    Winner sw = run(Position(g.order(), Player::Staller));
    OutcomeClass cls = (dw == Winner::Unknown || sw == Winner::Unknown) ? OutcomeClass::Unknown
                                                                          : outcome_from_winners(dw, sw);
    r.expected = to_string(c.expected);
    r.observed = to_string(cls);
    bool ok = cls == c.expected;
    bool unknown = cls == OutcomeClass::Unknown;
    for (const auto& [label, want] : c.d_game_first_moves) {
        Vertex v = g.vertex(label);
        Winner got = run(Position(g.order(), Player::Dominator).play(v));
        r.expected += " d1=" + label + ":" + to_string(want);
        r.observed += " d1=" + label + ":" + to_string(got);
        unknown |= got == Winner::Unknown;
        ok &= got == want;
    }
    r.verdict = unknown ? Verdict::Inconclusive : (ok ? Verdict::Pass : Verdict::Fail);
    r.elapsed_ms = ms_since(t0);
    return r;
}

void append(ValidationReport& into, ValidationReport from) {
    for (auto& i : from.instances) into.instances.push_back(std::move(i));
}

ValidationOptions options(const SolverConfig& cfg) {
    ValidationOptions o;
    o.solver = cfg;
    return o;
}

void both_starts(ValidationReport& rep, const Strategy& s, const Graph& g, const SolverConfig& cfg) {
    append(rep, validate_strategy(s, g, Player::Staller, options(cfg)));
    append(rep, validate_strategy(s, g, Player::Dominator, options(cfg)));
}

// Staller strategy on a standalone gadget from an explicit start.
void gadget_start(ValidationReport& rep, GadgetId id, const Position& start, const SolverConfig& cfg) {
    Graph t = gadget_template(id);
    auto s = standalone_gadget_strategy(id, cfg);
    append(rep, validate_strategy(*s, t, gadget_winning_sets(id), start, options(cfg)));
}

// Staller owns `label` and moves next; nothing else is claimed.
Position lemma_setup(const Graph& t, const char* label) {
    return Position::setup(t.order(), 0, bit(t.vertex(label)), Player::Staller);
}

void gadget_criterion(ValidationReport& rep, const SolverConfig& cfg) {
    const std::vector<std::pair<std::string, std::vector<int>>> fixtures{
        {"gp", {5, 2}},        {"gp", {6, 2}},          {"gp", {7, 2}}, {"gp", {8, 2}},
        {"truncated-k4", {}},  {"claw-necklace", {3}},  {"claw-necklace", {4}},
        {"diamond-necklace", {2}}, {"diamond-necklace", {3}}, {"circulant", {4}}, {"gp", {4, 1}},
        {"gp", {9, 2}},        {"gp", {10, 2}},         {"gp", {11, 2}}, {"gp", {12, 2}},
    };
    for (const auto& [family, params] : fixtures) {
        auto t0 = Clock::now();
        Graph g = generate_family(family, params);
        WinningSetSystem w = winning_sets(g);
        Solver solver(cfg);
        InstanceResult r;
        r.instance = instance_name(family, params);
        r.method = "gadget+solver";
        r.expected = "staller wherever a gadget is found";
        int found = 0;
        bool ok = true, unknown = false;
        std::vector<Position> starts{Position(g.order(), Player::Staller)};
        for (Vertex d1 = 0; d1 < g.order(); ++d1) starts.push_back(Position(g.order(), Player::Dominator).play(d1));
        for (const auto& p : starts) {
            if (!find_gadget(g, p)) continue;
            ++found;
            SolveResult s = solver.solve(w, p);
            r.nodes += s.stats.nodes;
            unknown |= !s.known();
            if (s.winner == Winner::Dominator) {
                ok = false;
                if (r.counterexample.empty()) r.counterexample = start_text(g, p);
            }
        }
        r.observed = std::to_string(found) + " gadget position(s), " + (ok ? "all staller" : "dominator wins one");
        r.verdict = !ok ? Verdict::Fail : (unknown ? Verdict::Inconclusive : Verdict::Pass);
        r.elapsed_ms = ms_since(t0);
        rep.instances.push_back(std::move(r));
    }
}

ValidationReport strategy_instance(const TheoremCase& c, const SolverConfig& cfg) {
    ValidationReport rep{c.id, {}};
    const auto& name = c.strategy;
    auto param = [&](std::size_t i) {
        if (i >= c.params.size()) throw std::invalid_argument(name + ": missing parameter");
        return c.params[i];
    };
    if (name == "pairing-gp1") {
        Graph g = generate_gp(param(0), 1);
        both_starts(rep, *pairing_strategy(gp1_pairing_plan(param(0)), "gp1-pairing"), g, cfg);
    } else if (name == "partition-diamond-necklace") {
        Graph g = generate_necklace(NecklaceKind::Diamond, param(0));
        both_starts(rep, *diamond_necklace_strategy(g), g, cfg);
    } else if (name == "partition-claw-necklace") {
        Graph g = generate_necklace(NecklaceKind::Claw, 2);
        both_starts(rep, *two_claw_strategy(g), g, cfg);
    } else if (name == "circulant") {
        Graph g = generate_bipartite_circulant(param(0));
        both_starts(rep, *bipartite_circulant_strategy(param(0)), g, cfg);
    } else if (name == "prism") {
        Graph g = generate_gp(3, 1);
        append(rep, validate_strategy(*prism_strategy(), g, Player::Staller, options(cfg)));
    } else if (name == "lemma1") {
        Graph t = gadget_template(GadgetId::G1);
        gadget_start(rep, GadgetId::G1, Position(t.order(), Player::Dominator).play(t.vertex("u0")), cfg);
        gadget_start(rep, GadgetId::G1, Position(t.order(), Player::Staller), cfg);
    } else if (name == "lemma2") {
        gadget_start(rep, GadgetId::G2, lemma_setup(gadget_template(GadgetId::G2), "u1"), cfg);
    } else if (name == "lemma3") {
        gadget_start(rep, GadgetId::G3, lemma_setup(gadget_template(GadgetId::G3), "u1"), cfg);
    } else if (name == "lemma4") {
        gadget_start(rep, GadgetId::G4, Position(gadget_template(GadgetId::G4).order(), Player::Staller), cfg);
    } else if (name == "three-claws") {
        gadget_start(rep, GadgetId::ThreeClaws, Position(gadget_template(GadgetId::ThreeClaws).order(), Player::Staller),
                     cfg);
    } else if (name == "tau") {
        gadget_start(rep, GadgetId::Tau, Position(gadget_template(GadgetId::Tau).order(), Player::Staller), cfg);
    } else if (name == "eta-dominator") {
        Graph g = generate_eta();
        auto s = eta_strategies();
        append(rep, validate_strategy(*s.dominator_first, g, Player::Dominator, options(cfg)));
        append(rep, validate_strategy(*s.dominator_first_alt, g, Player::Dominator, options(cfg)));
    } else if (name == "eta-staller") {
        Graph g = generate_eta();
        WinningSetSystem w = winning_sets(g);
        auto s = eta_strategies().staller;
        append(rep, validate_strategy(*s, g, w, Position(g.order(), Player::Staller), options(cfg)));
        for (Vertex d1 = 0; d1 < g.order(); ++d1) {
            if (g.label(d1) == "z1" || g.label(d1) == "z3") continue;
            append(rep, validate_strategy(*s, g, w, Position(g.order(), Player::Dominator).play(d1), options(cfg)));
        }
    } else if (name == "omega-dominator") {
        Graph g = generate_omega(param(0));
        append(rep, validate_strategy(*omega_strategies(param(0)).dominator_first, g, Player::Dominator, options(cfg)));
    } else if (name == "omega-staller") {
        Graph g = generate_omega(param(0));
        WinningSetSystem w = winning_sets(g);
        auto s = omega_strategies(param(0)).staller;
        append(rep, validate_strategy(*s, g, w, Position(g.order(), Player::Staller), options(cfg)));
        for (const char* z : {"z1", "z2", "z3", "z4"}) {
            Position start = Position(g.order(), Player::Dominator).play(g.vertex(std::string(z) + "@D1"));
            append(rep, validate_strategy(*s, g, w, start, options(cfg)));
        }
    } else if (name == "gadget-criterion") {
        gadget_criterion(rep, cfg);
    } else {
        throw std::invalid_argument("unknown strategy case: " + name);
    }
    return rep;
}

TheoremCase solver_case(std::string theorem, std::string family, std::vector<int> params, OutcomeClass expected,
                        std::map<std::string, Winner> first_moves = {}) {
    TheoremCase c;
    c.id = theorem + ":" + instance_name(family, params);
    c.theorem = std::move(theorem);
    c.family = std::move(family);
    c.params = std::move(params);
    c.expected = expected;
    c.d_game_first_moves = std::move(first_moves);
    return c;
}

TheoremCase strategy_case(std::string theorem, std::string strategy, std::vector<int> params = {}) {
    TheoremCase c;
    c.id = theorem + ":strategy/" + instance_name(strategy, params);
    c.theorem = std::move(theorem);
    c.strategy = std::move(strategy);
    c.params = std::move(params);
    return c;
}

std::map<std::string, Winner> omega1_first_moves() {
    std::map<std::string, Winner> m{{"a1", Winner::Dominator}};
    for (const char* z : {"z1", "z2", "z3", "z4"}) m[std::string(z) + "@D1"] = Winner::Staller;
    return m;
}

std::map<std::string, Winner> eta_first_moves() {
    Graph g = generate_eta();
    std::map<std::string, Winner> m;
    for (Vertex v = 0; v < g.order(); ++v)
        m[g.label(v)] = (g.label(v) == "z1" || g.label(v) == "z3") ? Winner::Dominator : Winner::Staller;
    return m;
}

std::vector<TheoremCase> all_cases(const std::string& id) {
    using O = OutcomeClass;
    std::vector<TheoremCase> v;
    if (id == "Intro") {
        v.push_back(solver_case(id, "complete", {1}, O::S));
        v.push_back(solver_case(id, "complete", {4}, O::D));
        v.push_back(solver_case(id, "complete", {5}, O::D));
        v.push_back(solver_case(id, "cycle", {4}, O::D));
        v.push_back(solver_case(id, "gp", {5, 2}, O::S));
    } else if (id == "T1") {
        for (int d : {2, 3}) v.push_back(solver_case(id, "diamond-necklace", {d}, O::D));
        for (int d : {2, 3, 4}) v.push_back(strategy_case(id, "partition-diamond-necklace", {d}));
    } else if (id == "T2") {
        v.push_back(solver_case(id, "prism", {}, O::D));
        v.push_back(solver_case(id, "truncated-k4", {}, O::S));
        v.push_back(strategy_case(id, "prism"));
    } else if (id == "T3") {
        v.push_back(solver_case(id, "eta", {}, O::N, eta_first_moves()));
        v.push_back(solver_case(id, "omega", {1}, O::N, omega1_first_moves()));
        v.push_back(strategy_case(id, "eta-dominator"));
        v.push_back(strategy_case(id, "eta-staller"));
        for (int m : {1, 2}) {
            v.push_back(strategy_case(id, "omega-dominator", {m}));
            v.push_back(strategy_case(id, "omega-staller", {m}));
        }
    } else if (id == "T4") {
        for (int n : {6, 7, 8}) v.push_back(solver_case(id, "gp", {n, 2}, O::S));
        v.push_back(strategy_case(id, "tau"));
    } else if (id == "T5") {
        for (int m = 3; m <= 7; ++m) v.push_back(solver_case(id, "circulant", {m}, O::D));
        for (int m = 3; m <= 6; ++m) v.push_back(strategy_case(id, "circulant", {m}));
    } else if (id == "T6") {
        v.push_back(solver_case(id, "claw-necklace", {2}, O::D));
        v.push_back(solver_case(id, "claw-necklace", {3}, O::S));
        v.push_back(strategy_case(id, "partition-claw-necklace", {2}));
    } else if (id == "GP1") {
        for (int n = 3; n <= 7; ++n) v.push_back(solver_case(id, "gp", {n, 1}, O::D));
        for (int n = 3; n <= 9; ++n) v.push_back(strategy_case(id, "pairing-gp1", {n}));
    } else if (id == "L1" || id == "L2" || id == "L3" || id == "L4") {
        v.push_back(strategy_case(id, "lemma" + id.substr(1)));
    } else if (id == "L5") {
        v.push_back(solver_case(id, "eta", {}, O::N, eta_first_moves()));
        v.push_back(strategy_case(id, "eta-dominator"));
        v.push_back(strategy_case(id, "eta-staller"));
    } else if (id == "L6") {
        v.push_back(solver_case(id, "omega", {1}, O::N, omega1_first_moves()));
        for (int m : {1, 2}) {
            v.push_back(strategy_case(id, "omega-dominator", {m}));
            v.push_back(strategy_case(id, "omega-staller", {m}));
        }
    } else if (id == "Remark") {
        v.push_back(strategy_case(id, "three-claws"));
        v.push_back(strategy_case(id, "tau"));
        v.push_back(strategy_case(id, "gadget-criterion"));
    } else {
        throw std::invalid_argument("unknown theorem id: " + id);
    }
    return v;
}

}  // namespace

std::vector<std::string> strategy_cases() {
    return {"pairing-gp1", "partition-diamond-necklace", "partition-claw-necklace", "circulant", "prism",
            "lemma1",      "lemma2",                     "lemma3",                  "lemma4",    "three-claws",
            "tau",         "eta-dominator",              "eta-staller",             "omega-dominator",
            "omega-staller", "gadget-criterion"};
}

ValidationReport run_case(const TheoremCase& c, const SolverConfig& cfg) {
    if (!c.strategy.empty()) {
        try {
            return strategy_instance(c, cfg);
        } catch (const BudgetExhausted& e) {
            InstanceResult r;
            r.instance = c.strategy;
            r.observed = std::string("unknown: ") + e.what();
            return {c.id, {std::move(r)}};
        }
    }
    return {c.id, {solver_instance(c, cfg)}};
}

std::vector<std::string> theorem_ids() {
    return {"Intro", "T1", "T2", "T3", "T4", "T5", "T6", "GP1", "L1", "L2", "L3", "L4", "L5", "L6", "Remark"};
}

std::vector<TheoremCase> theorem_cases(const std::string& id, const std::vector<int>& params) {
    auto cases = all_cases(id);
    if (params.empty()) return cases;
    std::erase_if(cases, [&](const TheoremCase& c) {
        return !c.params.empty() && std::find(params.begin(), params.end(), c.params.front()) == params.end();
    });
    return cases;
}

ValidationReport verify_theorem(const std::string& id, const std::vector<int>& params, const SolverConfig& cfg) {
    ValidationReport rep{id, {}};
    for (const auto& c : theorem_cases(id, params)) {
        ValidationReport r = run_case(c, cfg);
        for (auto& i : r.instances) {
            i.instance = c.id + " " + i.instance;
            rep.instances.push_back(std::move(i));
        }
    }
    return rep;
}

std::vector<TheoremCase> default_suite() {
    std::vector<TheoremCase> suite;
    for (const auto& id : theorem_ids())
        for (auto& c : all_cases(id)) {
            bool dup = std::any_of(suite.begin(), suite.end(), [&](const TheoremCase& o) {
                return o.strategy == c.strategy && o.family == c.family && o.params == c.params &&
                       o.d_game_first_moves == c.d_game_first_moves;
            });
            if (!dup) suite.push_back(std::move(c));
        }
    return suite;
}

std::string CampaignSummary::to_json(bool timing) const {
    json reps = json::array();
    for (const auto& r : reports) reps.push_back(report_json(r, timing));
    return json{{"passed", passed}, {"failed", failed}, {"inconclusive", inconclusive}, {"cases", reps}}.dump(2);
}

std::string CampaignSummary::to_text() const {
    std::ostringstream out;
    for (const auto& r : reports) {
        out << '[' << to_string(r.verdict()) << "] " << r.subject << '\n';
        for (const auto& i : r.instances) {
            out << "    " << to_string(i.verdict) << "  " << i.instance << "  expected " << i.expected << ", observed "
                << i.observed << "  (" << i.method << ", " << i.nodes << " nodes";
            if (i.fallbacks) out << ", " << i.fallbacks << " fallbacks";
            out << ")\n";
            if (!i.counterexample.empty()) out << "      line: " << i.counterexample << '\n';
        }
    }
    out << passed << " passed, " << failed << " failed, " << inconclusive << " inconclusive\n";
    return out.str();
}

CampaignSummary run_campaign(const std::vector<TheoremCase>& suite, const std::string& out, const SolverConfig& cfg,
                             unsigned threads) {
    CampaignSummary summary;
    summary.reports.resize(suite.size());
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<std::size_t>(1, suite.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < suite.size();) {
            try {
                summary.reports[i] = run_case(suite[i], cfg);
            } catch (const std::exception& e) {
                InstanceResult r;
                r.instance = suite[i].id;
                r.observed = std::string("error: ") + e.what();
                r.verdict = Verdict::Fail;
                summary.reports[i] = {suite[i].id, {std::move(r)}};
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (const auto& r : summary.reports) {
        switch (r.verdict()) {
        case Verdict::Pass: ++summary.passed; break;
        case Verdict::Fail: ++summary.failed; break;
        case Verdict::Inconclusive: ++summary.inconclusive; break;
        }
    }
    if (!out.empty()) {
        std::ofstream js(out + ".json"), txt(out + ".txt");
        if (!js || !txt) throw std::runtime_error("cannot write report to " + out);
        js << summary.to_json(false) << '\n';
        txt << summary.to_text();
    }
    return summary;
}

}  // namespace mbtd
