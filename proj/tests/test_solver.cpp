#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
#include <json.hpp>

#include "mbtd/generators.hpp"
#include "mbtd/solver.hpp"
#include "mbtd/strategy.hpp"
#include "support.hpp"

using namespace mbtd;

namespace {

// H1 trap situation on vertices v0 v1 v2 v3 u v: a vertex a with N(a) = {v1,v2,u},
// a vertex b with N(b) = {v1,v3,v}, and a third neighbourhood through v0.
enum { V0, V1, V2, V3, U, V };
WinningSetSystem h1_sets() {
    return WinningSetSystem(6, {{bit(V1) | bit(V2) | bit(U), {}},
                                {bit(V1) | bit(V3) | bit(V), {}},
                                {bit(V0) | bit(U) | bit(V), {}}});
}
Position h1_position() { return Position::setup(6, bit(V0), bit(V2) | bit(V3), Player::Staller); }

Graph diamond() {
    GraphBuilder b;
    b.add_diamond("z1", "z2", "z3", "z4");
    return b.build();
}

void check_line(const WinningSetSystem& w, Position p, const SolveResult& r) {
    for (const Move& m : r.principal_line) {
        REQUIRE(status(p, w) == GameStatus::Ongoing);
        REQUIRE(m.player == p.to_move());
        p = apply_move(p, m.vertex, w);
    }
    GameStatus end = status(p, w);
    CHECK(end == (r.winner == Winner::Staller ? GameStatus::StallerWon : GameStatus::DominatorWon));
}

}  // namespace

TEST_CASE("solve examples") {
    CHECK(solve(cycle_graph(4), Player::Dominator).winner == Winner::Dominator);
    CHECK(solve(generate_gp(5, 2), Player::Dominator).winner == Winner::Staller);
    CHECK(solve(generate_gp(3, 1), Player::Staller).winner == Winner::Dominator);
    CHECK(solve(complete_graph(1), Player::Dominator).winner == Winner::Staller);
    CHECK(solve(complete_graph(1), Player::Staller).winner == Winner::Staller);

    CHECK(classify_outcome(cycle_graph(4)).cls == OutcomeClass::D);
    CHECK(classify_outcome(generate_gp(5, 2)).cls == OutcomeClass::S);
    auto om = classify_outcome(generate_omega(1));
    CHECK(om.cls == OutcomeClass::N);
    CHECK(om.d_game == Winner::Dominator);
    CHECK(om.s_game == Winner::Staller);
}

TEST_CASE("principal lines replay to the declared result") {
    for (auto g : {cycle_graph(4), generate_gp(5, 2), generate_gp(3, 1), generate_necklace(NecklaceKind::Diamond, 2),
                   generate_bipartite_circulant(4), generate_omega(1)}) {
        auto w = winning_sets(g);
        for (Player first : {Player::Dominator, Player::Staller}) {
            Solver s;
            Position p(g.order(), first);
            auto r = s.solve(w, p);
            REQUIRE(r.known());
            REQUIRE(r.best_move.has_value());
            CHECK(r.principal_line.front().vertex == *r.best_move);
            check_line(w, p, r);
        }
    }
    // A decided position has no best move.
    auto w = winning_sets(cycle_graph(4));
    Solver s;
    auto r = s.solve(w, Position::setup(4, 0b0011, 0, Player::Staller));
    CHECK(r.winner == Winner::Dominator);
    CHECK_FALSE(r.best_move.has_value());
    CHECK(r.principal_line.empty());
}

TEST_CASE("determinism and cache reuse") {
    Graph g = generate_gp(6, 2);
    auto w = winning_sets(g);
    Position p(g.order(), Player::Dominator);
    Solver a, b;
    auto ra = a.solve(w, p);
    auto rb = b.solve(w, p);
    CHECK(ra.best_move == rb.best_move);
    CHECK(ra.principal_line == rb.principal_line);
    CHECK(a.memo_size() > 0);
    auto again = a.solve(w, p);
    CHECK(again.winner == ra.winner);
    CHECK(again.stats.nodes <= ra.stats.nodes);
    a.clear_memo();
    CHECK(a.memo_size() == 0);
    auto stats = nlohmann::json::parse(ra.stats.to_json());
    CHECK(stats.at("nodes").get<std::uint64_t>() == ra.stats.nodes);
    CHECK(stats.contains("memo_hits"));
    CHECK(stats.contains("depth"));
    CHECK(stats.contains("elapsed_ms"));
}

TEST_CASE("root parallelism agrees with single-threaded search") {
    SolverConfig par;
    par.root_parallelism = true;
    par.threads = 4;
    for (auto g : {generate_gp(6, 2), generate_gp(5, 1), generate_omega(1), generate_bipartite_circulant(5)}) {
        for (Player first : {Player::Dominator, Player::Staller}) {
            auto single = solve(g, first);
            auto multi = solve(g, first, par);
            CHECK(single.winner == multi.winner);
            CHECK(single.best_move == multi.best_move);
        }
    }
}

TEST_CASE("budget exhaustion is an explicit unknown") {
    SolverConfig tiny;
    tiny.node_budget = 5;
    Graph g = generate_gp(7, 2);
    auto r = solve(g, Player::Dominator, tiny);
    CHECK(r.winner == Winner::Unknown);
    CHECK_FALSE(r.known());
    CHECK(classify_outcome(g, tiny).cls == OutcomeClass::Unknown);
    Solver s(tiny);
    CHECK_THROWS_AS(s.best_response(winning_sets(g), Position(g.order(), Player::Dominator)), BudgetExhausted);
}

TEST_CASE("best_response") {
    // Star K1,3: the centre wins at once (it is N(leaf)), as does leaf 3; lowest id wins the tie.
    Graph star = star_graph(3);
    auto ws = winning_sets(star);
    Solver s;
    CHECK(s.best_response(ws, Position::setup(4, 0, bit(1) | bit(2), Player::Staller)) == 0);
    // With the centre taken by Dominator only N(0) = {1,2,3} is left.
    CHECK(s.best_response(ws, Position::setup(4, bit(0), bit(1) | bit(2), Player::Staller)) == 3);

    // G1 after d1=u0, s1=v2, d2=u1, s2=v3 Dominator is lost but still blocks at v0.
    Graph g1 = gadget_template(GadgetId::G1);
    auto w1 = gadget_winning_sets(GadgetId::G1);
    Position q(g1.order(), Player::Dominator);
    for (const char* l : {"u0", "v2", "u1", "v3"}) q = apply_move(q, g1.vertex(l), w1);
    auto t = immediate_threats(q, w1);
    CHECK(t.dominator_forced == bit(g1.vertex("v0")));
    CHECK(s.best_response(w1, q) == g1.vertex("v0"));

    // Symmetric empty C4: every Dominator move wins, the lowest id is chosen.
    auto wc = winning_sets(cycle_graph(4));
    CHECK(s.best_response(wc, Position(4, Player::Dominator)) == 0);
    CHECK(s.best_response(wc, Position(4, Player::Staller)) == 0);

    CHECK_THROWS_AS(s.best_response(wc, Position::setup(4, 0b0011, 0, Player::Staller)), GameError);
}

TEST_CASE("immediate threats") {
    auto w = h1_sets();
    Position after = h1_position().play(V1);
    auto t = immediate_threats(after, w);
    CHECK(t.dominator_forced == (bit(U) | bit(V)));
    CHECK(t.double_trap());

    // Staller to move with one needed vertex left.
    Position p = Position::setup(6, bit(V0), bit(V1) | bit(V2), Player::Staller);
    CHECK((immediate_threats(p, w).staller_wins_now & bit(U)) != 0);

    Graph g = generate_gp(5, 2);
    auto empty = immediate_threats(Position(g.order(), Player::Dominator), winning_sets(g));
    CHECK(empty.staller_wins_now == 0);
    CHECK(empty.dominator_forced == 0);
    CHECK_FALSE(empty.double_trap());
}

TEST_CASE("double trap detection") {
    auto w = h1_sets();
    CHECK(find_double_trap_move(h1_position(), w) == std::optional<Vertex>(V1));
    Solver s;
    CHECK(s.winner(w, h1_position()) == Winner::Staller);

    // Diamond inside a cubic host: only the centers are watched.
    Graph d = diamond();
    auto wd = interior_winning_sets(d);
    Position p = Position::setup(4, 0, bit(d.vertex("z1")), Player::Staller);
    CHECK(find_double_trap_move(p, wd) == std::optional<Vertex>(d.vertex("z3")));
    auto t = immediate_threats(p.play(d.vertex("z3")), wd);
    CHECK(t.dominator_forced == (bit(d.vertex("z2")) | bit(d.vertex("z4"))));

    Graph g = generate_gp(5, 2);
    CHECK_FALSE(find_double_trap_move(Position(g.order(), Player::Staller), winning_sets(g)).has_value());
}
