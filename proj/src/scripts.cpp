#include <algorithm>
#include <bit>
#include <functional>
#include <set>
#include <stdexcept>

#include "mbtd/gadgets.hpp"
#include "mbtd/generators.hpp"
#include "mbtd/strategy.hpp"

namespace mbtd {

Script step(std::string play, std::vector<ScriptBranch> branches) {
    return std::make_shared<const ScriptStep>(ScriptStep{std::move(play), std::move(branches)});
}

ScriptBranch on(std::vector<std::string> replies, Script next) { return {std::move(replies), std::move(next)}; }

Script relabel(const Script& s, const std::map<std::string, std::string>& names) {
    if (!s) return s;
    auto rn = [&](const std::string& l) {
        auto it = names.find(l);
        return it == names.end() ? l : it->second;
    };
    std::vector<ScriptBranch> branches;
    for (const auto& b : s->branches) {
        std::vector<std::string> replies;
        for (const auto& r : b.replies) replies.push_back(rn(r));
        branches.push_back({std::move(replies), relabel(b.next, names)});
    }
    return step(rn(s->play), std::move(branches));
}

std::vector<std::string> script_labels(const Script& s) {
    std::set<std::string> out;
    std::function<void(const Script&)> walk = [&](const Script& n) {
        if (!n) return;
        if (!n->play.empty()) out.insert(n->play);
        for (const auto& b : n->branches) {
            for (const auto& r : b.replies)
                if (r != "*") out.insert(r);
            walk(b.next);
        }
    };
    walk(s);
    return {out.begin(), out.end()};
}

namespace {

struct CStep;
using CScript = std::shared_ptr<const CStep>;
struct CBranch {
    VertexMask replies = 0;
    bool any = false;
    CScript next;
};
struct CStep {
    Vertex play = -1;
    std::vector<CBranch> branches;
};

using Resolver = std::function<Vertex(const std::string&)>;

CScript compile(const Script& s, const Resolver& resolve) {
    if (!s) return nullptr;
    auto out = std::make_shared<CStep>();
    if (!s->play.empty()) out->play = resolve(s->play);
    for (const auto& b : s->branches) {
        CBranch cb;
        for (const auto& r : b.replies) {
            if (r == "*")
                cb.any = true;
            else
                cb.replies |= bit(resolve(r));
        }
        cb.next = compile(b.next, resolve);
        if (!cb.next) throw std::invalid_argument("script branch without continuation");
        out->branches.push_back(std::move(cb));
    }
    return out;
}

class ScriptedStaller final : public Strategy {
public:
    ScriptedStaller(WinningSetSystem w, CScript d, CScript s, std::string name, SolverConfig cfg)
        : w_(std::move(w)), d_(std::move(d)), s_(std::move(s)), name_(std::move(name)), cfg_(cfg) {
        domain_ = scope(d_) | scope(s_);
    }

    std::string name() const override { return name_; }
    Player role() const override { return Player::Staller; }

    Decision decide(const Position& p) const override {
        if (VertexMask now = immediate_threats(p, w_).staller_wins_now) return {std::countr_zero(now), false};
        if (auto v = scripted(p)) return {*v, false};
        if (auto v = find_double_trap_move(p, w_)) return {*v, false};
        try {
            Solver solver(cfg_);
            return {solver.best_response(w_, p), true};
        } catch (const BudgetExhausted&) {
            return {std::countr_zero(p.free_mask()), true};
        }
    }

private:
    std::optional<Vertex> scripted(const Position& p) const {
        const auto& h = p.history();
        CScript node = (!h.empty() && h.front().player == Player::Dominator) ? d_ : s_;
        if (!node) return std::nullopt;
        bool played = node->play < 0;
        for (const auto& m : h) {
            if (m.player == Player::Staller) {
                if (played || node->play != m.vertex) return std::nullopt;
                played = true;
                continue;
            }
            if (!played) return std::nullopt;
            const bool inside = (domain_ & bit(m.vertex)) != 0;
            CScript next;
            for (const auto& b : node->branches)
                if (b.replies & bit(m.vertex)) {
                    next = b.next;
                    break;
                }
            if (!next)
                for (const auto& b : node->branches)
                    if (b.any) {
                        next = b.next;
                        break;
                    }
            // A reply away from the scripted vertices leaves the script where it was.
            if (!next && !inside) continue;
            if (!next) return std::nullopt;
            node = next;
            played = node->play < 0;
        }
        if (played || !p.is_free(node->play)) return std::nullopt;
        return node->play;
    }

    static VertexMask scope(const CScript& n) {
        if (!n) return 0;
        VertexMask m = n->play >= 0 ? bit(n->play) : 0;
        for (const auto& b : n->branches) m |= b.replies | scope(b.next);
        return m;
    }

    WinningSetSystem w_;
    VertexMask domain_ = 0;
    CScript d_;
    CScript s_;
    std::string name_;
    SolverConfig cfg_;
};

StrategyPtr make_scripted(WinningSetSystem w, const Script& d, const Script& s, const Resolver& resolve,
                          std::string name, SolverConfig cfg) {
    return std::make_shared<ScriptedStaller>(std::move(w), compile(d, resolve), compile(s, resolve), std::move(name),
                                             cfg);
}

Graph build_with(std::initializer_list<const char*> vertices, const std::function<void(GraphBuilder&)>& edges) {
    GraphBuilder b;
    for (const char* v : vertices) b.add_vertex(v);
    edges(b);
    return b.build();
}

// ---- η / ω -----------------------------------------------------------------

// Plans below are written with parts H, Y, W, K, M; the generator names them
// Z, A, B, K, M.
std::string eta_name(const std::string& lemma) {
    static const std::map<char, char> part{{'h', 'z'}, {'y', 'a'}, {'w', 'b'}, {'k', 'k'}, {'m', 'm'}};
    return std::string(1, part.at(lemma[0])) + lemma.substr(1);
}

// Automorphism of η exchanging the two halves.
std::string eta_swap(const std::string& lemma) {
    if (lemma == "h1") return "h3";
    if (lemma == "h3") return "h1";
    static const std::map<char, char> part{{'h', 'h'}, {'y', 'w'}, {'w', 'y'}, {'k', 'm'}, {'m', 'k'}};
    return std::string(1, part.at(lemma[0])) + lemma.substr(1);
}

RegionalPlan eta_dominator_plan(bool swapped) {
    using P = std::pair<std::string, std::string>;
    RegionalPlan plan;
    plan.opening = "h1";
    plan.static_pairs = {P{"k2", "k4"}, P{"h2", "h4"}, P{"m2", "m4"}};
    Region yk{{"y1", "y2", "y3", "k1", "k2", "k3", "k4"},
              {{"y1", "k1", {P{"y2", "k3"}}},
               {"y2", "y1", {P{"k1", "k3"}}},
               {"y3", "y1", {P{"k1", "k3"}}},
               {"k1", "k3", {P{"y1", "y3"}}},
               {"k3", "k1", {P{"y1", "y2"}}}}};
    Region hwm{{"h1", "h2", "h3", "h4", "w1", "w2", "w3", "m1", "m2", "m3", "m4"},
               {{"h3", "w1", {P{"w2", "w3"}, P{"m1", "m3"}}},
                {"w1", "m1", {P{"w2", "m3"}, P{"w3", "h3"}}},
                {"w2", "m3", {P{"w1", "m1"}, P{"w3", "h3"}}},
                {"w3", "m1", {P{"w2", "h3"}, P{"w1", "m3"}}},
                {"m1", "m3", {P{"w1", "w3"}, P{"w2", "h3"}}},
                {"m3", "m1", {P{"w1", "w2"}, P{"w3", "h3"}}}}};
    plan.regions = {yk, hwm};
    auto map_all = [&](const std::function<std::string(const std::string&)>& f) {
        plan.opening = f(plan.opening);
        for (auto& [a, b] : plan.static_pairs) a = f(a), b = f(b);
        for (auto& r : plan.regions) {
            for (auto& m : r.members) m = f(m);
            for (auto& rule : r.rules) {
                rule.trigger = f(rule.trigger);
                rule.reply = f(rule.reply);
                for (auto& [a, b] : rule.pairs) a = f(a), b = f(b);
            }
        }
    };
    if (swapped) map_all(eta_swap);
    map_all(eta_name);
    return plan;
}

Script g4_script() {
    return step("y1", {on({"y2", "y3", "y4"},
                          step("u1", {on({"u3"}, step("z1", {on({"u2"}, step("z3"))}))}))});
}

const std::map<std::string, std::string> g4_on_bzm{{"u1", "b3"}, {"u2", "b1"}, {"u3", "b2"}, {"y1", "z3"},
                                                   {"y2", "z2"}, {"y3", "z1"}, {"y4", "z4"}, {"z1", "m1"},
                                                   {"z2", "m2"}, {"z3", "m3"}, {"z4", "m4"}};
const std::map<std::string, std::string> g4_on_azk{{"u1", "a3"}, {"u2", "a1"}, {"u3", "a2"}, {"y1", "z1"},
                                                   {"y2", "z2"}, {"y3", "z3"}, {"y4", "z4"}, {"z1", "k1"},
                                                   {"z2", "k2"}, {"z3", "k3"}, {"z4", "k4"}};

Script eta_center_script() {
    // Dominator opened on z2; the z4 case is the same with z2 and z4 exchanged.
    auto finish = step("b1", {on({"b2"}, step("m1")), on({"b3"}, step("m3")), on({"m1", "m2", "m4"}, step("b2")),
                              on({"m3"}, step("b3"))});
    return step("k1", {on({"k2", "k3", "k4"},
                          step("a3", {on({"a1"}, step("z1", {on({"a2"}, step("z3", {on({"z4"}, finish)}))}))}))});
}

Script eta_d_script() {
    auto center = eta_center_script();
    return step("", {on({"z2"}, center), on({"z4"}, relabel(center, {{"z4", "z2"}})),
                     on({"a1", "a2", "a3", "k1", "k2", "k3", "k4"}, relabel(g4_script(), g4_on_bzm)),
                     on({"b1", "b2", "b3", "m1", "m2", "m3", "m4"}, relabel(g4_script(), g4_on_azk))});
}

Script eta_s_script() { return relabel(g4_script(), g4_on_bzm); }

std::string chain(const char* z, int i) { return std::string(z) + "@D" + std::to_string(i); }

RegionalPlan omega_dominator_plan(int m) {
    using P = std::pair<std::string, std::string>;
    RegionalPlan plan;
    plan.opening = "a1";
    plan.static_pairs = {P{"a2", "a3"}, P{"h2", "h4"}};
    for (int i = 1; i <= m; ++i) {
        plan.static_pairs.emplace_back(chain("z1", i), chain("z3", i));
        plan.static_pairs.emplace_back(chain("z2", i), chain("z4", i));
    }
    plan.regions = {Region{{"b1", "b2", "b3", "h1", "h2", "h3", "h4"},
                           {{"b1", "h1", {P{"b2", "h3"}}},
                            {"b2", "h1", {P{"b1", "h3"}}},
                            {"b3", "h3", {P{"b1", "h1"}}},
                            {"h1", "h3", {P{"b1", "b3"}}},
                            {"h3", "h1", {P{"b1", "b2"}}}}}};
    return plan;
}

Script omega_d_script(int m) {
    std::vector<ScriptBranch> openings;
    for (int z = 1; z <= 4; ++z) {
        std::string d1 = chain(("z" + std::to_string(z)).c_str(), 1);
        std::string x = m > 1 ? chain("z3", m) : (z == 3 ? "a3" : "a2");
        auto body = step("b1", {on({"h1", "h2", "h4"}, step("b2", {on({"h3"}, step("a1", {on({"b3"}, step(x))}))})),
                                on({"h3"}, step("b3", {on({"h1"}, step("a1", {on({"b2"}, step(x))}))})),
                                on({"b2"}, step("h1")), on({"b3"}, step("h3")), on({"*"}, step("h1"))});
        openings.push_back(on({d1}, body));
    }
    return step("", std::move(openings));
}

Script omega_s_script() {
    return step("h1", {on({"h2", "h3", "h4"},
                          step("b1", {on({"b3"}, step(chain("z1", 1), {on({chain("z2", 1), chain("z3", 1), chain("z4", 1)},
                                                                            step("a3"))}))}))});
}

}  // namespace

StrategyPtr scripted_staller(const Graph& host, WinningSetSystem w, Script d_game, Script s_game, std::string name,
                             SolverConfig fallback) {
    return make_scripted(std::move(w), d_game, s_game, [&](const std::string& l) { return host.vertex(l); },
                         std::move(name), fallback);
}

std::string to_string(GadgetId id) {
    switch (id) {
    case GadgetId::G1: return "G1";
    case GadgetId::G2: return "G2";
    case GadgetId::G3: return "G3";
    case GadgetId::G4: return "G4";
    case GadgetId::Eta: return "eta";
    case GadgetId::Omega: return "omega";
    case GadgetId::Tau: return "tau";
    case GadgetId::ThreeClaws: return "three-claws";
    }
    return "?";
}

std::optional<GadgetId> parse_gadget_id(std::string_view name) {
    for (auto id : {GadgetId::G1, GadgetId::G2, GadgetId::G3, GadgetId::G4, GadgetId::Eta, GadgetId::Omega,
                    GadgetId::Tau, GadgetId::ThreeClaws})
        if (to_string(id) == name) return id;
    return std::nullopt;
}

Graph gadget_template(GadgetId id) {
    switch (id) {
    case GadgetId::G1:
        return build_with({"u0", "u1", "u2", "u3", "v0", "v1", "v2", "v3"}, [](GraphBuilder& b) {
            b.add_triangle("u1", "u2", "u3");
            b.add_triangle("v1", "v2", "v3");
            b.add_edge("u0", "u1");
            b.add_edge("v0", "v1");
            b.add_edge("u2", "v2");
            b.add_edge("u3", "v3");
        });
    case GadgetId::G2:
        return build_with({"x1", "x2", "x3", "u1", "u2", "u3", "v1", "v2", "v3", "z1", "z2", "z3", "v"},
                          [](GraphBuilder& b) {
                              b.add_triangle("x1", "x2", "x3");
                              b.add_triangle("u1", "u2", "u3");
                              b.add_triangle("v1", "v2", "v3");
                              b.add_triangle("z1", "z2", "z3");
                              b.add_edge("v3", "v");
                              b.add_edge("u1", "x1");
                              b.add_edge("u2", "v2");
                              b.add_edge("u3", "z3");
                          });
    case GadgetId::G3:
        return build_with({"u1", "u2", "u3", "z1", "z2", "z3", "z4"}, [](GraphBuilder& b) {
            b.add_triangle("u1", "u2", "u3");
            b.add_diamond("z1", "z2", "z3", "z4");
            b.add_edge("u2", "z1");
        });
    case GadgetId::G4:
        return build_with({"u1", "u2", "u3", "y1", "y2", "y3", "y4", "z1", "z2", "z3", "z4"}, [](GraphBuilder& b) {
            b.add_triangle("u1", "u2", "u3");
            b.add_diamond("y1", "y2", "y3", "y4");
            b.add_diamond("z1", "z2", "z3", "z4");
            b.add_edge("u2", "y1");
            b.add_edge("u3", "z1");
        });
    case GadgetId::ThreeClaws:
        return build_with({"t1", "x1", "y1", "z1", "t2", "x2", "y2", "z2", "t3", "x3", "y3", "z3"},
                          [](GraphBuilder& b) {
                              for (int i = 1; i <= 3; ++i) {
                                  auto s = std::to_string(i);
                                  for (const char* leaf : {"x", "y", "z"}) b.add_edge("t" + s, leaf + s);
                              }
                              for (int i = 1; i < 3; ++i)
                                  for (const char* leaf : {"x", "y", "z"})
                                      b.add_edge(leaf + std::to_string(i), leaf + std::to_string(i + 1));
                          });
    case GadgetId::Eta: return generate_eta();
    case GadgetId::Omega: return generate_omega(1);
    case GadgetId::Tau: return load_tau();
    }
    throw std::invalid_argument("unknown gadget");
}

WinningSetSystem gadget_winning_sets(GadgetId id) {
    Graph t = gadget_template(id);
    if (id == GadgetId::Eta || id == GadgetId::Omega) return winning_sets(t);
    return interior_winning_sets(t, 3);
}

Script gadget_d_script(GadgetId id) {
    switch (id) {
    case GadgetId::G1: return step("", {on({"u0"}, gadget_s_script(GadgetId::G1))});
    case GadgetId::Eta: return eta_d_script();
    case GadgetId::Omega: return omega_d_script(1);
    default: return nullptr;
    }
}

Script gadget_s_script(GadgetId id) {
    switch (id) {
    case GadgetId::G1:
        return step("v2", {on({"u1"}, step("v3", {on({"v0"}, step("v1"))})),
                           on({"u3"}, step("v3", {on({"v0"}, step("u2"))})),
                           on({"v1"}, step("v3", {on({"v0"}, step("u1"))})), on({"u2", "v3", "v0"}, step("u3"))});
    case GadgetId::G2: return step("u2", {on({"z3"}, step("v2", {on({"u3"}, step("v1"))}))});
    case GadgetId::G3: return step("z1", {on({"u3"}, step("z3"))});
    case GadgetId::G4: return g4_script();
    case GadgetId::ThreeClaws: {
        auto line = [](const char* a, const char* forced, const char* b) { return step(a, {on({forced}, step(b))}); };
        return step("t2", {on({"x1", "t1", "x2", "y2", "z2", "*"}, line("z3", "z1", "y3")),
                           on({"y1"}, line("z3", "z1", "x3")), on({"z1"}, line("x3", "x1", "y3")),
                           on({"x3", "t3"}, line("z1", "z3", "y1")), on({"y3"}, line("z1", "z3", "x1")),
                           on({"z3"}, line("x1", "x3", "y1"))});
    }
    case GadgetId::Eta: return eta_s_script();
    case GadgetId::Omega: return omega_s_script();
    case GadgetId::Tau: return certificate_script(load_tau_certificate());
    }
    return nullptr;
}

StrategyPtr staller_gadget_strategy(const Graph& host, const GadgetEmbedding& e, SolverConfig fallback) {
    Graph t = gadget_template(e.id);
    if (static_cast<int>(e.map.size()) != t.order()) throw std::invalid_argument("embedding size mismatch");
    for (Vertex v : e.map)
        if (v < 0 || v >= host.order() || !(e.free_snapshot & bit(v)))
            throw std::invalid_argument("gadget precondition violated: mapped vertex not free");
    Resolver resolve = [&t, &e](const std::string& l) { return e.map.at(t.vertex(l)); };
    Script s = gadget_s_script(e.id);
    Script d = (e.id == GadgetId::Eta || e.id == GadgetId::Omega) ? gadget_d_script(e.id) : step("", {on({"*"}, s)});
    return make_scripted(winning_sets(host), d, s, resolve, "gadget-" + to_string(e.id), fallback);
}

StrategyPtr standalone_gadget_strategy(GadgetId id, SolverConfig fallback) {
    Graph t = gadget_template(id);
    return make_scripted(gadget_winning_sets(id), gadget_d_script(id), gadget_s_script(id),
                         [&t](const std::string& l) { return t.vertex(l); }, "gadget-" + to_string(id), fallback);
}

EtaStrategies eta_strategies() {
    Graph g = generate_eta();
    EtaStrategies out;
    out.dominator_first = regional_pairing_strategy(g, eta_dominator_plan(false), "eta-dominator-z1");
    out.dominator_first_alt = regional_pairing_strategy(g, eta_dominator_plan(true), "eta-dominator-z3");
    out.staller = scripted_staller(g, winning_sets(g), eta_d_script(), eta_s_script(), "eta-staller");
    return out;
}

OmegaStrategies omega_strategies(int chain_len) {
    Graph g = generate_omega(chain_len);
    OmegaStrategies out;
    out.dominator_first = regional_pairing_strategy(g, omega_dominator_plan(chain_len), "omega-dominator");
    out.staller = scripted_staller(g, winning_sets(g), omega_d_script(chain_len), omega_s_script(), "omega-staller");
    return out;
}

}  // namespace mbtd
