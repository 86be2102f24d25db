#include "mbtd/cli.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "mbtd/generators.hpp"
#include "mbtd/service.hpp"
#include "mbtd/solver.hpp"
#include "mbtd/structure.hpp"
#include "mbtd/verify.hpp"

namespace mbtd {

using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<int> parse_params(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    for (std::string tok; std::getline(ss, tok, ',');) {
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw UsageError("bad parameter '" + tok + "'");
        }
    }
    return out;
}

Graph load_graph(const std::string& spec, std::istream& in) {
    std::string text;
    if (spec == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else if (std::filesystem::exists(spec)) {
        std::ifstream f(spec);
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    } else if (auto colon = spec.find(':'); colon != std::string::npos) {
        return generate_family(spec.substr(0, colon), parse_params(spec.substr(colon + 1)));
    } else {
        throw UsageError("no such graph file: " + spec);
    }
    return parse_graph_auto(text);
}

SolverConfig solver_config(std::uint64_t budget) {
    SolverConfig cfg;
    if (budget) {
        cfg.node_budget = budget;
    } else if (const char* env = std::getenv("MBTD_BUDGET"); env && *env) {
        try {
            cfg.node_budget = std::stoull(env);
        } catch (const std::exception&) {
            throw UsageError("MBTD_BUDGET must be a node count");
        }
    }
    return cfg;
}

Player player_arg(const std::string& s) {
    auto p = parse_player(s);
    if (!p) throw UsageError("expected dominator or staller, got '" + s + "'");
    return *p;
}

std::string labels(const Graph& g, VertexMask m) {
    std::string s;
    for (Vertex v : mask_to_vertices(m)) s += (s.empty() ? "" : " ") + g.label(v);
    return s.empty() ? "-" : s;
}

std::string line_labels(const Graph& g, const std::vector<Move>& line) {
    std::string s;
    for (const auto& m : line)
        s += (s.empty() ? "" : " ") + std::string(m.player == Player::Dominator ? "d:" : "s:") + g.label(m.vertex);
    return s;
}

int cmd_generate(const std::string& family, const std::vector<int>& params, const std::string& format,
                 std::ostream& out) {
    auto fmt = parse_format_name(format);
    if (!fmt) throw UsageError("unknown format " + format);
    out << serialize_graph(generate_family(family, params), *fmt) << '\n';
    return kExitOk;
}

int cmd_classify(const Graph& g, const SolverConfig& cfg, bool as_json, std::ostream& out) {
    GraphFlags flags = validate(g);
    OutcomeResult r = classify_outcome(g, cfg);
    json j{{"vertices", g.order()},         {"edges", g.size()},
           {"cubic", flags.cubic},          {"connected", flags.connected},
           {"bipartite", flags.bipartite},  {"class", to_string(r.cls)},
           {"d_game", to_string(r.d_game)}, {"s_game", to_string(r.s_game)}};
    std::string factors;
    if (flags.cubic) {
        for (FactorKind k : {FactorKind::Diamond, FactorKind::Triangle, FactorKind::Claw}) {
            bool has = find_factor(g, k).has_value();
            j[to_string(k) + "_factor"] = has;
            factors += ", " + to_string(k) + "-factor: " + (has ? "yes" : "no");
        }
        if (g.order() >= 6) {
            StructureReport s = classify_structure(g);
            j["structure"] = {{"t1", s.t1}, {"t2", s.t2}, {"t3", s.t3}, {"k1", s.k1}, {"k2", s.k2},
                              {"triangles", s.triangles.size()}, {"diamonds", s.diamonds.size()}};
        }
    }
    if (as_json) {
        out << j.dump(2) << '\n';
    } else {
        out << "class: " << to_string(r.cls) << factors << '\n';
        out << "d-game: " << to_string(r.d_game) << ", s-game: " << to_string(r.s_game) << '\n';
        out << "vertices: " << g.order() << ", edges: " << g.size() << ", cubic: " << (flags.cubic ? "yes" : "no")
            << ", connected: " << (flags.connected ? "yes" : "no")
            << ", bipartite: " << (flags.bipartite ? "yes" : "no") << '\n';
        if (j.contains("structure")) {
            const auto& s = j["structure"];
            out << "t1=" << s["t1"] << " t2=" << s["t2"] << " t3=" << s["t3"] << " k1=" << s["k1"]
                << " k2=" << s["k2"] << '\n';
        }
    }
    return r.cls == OutcomeClass::Unknown ? kExitBudget : kExitOk;
}

int cmd_solve(const Graph& g, Player first, const SolverConfig& cfg, bool as_json, std::ostream& out) {
    SolveResult r = solve(g, first, cfg);
    if (as_json) {
        json j{{"winner", to_string(r.winner)},
               {"best_move", r.best_move ? json(g.label(*r.best_move)) : json(nullptr)},
               {"principal_line", line_labels(g, r.principal_line)},
               {"stats", json::parse(r.stats.to_json())}};
        out << j.dump(2) << '\n';
    } else {
        out << "winner: " << to_string(r.winner) << '\n';
        if (r.best_move) out << "best move: " << g.label(*r.best_move) << '\n';
        if (!r.principal_line.empty()) out << "line: " << line_labels(g, r.principal_line) << '\n';
        out << "nodes: " << r.stats.nodes << '\n';
    }
    return r.known() ? kExitOk : kExitBudget;
}

int cmd_verify(const std::string& target, const std::vector<int>& params, const std::string& out_path,
               unsigned threads, const SolverConfig& cfg, bool as_json, std::ostream& out) {
    std::vector<TheoremCase> suite;
    if (target == "all" || target == "default") {
        suite = default_suite();
    } else {
        auto ids = theorem_ids();
        if (std::find(ids.begin(), ids.end(), target) == ids.end()) {
            std::string known;
            for (const auto& i : ids) known += " " + i;
            throw UsageError("unknown suite or theorem '" + target + "'; known: all" + known);
        }
        suite = theorem_cases(target, params);
    }
    CampaignSummary s = run_campaign(suite, out_path, cfg, threads);
    out << (as_json ? s.to_json() + "\n" : s.to_text());
    if (s.failed) return kExitVerdictFail;
    return s.inconclusive ? kExitBudget : kExitOk;
}

void print_position(const Graph& g, const Position& p, std::ostream& out) {
    out << "dominator: " << labels(g, p.dominator()) << " | staller: " << labels(g, p.staller())
        << " | free: " << labels(g, p.free_mask()) << '\n';
}

int cmd_play(const Graph& g, Player human, Player first, bool hints, const SolverConfig& cfg, std::istream& in,
             std::ostream& out) {
    WinningSetSystem w = winning_sets(g);
    Position p(g.order(), first);
    Solver solver(cfg);
    out << "you play " << to_string(human) << "; enter a vertex id or label, 'quit' to stop\n";
    for (;;) {
        GameStatus st = status(p, w);
        print_position(g, p, out);
        if (st != GameStatus::Ongoing) {
            out << "winner: " << (st == GameStatus::StallerWon ? "staller" : "dominator") << '\n';
            return kExitOk;
        }
        if (p.to_move() != human) {
            Vertex v;
            try {
                v = solver.best_response(w, p);
            } catch (const BudgetExhausted& e) {
                out << "engine: " << e.what() << '\n';
                return kExitBudget;
            }
            out << "engine plays " << g.label(v) << '\n';
            p = apply_move(p, v, w);
            continue;
        }
        if (hints) {
            Threats t = immediate_threats(p, w);
            if (t.staller_wins_now) out << "hint: completing move(s) " << labels(g, t.staller_wins_now) << '\n';
            if (t.dominator_forced)
                out << "hint: forced block(s) " << labels(g, t.dominator_forced)
                    << (t.double_trap() ? " (double trap)" : "") << '\n';
            if (human == Player::Staller)
                if (auto v = find_double_trap_move(p, w)) out << "hint: double trap available at " << g.label(*v) << '\n';
        }
        out << "> " << std::flush;
        std::string tok;
        if (!std::getline(in, tok)) {
            out << "\nend of input\n";
            return kExitOk;
        }
        tok.erase(0, tok.find_first_not_of(" \t\r"));
        tok.erase(tok.find_last_not_of(" \t\r") + 1);
        if (tok.empty()) continue;
        if (tok == "quit" || tok == "q") return kExitOk;
        std::optional<Vertex> v = g.find_label(tok);
        if (!v && std::all_of(tok.begin(), tok.end(), ::isdigit)) {
            int id = std::stoi(tok);
            if (id < g.order()) v = id;
        }
        if (!v || !p.is_free(*v)) {
            out << "illegal move '" << tok << "'; legal: " << labels(g, legal_moves(p, w)) << '\n';
            continue;
        }
        p = apply_move(p, *v, w);
    }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Maker-Breaker total domination toolkit", "mbtd"};
    app.require_subcommand(1);
    bool as_json = false;
    std::uint64_t budget = 0;
    app.add_flag("--json", as_json, "machine-readable output");
    app.add_option("--budget", budget, "solver node budget (default: $MBTD_BUDGET or 2e9)");

    std::string family, format = "json";
    std::vector<int> gen_params;
    auto* gen = app.add_subcommand("generate", "print a generated graph");
    gen->add_option("family", family, "generator family")->required();
    gen->add_option("params", gen_params, "integer parameters");
    gen->add_option("--format", format, "json or graph6");

    std::string graph_spec = "-";
    auto* cls = app.add_subcommand("classify", "structure and outcome class");
    cls->add_option("graph", graph_spec, "file, '-' or family:params");

    std::string first = "dominator";
    auto* slv = app.add_subcommand("solve", "exact winner from the empty board");
    slv->add_option("graph", graph_spec, "file, '-' or family:params");
    slv->add_option("--first", first, "dominator or staller")->required();

    std::string target, out_path;
    std::vector<int> verify_params;
    unsigned threads = 0;
    auto* ver = app.add_subcommand("verify", "run a verification suite or one theorem");
    ver->add_option("target", target, "all, or a theorem id (Intro, T1..T6, GP1, L1..L6, Remark)")->required();
    ver->add_option("params", verify_params, "restrict parametrized cases");
    ver->add_option("--out", out_path, "write <out>.json and <out>.txt");
    ver->add_option("--threads", threads, "worker threads (0: all cores)");

    std::string as_role;
    bool hints = false;
    auto* ply = app.add_subcommand("play", "play against the solver");
    ply->add_option("graph", graph_spec, "file or family:params")->required();
    ply->add_option("--as", as_role, "dominator or staller")->required();
    ply->add_option("--first", first, "who moves first (default dominator)");
    ply->add_flag("--hints", hints, "show threats and traps");

    int port = 0;
    std::string host = "127.0.0.1", snapshots;
    auto* srv = app.add_subcommand("serve", "HTTP game service");
    srv->add_option("--port", port, "port (default: $MBTD_PORT or 8080)");
    srv->add_option("--host", host, "bind address");
    srv->add_option("--snapshots", snapshots, "directory for session snapshots");

    for (auto* sub : {gen, cls, slv, ver, ply, srv}) {
        sub->add_flag("--json", as_json, "machine-readable output");
        sub->add_option("--budget", budget, "solver node budget");
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(std::move(rev));
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        SolverConfig cfg = solver_config(budget);
        if (*gen) return cmd_generate(family, gen_params, format, out);
        if (*cls) return cmd_classify(load_graph(graph_spec, in), cfg, as_json, out);
        if (*slv) return cmd_solve(load_graph(graph_spec, in), player_arg(first), cfg, as_json, out);
        if (*ver) return cmd_verify(target, verify_params, out_path, threads, cfg, as_json, out);
        if (*ply) {
            if (graph_spec == "-") throw UsageError("play reads moves from stdin; pass the graph as a file");
            return cmd_play(load_graph(graph_spec, in), player_arg(as_role), player_arg(first), hints, cfg, in, out);
        }
        if (*srv) {
            if (!port) {
                const char* env = std::getenv("MBTD_PORT");
                port = env && *env ? std::atoi(env) : 8080;
            }
            ServiceConfig sc;
            sc.engine = cfg;
            sc.snapshot_dir = snapshots;
            GameService service(sc);
            err << "listening on " << host << ':' << port << '\n';
            return serve(service, host, port) ? kExitOk : kExitUsage;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const GraphError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const BudgetExhausted& e) {
        err << "error: " << e.what() << '\n';
        return kExitBudget;
    }
    return kExitUsage;
}

}  // namespace mbtd
