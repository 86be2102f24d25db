#include "mbtd/gadgets.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mbtd/generators.hpp"

namespace mbtd {

using nlohmann::json;

std::vector<GadgetId> default_gadget_order() {
    return {GadgetId::G1, GadgetId::G4, GadgetId::ThreeClaws, GadgetId::Tau};
}

// ---- embedding search ------------------------------------------------------

namespace {

std::vector<Vertex> bfs_order(const Graph& t) {
    std::vector<Vertex> order;
    std::vector<bool> seen(t.order(), false);
    for (Vertex s = 0; s < t.order(); ++s) {
        if (seen[s]) continue;
        seen[s] = true;
        order.push_back(s);
        for (std::size_t head = order.size() - 1; head < order.size(); ++head)
            for (Vertex w : t.neighbors(order[head]))
                if (!seen[w]) {
                    seen[w] = true;
                    order.push_back(w);
                }
    }
    return order;
}

class Matcher {
public:
    Matcher(const Graph& host, const Graph& t, VertexMask free, std::size_t limit)
        : host_(host), t_(t), free_(free), limit_(limit), order_(bfs_order(t)), map_(t.order(), -1) {}

    std::vector<std::vector<Vertex>> run() {
        extend(0, 0);
        return std::move(found_);
    }

private:
    void extend(std::size_t k, VertexMask used) {
        if (found_.size() >= limit_) return;
        if (k == order_.size()) {
            found_.push_back(map_);
            return;
        }
        Vertex tv = order_[k];
        const bool interior = t_.degree(tv) == 3;
        VertexMask cand = free_ & ~used;
        for (Vertex tw : t_.neighbors(tv))
            if (map_[tw] >= 0) cand &= host_.neighbor_mask(map_[tw]);
        while (cand) {
            Vertex h = std::countr_zero(cand);
            cand &= cand - 1;
            if (interior && host_.degree(h) != t_.degree(tv)) continue;
            map_[tv] = h;
            extend(k + 1, used | bit(h));
            map_[tv] = -1;
            if (found_.size() >= limit_) return;
        }
    }

    const Graph& host_;
    const Graph& t_;
    VertexMask free_;
    std::size_t limit_;
    std::vector<Vertex> order_;
    std::vector<Vertex> map_;
    std::vector<std::vector<Vertex>> found_;
};

}  // namespace

std::vector<GadgetEmbedding> find_embeddings(const Graph& g, const Position& p, GadgetId id, std::size_t limit) {
    Graph t = gadget_template(id);
    std::vector<GadgetEmbedding> out;
    if (t.order() > g.order()) return out;
    for (auto& m : Matcher(g, t, p.free_mask(), limit).run()) out.push_back({id, std::move(m), p.free_mask()});
    return out;
}

std::optional<GadgetEmbedding> find_gadget(const Graph& g, const Position& p, const std::vector<GadgetId>& order) {
    for (GadgetId id : order) {
        auto e = find_embeddings(g, p, id, 1);
        if (!e.empty()) return e.front();
    }
    return std::nullopt;
}

// ---- certificates ----------------------------------------------------------

namespace {

json node_to_json(const Graph& b, const CertificateNode& n) {
    json replies = json::array();
    for (const auto& [group, next] : n.replies) {
        json on = json::array();
        for (Vertex v : group) on.push_back(b.label(v));
        replies.push_back({{"on", on}, {"next", node_to_json(b, next)}});
    }
    return {{"play", b.label(n.play)}, {"replies", replies}};
}

CertificateNode node_from_json(const Graph& b, const json& j) {
    CertificateNode n;
    n.play = b.vertex(j.at("play").get<std::string>());
    for (const auto& r : j.at("replies")) {
        std::vector<Vertex> group;
        for (const auto& l : r.at("on")) group.push_back(b.vertex(l.get<std::string>()));
        n.replies.emplace_back(std::move(group), node_from_json(b, r.at("next")));
    }
    return n;
}

std::string shape(const CertificateNode& n) {
    std::string s = std::to_string(n.play) + "(";
    for (const auto& [group, next] : n.replies) {
        for (Vertex v : group) s += std::to_string(v) + ",";
        s += ":" + shape(next) + ";";
    }
    return s + ")";
}

class CertificateBuilder {
public:
    CertificateBuilder(const WinningSetSystem& w, const SolverConfig& cfg) : w_(w), solver_(cfg) {}

    CertificateNode build(const Position& p) {
        CertificateNode n;
        n.play = choose(p);
        Position after = p.play(n.play);
        if (status(after, w_) == GameStatus::StallerWon) return n;
        std::vector<std::pair<std::string, std::size_t>> keys;
        for (Vertex y : mask_to_vertices(after.free_mask())) {
            CertificateNode child = build(after.play(y));
            std::string key = shape(child);
            auto it = std::find_if(keys.begin(), keys.end(), [&](const auto& k) { return k.first == key; });
            if (it != keys.end()) {
                n.replies[it->second].first.push_back(y);
            } else {
                keys.emplace_back(std::move(key), n.replies.size());
                n.replies.emplace_back(std::vector<Vertex>{y}, std::move(child));
            }
        }
        return n;
    }

private:
    Vertex choose(const Position& p) {
        if (VertexMask now = immediate_threats(p, w_).staller_wins_now) return std::countr_zero(now);
        Vertex best = -1;
        int best_rank = -1;
        for (Vertex x : mask_to_vertices(p.free_mask())) {
            Position after = p.play(x);
            if (solver_.winner(w_, after) != Winner::Staller) continue;
            Threats t = immediate_threats(after, w_);
            int rank = t.double_trap() ? 2 : (t.dominator_forced ? 1 : 0);
            if (rank > best_rank) best = x, best_rank = rank;
            if (rank == 2) break;
        }
        if (best < 0) throw std::logic_error("certificate: no winning Staller move");
        return best;
    }

    const WinningSetSystem& w_;
    Solver solver_;
};

bool check_node(const Position& p, const CertificateNode& n, const WinningSetSystem& w) {
    if (n.play < 0 || n.play >= p.order() || !p.is_free(n.play)) return false;
    Position after = p.play(n.play);
    if (status(after, w) == GameStatus::StallerWon) return n.replies.empty();
    VertexMask covered = 0;
    for (const auto& [group, next] : n.replies)
        for (Vertex y : group) {
            if (y < 0 || y >= p.order() || !after.is_free(y) || (covered & bit(y))) return false;
            covered |= bit(y);
            Position reply = after.play(y);
            if (status(reply, w) != GameStatus::Ongoing) return false;
            if (!check_node(reply, next, w)) return false;
        }
    return covered == after.free_mask();
}

Script node_script(const Graph& b, const CertificateNode& n) {
    std::vector<ScriptBranch> branches;
    for (const auto& [group, next] : n.replies) {
        std::vector<std::string> on_labels;
        for (Vertex v : group) on_labels.push_back(b.label(v));
        branches.push_back(on(std::move(on_labels), node_script(b, next)));
    }
    return step(b.label(n.play), std::move(branches));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::optional<Certificate> build_certificate(const Graph& board, const WinningSetSystem& w,
                                             const SolverConfig& cfg) {
    Position start(board.order(), Player::Staller);
    CertificateBuilder builder(w, cfg);
    {
        Solver probe(cfg);
        if (probe.winner(w, start) != Winner::Staller) return std::nullopt;
    }
    return Certificate{board, builder.build(start)};
}

bool check_certificate(const Certificate& c, const WinningSetSystem& w) {
    if (w.order() != c.board.order()) return false;
    return check_node(Position(c.board.order(), Player::Staller), c.root, w);
}

std::size_t certificate_size(const CertificateNode& n) {
    std::size_t total = 1;
    for (const auto& r : n.replies) total += certificate_size(r.second);
    return total;
}

std::string certificate_to_json(const Certificate& c) {
    json j{{"board", json::parse(serialize_graph(c.board, GraphFormat::JsonEdges))},
           {"root", node_to_json(c.board, c.root)}};
    return j.dump(1);
}

Certificate certificate_from_json(std::string_view text) {
    try {
        json j = json::parse(text);
        Certificate c;
        c.board = parse_graph(j.at("board").dump(), GraphFormat::JsonEdges);
        c.root = node_from_json(c.board, j.at("root"));
        return c;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("malformed certificate: ") + e.what());
    }
}

Script certificate_script(const Certificate& c) { return node_script(c.board, c.root); }

// ---- τ ---------------------------------------------------------------------

TauSearch extract_tau(const SolverConfig& cfg) {
    constexpr int n = 9;
    const Graph gp = generate_gp(n, 2);
    auto u = [](int i) { return ((i % n) + n) % n; };
    auto v = [&](int i) { return n + u(i); };
    TauSearch out;
    Solver solver(cfg);
    for (int a = 0; a < 2 * n; ++a)
        for (int b = a + 1; b < 2 * n; ++b)
            for (int c = b + 1; c < 2 * n; ++c) {
                ++out.subsets_examined;
                const VertexMask removed = bit(a) | bit(b) | bit(c);
                auto hits = [&](Vertex x, Vertex y) { return (removed & (bit(x) | bit(y))) != 0; };
                int rot = -1;
                for (int r = 0; r < n && rot < 0; ++r)
                    if (hits(u(8 + r), u(r)) && hits(v(7 + r), v(r)) && hits(v(8 + r), v(1 + r))) rot = r;
                if (rot < 0) continue;
                ++out.linearizable;

                GraphBuilder builder;
                std::map<Vertex, std::string> name;
                for (const char* side : {"u", "v"})
                    for (int j = 0; j < n; ++j) {
                        Vertex host = side[0] == 'u' ? u(j + rot) : v(j + rot);
                        if (removed & bit(host)) continue;
                        name[host] = side + std::to_string(j);
                        builder.add_vertex(name[host]);
                    }
                for (auto [x, y] : gp.edges())
                    if (name.count(x) && name.count(y)) builder.add_edge(name[x], name[y]);
                Graph tau = builder.build();

                WinningSetSystem w = interior_winning_sets(tau, 3);
                if (w.size() == 0) continue;
                ++out.solver_calls;
                if (solver.winner(w, Position(tau.order(), Player::Staller)) != Winner::Staller) continue;
                auto cert = build_certificate(tau, w, cfg);
                if (!cert || !check_certificate(*cert, w)) throw std::logic_error("tau certificate failed to verify");
                out.tau = std::move(tau);
                out.certificate = std::move(*cert);
                return out;
            }
    throw std::runtime_error("no Staller-first subgraph found");
}

std::string fixture_path(const std::string& relative) {
    const char* env = std::getenv("MBTD_FIXTURES");
    std::string root = env && *env ? env : MBTD_FIXTURE_DIR;
    return root + "/" + relative;
}

Graph load_tau() { return parse_graph_auto(read_file(fixture_path("gadgets/tau.json"))); }

Certificate load_tau_certificate() { return certificate_from_json(read_file(fixture_path("gadgets/tau_certificate.json"))); }

}  // namespace mbtd
