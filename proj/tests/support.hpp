#pragma once
// Independent oracles and fixture loading shared by the test executables.
// Nothing here calls into the solver or the structure code.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mbtd/game.hpp"
#include "mbtd/graph.hpp"

namespace testsupport {

using mbtd::Graph;
using mbtd::Vertex;

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct NamedGraph {
    std::string name;
    Graph graph;
};

/// Every graph under fixtures/graphs, sorted by name.
inline std::vector<NamedGraph> fixture_graphs() {
    namespace fs = std::filesystem;
    std::vector<NamedGraph> out;
    for (const auto& e : fs::directory_iterator(fs::path(MBTD_FIXTURE_DIR) / "graphs")) {
        auto text = read_file(e.path());
        out.push_back({e.path().stem().string(), mbtd::parse_graph_auto(text)});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    return out;
}

/// Plain adjacency matrix view, rebuilt from the edge list.
inline std::vector<std::vector<bool>> matrix(const Graph& g) {
    std::vector<std::vector<bool>> m(g.order(), std::vector<bool>(g.order(), false));
    for (auto [a, b] : g.edges()) m[a][b] = m[b][a] = true;
    return m;
}

/// Backtracking isomorphism test by degree-respecting vertex assignment.
inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.order() != b.order() || a.size() != b.size()) return false;
    int n = a.order();
    auto ma = matrix(a), mb = matrix(b);
    std::vector<int> map(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(int)> go = [&](int i) {
        if (i == n) return true;
        for (int j = 0; j < n; ++j) {
            if (used[j] || a.degree(i) != b.degree(j)) continue;
            bool ok = true;
            for (int k = 0; k < i && ok; ++k) ok = ma[i][k] == mb[j][map[k]];
            if (!ok) continue;
            map[i] = j;
            used[j] = true;
            if (go(i + 1)) return true;
            used[j] = false;
        }
        map[i] = -1;
        return false;
    };
    return go(0);
}

/// Shortest cycle length by BFS from every vertex; 0 for forests.
inline int girth(const Graph& g) {
    int best = 0;
    for (Vertex s = 0; s < g.order(); ++s) {
        std::vector<int> dist(g.order(), -1), parent(g.order(), -1);
        std::queue<Vertex> q;
        dist[s] = 0;
        q.push(s);
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop();
            for (Vertex y : g.neighbors(x)) {
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    q.push(y);
                } else if (parent[x] != y) {
                    int len = dist[x] + dist[y] + 1;
                    if (best == 0 || len < best) best = len;
                }
            }
        }
    }
    return best;
}

/// Tries every 2-colouring (n <= 20).
inline bool two_colourable(const Graph& g) {
    int n = g.order();
    auto edges = g.edges();
    for (std::uint32_t c = 0; c < (1u << n); ++c) {
        bool ok = true;
        for (auto [a, b] : edges)
            if (((c >> a) & 1) == ((c >> b) & 1)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

/// Triangles by checking every vertex triple.
inline int triangle_count(const Graph& g) {
    auto m = matrix(g);
    int count = 0;
    for (int a = 0; a < g.order(); ++a)
        for (int b = a + 1; b < g.order(); ++b)
            for (int c = b + 1; c < g.order(); ++c) count += m[a][b] && m[b][c] && m[a][c];
    return count;
}

/// Full-tree minimax straight from the definition: Staller wins once she owns
/// N(v) for some v, Dominator once every N(v) contains one of his vertices.
/// No memo, no pruning, no move ordering.
class NaiveGame {
public:
    explicit NaiveGame(const Graph& g) : n_(g.order()) {
        for (Vertex v = 0; v < n_; ++v) {
            std::uint64_t m = 0;
            for (Vertex u : g.neighbors(v)) m |= std::uint64_t{1} << u;
            nbhd_.push_back(m);
        }
    }
    explicit NaiveGame(int n, std::vector<std::uint64_t> sets) : n_(n), nbhd_(std::move(sets)) {}

    /// True iff Staller wins from (d, s) with `staller_to_move`.
    bool staller_wins(std::uint64_t d, std::uint64_t s, bool staller_to_move) const {
        bool all_hit = true;
        for (auto m : nbhd_) {
            if (m & d) continue;
            all_hit = false;
            if ((m & ~s) == 0) return true;
        }
        if (all_hit) return false;
        std::uint64_t free = ~(d | s) & ((n_ == 64) ? ~0ULL : ((1ULL << n_) - 1));
        for (int v = 0; v < n_; ++v) {
            if (!(free >> v & 1)) continue;
            std::uint64_t b = 1ULL << v;
            bool r = staller_to_move ? staller_wins(d, s | b, false) : staller_wins(d | b, s, true);
            if (staller_to_move && r) return true;
            if (!staller_to_move && !r) return false;
        }
        return !staller_to_move;
    }

private:
    int n_;
    std::vector<std::uint64_t> nbhd_;
};

}  // namespace testsupport
