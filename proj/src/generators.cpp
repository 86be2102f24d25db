#include "mbtd/generators.hpp"

#include <algorithm>
#include <string>

namespace mbtd {

namespace {

std::string idx(const char* prefix, int i) { return prefix + std::to_string(i); }

std::string at(const char* name, const char* part, int i) {
    return std::string(name) + "@" + part + std::to_string(i);
}

}  // namespace

Graph generate_gp(int n, int k) {
    if (n < 3) throw GraphError("GP(n,k) requires n >= 3");
    if (k < 1 || 2 * k >= n) throw GraphError("GP(n,k) requires 1 <= k < n/2");
    GraphBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex(idx("u", i));
    for (int i = 0; i < n; ++i) b.add_vertex(idx("v", i));
    for (int i = 0; i < n; ++i) {
        b.add_edge(i, (i + 1) % n);
        b.add_edge(i, n + i);
        b.add_edge(n + i, n + (i + k) % n);
    }
    return b.build();
}

Graph generate_necklace(NecklaceKind kind, int count) {
    if (count < 2) throw GraphError("necklace requires at least two parts");
    GraphBuilder b;
    if (kind == NecklaceKind::Diamond) {
        for (int i = 1; i <= count; ++i)
            b.add_diamond(at("z1", "D", i), at("z2", "D", i), at("z3", "D", i), at("z4", "D", i));
        for (int i = 1; i <= count; ++i) b.add_edge(at("z3", "D", i), at("z1", "D", i % count + 1));
        return b.build();
    }
    for (int i = 1; i <= count; ++i) {
        b.add_edge(idx("t", i), idx("x", i));
        b.add_edge(idx("t", i), idx("y", i));
        b.add_edge(idx("t", i), idx("z", i));
    }
    if (count == 2) {
        b.add_edge("x1", "x2");
        b.add_edge("y1", "y2");
        b.add_edge("z1", "z2");
        b.add_edge("x1", "y2");
        b.add_edge("y1", "z2");
        b.add_edge("z1", "x2");
    } else {
        for (int i = 1; i <= count; ++i) {
            int j = i % count + 1;
            for (const char* leaf : {"x", "y", "z"}) b.add_edge(idx(leaf, i), idx(leaf, j));
        }
    }
    return b.build();
}

Graph truncate(const Graph& g) {
    for (Vertex v = 0; v < g.order(); ++v)
        if (g.degree(v) != 3) throw GraphError("truncate requires a cubic graph");
    // Corner (v, j) sits on the triangle of v and points at its j-th neighbor.
    GraphBuilder b;
    auto corner = [&](Vertex v, int j) { return g.label(v) + "." + std::to_string(j); };
    for (Vertex v = 0; v < g.order(); ++v) b.add_triangle(corner(v, 0), corner(v, 1), corner(v, 2));
    for (Vertex v = 0; v < g.order(); ++v) {
        const auto& row = g.neighbors(v);
        for (int j = 0; j < 3; ++j) {
            Vertex w = row[j];
            if (w < v) continue;
            const auto& back = g.neighbors(w);
            int k = static_cast<int>(std::find(back.begin(), back.end(), v) - back.begin());
            b.add_edge(corner(v, j), corner(w, k));
        }
    }
    return b.build();
}

Graph generate_bipartite_circulant(int m) {
    if (m < 3) throw GraphError("bipartite circulant requires m >= 3");
    GraphBuilder b;
    for (int i = 0; i < m; ++i) b.add_vertex(idx("u", i));
    for (int i = 0; i < m; ++i) b.add_vertex(idx("v", i));
    for (int i = 0; i < m; ++i)
        for (int d = 0; d < 3; ++d) b.add_edge(i, m + (i + d) % m);
    return b.build();
}

Graph generate_eta() {
    GraphBuilder b;
    b.add_diamond("z1", "z2", "z3", "z4");
    b.add_triangle("a1", "a2", "a3");
    b.add_triangle("b1", "b2", "b3");
    b.add_diamond("k1", "k2", "k3", "k4");
    b.add_diamond("m1", "m2", "m3", "m4");
    b.add_edge("z1", "a1");
    b.add_edge("z3", "b1");
    b.add_edge("a2", "k1");
    b.add_edge("a3", "k3");
    b.add_edge("b2", "m1");
    b.add_edge("b3", "m3");
    return b.build();
}

Graph generate_omega(int chain_len) {
    if (chain_len < 1) throw GraphError("omega requires a chain of at least one diamond");
    GraphBuilder b;
    b.add_triangle("a1", "a2", "a3");
    b.add_triangle("b1", "b2", "b3");
    b.add_diamond("h1", "h2", "h3", "h4");
    for (int i = 1; i <= chain_len; ++i)
        b.add_diamond(at("z1", "D", i), at("z2", "D", i), at("z3", "D", i), at("z4", "D", i));
    b.add_edge("a1", "b1");
    b.add_edge("b2", "h1");
    b.add_edge("b3", "h3");
    b.add_edge("a2", at("z1", "D", 1));
    for (int i = 1; i < chain_len; ++i) b.add_edge(at("z3", "D", i), at("z1", "D", i + 1));
    b.add_edge(at("z3", "D", chain_len), "a3");
    return b.build();
}

Graph complete_graph(int n) {
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) es.emplace_back(i, j);
    return Graph(n, es);
}

Graph cycle_graph(int n) {
    if (n < 3) throw GraphError("cycle requires n >= 3");
    std::vector<Edge> es;
    for (int i = 0; i < n; ++i) es.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
    return Graph(n, es);
}

Graph star_graph(int leaves) {
    std::vector<Edge> es;
    for (int i = 1; i <= leaves; ++i) es.emplace_back(0, i);
    return Graph(leaves + 1, es);
}

Graph complete_bipartite(int a, int b) {
    std::vector<Edge> es;
    for (int i = 0; i < a; ++i)
        for (int j = 0; j < b; ++j) es.emplace_back(i, a + j);
    return Graph(a + b, es);
}

const std::vector<GeneratorInfo>& generator_catalog() {
    static const std::vector<GeneratorInfo> catalog{
        {"gp", {"n", "k"}, "generalized Petersen graph GP(n,k)"},
        {"prism", {}, "triangular prism GP(3,1)"},
        {"diamond-necklace", {"count"}, "necklace of diamonds"},
        {"claw-necklace", {"count"}, "necklace of claws"},
        {"truncated-k4", {}, "K4 with every vertex replaced by a triangle"},
        {"truncated-gp", {"n", "k"}, "truncation of GP(n,k)"},
        {"circulant", {"m"}, "cubic bipartite circulant on 2m vertices"},
        {"eta", {}, "the 18-vertex graph eta"},
        {"omega", {"chain_len"}, "omega with a chain of diamonds"},
        {"complete", {"n"}, "complete graph K_n"},
        {"cycle", {"n"}, "cycle C_n"},
        {"star", {"leaves"}, "star K_{1,leaves}"},
        {"complete-bipartite", {"a", "b"}, "complete bipartite graph K_{a,b}"},
    };
    return catalog;
}

Graph generate_family(std::string_view name, std::span<const int> p) {
    auto it = std::find_if(generator_catalog().begin(), generator_catalog().end(),
                           [&](const GeneratorInfo& g) { return g.name == name; });
    if (it == generator_catalog().end()) throw GraphError("unknown family: " + std::string(name));
    if (p.size() != it->params.size())
        throw GraphError(std::string(name) + " expects " + std::to_string(it->params.size()) + " parameter(s)");
    if (name == "gp") return generate_gp(p[0], p[1]);
    if (name == "prism") return generate_gp(3, 1);
    if (name == "diamond-necklace") return generate_necklace(NecklaceKind::Diamond, p[0]);
    if (name == "claw-necklace") return generate_necklace(NecklaceKind::Claw, p[0]);
    if (name == "truncated-k4") return truncate(complete_graph(4));
    if (name == "truncated-gp") return truncate(generate_gp(p[0], p[1]));
    if (name == "circulant") return generate_bipartite_circulant(p[0]);
    if (name == "eta") return generate_eta();
    if (name == "omega") return generate_omega(p[0]);
    if (name == "complete") return complete_graph(p[0]);
    if (name == "cycle") return cycle_graph(p[0]);
    if (name == "star") return star_graph(p[0]);
    return complete_bipartite(p[0], p[1]);
}

}  // namespace mbtd
