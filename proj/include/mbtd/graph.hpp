#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mbtd {

using Vertex = int;

// Vertex sets inside the game engine are 64-bit masks; graphs that are played
// on must therefore have at most 64 vertices.
using VertexMask = std::uint64_t;
inline constexpr int max_game_order = 64;

inline constexpr VertexMask bit(Vertex v) { return VertexMask{1} << v; }

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..n-1 with sorted adjacency rows and
/// optional per-vertex string labels. Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Throws GraphError on self-loops, duplicate edges or out-of-range ids.
    Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {});

    int order() const { return static_cast<int>(adjacency_.size()); }
    std::size_t size() const { return edge_count_; }

    const std::vector<Vertex>& neighbors(Vertex v) const { return adjacency_.at(v); }
    int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }
    bool adjacent(Vertex a, Vertex b) const;

    /// All edges (i < j), sorted lexicographically.
    std::vector<Edge> edges() const;

    bool has_labels() const { return !labels_.empty(); }
    /// Label of v, or its decimal id when the graph is unlabeled.
    std::string label(Vertex v) const;
    const std::vector<std::string>& labels() const { return labels_; }
    std::optional<Vertex> find_label(std::string_view name) const;
    /// Like find_label but throws GraphError when absent.
    Vertex vertex(std::string_view name) const;

    VertexMask neighbor_mask(Vertex v) const;
    VertexMask all_vertices_mask() const;

    Graph induced(std::span<const Vertex> vertices) const;
    /// Vertex v of this graph becomes vertex perm[v] of the result.
    Graph relabeled(std::span<const Vertex> perm) const;

    friend bool operator==(const Graph& a, const Graph& b) {
        return a.adjacency_ == b.adjacency_ && a.labels_ == b.labels_;
    }

private:
    std::vector<std::vector<Vertex>> adjacency_;
    std::vector<std::string> labels_;
    std::size_t edge_count_ = 0;
};

/// Incremental construction by label, used by generators and gadget templates.
class GraphBuilder {
public:
    Vertex add_vertex(std::string label);
    /// Adds the vertex if it does not exist yet.
    Vertex vertex(const std::string& label);
    void add_edge(Vertex a, Vertex b);
    void add_edge(const std::string& a, const std::string& b);
    void add_path(std::initializer_list<std::string> labels);
    void add_cycle(std::initializer_list<std::string> labels);
    /// K4 minus the edge {tip1, tip3}; the order is tip1, center2, tip3, center4.
    void add_diamond(const std::string& z1, const std::string& z2, const std::string& z3,
                     const std::string& z4);
    void add_triangle(const std::string& a, const std::string& b, const std::string& c);

    int order() const { return static_cast<int>(labels_.size()); }
    Graph build() const;

private:
    std::vector<std::string> labels_;
    std::vector<Edge> edges_;
};

enum class GraphFormat { JsonEdges, Graph6 };

Graph parse_graph(std::string_view text, GraphFormat format);
/// JSON when the first non-blank character is '{', graph6 otherwise.
Graph parse_graph_auto(std::string_view text);
/// Byte-stable: edges sorted, compact JSON, labels only when present.
std::string serialize_graph(const Graph& g, GraphFormat format);

std::optional<GraphFormat> parse_format_name(std::string_view name);

Graph disjoint_union(const Graph& a, const Graph& b);

}  // namespace mbtd
