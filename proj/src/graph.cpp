#include "mbtd/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include <json.hpp>

namespace mbtd {

using nlohmann::json;

Graph::Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels)
    : adjacency_(static_cast<std::size_t>(n)), labels_(std::move(labels)) {
    if (n < 0) throw GraphError("negative vertex count");
    if (!labels_.empty() && labels_.size() != adjacency_.size())
        throw GraphError("label count does not match vertex count");
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= n || b >= n)
            throw GraphError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                             ") out of range for n=" + std::to_string(n));
        if (a == b) throw GraphError("self-loop at vertex " + std::to_string(a));
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
    }
    for (std::size_t v = 0; v < adjacency_.size(); ++v) {
        auto& row = adjacency_[v];
        std::sort(row.begin(), row.end());
        if (std::adjacent_find(row.begin(), row.end()) != row.end())
            throw GraphError("duplicate edge at vertex " + std::to_string(v));
    }
    edge_count_ = edges.size();
    if (!labels_.empty()) {
        std::set<std::string> seen;
        for (const auto& l : labels_)
            if (!l.empty() && !seen.insert(l).second) throw GraphError("duplicate label '" + l + "'");
    }
}

bool Graph::adjacent(Vertex a, Vertex b) const {
    const auto& row = adjacency_.at(a);
    return std::binary_search(row.begin(), row.end(), b);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex v = 0; v < order(); ++v)
        for (Vertex w : adjacency_[v])
            if (v < w) out.emplace_back(v, w);
    return out;
}

std::string Graph::label(Vertex v) const {
    if (labels_.empty() || labels_.at(v).empty()) return std::to_string(v);
    return labels_[v];
}

std::optional<Vertex> Graph::find_label(std::string_view name) const {
    for (std::size_t v = 0; v < labels_.size(); ++v)
        if (labels_[v] == name) return static_cast<Vertex>(v);
    return std::nullopt;
}

Vertex Graph::vertex(std::string_view name) const {
    if (auto v = find_label(name)) return *v;
    throw GraphError("no vertex labeled '" + std::string(name) + "'");
}

VertexMask Graph::neighbor_mask(Vertex v) const {
    if (order() > max_game_order) throw GraphError("graph too large for bitmask play");
    VertexMask m = 0;
    for (Vertex w : adjacency_.at(v)) m |= bit(w);
    return m;
}

VertexMask Graph::all_vertices_mask() const {
    if (order() > max_game_order) throw GraphError("graph too large for bitmask play");
    return order() == 64 ? ~VertexMask{0} : (bit(order()) - 1);
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
    std::vector<int> index(adjacency_.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        if (index.at(vertices[i]) != -1) throw GraphError("repeated vertex in induced()");
        index[vertices[i]] = static_cast<int>(i);
    }
    std::vector<Edge> es;
    std::vector<std::string> ls;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        Vertex v = vertices[i];
        if (!labels_.empty()) ls.push_back(labels_[v]);
        for (Vertex w : adjacency_[v])
            if (index[w] > static_cast<int>(i)) es.emplace_back(static_cast<Vertex>(i), index[w]);
    }
    return Graph(static_cast<int>(vertices.size()), es, std::move(ls));
}

Graph Graph::relabeled(std::span<const Vertex> perm) const {
    if (perm.size() != adjacency_.size()) throw GraphError("permutation size mismatch");
    std::vector<bool> hit(perm.size(), false);
    for (Vertex p : perm) {
        if (p < 0 || p >= order() || hit[p]) throw GraphError("not a permutation");
        hit[p] = true;
    }
    std::vector<Edge> es;
    for (auto [a, b] : edges()) es.emplace_back(perm[a], perm[b]);
    std::vector<std::string> ls;
    if (!labels_.empty()) {
        ls.resize(labels_.size());
        for (std::size_t v = 0; v < labels_.size(); ++v) ls[perm[v]] = labels_[v];
    }
    return Graph(order(), es, std::move(ls));
}

Vertex GraphBuilder::add_vertex(std::string label) {
    if (std::find(labels_.begin(), labels_.end(), label) != labels_.end())
        throw GraphError("duplicate label '" + label + "'");
    labels_.push_back(std::move(label));
    return static_cast<Vertex>(labels_.size() - 1);
}

Vertex GraphBuilder::vertex(const std::string& label) {
    auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it != labels_.end()) return static_cast<Vertex>(it - labels_.begin());
    return add_vertex(label);
}

void GraphBuilder::add_edge(Vertex a, Vertex b) { edges_.emplace_back(std::min(a, b), std::max(a, b)); }

void GraphBuilder::add_edge(const std::string& a, const std::string& b) {
    Vertex va = vertex(a);
    Vertex vb = vertex(b);
    add_edge(va, vb);
}

void GraphBuilder::add_path(std::initializer_list<std::string> labels) {
    const std::string* prev = nullptr;
    for (const auto& l : labels) {
        if (prev) add_edge(*prev, l);
        prev = &l;
    }
}

void GraphBuilder::add_cycle(std::initializer_list<std::string> labels) {
    add_path(labels);
    if (labels.size() > 2) add_edge(*(labels.end() - 1), *labels.begin());
}

void GraphBuilder::add_diamond(const std::string& z1, const std::string& z2, const std::string& z3,
                               const std::string& z4) {
    add_cycle({z1, z2, z3, z4});
    add_edge(z2, z4);
}

void GraphBuilder::add_triangle(const std::string& a, const std::string& b, const std::string& c) {
    add_cycle({a, b, c});
}

Graph GraphBuilder::build() const { return Graph(order(), edges_, labels_); }

namespace {

Graph parse_json_edges(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw GraphError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc["n"].is_number_integer())
        throw GraphError("json-edges: missing integer field 'n'");
    int n = doc["n"].get<int>();
    if (n < 0) throw GraphError("json-edges: negative n");
    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        if (!doc["edges"].is_array()) throw GraphError("json-edges: 'edges' must be an array");
        for (const auto& e : doc["edges"]) {
            if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
                throw GraphError("json-edges: each edge must be a pair of integers");
            edges.emplace_back(e[0].get<int>(), e[1].get<int>());
        }
    }
    std::vector<std::string> labels;
    if (doc.contains("labels")) {
        if (!doc["labels"].is_object()) throw GraphError("json-edges: 'labels' must be an object");
        labels.assign(static_cast<std::size_t>(n), "");
        for (const auto& [key, value] : doc["labels"].items()) {
            std::size_t pos = 0;
            int id = -1;
            try {
                id = std::stoi(key, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != key.size() || id < 0 || id >= n)
                throw GraphError("json-edges: bad label key '" + key + "'");
            if (!value.is_string()) throw GraphError("json-edges: label values must be strings");
            labels[id] = value.get<std::string>();
        }
    }
    return Graph(n, edges, std::move(labels));
}

Graph parse_graph6(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    if (text.starts_with(">>graph6<<")) text.remove_prefix(10);
    if (text.empty()) throw GraphError("graph6: empty input");
    for (char c : text)
        if (c < 63 || c > 126) throw GraphError("graph6: invalid character");
    int n = text[0] - 63;
    if (n > 62) throw GraphError("graph6: only graphs with at most 62 vertices are supported");
    std::size_t bits = static_cast<std::size_t>(n) * (n - 1) / 2;
    std::size_t body = (bits + 5) / 6;
    if (text.size() != 1 + body) throw GraphError("graph6: body length does not match vertex count");
    std::vector<Edge> edges;
    std::size_t k = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i, ++k) {
            int byte = text[1 + k / 6] - 63;
            if (byte & (1 << (5 - k % 6))) edges.emplace_back(i, j);
        }
    }
    for (; k < body * 6; ++k) {
        int byte = text[1 + k / 6] - 63;
        if (byte & (1 << (5 - k % 6))) throw GraphError("graph6: nonzero padding bits");
    }
    return Graph(n, edges);
}

std::string write_graph6(const Graph& g) {
    int n = g.order();
    if (n > 62) throw GraphError("graph6: only graphs with at most 62 vertices are supported");
    std::string out(1, static_cast<char>(n + 63));
    int acc = 0;
    int used = 0;
    for (int j = 1; j < n; ++j) {
        for (int i = 0; i < j; ++i) {
            acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
            if (++used == 6) {
                out.push_back(static_cast<char>(acc + 63));
                acc = 0;
                used = 0;
            }
        }
    }
    if (used > 0) out.push_back(static_cast<char>((acc << (6 - used)) + 63));
    return out;
}

std::string write_json_edges(const Graph& g) {
    json doc;
    doc["n"] = g.order();
    json edges = json::array();
    for (auto [a, b] : g.edges()) edges.push_back({a, b});
    doc["edges"] = std::move(edges);
    if (g.has_labels()) {
        // Keys in numeric order; nlohmann sorts object keys as strings.
        std::string out = doc.dump();
        out.pop_back();
        out += ",\"labels\":{";
        bool first = true;
        for (Vertex v = 0; v < g.order(); ++v) {
            if (g.labels()[v].empty()) continue;
            if (!first) out += ',';
            first = false;
            out += json(std::to_string(v)).dump() + ":" + json(g.labels()[v]).dump();
        }
        out += "}}";
        return out;
    }
    return doc.dump();
}

}  // namespace

Graph parse_graph(std::string_view text, GraphFormat format) {
    return format == GraphFormat::JsonEdges ? parse_json_edges(text) : parse_graph6(text);
}

Graph parse_graph_auto(std::string_view text) {
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string_view::npos && text[pos] == '{') return parse_json_edges(text);
    return parse_graph6(text);
}

std::string serialize_graph(const Graph& g, GraphFormat format) {
    return format == GraphFormat::JsonEdges ? write_json_edges(g) : write_graph6(g);
}

std::optional<GraphFormat> parse_format_name(std::string_view name) {
    if (name == "json" || name == "json-edges") return GraphFormat::JsonEdges;
    if (name == "graph6" || name == "g6") return GraphFormat::Graph6;
    return std::nullopt;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
    std::vector<Edge> es = a.edges();
    for (auto [x, y] : b.edges()) es.emplace_back(x + a.order(), y + a.order());
    std::vector<std::string> ls;
    if (a.has_labels() || b.has_labels()) {
        for (Vertex v = 0; v < a.order(); ++v) ls.push_back(a.has_labels() ? a.labels()[v] : "");
        for (Vertex v = 0; v < b.order(); ++v)
            ls.push_back(b.has_labels() && !b.labels()[v].empty() ? b.labels()[v] + "'" : "");
    }
    return Graph(a.order() + b.order(), es, std::move(ls));
}

}  // namespace mbtd
