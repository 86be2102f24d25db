#include "mbtd/structure.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace mbtd {

GraphFlags validate(const Graph& g) {
    GraphFlags flags;
    int n = g.order();
    flags.cubic = n > 0;
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) != 3) flags.cubic = false;

    std::vector<int> colour(static_cast<std::size_t>(n), -1);
    int components = 0;
    flags.bipartite = true;
    for (Vertex s = 0; s < n; ++s) {
        if (colour[s] != -1) continue;
        ++components;
        colour[s] = 0;
        std::queue<Vertex> queue;
        queue.push(s);
        while (!queue.empty()) {
            Vertex v = queue.front();
            queue.pop();
            for (Vertex w : g.neighbors(v)) {
                if (colour[w] == -1) {
                    colour[w] = 1 - colour[v];
                    queue.push(w);
                } else if (colour[w] == colour[v]) {
                    flags.bipartite = false;
                }
            }
        }
    }
    flags.connected = components <= 1;
    return flags;
}

std::array<Vertex, 4> Diamond::sorted() const {
    std::array<Vertex, 4> out{tips[0], tips[1], centers[0], centers[1]};
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Triangle> raw_triangles(const Graph& g) {
    std::vector<Triangle> out;
    for (Vertex a = 0; a < g.order(); ++a)
        for (Vertex b : g.neighbors(a)) {
            if (b <= a) continue;
            for (Vertex c : g.neighbors(b))
                if (c > b && g.adjacent(a, c)) out.push_back({a, b, c});
        }
    return out;
}

StructureReport classify_structure(const Graph& g) {
    int n = g.order();
    if (n < 6) throw GraphError("structure classification requires n >= 6");
    if (!validate(g).cubic) throw GraphError("structure classification requires a cubic graph");

    StructureReport report;
    auto all = raw_triangles(g);
    std::vector<int> through(static_cast<std::size_t>(n), 0);
    for (const auto& t : all)
        for (Vertex v : t) ++through[v];

    // Two triangles sharing an edge form a diamond.
    std::vector<bool> in_diamond(all.size(), false);
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            std::vector<Vertex> shared;
            std::set_intersection(all[i].begin(), all[i].end(), all[j].begin(), all[j].end(),
                                  std::back_inserter(shared));
            if (shared.size() != 2) continue;
            auto other = [&](const Triangle& t) {
                for (Vertex v : t)
                    if (v != shared[0] && v != shared[1]) return v;
                return Vertex{-1};
            };
            Vertex p = other(all[i]);
            Vertex q = other(all[j]);
            if (g.adjacent(p, q)) throw std::logic_error("K4 inside a cubic graph of order >= 6");
            Diamond d;
            d.tips = {std::min(p, q), std::max(p, q)};
            d.centers = {shared[0], shared[1]};
            report.diamonds.push_back(d);
            in_diamond[i] = in_diamond[j] = true;
        }
    }
    for (std::size_t i = 0; i < all.size(); ++i)
        if (!in_diamond[i]) report.triangles.push_back(all[i]);

    for (Vertex v = 0; v < n; ++v) {
        switch (through[v]) {
        case 0: ++report.t3; break;
        case 1: ++report.t2; break;
        case 2: ++report.t1; break;
        default: throw std::logic_error("vertex in more than two triangles of a cubic graph");
        }
    }
    if (report.t1 % 2 != 0 || report.t2 < report.t1 || (report.t2 - report.t1) % 3 != 0 ||
        report.t1 + report.t2 + report.t3 != n)
        throw std::logic_error("vertex-type counts violate t1 = 2k1, t2 = t1 + 3k2");
    report.k1 = report.t1 / 2;
    report.k2 = (report.t2 - report.t1) / 3;
    if (report.k1 != static_cast<int>(report.diamonds.size()) ||
        report.k2 != static_cast<int>(report.triangles.size()))
        throw std::logic_error("vertex-type counts disagree with the triangle/diamond lists");
    return report;
}

std::string to_string(FactorKind kind) {
    switch (kind) {
    case FactorKind::Diamond: return "diamond";
    case FactorKind::Triangle: return "triangle";
    case FactorKind::Claw: return "claw";
    }
    return "?";
}

std::optional<FactorKind> parse_factor_kind(std::string_view name) {
    if (name == "diamond") return FactorKind::Diamond;
    if (name == "triangle") return FactorKind::Triangle;
    if (name == "claw") return FactorKind::Claw;
    return std::nullopt;
}

int part_size(FactorKind kind) { return kind == FactorKind::Triangle ? 3 : 4; }

namespace {

bool induces(const Graph& g, FactorKind kind, const std::vector<Vertex>& part) {
    if (static_cast<int>(part.size()) != part_size(kind)) return false;
    int edges = 0;
    std::vector<int> deg(part.size(), 0);
    for (std::size_t i = 0; i < part.size(); ++i)
        for (std::size_t j = i + 1; j < part.size(); ++j)
            if (g.adjacent(part[i], part[j])) {
                ++edges;
                ++deg[i];
                ++deg[j];
            }
    switch (kind) {
    case FactorKind::Triangle: return edges == 3;
    case FactorKind::Diamond: return edges == 5;
    case FactorKind::Claw: return edges == 3 && deg[0] == 3;
    }
    return false;
}

std::vector<std::vector<Vertex>> candidate_parts(const Graph& g, FactorKind kind) {
    std::vector<std::vector<Vertex>> out;
    if (kind == FactorKind::Triangle) {
        for (const auto& t : raw_triangles(g)) out.push_back({t.begin(), t.end()});
    } else if (kind == FactorKind::Diamond) {
        for (const auto& t : raw_triangles(g))
            for (Vertex w = 0; w < g.order(); ++w) {
                if (std::find(t.begin(), t.end(), w) != t.end()) continue;
                std::vector<Vertex> part{t[0], t[1], t[2], w};
                std::sort(part.begin(), part.end());
                if (induces(g, kind, part) && std::find(out.begin(), out.end(), part) == out.end())
                    out.push_back(part);
            }
    } else {
        for (Vertex c = 0; c < g.order(); ++c) {
            const auto& row = g.neighbors(c);
            for (std::size_t i = 0; i < row.size(); ++i)
                for (std::size_t j = i + 1; j < row.size(); ++j)
                    for (std::size_t k = j + 1; k < row.size(); ++k) {
                        std::vector<Vertex> part{c, row[i], row[j], row[k]};
                        if (induces(g, kind, part)) out.push_back(part);
                    }
        }
    }
    return out;
}

}  // namespace

std::optional<FactorCertificate> find_factor(const Graph& g, FactorKind kind) {
    int n = g.order();
    if (n == 0 || n % part_size(kind) != 0) return std::nullopt;
    auto candidates = candidate_parts(g, kind);
    std::vector<std::vector<int>> by_vertex(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (Vertex v : candidates[i]) by_vertex[v].push_back(static_cast<int>(i));

    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    std::vector<int> chosen;
    std::function<bool()> search = [&]() -> bool {
        Vertex first = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!covered[v]) {
                first = v;
                break;
            }
        if (first == -1) return true;
        for (int c : by_vertex[first]) {
            const auto& part = candidates[c];
            if (std::any_of(part.begin(), part.end(), [&](Vertex v) { return covered[v]; })) continue;
            for (Vertex v : part) covered[v] = true;
            chosen.push_back(c);
            if (search()) return true;
            chosen.pop_back();
            for (Vertex v : part) covered[v] = false;
        }
        return false;
    };
    if (!search()) return std::nullopt;
    FactorCertificate cert{kind, {}};
    for (int c : chosen) cert.parts.push_back(candidates[c]);
    return cert;
}

bool check_certificate(const Graph& g, const FactorCertificate& cert) {
    std::vector<int> seen(static_cast<std::size_t>(g.order()), 0);
    for (const auto& part : cert.parts) {
        for (Vertex v : part) {
            if (v < 0 || v >= g.order() || seen[v]++) return false;
        }
        if (!induces(g, cert.kind, part)) return false;
    }
    return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

}  // namespace mbtd
