#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "mbtd/graph.hpp"

namespace mbtd {

struct GraphFlags {
    bool cubic = false;
    bool connected = false;
    bool bipartite = false;
};

GraphFlags validate(const Graph& g);

using Triangle = std::array<Vertex, 3>;

/// Induced K4 minus an edge. `tips` are the two nonadjacent vertices
/// (tips[0] < tips[1]), `centers` the adjacent pair of degree-3-inside vertices.
struct Diamond {
    std::array<Vertex, 2> tips{};
    std::array<Vertex, 2> centers{};
    std::array<Vertex, 4> sorted() const;
};

/// Triangle/diamond census of a cubic graph. Vertex types: two, one or zero
/// triangles through the vertex. The counts satisfy
///   t1 = 2*k1,  t2 = t1 + 3*k2,  t1 + t2 + t3 = n
/// with k1 the number of diamonds and k2 the number of diamond-free triangles.
struct StructureReport {
    std::vector<Triangle> triangles;  // K3s not inside any diamond
    std::vector<Diamond> diamonds;
    int t1 = 0;
    int t2 = 0;
    int t3 = 0;
    int k1 = 0;
    int k2 = 0;
};

/// Every K3 of the graph, including those inside diamonds, sorted.
std::vector<Triangle> raw_triangles(const Graph& g);

/// Throws GraphError for non-cubic input or n < 6, and std::logic_error if
/// the counting relations fail (which would indicate a bug).
StructureReport classify_structure(const Graph& g);

enum class FactorKind { Diamond, Triangle, Claw };

std::string to_string(FactorKind kind);
std::optional<FactorKind> parse_factor_kind(std::string_view name);
int part_size(FactorKind kind);

/// Vertex-disjoint parts covering V. For claws the center is listed first.
struct FactorCertificate {
    FactorKind kind{};
    std::vector<std::vector<Vertex>> parts;
};

/// Exhaustive exact-cover search; nullopt means no factor exists.
std::optional<FactorCertificate> find_factor(const Graph& g, FactorKind kind);

/// Parts disjoint, covering, each inducing the declared subgraph.
bool check_certificate(const Graph& g, const FactorCertificate& cert);

}  // namespace mbtd
