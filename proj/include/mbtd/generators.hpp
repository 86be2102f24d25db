#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbtd/graph.hpp"

namespace mbtd {

/// GP(n,k): outer cycle u_i u_{i+1}, spokes u_i v_i, inner edges v_i v_{i+k}.
/// Requires n >= 3 and 1 <= k < n/2 so that no inner edge is repeated.
Graph generate_gp(int n, int k);

enum class NecklaceKind { Diamond, Claw };

/// Diamond necklace: diamonds z1..z4 (missing z1z3) linked z3^i - z1^{i+1}
/// cyclically. Claw necklace: claws with centers t_i; two claws use the
/// crossed matching x1x2, y1y2, z1z2, x1y2, y1z2, z1x2, more claws are joined
/// in a cycle by x_i x_{i+1}, y_i y_{i+1}, z_i z_{i+1}.
Graph generate_necklace(NecklaceKind kind, int count);

/// Replaces every vertex of a cubic graph by a triangle.
Graph truncate(const Graph& g);

/// Cubic bipartite circulant on u_0..u_{m-1}, v_0..v_{m-1} with
/// u_i ~ v_i, v_{i+1}, v_{i+2}.
Graph generate_bipartite_circulant(int m);

/// Two triangles A, B hanging off a diamond Z, each closed by a further
/// diamond (K on A, M on B). 18 vertices.
Graph generate_eta();

/// Triangles A, B, diamond H on B and a chain of `chain_len` diamonds
/// D1..Dm closing A. 10 + 4m vertices.
Graph generate_omega(int chain_len);

Graph complete_graph(int n);
Graph cycle_graph(int n);
Graph star_graph(int leaves);
Graph complete_bipartite(int a, int b);

struct GeneratorInfo {
    std::string name;
    std::vector<std::string> params;
    std::string description;
};

/// Families reachable by name from the CLI and the HTTP service.
const std::vector<GeneratorInfo>& generator_catalog();
/// Throws GraphError for an unknown family or a wrong parameter count.
Graph generate_family(std::string_view name, std::span<const int> params);

}  // namespace mbtd
