#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mbtd/strategy.hpp"

namespace mbtd {

/// Order in which find_gadget tries templates.
std::vector<GadgetId> default_gadget_order();

/// First embedding (template vertices onto distinct free host vertices, edges
/// preserved, interior template vertices onto host vertices of equal degree)
/// of the first template in `order` that fits.
std::optional<GadgetEmbedding> find_gadget(const Graph& g, const Position& p,
                                           const std::vector<GadgetId>& order = default_gadget_order());

/// All embeddings of one template (capped at `limit`).
std::vector<GadgetEmbedding> find_embeddings(const Graph& g, const Position& p, GadgetId id,
                                             std::size_t limit = 1'000'000);

/// Staller strategy tree: at each Staller node the move; for each Dominator
/// reply group the continuation. Leaves complete a winning set.
struct CertificateNode {
    Vertex play = -1;
    std::vector<std::pair<std::vector<Vertex>, CertificateNode>> replies;
};

struct Certificate {
    Graph board;
    CertificateNode root;
};

/// Builds a Staller-first certificate with the solver; nullopt if Dominator wins.
std::optional<Certificate> build_certificate(const Graph& board, const WinningSetSystem& w,
                                             const SolverConfig& cfg = {});
/// Replays every branch; independent of the solver.
bool check_certificate(const Certificate& c, const WinningSetSystem& w);
std::size_t certificate_size(const CertificateNode& n);

std::string certificate_to_json(const Certificate& c);
Certificate certificate_from_json(std::string_view text);
/// The certificate as a Staller script in board labels.
Script certificate_script(const Certificate& c);

struct TauSearch {
    Graph tau;  // labels u_i / v_i in window coordinates 0..8
    Certificate certificate;
    int subsets_examined = 0;
    int linearizable = 0;
    int solver_calls = 0;
};

/// Searches 15-vertex induced subgraphs of GP(9,2) whose edges avoid the
/// index wrap-around (so they embed by shifting into GP(n,2) for n >= 9) for
/// the first one Staller wins moving first. Throws std::runtime_error if none.
TauSearch extract_tau(const SolverConfig& cfg = {});

/// Frozen τ fixture and its certificate (fixtures/gadgets/tau*.json).
Graph load_tau();
Certificate load_tau_certificate();
std::string fixture_path(const std::string& relative);

}  // namespace mbtd
