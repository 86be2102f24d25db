#include "mbtd/game.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include <json.hpp>

namespace mbtd {

using nlohmann::json;

std::string to_string(Player p) { return p == Player::Dominator ? "dominator" : "staller"; }

std::string to_string(Owner o) {
    switch (o) {
    case Owner::Free: return "free";
    case Owner::Dominator: return "dominator";
    case Owner::Staller: return "staller";
    }
    return "?";
}

std::string to_string(GameStatus s) {
    switch (s) {
    case GameStatus::Ongoing: return "ongoing";
    case GameStatus::DominatorWon: return "dominator_won";
    case GameStatus::StallerWon: return "staller_won";
    }
    return "?";
}

std::string to_string(Winner w) {
    switch (w) {
    case Winner::Dominator: return "dominator";
    case Winner::Staller: return "staller";
    case Winner::Unknown: return "unknown";
    }
    return "?";
}

std::string to_string(OutcomeClass c) {
    switch (c) {
    case OutcomeClass::D: return "D";
    case OutcomeClass::S: return "S";
    case OutcomeClass::N: return "N";
    case OutcomeClass::Unknown: return "unknown";
    }
    return "?";
}

std::optional<Player> parse_player(std::string_view name) {
    if (name == "dominator" || name == "D" || name == "d") return Player::Dominator;
    if (name == "staller" || name == "S" || name == "s") return Player::Staller;
    return std::nullopt;
}

std::vector<Vertex> mask_to_vertices(VertexMask m) {
    std::vector<Vertex> out;
    while (m) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

VertexMask vertices_to_mask(std::span<const Vertex> vs) {
    VertexMask m = 0;
    for (Vertex v : vs) m |= bit(v);
    return m;
}

namespace {

VertexMask full_mask(int n) { return n >= 64 ? ~VertexMask{0} : bit(n) - 1; }

void check_order(int n) {
    if (n < 0 || n > max_game_order)
        throw GameError("board of " + std::to_string(n) + " vertices exceeds the supported 64");
}

}  // namespace

Position::Position(int n, Player first) : order_(n), to_move_(first), first_(first) { check_order(n); }

Position Position::setup(int n, VertexMask dominator, VertexMask staller, Player to_move) {
    check_order(n);
    if (dominator & staller) throw GameError("a vertex cannot be owned by both players");
    if ((dominator | staller) & ~full_mask(n)) throw GameError("owned vertex out of range");
    Position p;
    p.order_ = n;
    p.dominator_ = dominator;
    p.staller_ = staller;
    p.to_move_ = to_move;
    return p;
}

Position Position::from_moves(int n, std::span<const Move> moves, Player to_move) {
    Position p = setup(n, 0, 0, to_move);
    for (const auto& m : moves) {
        if (p.owner(m.vertex) != Owner::Free) throw GameError("vertex " + std::to_string(m.vertex) + " claimed twice");
        (m.player == Player::Dominator ? p.dominator_ : p.staller_) |= bit(m.vertex);
        p.history_.push_back(m);
    }
    return p;
}

VertexMask Position::free_mask() const { return full_mask(order_) & ~claimed(); }

Owner Position::owner(Vertex v) const {
    if (v < 0 || v >= order_) throw GameError("vertex " + std::to_string(v) + " out of range");
    if (dominator_ & bit(v)) return Owner::Dominator;
    if (staller_ & bit(v)) return Owner::Staller;
    return Owner::Free;
}

Position Position::play(Vertex v) const {
    if (owner(v) != Owner::Free) throw GameError("vertex " + std::to_string(v) + " is already claimed");
    Position next = *this;
    if (to_move_ == Player::Dominator)
        next.dominator_ |= bit(v);
    else
        next.staller_ |= bit(v);
    next.history_.push_back({v, to_move_});
    next.to_move_ = opponent(to_move_);
    return next;
}

bool Position::alternation_consistent() const {
    if (!first_) return true;
    int a = std::popcount(owned_by(*first_));
    int b = std::popcount(owned_by(opponent(*first_)));
    if (a - b == 0) return to_move_ == *first_;
    if (a - b == 1) return to_move_ == opponent(*first_);
    return false;
}

WinningSetSystem::WinningSetSystem(int board_order, std::vector<WinningSet> sets) : order_(board_order) {
    check_order(board_order);
    std::map<VertexMask, std::size_t> index;
    for (auto& s : sets) {
        if (s.members & ~full_mask(board_order)) throw GameError("winning set outside the board");
        auto [it, fresh] = index.emplace(s.members, sets_.size());
        if (fresh) {
            sets_.push_back({s.members, {}});
        }
        auto& w = sets_[it->second].watched;
        w.insert(w.end(), s.watched.begin(), s.watched.end());
    }
    for (auto& s : sets_) std::sort(s.watched.begin(), s.watched.end());
}

std::size_t WinningSetSystem::raw_count() const {
    std::size_t c = 0;
    for (const auto& s : sets_) c += std::max<std::size_t>(1, s.watched.size());
    return c;
}

std::vector<WinningSetSystem::LiveSet> WinningSetSystem::live(const Position& p) const {
    std::vector<LiveSet> out;
    for (std::size_t i = 0; i < sets_.size(); ++i)
        if (!(sets_[i].members & p.dominator())) out.push_back({i, sets_[i].members & ~p.staller()});
    return out;
}

WinningSetSystem winning_sets(const Graph& g) {
    std::vector<WinningSet> sets;
    for (Vertex v = 0; v < g.order(); ++v) sets.push_back({g.neighbor_mask(v), {v}});
    return WinningSetSystem(g.order(), std::move(sets));
}

WinningSetSystem interior_winning_sets(const Graph& gadget, int host_degree) {
    std::vector<WinningSet> sets;
    for (Vertex v = 0; v < gadget.order(); ++v)
        if (gadget.degree(v) == host_degree) sets.push_back({gadget.neighbor_mask(v), {v}});
    return WinningSetSystem(gadget.order(), std::move(sets));
}

GameStatus status(const Position& p, const WinningSetSystem& w) {
    bool all_hit = true;
    for (const auto& s : w.sets()) {
        if (s.members & p.dominator()) continue;
        all_hit = false;
        if ((s.members & ~p.staller()) == 0) return GameStatus::StallerWon;
    }
    if (all_hit) return GameStatus::DominatorWon;
    if (p.free_mask() == 0) throw std::logic_error("board full without a winner");
    return GameStatus::Ongoing;
}

VertexMask legal_moves(const Position& p, const WinningSetSystem& w) {
    return status(p, w) == GameStatus::Ongoing ? p.free_mask() : 0;
}

std::vector<Vertex> legal_move_list(const Position& p, const WinningSetSystem& w) {
    return mask_to_vertices(legal_moves(p, w));
}

Position apply_move(const Position& p, Vertex v, const WinningSetSystem& w) {
    if (status(p, w) != GameStatus::Ongoing) throw GameError("the game is already over");
    return p.play(v);
}

WinningSetSystem reduce(const Position& p, const WinningSetSystem& w) {
    std::vector<WinningSet> out;
    for (const auto& live : w.live(p)) out.push_back({live.needed, w.sets()[live.index].watched});
    return WinningSetSystem(w.order(), std::move(out));
}

OutcomeClass outcome_from_winners(Winner d_game, Winner s_game) {
    if (d_game == Winner::Unknown || s_game == Winner::Unknown) return OutcomeClass::Unknown;
    if (d_game == Winner::Dominator && s_game == Winner::Dominator) return OutcomeClass::D;
    if (d_game == Winner::Staller && s_game == Winner::Staller) return OutcomeClass::S;
    if (d_game == Winner::Dominator && s_game == Winner::Staller) return OutcomeClass::N;
    throw std::logic_error("Staller wins moving second but loses moving first");
}

std::string transcript_to_json(const Transcript& t) {
    json doc;
    doc["graph"] = json::parse(serialize_graph(t.graph, GraphFormat::JsonEdges));
    doc["first"] = to_string(t.first);
    json moves = json::array();
    for (const auto& m : t.moves) moves.push_back({{"player", to_string(m.player)}, {"vertex", m.vertex}});
    doc["moves"] = std::move(moves);
    doc["status"] = to_string(t.status);
    return doc.dump();
}

Transcript transcript_from_json(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw GameError(std::string("malformed transcript: ") + e.what());
    }
    Transcript t;
    try {
        t.graph = parse_graph(doc.at("graph").dump(), GraphFormat::JsonEdges);
        auto first = parse_player(doc.at("first").get<std::string>());
        if (!first) throw GameError("transcript: bad 'first'");
        t.first = *first;
        for (const auto& m : doc.at("moves")) {
            auto player = parse_player(m.at("player").get<std::string>());
            if (!player) throw GameError("transcript: bad move player");
            t.moves.push_back({m.at("vertex").get<int>(), *player});
        }
        std::string s = doc.value("status", "ongoing");
        if (s == "ongoing")
            t.status = GameStatus::Ongoing;
        else if (s == "dominator_won")
            t.status = GameStatus::DominatorWon;
        else if (s == "staller_won")
            t.status = GameStatus::StallerWon;
        else
            throw GameError("transcript: bad status '" + s + "'");
    } catch (const json::exception& e) {
        throw GameError(std::string("malformed transcript: ") + e.what());
    }
    return t;
}

Position replay(const Transcript& t) {
    auto w = winning_sets(t.graph);
    Position p(t.graph.order(), t.first);
    for (const auto& m : t.moves) {
        if (m.player != p.to_move()) throw GameError("transcript moves do not alternate");
        p = apply_move(p, m.vertex, w);
    }
    if (status(p, w) != t.status) throw GameError("transcript status does not match the replayed position");
    return p;
}

Transcript make_transcript(const Graph& g, const Position& p) {
    if (!p.first()) throw GameError("only positions from play have transcripts");
    return {g, *p.first(), p.history(), status(p, winning_sets(g))};
}

}  // namespace mbtd
