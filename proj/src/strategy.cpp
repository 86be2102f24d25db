#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

#include "mbtd/generators.hpp"
#include "mbtd/strategy.hpp"

namespace mbtd {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
    h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h * 0xff51afd7ed558ccdULL;
}

std::uint64_t move_code(const Move& m) {
    return static_cast<std::uint64_t>(m.vertex) * 2 + (m.player == Player::Staller ? 1 : 0) + 1;
}

Vertex lowest(VertexMask m) { return std::countr_zero(m); }

const Move* last_staller_move(const Position& p) {
    const auto& h = p.history();
    if (!h.empty() && h.back().player == Player::Staller) return &h.back();
    return nullptr;
}

}  // namespace

std::uint64_t hash_moves(std::span<const Move> moves) {
    std::uint64_t h = 0x2545f4914f6cdd1dULL;
    for (const auto& m : moves) h = mix(h, move_code(m));
    return h;
}

std::uint64_t Strategy::memo_salt(const Position& p) const { return hash_moves(p.history()); }

// ---- pairing ---------------------------------------------------------------

namespace {

bool pairs_disjoint(const Graph& g, const std::vector<VertexPair>& pairs) {
    VertexMask used = 0;
    for (auto [a, b] : pairs) {
        if (a == b || a < 0 || b < 0 || a >= g.order() || b >= g.order()) return false;
        if (used & (bit(a) | bit(b))) return false;
        used |= bit(a) | bit(b);
    }
    return true;
}

}  // namespace

bool verify_pairing_plan(const Graph& g, PairingPlan& plan) {
    if (!pairs_disjoint(g, plan.pairs)) return false;
    auto w = winning_sets(g);
    std::vector<std::size_t> coverage;
    for (const auto& s : w.sets()) {
        auto it = std::find_if(plan.pairs.begin(), plan.pairs.end(), [&](VertexPair pr) {
            return (s.members & bit(pr.first)) && (s.members & bit(pr.second));
        });
        if (it == plan.pairs.end()) return false;
        coverage.push_back(static_cast<std::size_t>(it - plan.pairs.begin()));
    }
    plan.coverage = std::move(coverage);
    return true;
}

bool verify_pairing_plan(const Graph& g, const PairingPlan& plan) {
    PairingPlan copy = plan;
    return verify_pairing_plan(g, copy);
}

std::optional<PairingPlan> find_pairing_plan(const Graph& g, std::uint64_t node_budget) {
    auto w = winning_sets(g);
    std::vector<VertexMask> sets;
    for (const auto& s : w.sets()) sets.push_back(s.members);
    std::sort(sets.begin(), sets.end(),
              [](VertexMask a, VertexMask b) { return std::popcount(a) != std::popcount(b) ? std::popcount(a) < std::popcount(b) : a < b; });
    std::vector<VertexPair> chosen;
    std::uint64_t nodes = 0;
    std::function<bool(VertexMask)> search = [&](VertexMask used) -> bool {
        if (++nodes > node_budget) throw BudgetExhausted("pairing search budget exhausted");
        const VertexMask* open = nullptr;
        for (const auto& s : sets) {
            bool covered = std::any_of(chosen.begin(), chosen.end(), [&](VertexPair pr) {
                return (s & bit(pr.first)) && (s & bit(pr.second));
            });
            if (!covered) {
                open = &s;
                break;
            }
        }
        if (!open) return true;
        auto members = mask_to_vertices(*open & ~used);
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                chosen.emplace_back(members[i], members[j]);
                if (search(used | bit(members[i]) | bit(members[j]))) return true;
                chosen.pop_back();
            }
        return false;
    };
    if (!search(0)) return std::nullopt;
    PairingPlan plan{chosen, {}};
    verify_pairing_plan(g, plan);
    return plan;
}

PairingPlan gp1_pairing_plan(int n) {
    PairingPlan plan;
    for (int j = 0; j < n; ++j) plan.pairs.emplace_back(j, n + (j + n - 1) % n);
    return plan;
}

namespace {

class PairingStrategy final : public Strategy {
public:
    PairingStrategy(PairingPlan plan, std::string name) : plan_(std::move(plan)), name_(std::move(name)) {
        for (std::size_t i = 0; i < plan_.pairs.size(); ++i) {
            partner_[plan_.pairs[i].first] = plan_.pairs[i].second;
            partner_[plan_.pairs[i].second] = plan_.pairs[i].first;
        }
    }

    std::string name() const override { return name_; }
    Player role() const override { return Player::Dominator; }

    Decision decide(const Position& p) const override {
        VertexMask free = p.free_mask();
        if (const Move* m = last_staller_move(p)) {
            auto it = partner_.find(m->vertex);
            if (it != partner_.end() && (free & bit(it->second))) return {it->second, false};
        }
        VertexMask in_pairs = 0;
        for (auto [a, b] : plan_.pairs) {
            if (p.dominator() & (bit(a) | bit(b))) continue;
            in_pairs |= (bit(a) | bit(b)) & free;
        }
        if (!last_staller_move(p)) {
            // Nothing to answer: keep every pair intact if possible.
            VertexMask outside = free;
            for (auto [a, b] : plan_.pairs) outside &= ~(bit(a) | bit(b));
            if (outside) return {lowest(outside), false};
        }
        if (in_pairs) return {lowest(in_pairs), false};
        return {lowest(free), false};
    }

    std::uint64_t memo_salt(const Position& p) const override {
        return p.history().empty() ? 0 : move_code(p.history().back());
    }

private:
    PairingPlan plan_;
    std::string name_;
    std::map<Vertex, Vertex> partner_;
};

}  // namespace

StrategyPtr pairing_strategy(PairingPlan plan, std::string name) {
    return std::make_shared<PairingStrategy>(std::move(plan), std::move(name));
}

// ---- partition -------------------------------------------------------------

PartStrategy c4_part(const Graph& g, std::vector<Vertex> cycle) {
    if (cycle.size() != 4) throw std::invalid_argument("a C4 part needs four vertices");
    for (int i = 0; i < 4; ++i)
        if (!g.adjacent(cycle[i], cycle[(i + 1) % 4]))
            throw std::invalid_argument("C4 part is not a cycle in the host graph");
    PairingPlan plan{{{0, 2}, {1, 3}}, {}};
    return {std::move(cycle), pairing_strategy(plan, "c4-pairing")};
}

namespace {

class PartitionStrategy final : public Strategy {
public:
    PartitionStrategy(int order, std::vector<PartStrategy> parts) : parts_(std::move(parts)) {
        part_of_.assign(static_cast<std::size_t>(order), -1);
        local_.assign(static_cast<std::size_t>(order), -1);
        for (std::size_t i = 0; i < parts_.size(); ++i)
            for (std::size_t j = 0; j < parts_[i].part.size(); ++j) {
                Vertex v = parts_[i].part[j];
                if (v < 0 || v >= order || part_of_[v] != -1)
                    throw std::invalid_argument("parts must be disjoint vertex sets of the graph");
                part_of_[v] = static_cast<int>(i);
                local_[v] = static_cast<int>(j);
            }
        if (std::find(part_of_.begin(), part_of_.end(), -1) != part_of_.end())
            throw std::invalid_argument("parts must cover every vertex");
    }

    std::string name() const override { return "partition"; }
    Player role() const override { return Player::Dominator; }

    Decision decide(const Position& p) const override {
        if (const Move* m = last_staller_move(p)) {
            int i = part_of_[m->vertex];
            if (auto d = in_part(p, i)) return *d;
        }
        for (std::size_t i = 0; i < parts_.size(); ++i)
            if (auto d = in_part(p, static_cast<int>(i))) return *d;
        throw std::logic_error("partition strategy asked to move on a full board");
    }

    std::uint64_t memo_salt(const Position& p) const override {
        std::uint64_t h = p.history().empty() ? 0 : move_code(p.history().back());
        for (std::size_t i = 0; i < parts_.size(); ++i) h = mix(h, parts_[i].strategy->memo_salt(local(p, static_cast<int>(i))));
        return h;
    }

private:
    Position local(const Position& p, int i) const {
        std::vector<Move> moves;
        for (const auto& m : p.history())
            if (part_of_[m.vertex] == i) moves.push_back({local_[m.vertex], m.player});
        return Position::from_moves(static_cast<int>(parts_[i].part.size()), moves, Player::Dominator);
    }

    std::optional<Decision> in_part(const Position& p, int i) const {
        Position lp = local(p, i);
        if (lp.free_mask() == 0) return std::nullopt;
        Decision d = parts_[i].strategy->decide(lp);
        return Decision{parts_[i].part.at(d.vertex), d.fallback};
    }

    std::vector<PartStrategy> parts_;
    std::vector<int> part_of_;
    std::vector<int> local_;
};

}  // namespace

// Defined in verify.cpp; declared here to keep the header dependency one-way.
bool certify_second_player_dominator(const Strategy& s, const Graph& g);

StrategyPtr partition_strategy(const Graph& g, std::vector<PartStrategy> parts, bool certify) {
    if (certify)
        for (const auto& part : parts)
            if (!certify_second_player_dominator(*part.strategy, g.induced(part.part)))
                throw std::invalid_argument("part strategy is not a certified second-player Dominator win");
    return std::make_shared<PartitionStrategy>(g.order(), std::move(parts));
}

StrategyPtr diamond_necklace_strategy(const Graph& g) {
    std::vector<PartStrategy> parts;
    for (int i = 1;; ++i) {
        auto at = [&](int z) { return g.find_label("z" + std::to_string(z) + "@D" + std::to_string(i)); };
        if (!at(1)) break;
        parts.push_back(c4_part(g, {*at(1), *at(2), *at(3), *at(4)}));
    }
    return partition_strategy(g, std::move(parts));
}

StrategyPtr two_claw_strategy(const Graph& g) {
    auto v = [&](const char* l) { return g.vertex(l); };
    std::vector<PartStrategy> parts;
    parts.push_back(c4_part(g, {v("x1"), v("t1"), v("y1"), v("y2")}));
    parts.push_back(c4_part(g, {v("z1"), v("z2"), v("t2"), v("x2")}));
    return partition_strategy(g, std::move(parts));
}

// ---- bipartite circulant ---------------------------------------------------

namespace {

class CirculantStrategy final : public Strategy {
public:
    explicit CirculantStrategy(int m) : m_(m), g_(generate_bipartite_circulant(m)) {}

    std::string name() const override { return "bipartite-circulant"; }
    Player role() const override { return Player::Dominator; }

    Decision decide(const Position& p) const override {
        VertexMask free = p.free_mask();
        for (Vertex v = 0; v < g_.order(); ++v) {
            VertexMask n = g_.neighbor_mask(v);
            VertexMask open = n & free;
            if (!(n & p.dominator()) && std::popcount(open) == 1) return {lowest(open), false};
        }
        const Move* last = last_staller_move(p);
        if (last) {
            Vertex x = last->vertex;
            // Consecutive same-side pairs (y_{k-1}, y_k) split between the
            // players whose common neighbourhood contains x.
            for (int k = 0; k < m_; ++k) {
                Vertex a = same_side(x, k - 1, true), b = same_side(x, k, true);
                bool split = ((p.dominator() & bit(a)) && (p.staller() & bit(b))) ||
                             ((p.staller() & bit(a)) && (p.dominator() & bit(b)));
                if (!split) continue;
                VertexMask common = g_.neighbor_mask(a) & g_.neighbor_mask(b);
                if (!(common & bit(x))) continue;
                VertexMask other = common & ~bit(x) & free;
                if (other) return {lowest(other), false};
            }
            int l = index(x);
            for (int d : {-1, +1}) {
                Vertex y = same_side(x, l + d, false);
                if (free & bit(y)) return {y, false};
            }
        }
        VertexMask near = 0;
        for (Vertex d : mask_to_vertices(p.dominator())) near |= g_.neighbor_mask(d);
        if (near & free) return {lowest(near & free), false};
        return {lowest(free), false};
    }

    std::uint64_t memo_salt(const Position& p) const override {
        return p.history().empty() ? 0 : move_code(p.history().back());
    }

private:
    int index(Vertex x) const { return x % m_; }
    bool in_u(Vertex x) const { return x < m_; }
    /// Vertex with index i on x's side (`opposite`: the side x's neighbours are on).
    Vertex same_side(Vertex x, int i, bool opposite) const {
        bool u = in_u(x) != opposite;
        int j = ((i % m_) + m_) % m_;
        return u ? j : m_ + j;
    }

    int m_;
    Graph g_;
};

}  // namespace

StrategyPtr bipartite_circulant_strategy(int m) { return std::make_shared<CirculantStrategy>(m); }

// ---- triangular prism ------------------------------------------------------

namespace {

class PrismStrategy final : public Strategy {
public:
    std::string name() const override { return "prism"; }
    Player role() const override { return Player::Dominator; }

    Decision decide(const Position& p) const override {
        VertexMask free = p.free_mask();
        const auto& h = p.history();
        if (!h.empty() && h.front().player == Player::Staller) {
            // Sides X (Staller's first vertex) and Y, indices mod 3.
            Vertex s1 = h.front().vertex;
            int i = s1 % 3;
            int x0 = s1 < 3 ? 0 : 3, y0 = 3 - x0;
            auto X = [&](int k) { return x0 + (i + k) % 3; };
            auto Y = [&](int k) { return y0 + (i + k) % 3; };
            std::size_t round = p.history().size() / 2;
            if (round == 0 && (free & bit(Y(1)))) return {Y(1), false};
            if (round == 1) {
                if (free & bit(X(1))) return {X(1), false};
                if (free & bit(Y(2))) return {Y(2), false};
            }
            if (round == 2)
                for (Vertex v : {Y(0), X(2)})
                    if (free & bit(v)) return {v, false};
        }
        return {lowest(free), false};
    }
};

}  // namespace

StrategyPtr prism_strategy() { return std::make_shared<PrismStrategy>(); }

// ---- regional pairing ------------------------------------------------------

namespace {

class RegionalStrategy final : public Strategy {
public:
    RegionalStrategy(const Graph& g, const RegionalPlan& plan, std::string name) : name_(std::move(name)) {
        auto v = [&](const std::string& l) { return g.vertex(l); };
        if (!plan.opening.empty()) opening_ = v(plan.opening);
        for (auto& [a, b] : plan.static_pairs) static_pairs_.emplace_back(v(a), v(b));
        for (auto [a, b] : static_pairs_) static_mask_ |= bit(a) | bit(b);
        for (const auto& r : plan.regions) {
            CRegion cr;
            for (auto& m : r.members) cr.members |= bit(v(m));
            for (const auto& rule : r.rules) {
                CRule c{v(rule.trigger), v(rule.reply), {}};
                for (auto& [a, b] : rule.pairs) c.pairs.emplace_back(v(a), v(b));
                cr.rules.push_back(std::move(c));
            }
            regions_.push_back(std::move(cr));
        }
    }

    std::string name() const override { return name_; }
    Player role() const override { return Player::Dominator; }

    Decision decide(const Position& p) const override {
        VertexMask free = p.free_mask();
        if (p.history().empty() && opening_ && (free & bit(*opening_))) return {*opening_, false};
        auto active = active_rules(p);
        const Move* last = last_staller_move(p);
        int region = -1;
        if (last) {
            Vertex x = last->vertex;
            region = region_of(x);
            if (auto y = partner(x, static_pairs_); y && (free & bit(*y))) return {*y, false};
            if (region >= 0 && active[region]) {
                const CRule& rule = *active[region];
                if (rule.trigger == x && (free & bit(rule.reply))) return {rule.reply, false};
                if (auto y = partner(x, rule.pairs); y && (free & bit(*y))) return {*y, false};
            }
        }
        // Unresolved pairs: Dominator owns neither member. Urgent ones first.
        auto pairs_in = [&](int r) {
            std::vector<VertexPair> out;
            for (auto pr : static_pairs_)
                if (r < 0 || region_of(pr.first) == r) out.push_back(pr);
            for (std::size_t i = 0; i < regions_.size(); ++i)
                if ((r < 0 || static_cast<int>(i) == r) && active[i])
                    out.insert(out.end(), active[i]->pairs.begin(), active[i]->pairs.end());
            return out;
        };
        for (int r : {region, -1}) {
            auto prs = pairs_in(r);
            for (bool urgent : {true, false})
                for (auto [a, b] : prs) {
                    if (p.dominator() & (bit(a) | bit(b))) continue;
                    bool touched = (p.staller() & (bit(a) | bit(b))) != 0;
                    if (touched != urgent) continue;
                    VertexMask f = (bit(a) | bit(b)) & free;
                    if (f) return {lowest(f), false};
                }
        }
        return {lowest(free), false};
    }

    std::uint64_t memo_salt(const Position& p) const override {
        std::uint64_t h = p.history().empty() ? 0 : move_code(p.history().back());
        for (const CRule* r : active_rules(p)) h = mix(h, r ? static_cast<std::uint64_t>(r->trigger) + 1 : 0);
        return h;
    }

private:
    struct CRule {
        Vertex trigger;
        Vertex reply;
        std::vector<VertexPair> pairs;
    };
    struct CRegion {
        VertexMask members = 0;
        std::vector<CRule> rules;
    };

    int region_of(Vertex x) const {
        for (std::size_t i = 0; i < regions_.size(); ++i)
            if (regions_[i].members & bit(x)) return static_cast<int>(i);
        return -1;
    }

    static std::optional<Vertex> partner(Vertex x, const std::vector<VertexPair>& prs) {
        for (auto [a, b] : prs) {
            if (a == x) return b;
            if (b == x) return a;
        }
        return std::nullopt;
    }

    /// Rule selected in each region by Staller's first non-static move there.
    std::vector<const CRule*> active_rules(const Position& p) const {
        std::vector<const CRule*> out(regions_.size(), nullptr);
        std::vector<bool> decided(regions_.size(), false);
        for (const auto& m : p.history()) {
            if (m.player != Player::Staller || (static_mask_ & bit(m.vertex))) continue;
            int r = region_of(m.vertex);
            if (r < 0 || decided[r]) continue;
            decided[r] = true;
            for (const auto& rule : regions_[r].rules)
                if (rule.trigger == m.vertex) out[r] = &rule;
        }
        return out;
    }

    std::string name_;
    std::optional<Vertex> opening_;
    std::vector<VertexPair> static_pairs_;
    VertexMask static_mask_ = 0;
    std::vector<CRegion> regions_;
};

}  // namespace

StrategyPtr regional_pairing_strategy(const Graph& g, const RegionalPlan& plan, std::string name) {
    return std::make_shared<RegionalStrategy>(g, plan, std::move(name));
}

}  // namespace mbtd
