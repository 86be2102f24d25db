#include "mbtd/solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <thread>
#include <unordered_map>

#include <json.hpp>

namespace mbtd {

namespace {

using Clock = std::chrono::steady_clock;

struct KeyHash {
    std::size_t operator()(const std::vector<std::uint64_t>& k) const noexcept {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ k.size();
        for (auto x : k) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

}  // namespace

class TranspositionTable {
public:
    using Key = std::vector<std::uint64_t>;

    explicit TranspositionTable(std::size_t capacity) : capacity_(capacity) {}

    std::optional<bool> find(const Key& k) const {
        auto& s = shard(k);
        std::lock_guard lock(s.mu);
        auto it = s.map.find(k);
        if (it == s.map.end()) return std::nullopt;
        return it->second;
    }

    void insert(Key k, bool staller_wins) {
        if (size_.load(std::memory_order_relaxed) >= capacity_) return;
        auto& s = shard(k);
        std::lock_guard lock(s.mu);
        if (s.map.insert_or_assign(std::move(k), staller_wins).second) size_.fetch_add(1, std::memory_order_relaxed);
    }

    std::size_t size() const { return size_.load(); }

    void clear() {
        for (auto& s : shards_) {
            std::lock_guard lock(s.mu);
            s.map.clear();
        }
        size_ = 0;
    }

private:
    static constexpr std::size_t shard_count = 64;
    struct Shard {
        mutable std::mutex mu;
        std::unordered_map<Key, bool, KeyHash> map;
    };

    Shard& shard(const Key& k) const { return shards_[KeyHash{}(k) % shard_count]; }

    std::size_t capacity_;
    std::atomic<std::size_t> size_{0};
    mutable std::array<Shard, shard_count> shards_;
};

namespace {

/// Live `needed` parts; an empty part means Staller has already won.
struct Residual {
    std::vector<VertexMask> sets;
    bool staller_won = false;
};

void absorb_supersets(std::vector<VertexMask>& sets) {
    std::sort(sets.begin(), sets.end(), [](VertexMask a, VertexMask b) {
        int pa = std::popcount(a), pb = std::popcount(b);
        return pa != pb ? pa < pb : a < b;
    });
    std::size_t kept = 0;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < kept && !redundant; ++j) redundant = (sets[j] & ~sets[i]) == 0;
        if (!redundant) sets[kept++] = sets[i];
    }
    sets.resize(kept);
}

/// Renames vertices by first occurrence over the sorted family, then re-sorts.
std::vector<std::uint64_t> canonical_key(const std::vector<VertexMask>& sets, Player to_move) {
    std::array<int, 64> rename;
    rename.fill(-1);
    int next = 0;
    std::vector<std::uint64_t> key;
    key.reserve(sets.size() + 1);
    for (VertexMask s : sets) {
        VertexMask out = 0;
        for (VertexMask m = s; m; m &= m - 1) {
            int v = std::countr_zero(m);
            if (rename[v] < 0) rename[v] = next++;
            out |= bit(rename[v]);
        }
        key.push_back(out);
    }
    std::sort(key.begin(), key.end());
    key.push_back(to_move == Player::Dominator ? 0 : 1);
    return key;
}

class Search {
public:
    Search(const std::vector<VertexMask>& base, const SolverConfig& cfg, TranspositionTable& tt,
           std::atomic<std::uint64_t>& nodes, Clock::time_point deadline)
        : base_(base), cfg_(cfg), tt_(tt), nodes_(nodes), deadline_(deadline) {}

    Residual residual(VertexMask d, VertexMask s) const {
        Residual r;
        for (VertexMask m : base_) {
            if (m & d) continue;
            VertexMask need = m & ~s;
            if (need == 0) {
                r.staller_won = true;
                r.sets.clear();
                return r;
            }
            r.sets.push_back(need);
        }
        return r;
    }

    bool staller_wins(VertexMask d, VertexMask s, Player to_move, int depth) {
        tick(depth);
        Residual r = residual(d, s);
        if (r.staller_won) return true;
        if (r.sets.empty()) return false;
        auto& sets = r.sets;
        if (cfg_.pruning.hit_set_removal) absorb_supersets(sets);

        if (cfg_.pruning.threat_extension) {
            VertexMask singles = 0;
            for (VertexMask m : sets)
                if (std::has_single_bit(m)) singles |= m;
            if (singles) {
                if (to_move == Player::Staller) return true;
                if (std::popcount(singles) >= 2) return true;
                return staller_wins(d | singles, s, Player::Staller, depth + 1);
            }
        }

        std::vector<std::uint64_t> key;
        if (cfg_.pruning.hit_set_removal)
            key = canonical_key(sets, to_move);
        else
            key = {d, s, to_move == Player::Dominator ? 0ULL : 1ULL};
        if (auto hit = tt_.find(key)) {
            ++memo_hits_;
            return *hit;
        }

        bool result = to_move == Player::Dominator;  // value if no move flips it
        for (Vertex x : ordered_moves(sets)) {
            if (to_move == Player::Staller) {
                if (staller_wins(d, s | bit(x), Player::Dominator, depth + 1)) {
                    result = true;
                    break;
                }
            } else if (!staller_wins(d | bit(x), s, Player::Staller, depth + 1)) {
                result = false;
                break;
            }
        }
        tt_.insert(std::move(key), result);
        return result;
    }

    std::uint64_t memo_hits() const { return memo_hits_; }
    int max_depth() const { return max_depth_; }

private:
    void tick(int depth) {
        max_depth_ = std::max(max_depth_, depth);
        std::uint64_t n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > cfg_.node_budget) throw BudgetExhausted("node budget exhausted");
        if ((n & 0xfff) == 0 && Clock::now() > deadline_) throw BudgetExhausted("time budget exhausted");
    }

    std::vector<Vertex> ordered_moves(const std::vector<VertexMask>& sets) const {
        VertexMask all = 0;
        for (VertexMask m : sets) all |= m;
        std::array<std::uint64_t, 64> incidence{};
        std::array<std::uint64_t, 64> weight{};
        for (std::size_t i = 0; i < sets.size(); ++i) {
            int size = std::popcount(sets[i]);
            for (VertexMask m = sets[i]; m; m &= m - 1) {
                int v = std::countr_zero(m);
                incidence[v] |= std::uint64_t{1} << i;
                weight[v] += std::uint64_t{1} << (40 - std::min(size, 40));
            }
        }
        std::vector<Vertex> moves;
        for (VertexMask m = all; m; m &= m - 1) {
            Vertex x = std::countr_zero(m);
            if (cfg_.pruning.dominated_move) {
                bool dominated = false;
                for (VertexMask o = all; o && !dominated; o &= o - 1) {
                    Vertex y = std::countr_zero(o);
                    if (y == x || (incidence[x] & ~incidence[y])) continue;
                    dominated = incidence[x] != incidence[y] || y < x;
                }
                if (dominated) continue;
            }
            moves.push_back(x);
        }
        std::stable_sort(moves.begin(), moves.end(), [&](Vertex a, Vertex b) { return weight[a] > weight[b]; });
        return moves;
    }

    const std::vector<VertexMask>& base_;
    const SolverConfig& cfg_;
    TranspositionTable& tt_;
    std::atomic<std::uint64_t>& nodes_;
    Clock::time_point deadline_;
    std::uint64_t memo_hits_ = 0;
    int max_depth_ = 0;
};

std::vector<VertexMask> base_sets(const WinningSetSystem& w) {
    std::vector<VertexMask> out;
    for (const auto& s : w.sets()) out.push_back(s.members);
    return out;
}

Winner to_winner(bool staller_wins) { return staller_wins ? Winner::Staller : Winner::Dominator; }

bool mover_wins(bool staller_wins, Player mover) { return staller_wins == (mover == Player::Staller); }

/// One root query: value of p and, if ongoing, its best move.
struct RootRun {
    const std::vector<VertexMask>& base;
    const SolverConfig& cfg;
    TranspositionTable& tt;
    std::atomic<std::uint64_t> nodes{0};
    Clock::time_point deadline;
    std::atomic<std::uint64_t> memo_hits{0};
    std::atomic<int> max_depth{0};

    RootRun(const std::vector<VertexMask>& b, const SolverConfig& c, TranspositionTable& t, Clock::time_point dl)
        : base(b), cfg(c), tt(t), deadline(dl) {}

    Search make_search() { return Search(base, cfg, tt, nodes, deadline); }

    void absorb(const Search& s) {
        memo_hits += s.memo_hits();
        int d = max_depth.load();
        while (s.max_depth() > d && !max_depth.compare_exchange_weak(d, s.max_depth())) {
        }
    }

    bool value(VertexMask d, VertexMask s, Player to_move) {
        Search search = make_search();
        bool v = search.staller_wins(d, s, to_move, 0);
        absorb(search);
        return v;
    }

    /// Candidates: free vertices lying in some live set, ascending.
    std::vector<Vertex> candidates(VertexMask d, VertexMask s) {
        Search search = make_search();
        Residual r = search.residual(d, s);
        VertexMask all = 0;
        for (VertexMask m : r.sets) all |= m;
        return mask_to_vertices(all);
    }

    /// Lost anyway: Dominator still blocks a one-move threat if there is one.
    Vertex losing_move(VertexMask d, VertexMask s, Player to_move, const std::vector<Vertex>& cands) {
        if (to_move == Player::Dominator) {
            Search search = make_search();
            VertexMask singles = 0;
            for (VertexMask m : search.residual(d, s).sets)
                if (std::has_single_bit(m)) singles |= m;
            if (singles) return static_cast<Vertex>(std::countr_zero(singles));
        }
        return cands.front();
    }

    Vertex best_move(VertexMask d, VertexMask s, Player to_move, bool staller_wins) {
        auto cands = candidates(d, s);
        if (cands.empty()) throw std::logic_error("ongoing position without live vertices");
        if (!mover_wins(staller_wins, to_move)) return losing_move(d, s, to_move, cands);
        auto child_wins = [&](Search& search, Vertex x) {
            VertexMask nd = d, ns = s;
            (to_move == Player::Dominator ? nd : ns) |= bit(x);
            return mover_wins(search.staller_wins(nd, ns, opponent(to_move), 1), to_move);
        };
        unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
        if (!cfg.root_parallelism || threads == 1 || cands.size() == 1) {
            Search search = make_search();
            for (Vertex x : cands)
                if (child_wins(search, x)) {
                    absorb(search);
                    return x;
                }
            absorb(search);
            throw std::logic_error("winning position without a winning move");
        }
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> best{cands.size()};
        std::exception_ptr failure;
        std::mutex failure_mu;
        auto worker = [&] {
            Search search = make_search();
            try {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= cands.size()) break;
                    if (i > best.load()) continue;
                    if (child_wins(search, cands[i])) {
                        std::size_t b = best.load();
                        while (i < b && !best.compare_exchange_weak(b, i)) {
                        }
                    }
                }
            } catch (...) {
                std::lock_guard lock(failure_mu);
                if (!failure) failure = std::current_exception();
            }
            absorb(search);
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < std::min<std::size_t>(threads, cands.size()); ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
        if (best.load() == cands.size()) throw std::logic_error("winning position without a winning move");
        return cands[best.load()];
    }
};

}  // namespace

std::string SolverStats::to_json() const {
    nlohmann::json j{{"nodes", nodes}, {"memo_hits", memo_hits}, {"depth", max_depth}, {"elapsed_ms", elapsed_ms}};
    return j.dump();
}

bool Threats::double_trap() const { return std::popcount(dominator_forced) >= 2; }

Solver::Solver(SolverConfig cfg) : cfg_(cfg), table_(std::make_unique<TranspositionTable>(cfg.memo_capacity)) {
    if (cfg_.memo_capacity == 0 || cfg_.node_budget == 0 || cfg_.time_budget.count() <= 0)
        throw std::invalid_argument("solver budgets must be positive");
}

Solver::~Solver() = default;
Solver::Solver(Solver&&) noexcept = default;
Solver& Solver::operator=(Solver&&) noexcept = default;

std::size_t Solver::memo_size() const { return table_->size(); }
void Solver::clear_memo() { table_->clear(); }

SolveResult Solver::solve(const WinningSetSystem& w, const Position& p) {
    auto start = Clock::now();
    auto base = base_sets(w);
    RootRun run(base, cfg_, *table_, start + cfg_.time_budget);
    SolveResult result;
    auto finish = [&] {
        result.stats.nodes = run.nodes.load();
        result.stats.memo_hits = run.memo_hits.load();
        result.stats.max_depth = run.max_depth.load();
        result.stats.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    };

    GameStatus st = status(p, w);
    if (st != GameStatus::Ongoing) {
        result.winner = st == GameStatus::StallerWon ? Winner::Staller : Winner::Dominator;
        finish();
        return result;
    }
    try {
        {
            std::size_t before = table_->size();
            std::uint64_t hits_before = run.memo_hits.load();
            bool v = run.value(p.dominator(), p.staller(), p.to_move());
            result.from_cache = run.nodes.load() == 1 && run.memo_hits.load() > hits_before && table_->size() == before;
            result.winner = to_winner(v);
        }
        Position cur = p;
        bool v = result.winner == Winner::Staller;
        while (true) {
            Vertex x = run.best_move(cur.dominator(), cur.staller(), cur.to_move(), v);
            if (!result.best_move) result.best_move = x;
            result.principal_line.push_back({x, cur.to_move()});
            cur = cur.play(x);
            if (status(cur, w) != GameStatus::Ongoing) break;
            v = run.value(cur.dominator(), cur.staller(), cur.to_move());
        }
        if (to_winner(status(cur, w) == GameStatus::StallerWon) != result.winner)
            throw std::logic_error("principal line ends with the wrong winner");
    } catch (const BudgetExhausted&) {
        result = SolveResult{};
        result.winner = Winner::Unknown;
    }
    finish();
    return result;
}

Winner Solver::winner(const WinningSetSystem& w, const Position& p) {
    GameStatus st = status(p, w);
    if (st == GameStatus::StallerWon) return Winner::Staller;
    if (st == GameStatus::DominatorWon) return Winner::Dominator;
    auto base = base_sets(w);
    RootRun run(base, cfg_, *table_, Clock::now() + cfg_.time_budget);
    try {
        return to_winner(run.value(p.dominator(), p.staller(), p.to_move()));
    } catch (const BudgetExhausted&) {
        return Winner::Unknown;
    }
}

Vertex Solver::best_response(const WinningSetSystem& w, const Position& p) {
    if (status(p, w) != GameStatus::Ongoing) throw GameError("the game is already over");
    auto base = base_sets(w);
    RootRun run(base, cfg_, *table_, Clock::now() + cfg_.time_budget);
    bool v = run.value(p.dominator(), p.staller(), p.to_move());
    return run.best_move(p.dominator(), p.staller(), p.to_move(), v);
}

SolveResult solve(const Graph& g, Player first, const SolverConfig& cfg) {
    Solver solver(cfg);
    return solver.solve(winning_sets(g), Position(g.order(), first));
}

OutcomeResult classify_outcome(const Graph& g, const SolverConfig& cfg) {
    Solver solver(cfg);
    auto w = winning_sets(g);
    OutcomeResult r;
    r.d_game = solver.winner(w, Position(g.order(), Player::Dominator));
    r.s_game = solver.winner(w, Position(g.order(), Player::Staller));
    r.cls = outcome_from_winners(r.d_game, r.s_game);
    return r;
}

Threats immediate_threats(const Position& p, const WinningSetSystem& w) {
    Threats t;
    if (status(p, w) != GameStatus::Ongoing) return t;
    VertexMask singles = 0;
    for (const auto& live : w.live(p))
        if (std::has_single_bit(live.needed)) singles |= live.needed;
    if (p.to_move() == Player::Staller)
        t.staller_wins_now = singles;
    else
        t.dominator_forced = singles;
    return t;
}

std::optional<Vertex> find_double_trap_move(const Position& p, const WinningSetSystem& w) {
    if (p.to_move() != Player::Staller || status(p, w) != GameStatus::Ongoing) return std::nullopt;
    VertexMask wins_now = immediate_threats(p, w).staller_wins_now;
    for (Vertex x : mask_to_vertices(p.free_mask() & ~wins_now)) {
        Position next = p.play(x);
        if (immediate_threats(next, w).double_trap()) return x;
    }
    return std::nullopt;
}

}  // namespace mbtd
