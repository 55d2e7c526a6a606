#include "explore.hpp"

#include <cmath>

#include "errors.hpp"

namespace ldpcstab {

Explorer::Explorer(const TannerGraph& g, const Channel& c, const ExploreOptions& o, std::uint64_t master,
                   std::uint64_t run)
    : graph_(&g), var_deg_(g.var_degrees), check_deg_(g.check_degrees), var_off_(g.var_offset),
      check_off_(g.check_offset), var_owner_(g.var_owner), check_owner_(g.check_owner), o_(o) {
    init(c, master, run);
}

Explorer::Explorer(const DegreeCounts& counts, const Channel& c, const ExploreOptions& o, std::uint64_t master,
                   std::uint64_t run)
    : var_deg_(counts.var_degrees), check_deg_(counts.check_degrees), o_(o) {
    auto build = [](const std::vector<int>& deg, std::vector<int>& off, std::vector<int>& owner) {
        off.assign(deg.size() + 1, 0);
        for (std::size_t i = 0; i < deg.size(); ++i) off[i + 1] = off[i] + deg[i];
        owner.resize(off.back());
        for (std::size_t i = 0; i < deg.size(); ++i)
            for (int h = off[i]; h < off[i + 1]; ++h) owner[h] = static_cast<int>(i);
    };
    build(var_deg_, var_off_, var_owner_);
    build(check_deg_, check_off_, check_owner_);
    require(var_off_.back() == check_off_.back(), "variable and check half-edge totals differ");
    init(c, master, run);
}

void Explorer::init(const Channel& c, std::uint64_t master, std::uint64_t run) {
    require(o_.l_steps >= 1, "l must be >= 1");
    require(o_.eps_frac > 0 && std::isfinite(o_.eps_frac), "eps_frac must be positive");
    n_ = static_cast<int>(var_deg_.size());
    E_ = var_off_.back();
    pair_rng_ = make_rng(master, run, Stream::pairing);
    coin_rng_ = make_rng(master, run, Stream::coin);
    Rng ch = make_rng(master, run, Stream::channel);
    llr_.resize(n_);
    for (double& x : llr_) x = c.sample_llr(ch);
    vs_.assign(E_, Status::neutral);
    cs_.assign(E_, Status::neutral);
    he_node_.assign(E_, -1);
    count_[static_cast<int>(Status::neutral)] = 2LL * E_;
    if (!graph_) {
        vpool_.resize(E_);
        cpool_.resize(E_);
        vpos_.resize(E_);
        cpos_.resize(E_);
        for (int h = 0; h < E_; ++h) vpool_[h] = cpool_[h] = vpos_[h] = cpos_[h] = h;
    }
    trace_.l_steps = o_.l_steps;
    trace_.eps_frac = o_.eps_frac;
    trace_.budget = static_cast<long long>(std::ceil(o_.eps_frac * n_ - 1e-9));
}

namespace {

void pool_remove(std::vector<int>& pool, std::vector<int>& pos, int h) {
    int i = pos[h], last = pool.back();
    pool[i] = last;
    pos[last] = i;
    pool.pop_back();
}

}  // namespace

void Explorer::set_var(int h, Status s) {
    Status old = vs_[h];
    if (old == s) return;
    count_[static_cast<int>(old)]--;
    count_[static_cast<int>(s)]++;
    vs_[h] = s;
    if (s == Status::explored && !graph_) pool_remove(vpool_, vpos_, h);
}

void Explorer::set_check(int h, Status s) {
    Status old = cs_[h];
    if (old == s) return;
    count_[static_cast<int>(old)]--;
    count_[static_cast<int>(s)]++;
    cs_[h] = s;
    if (old == Status::active) --active_;
    if (s == Status::active) ++active_;
    if (s == Status::explored) {
        ++explored_check_;
        if (!graph_) pool_remove(cpool_, cpos_, h);
    }
}

int Explorer::connect_check(int ch) {
    if (graph_) return graph_->inverse[ch];
    return vpool_[uniform_index(pair_rng_, vpool_.size())];
}

int Explorer::connect_var(int vh) {
    if (graph_) return graph_->pairing[vh];
    return cpool_[uniform_index(pair_rng_, cpool_.size())];
}

bool Explorer::keep_tie() {
    switch (o_.coin) {
        case CoinMode::always_keep: return true;
        case CoinMode::always_drop: return false;
        default: return uniform01(coin_rng_) < 0.5;
    }
}

int Explorer::next_root() const {
    for (int v = 0; v < n_; ++v) {
        if (var_deg_[v] != 2) continue;
        if (vs_[var_off_[v]] == Status::neutral && vs_[var_off_[v] + 1] == Status::neutral) return v;
    }
    return -1;
}

void Explorer::start_at(int v) {
    root_ = v;
    root_node_ = static_cast<int>(nodes_.size());
    nodes_.push_back({v, -1});
    trace_.revealed.emplace_back(v, llr_[v]);
    const int e1 = var_off_[v];
    const int ch = connect_var(e1);
    const bool fresh = cs_[ch] == Status::neutral;
    set_var(e1, Status::explored);
    set_check(ch, Status::explored);
    const int c = check_owner_[ch];
    for (int h = check_off_[c]; h < check_off_[c + 1]; ++h) {
        if (cs_[h] == Status::explored) continue;
        if (fresh) {
            set_check(h, Status::active);
            he_node_[h] = root_node_;
            fifo_.push_back(h);
        } else {
            set_check(h, Status::open);
        }
    }
}

void Explorer::stage() {
    int h = -1;
    while (fifo_head_ < fifo_.size()) {
        int x = fifo_[fifo_head_++];
        if (cs_[x] == Status::active) {
            h = x;
            break;
        }
    }
    if (h < 0) return;
    std::vector<Frontier> frontier{{h, he_node_[h], 0.0}};
    const int e2 = var_off_[trace_.root] + 1;
    for (int t = 1; t <= o_.l_steps && !frontier.empty(); ++t) {
        std::vector<Frontier> vars;
        for (const Frontier& f : frontier) {
            if (cs_[f.he] != Status::active) continue;
            const int vh = connect_check(f.he);
            const int u = var_owner_[vh];
            const int other = vh == var_off_[u] ? vh + 1 : vh - 1;
            const bool grow = vs_[vh] == Status::neutral && var_deg_[u] == 2 && vs_[other] == Status::neutral;
            if (vh == e2) trace_.e2_consumed = true;
            set_check(f.he, Status::explored);
            set_var(vh, Status::explored);
            if (grow) {
                set_var(other, Status::active);
                int node = static_cast<int>(nodes_.size());
                nodes_.push_back({u, f.node});
                trace_.revealed.emplace_back(u, llr_[u]);
                vars.push_back({other, node, f.sum + llr_[u]});
            } else {
                for (int x = var_off_[u]; x < var_off_[u + 1]; ++x)
                    if (vs_[x] != Status::explored) set_var(x, Status::open);
            }
        }
        std::vector<Frontier> next;
        for (const Frontier& f : vars) {
            if (vs_[f.he] != Status::active) continue;
            const int ch = connect_var(f.he);
            const bool fresh = cs_[ch] == Status::neutral;
            set_var(f.he, Status::explored);
            set_check(ch, Status::explored);
            const int c = check_owner_[ch];
            for (int x = check_off_[c]; x < check_off_[c + 1]; ++x) {
                if (cs_[x] == Status::explored) continue;
                if (fresh) {
                    set_check(x, Status::active);
                    he_node_[x] = f.node;
                    next.push_back({x, f.node, f.sum});
                } else {
                    set_check(x, Status::open);
                }
            }
        }
        frontier = std::move(next);
    }
    // Additional step: prune the stage's paths by their LLR sums.
    for (const Frontier& f : frontier) {
        if (cs_[f.he] != Status::active) continue;
        bool keep = f.sum < 0 || (f.sum == 0 && keep_tie());
        if (keep)
            fifo_.push_back(f.he);
        else
            set_check(f.he, Status::open);
    }
}

void Explorer::record(int k, long long prevA, bool restart) {
    StageRow row{k, active_, active_ - prevA + 1, explored_check_, restart, {}};
    for (int i = 0; i < 4; ++i) row.status_count[i] = count_[i];
    trace_.stages.push_back(row);
    if (active_ == 0) {
        if (!trace_.K) trace_.K = k;
        trace_.excursion_K.push_back(k);
    }
}

const ExplorationTrace& Explorer::run() {
    if (ran_) return trace_;
    ran_ = true;
    int v = next_root();
    if (v < 0) throw ValidationError("no degree-two variable node to start from (lambda_2 = 0?)");
    trace_.root = v;
    trace_.root_llr = llr_[v];
    start_at(v);
    record(0, 0, true);
    for (int k = 1;; ++k) {
        if (explored_check_ >= trace_.budget) {
            trace_.stop = StopReason::budget;
            break;
        }
        const long long prev = active_;
        if (active_ == 0) {
            if (o_.stop_at_first_zero || !o_.restart) {
                trace_.stop = StopReason::zero;
                break;
            }
            int w = next_root();
            if (w < 0) {
                trace_.stop = StopReason::exhausted;
                break;
            }
            ++trace_.restarts;
            start_at(w);
            record(k, prev, true);
            continue;
        }
        stage();
        record(k, prev, false);
    }
    return trace_;
}

CycleEvent Explorer::detect_cycle_event() {
    run();
    CycleEvent ev;
    if (trace_.restarts > 0 || trace_.stop != StopReason::budget || active_ == 0) return ev;
    ev.attempted = true;
    if (trace_.e2_consumed) return ev;
    int ch = -1;
    if (o_.force_landing) {
        std::vector<int> act;
        for (int h = 0; h < E_; ++h)
            if (cs_[h] == Status::active) act.push_back(h);
        ch = act[uniform_index(pair_rng_, act.size())];
    } else {
        ch = connect_var(var_off_[trace_.root] + 1);
    }
    if (cs_[ch] != Status::active) return ev;
    ev.landed = true;
    for (int node = he_node_[ch]; node >= 0; node = nodes_[node].parent) {
        ev.cycle.push_back(nodes_[node].var);
        ev.llr_sum += llr_[nodes_[node].var];
    }
    ev.tie = ev.llr_sum == 0;
    ev.occurred = !o_.require_root_negative || trace_.root_llr < 0;
    return ev;
}

ExplorationTrace run_exploration(const TannerGraph& g, const Channel& c, const ExploreOptions& o,
                                 std::uint64_t master, std::uint64_t run) {
    Explorer e(g, c, o, master, run);
    return e.run();
}

ExplorationTrace run_exploration(const DegreePair& pair, int n, const Channel& c, const ExploreOptions& o,
                                 std::uint64_t master, std::uint64_t run) {
    require(pair.lambda_coeff(2) > 0, "pair has lambda_2 = 0: no degree-two start node");
    Explorer e(degree_counts(pair, n), c, o, master, run);
    return e.run();
}

int count_deg2_negative_cycles(const TannerGraph& g, const std::vector<double>& llrs, int max_dim) {
    require(static_cast<int>(llrs.size()) == g.n, "one LLR per variable node expected");
    CycleOptions o;
    o.max_dim = max_dim;
    std::vector<char> on(g.n, 0);
    for (const auto& cyc : enumerate_deg2_cycles(g, o)) {
        double s = 0;
        for (int v : cyc) s += llrs[v];
        if (s < 0)
            for (int v : cyc) on[v] = 1;
    }
    int count = 0;
    for (char b : on) count += b;
    return count;
}

}  // namespace ldpcstab
