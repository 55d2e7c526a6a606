// Edmonds' blossom algorithm, BFS from each free vertex with blossom contraction.
#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>
#include <queue>

#include "errors.hpp"
#include "mapdec.hpp"

namespace ldpcstab {

namespace {

class Blossom {
public:
    Blossom(int V, const std::vector<std::pair<int, int>>& edges) : n_(V), adj_(V), match_(V, -1) {
        for (auto [a, b] : edges) {
            require(a >= 0 && a < V && b >= 0 && b < V, "edge endpoint out of range");
            if (a == b) continue;
            adj_[a].push_back(b);
            adj_[b].push_back(a);
        }
    }

    std::vector<int> solve() {
        // Greedy start.
        for (int v = 0; v < n_; ++v)
            if (match_[v] < 0)
                for (int u : adj_[v])
                    if (match_[u] < 0) {
                        match_[u] = v;
                        match_[v] = u;
                        break;
                    }
        for (int v = 0; v < n_; ++v) {
            if (match_[v] >= 0) continue;
            int u = find_path(v);
            while (u >= 0) {
                int pv = parent_[u], ppv = match_[pv];
                match_[u] = pv;
                match_[pv] = u;
                u = ppv;
            }
        }
        return match_;
    }

private:
    int lca(int a, int b) {
        std::vector<char> seen(n_, 0);
        for (;;) {
            a = base_[a];
            seen[a] = 1;
            if (match_[a] < 0) break;
            a = parent_[match_[a]];
        }
        for (;;) {
            b = base_[b];
            if (seen[b]) return b;
            b = parent_[match_[b]];
        }
    }

    void mark_path(int v, int b, int child) {
        while (base_[v] != b) {
            blossom_[base_[v]] = blossom_[base_[match_[v]]] = 1;
            parent_[v] = child;
            child = match_[v];
            v = parent_[match_[v]];
        }
    }

    int find_path(int root) {
        used_.assign(n_, 0);
        parent_.assign(n_, -1);
        base_.resize(n_);
        std::iota(base_.begin(), base_.end(), 0);
        used_[root] = 1;
        std::queue<int> q;
        q.push(root);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int to : adj_[v]) {
                if (base_[v] == base_[to] || match_[v] == to) continue;
                if (to == root || (match_[to] >= 0 && parent_[match_[to]] >= 0)) {
                    int cur = lca(v, to);
                    blossom_.assign(n_, 0);
                    mark_path(v, cur, to);
                    mark_path(to, cur, v);
                    for (int i = 0; i < n_; ++i)
                        if (blossom_[base_[i]]) {
                            base_[i] = cur;
                            if (!used_[i]) {
                                used_[i] = 1;
                                q.push(i);
                            }
                        }
                } else if (parent_[to] < 0) {
                    parent_[to] = v;
                    if (match_[to] < 0) return to;
                    used_[match_[to]] = 1;
                    q.push(match_[to]);
                }
            }
        }
        return -1;
    }

    int n_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> match_, parent_, base_;
    std::vector<char> used_, blossom_;
};

}  // namespace

std::vector<int> maximum_matching(int V, const std::vector<std::pair<int, int>>& edges) {
    if (V > (1 << kMaxPatternBits)) throw GuardError("matching capped at 2^16 vertices");
    return Blossom(V, edges).solve();
}

int maximum_matching_size_bruteforce(int V, const std::vector<std::pair<int, int>>& edges) {
    if (V > 24) throw GuardError("brute-force matching capped at 24 vertices");
    std::vector<std::pair<int, int>> es;
    for (auto e : edges)
        if (e.first != e.second) es.push_back(e);
    int best = 0;
    std::function<void(std::size_t, std::uint32_t, int)> rec = [&](std::size_t i, std::uint32_t used, int size) {
        best = std::max(best, size);
        if (i == es.size() || size + (V - std::popcount(used)) / 2 <= best) return;
        auto [a, b] = es[i];
        if (!((used >> a) & 1) && !((used >> b) & 1)) rec(i + 1, used | (1u << a) | (1u << b), size + 1);
        rec(i + 1, used, size);
    };
    rec(0, 0, 0);
    return best;
}

}  // namespace ldpcstab
