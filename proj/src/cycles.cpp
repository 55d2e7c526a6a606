// Simple-cycle enumeration on the degree-two subgraph. Checks are vertices,
// degree-two variables are edges; the cycle space of each component is walked
// in Gray-code order over its fundamental cycles.
#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <queue>

#include "errors.hpp"
#include "tanner.hpp"

namespace ldpcstab {

namespace {

using Bits = std::vector<std::uint64_t>;

void flip(Bits& b, int i) { b[i >> 6] ^= std::uint64_t(1) << (i & 63); }
bool test(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1; }

struct Component {
    std::vector<int> verts;  // subgraph checks
    std::vector<int> edges;  // subgraph variables
};

struct Edge {
    int a, b;
};

}  // namespace

std::vector<std::vector<int>> enumerate_deg2_cycles(const TannerGraph& g, const CycleOptions& o) {
    const Deg2Subgraph sub = degree_two_subgraph(g);
    const TannerGraph& s = sub.graph;
    std::vector<Edge> ends(s.n);
    for (int v = 0; v < s.n; ++v) ends[v] = {s.check_of_var_halfedge(s.var_offset[v]), s.check_of_var_halfedge(s.var_offset[v] + 1)};

    // Components by union-find over checks.
    std::vector<int> parent(s.m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& e : ends) parent[find(e.a)] = find(e.b);
    std::vector<int> comp_of(s.m, -1);
    std::vector<Component> comps;
    for (int c = 0; c < s.m; ++c) {
        int r = find(c);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[comp_of[r]].verts.push_back(c);
    }
    for (int v = 0; v < s.n; ++v) comps[comp_of[find(ends[v].a)]].edges.push_back(v);

    int through_sub = -1;
    if (o.through >= 0) {
        auto it = std::find(sub.var_map.begin(), sub.var_map.end(), o.through);
        if (it == sub.var_map.end()) return {};
        through_sub = static_cast<int>(it - sub.var_map.begin());
    }

    std::vector<std::vector<int>> out;
    for (const Component& comp : comps) {
        const int E = static_cast<int>(comp.edges.size()), V = static_cast<int>(comp.verts.size());
        const int dim = E - V + 1;
        if (dim <= 0) continue;
        if (through_sub >= 0 && std::find(comp.edges.begin(), comp.edges.end(), through_sub) == comp.edges.end())
            continue;
        if (dim > o.max_dim)
            throw GuardError("cycle-space dimension " + std::to_string(dim) + " exceeds cap " +
                             std::to_string(o.max_dim));

        std::vector<int> lv(s.m, -1);
        for (int i = 0; i < V; ++i) lv[comp.verts[i]] = i;
        std::vector<std::vector<std::pair<int, int>>> adj(V);  // (neighbor, local edge)
        for (int i = 0; i < E; ++i) {
            const Edge& e = ends[comp.edges[i]];
            adj[lv[e.a]].emplace_back(lv[e.b], i);
            if (e.a != e.b) adj[lv[e.b]].emplace_back(lv[e.a], i);
        }
        // BFS spanning tree.
        std::vector<int> up_edge(V, -1), up(V, -1), depth(V, 0);
        std::vector<char> tree(E, 0), seen(V, 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (auto [y, ei] : adj[x])
                if (!seen[y]) {
                    seen[y] = 1;
                    up[y] = x;
                    up_edge[y] = ei;
                    depth[y] = depth[x] + 1;
                    tree[ei] = 1;
                    q.push(y);
                }
        }
        const int W = (E + 63) / 64;
        std::vector<Bits> fundamental;
        for (int i = 0; i < E; ++i) {
            if (tree[i]) continue;
            Bits b(W, 0);
            flip(b, i);
            int x = lv[ends[comp.edges[i]].a], y = lv[ends[comp.edges[i]].b];
            while (x != y) {
                if (depth[x] < depth[y]) std::swap(x, y);
                flip(b, up_edge[x]);
                x = up[x];
            }
            fundamental.push_back(std::move(b));
        }

        Bits cur(W, 0);
        std::vector<int> deg(V), members;
        std::vector<std::vector<int>> inc(V);
        for (std::uint64_t k = 1; k < (std::uint64_t(1) << dim); ++k) {
            const Bits& f = fundamental[std::countr_zero(k)];
            for (int w = 0; w < W; ++w) cur[w] ^= f[w];
            members.clear();
            for (int i = 0; i < E; ++i)
                if (test(cur, i)) members.push_back(i);
            if (static_cast<int>(members.size()) > o.max_len) continue;
            if (through_sub >= 0) {
                int loc = static_cast<int>(std::find(comp.edges.begin(), comp.edges.end(), through_sub) - comp.edges.begin());
                if (!test(cur, loc)) continue;
            }
            // Simple cycle: every vertex has degree 0 or 2 and the edge set is connected.
            std::fill(deg.begin(), deg.end(), 0);
            bool ok = true;
            for (int i : members) {
                const Edge& e = ends[comp.edges[i]];
                deg[lv[e.a]]++;
                deg[lv[e.b]]++;
            }
            for (int x = 0; x < V && ok; ++x) ok = deg[x] == 0 || deg[x] == 2;
            if (!ok) continue;
            for (auto& v : inc) v.clear();
            for (int i : members) {
                const Edge& e = ends[comp.edges[i]];
                inc[lv[e.a]].push_back(i);
                if (e.a != e.b) inc[lv[e.b]].push_back(i);
            }
            std::vector<char> used(E, 0);
            int walked = 0, x = lv[ends[comp.edges[members[0]]].a];
            std::vector<int> stack{x};
            std::vector<char> vis(V, 0);
            vis[x] = 1;
            while (!stack.empty()) {
                int y = stack.back();
                stack.pop_back();
                for (int i : inc[y]) {
                    if (used[i]) continue;
                    used[i] = 1;
                    ++walked;
                    const Edge& e = ends[comp.edges[i]];
                    int z = lv[e.a] == y ? lv[e.b] : lv[e.a];
                    if (!vis[z]) {
                        vis[z] = 1;
                        stack.push_back(z);
                    }
                }
            }
            if (walked != static_cast<int>(members.size())) continue;
            std::vector<int> vars;
            for (int i : members) vars.push_back(sub.var_map[comp.edges[i]]);
            std::sort(vars.begin(), vars.end());
            out.push_back(std::move(vars));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ldpcstab
