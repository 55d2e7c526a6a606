#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "degseq.hpp"
#include "rng.hpp"

namespace ldpcstab {

// Node counts per degree for blocklength n.
struct DegreeCounts {
    std::vector<int> var_degrees;    // one entry per variable node, ascending
    std::vector<int> check_degrees;  // one entry per check node, ascending
    long long edges() const;
};

// Largest-remainder apportionment of n L_i. The check side is apportioned
// from m = round(E / R'(1)); any half-edge surplus or deficit is absorbed by
// removing top-degree checks and adding one check of the leftover degree.
DegreeCounts degree_counts(const DegreePair& pair, int n);

// Configuration-model Tanner graph. Variable half-edge i is wired to check
// half-edge pairing[i]. Multi-edges are kept.
struct TannerGraph {
    int n = 0, m = 0;
    std::vector<int> var_degrees, check_degrees;
    std::vector<int> var_offset, check_offset;  // prefix sums, sizes n+1 and m+1
    std::vector<int> var_owner, check_owner;    // half-edge -> node
    std::vector<int> pairing;                   // var half-edge -> check half-edge
    std::vector<int> inverse;                   // check half-edge -> var half-edge

    static TannerGraph from_degrees(std::vector<int> var_degrees, std::vector<int> check_degrees,
                                    std::vector<int> pairing);
    // rows[c] lists the variables of check c, with multiplicity.
    static TannerGraph from_checks(int n, const std::vector<std::vector<int>>& rows);

    int edges() const { return static_cast<int>(pairing.size()); }
    int check_of_var_halfedge(int h) const { return check_owner[pairing[h]]; }
    std::vector<int> var_neighbors(int v) const;    // checks, with multiplicity
    std::vector<int> check_neighbors(int c) const;  // variables, with multiplicity

    // "var v: c1 c2 ..." one line per variable node, 0-based indices.
    std::string to_text() const;
    static TannerGraph from_text(const std::string& text);
};

TannerGraph sample_graph(const DegreePair& pair, int n, Rng& rng);
TannerGraph sample_graph(const DegreeCounts& counts, Rng& rng);

using Mask = std::uint32_t;  // bit i set <=> x_i = -1

struct Code {
    int n = 0;
    std::vector<std::vector<int>> rows;  // variables with odd multiplicity per check

    static Code from_graph(const TannerGraph& g);
    bool contains(Mask x) const;
};

constexpr int kMaxEnumerate = 24;

// All codewords, via a GF(2) null-space basis and a Gray-code walk.
std::vector<Mask> enumerate_codewords(const Code& code);
std::vector<int> to_signs(Mask x, int n);

struct Deg2Subgraph {
    TannerGraph graph;
    std::vector<int> var_map;    // subgraph variable -> original variable
    std::vector<int> check_map;  // subgraph check -> original check
    std::vector<std::vector<int>> removed;  // per retained check: removed original variables (degree >= 3)
};
Deg2Subgraph degree_two_subgraph(const TannerGraph& g);

int count_multi_edges(const TannerGraph& g);

// Simple cycles of the degree-two subgraph, as sorted original variable sets.
// Components with cycle-space dimension above max_dim raise GuardError.
struct CycleOptions {
    int max_dim = 20;
    int max_len = 1 << 30;
    int through = -1;  // keep only cycles containing this variable, if >= 0
};
std::vector<std::vector<int>> enumerate_deg2_cycles(const TannerGraph& g, const CycleOptions& o = {});

}  // namespace ldpcstab
