#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "channel.hpp"
#include "rng.hpp"
#include "tanner.hpp"

namespace ldpcstab {

// Maximum-cardinality matching on a general graph (Edmonds). mate[v] = -1 when unmatched.
std::vector<int> maximum_matching(int V, const std::vector<std::pair<int, int>>& edges);
// Exhaustive oracle for small graphs (edge-subset search with pruning).
int maximum_matching_size_bruteforce(int V, const std::vector<std::pair<int, int>>& edges);

struct BlockDecision {
    Mask word = 0;
    double score = 0;  // sum x_i l_i
    int ties = 1;      // codewords attaining the best score
};
// Ties are broken by coin when rng is given, else by the smallest mask.
BlockDecision blockwise_map(const std::vector<Mask>& words, const std::vector<double>& llrs, Rng* coin = nullptr);
BlockDecision blockwise_map(const Code& code, const std::vector<double>& llrs, Rng* coin = nullptr);

double block_score(Mask x, const std::vector<double>& llrs);

// ln( sum_{x_v=+1} e^{<x,l>/2} / sum_{x_v=-1} e^{<x,l>/2} ).
double bitwise_map(const std::vector<Mask>& words, const std::vector<double>& llrs, int v);
double bitwise_map(const Code& code, const std::vector<double>& llrs, int v);

// Pattern labels: coordinate 1 is the most significant bit, bit value b maps to 1 - 2b.
Mask label_to_mask(Mask label, int n);
Mask mask_to_label(Mask mask, int n);
std::vector<int> label_to_signs(Mask label, int n);

constexpr int kMaxPatternBits = 16;

struct RealizationGraph {
    int n = 0;
    std::vector<Mask> vertices;                  // labels, ascending
    std::vector<std::pair<Mask, Mask>> edges;    // label pairs (u < v), ascending
    std::vector<std::vector<int>> cycle_sets;    // variables, 0-based
};
RealizationGraph build_realization_graph(int n, const std::vector<std::vector<int>>& cycles, double sum_bound);
RealizationGraph build_realization_graph(const TannerGraph& g, int v, double sum_bound, int length_bound = 1 << 30);

struct PatternGraph {
    std::vector<std::pair<Mask, Mask>> matching;
    std::vector<Mask> vertices;
};
PatternGraph maximum_matching(const RealizationGraph& r);
bool is_valid_matching(const RealizationGraph& r, const std::vector<std::pair<Mask, Mask>>& m);

// "u v" per line, decimal labels.
std::string edges_to_text(const std::vector<std::pair<Mask, Mask>>& edges);

// P(received pattern | all-one sent) over BSC(p); label semantics above.
double pattern_probability(Mask label, int n, double p);

double bit_error_lower_bound(const TannerGraph& g, int v, const Channel& bsc, int l, double sum_bound = 1.0);
// Exhaustive bitwise-MAP error probability of v over all 2^n BSC outputs, ties at half weight.
double exact_bitwise_error(const Code& code, int v, const Channel& bsc);

struct Witness {
    Mask word = 0;            // -1 on the cycle
    std::vector<int> cycle;
    double cycle_sum = 0;
    double score_gain = 0;    // score(word) - score(all-one) = -2 cycle_sum
    bool tie = false;
};
std::optional<Witness> cycle_block_error_witness(const TannerGraph& g, const std::vector<double>& llrs);

// Tanner graphs of the two worked examples, variables 0-based.
TannerGraph example_graph_1();
TannerGraph example_graph_2();

}  // namespace ldpcstab
