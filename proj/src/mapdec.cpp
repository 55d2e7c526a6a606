#include "mapdec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "errors.hpp"

namespace ldpcstab {

double block_score(Mask x, const std::vector<double>& llrs) {
    double s = 0;
    for (std::size_t i = 0; i < llrs.size(); ++i) s += ((x >> i) & 1) ? -llrs[i] : llrs[i];
    return s;
}

BlockDecision blockwise_map(const std::vector<Mask>& words, const std::vector<double>& llrs, Rng* coin) {
    require(!words.empty(), "empty codeword list");
    double best = -std::numeric_limits<double>::infinity();
    std::vector<Mask> top;
    for (Mask w : words) {
        double s = block_score(w, llrs);
        double tol = 1e-9 * std::max(1.0, std::fabs(s));
        if (s > best + tol) {
            best = s;
            top.assign(1, w);
        } else if (std::fabs(s - best) <= tol) {
            top.push_back(w);
        }
    }
    BlockDecision d;
    d.score = best;
    d.ties = static_cast<int>(top.size());
    d.word = coin && top.size() > 1 ? top[uniform_index(*coin, top.size())] : *std::min_element(top.begin(), top.end());
    return d;
}

BlockDecision blockwise_map(const Code& code, const std::vector<double>& llrs, Rng* coin) {
    require(static_cast<int>(llrs.size()) == code.n, "one LLR per variable expected");
    return blockwise_map(enumerate_codewords(code), llrs, coin);
}

namespace {

double log_sum_exp(const std::vector<double>& xs) {
    if (xs.empty()) return -std::numeric_limits<double>::infinity();
    double m = *std::max_element(xs.begin(), xs.end());
    if (!std::isfinite(m)) return m;
    double s = 0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

}  // namespace

double bitwise_map(const std::vector<Mask>& words, const std::vector<double>& llrs, int v) {
    require(v >= 0 && v < static_cast<int>(llrs.size()), "variable index out of range");
    std::vector<double> plus, minus;
    for (Mask w : words) (((w >> v) & 1) ? minus : plus).push_back(0.5 * block_score(w, llrs));
    if (minus.empty()) return std::numeric_limits<double>::infinity();
    if (plus.empty()) return -std::numeric_limits<double>::infinity();
    return log_sum_exp(plus) - log_sum_exp(minus);
}

double bitwise_map(const Code& code, const std::vector<double>& llrs, int v) {
    return bitwise_map(enumerate_codewords(code), llrs, v);
}

Mask label_to_mask(Mask label, int n) {
    Mask m = 0;
    for (int i = 0; i < n; ++i)
        if ((label >> (n - 1 - i)) & 1) m |= Mask(1) << i;
    return m;
}

Mask mask_to_label(Mask mask, int n) { return label_to_mask(mask, n); }

std::vector<int> label_to_signs(Mask label, int n) { return to_signs(label_to_mask(label, n), n); }

RealizationGraph build_realization_graph(int n, const std::vector<std::vector<int>>& cycles, double sum_bound) {
    if (n > kMaxPatternBits) throw GuardError("realization graph capped at n = 16 coordinates");
    require(sum_bound >= 0, "sum bound must be nonnegative");
    RealizationGraph r;
    r.n = n;
    r.cycle_sets = cycles;
    std::vector<Mask> flips;
    for (auto& c : cycles) {
        Mask m = 0;
        for (int v : c) {
            require(v >= 0 && v < n, "cycle variable out of range");
            m |= Mask(1) << v;
        }
        flips.push_back(m);
    }
    std::vector<char> touched(std::size_t(1) << n, 0);
    for (Mask label = 0; label < (Mask(1) << n); ++label) {
        const Mask x = label_to_mask(label, n);
        for (Mask f : flips) {
            // Sum of the pattern entries on the flip set; flipping negates it.
            int s = std::popcount(f) - 2 * std::popcount(f & x);
            if (std::fabs(static_cast<double>(s)) > sum_bound) continue;
            Mask other = mask_to_label(x ^ f, n);
            touched[label] = touched[other] = 1;
            if (label < other) r.edges.emplace_back(label, other);
        }
    }
    std::sort(r.edges.begin(), r.edges.end());
    r.edges.erase(std::unique(r.edges.begin(), r.edges.end()), r.edges.end());
    for (Mask label = 0; label < (Mask(1) << n); ++label)
        if (touched[label]) r.vertices.push_back(label);
    return r;
}

RealizationGraph build_realization_graph(const TannerGraph& g, int v, double sum_bound, int length_bound) {
    require(v >= 0 && v < g.n, "variable index out of range");
    CycleOptions o;
    o.through = v;
    o.max_len = length_bound;
    return build_realization_graph(g.n, enumerate_deg2_cycles(g, o), sum_bound);
}

PatternGraph maximum_matching(const RealizationGraph& r) {
    std::map<Mask, int> idx;
    for (std::size_t i = 0; i < r.vertices.size(); ++i) idx[r.vertices[i]] = static_cast<int>(i);
    std::vector<std::pair<int, int>> es;
    for (auto [a, b] : r.edges) es.emplace_back(idx.at(a), idx.at(b));
    std::vector<int> mate = maximum_matching(static_cast<int>(r.vertices.size()), es);
    PatternGraph p;
    for (std::size_t i = 0; i < mate.size(); ++i)
        if (mate[i] > static_cast<int>(i)) {
            p.matching.emplace_back(r.vertices[i], r.vertices[mate[i]]);
            p.vertices.push_back(r.vertices[i]);
            p.vertices.push_back(r.vertices[mate[i]]);
        }
    std::sort(p.vertices.begin(), p.vertices.end());
    return p;
}

bool is_valid_matching(const RealizationGraph& r, const std::vector<std::pair<Mask, Mask>>& m) {
    std::vector<Mask> seen;
    for (auto [a, b] : m) {
        auto e = std::minmax(a, b);
        if (!std::binary_search(r.edges.begin(), r.edges.end(), std::pair<Mask, Mask>(e.first, e.second)))
            return false;
        seen.push_back(a);
        seen.push_back(b);
    }
    std::sort(seen.begin(), seen.end());
    return std::adjacent_find(seen.begin(), seen.end()) == seen.end();
}

std::string edges_to_text(const std::vector<std::pair<Mask, Mask>>& edges) {
    std::ostringstream os;
    for (auto [a, b] : edges) os << a << ' ' << b << '\n';
    return os.str();
}

double pattern_probability(Mask label, int n, double p) {
    int flips = std::popcount(label_to_mask(label, n));
    return std::pow(p, flips) * std::pow(1 - p, n - flips);
}

namespace {

double bsc_p(const Channel& c) {
    require(c.kind == ChannelKind::bsc, "this bound is stated for the BSC only");
    require(c.param > 0 && c.param < 0.5, "BSC crossover must lie in (0, 1/2)");
    return c.param;
}

}  // namespace

double bit_error_lower_bound(const TannerGraph& g, int v, const Channel& bsc, int l, double sum_bound) {
    const double p = bsc_p(bsc);
    require(l >= 0, "l must be nonnegative");
    RealizationGraph r = build_realization_graph(g, v, sum_bound);
    PatternGraph pg = maximum_matching(r);
    double mass = 0;
    for (Mask label : pg.vertices) mass += pattern_probability(label, g.n, p);
    return mass / (1 + std::pow((1 - p) / p, l));
}

double exact_bitwise_error(const Code& code, int v, const Channel& bsc) {
    const double p = bsc_p(bsc);
    if (code.n > kMaxPatternBits) throw GuardError("exhaustive bitwise error capped at n = 16");
    const std::vector<Mask> words = enumerate_codewords(code);
    const double a = std::log((1 - p) / p);
    std::vector<double> llr(code.n);
    double err = 0;
    for (Mask y = 0; y < (Mask(1) << code.n); ++y) {
        for (int i = 0; i < code.n; ++i) llr[i] = ((y >> i) & 1) ? -a : a;
        double x = bitwise_map(words, llr, v);
        double w = std::pow(p, std::popcount(y)) * std::pow(1 - p, code.n - std::popcount(y));
        if (x < 0)
            err += w;
        else if (x == 0)
            err += 0.5 * w;
    }
    return err;
}

std::optional<Witness> cycle_block_error_witness(const TannerGraph& g, const std::vector<double>& llrs) {
    require(static_cast<int>(llrs.size()) == g.n, "one LLR per variable expected");
    std::optional<Witness> best;
    for (auto& c : enumerate_deg2_cycles(g)) {
        double s = 0;
        for (int v : c) s += llrs[v];
        if (s > 0 || (best && s >= best->cycle_sum)) continue;
        Witness w;
        for (int v : c) w.word |= Mask(1) << v;
        w.cycle = c;
        w.cycle_sum = s;
        w.score_gain = -2 * s;
        w.tie = s == 0;
        best = w;
    }
    return best;
}

TannerGraph example_graph_1() { return TannerGraph::from_checks(4, {{0, 1, 2}, {0, 1, 3}, {2, 3}}); }

TannerGraph example_graph_2() { return TannerGraph::from_checks(5, {{0, 1, 2}, {0, 1, 3, 4}, {2, 3, 4}}); }

}  // namespace ldpcstab
