#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "errors.hpp"
#include "mapdec.hpp"

using namespace ldpcstab;

TEST_SUITE("mapdec") {

TEST_CASE("blockwise MAP") {
    Code c = Code::from_graph(example_graph_1());
    CHECK(blockwise_map(c, {10, 10, 10, 10}).word == 0);
    auto d = blockwise_map(c, {-1, -1, 1, 1});
    CHECK(d.word == 0b0011);
    CHECK(d.ties == 1);
    auto z = blockwise_map(c, {0, 0, 0, 0});
    CHECK(z.ties == 4);
    Rng coin(1);
    int hits[16] = {};
    for (int i = 0; i < 4000; ++i) ++hits[blockwise_map(c, {0, 0, 0, 0}, &coin).word];
    for (Mask w : enumerate_codewords(c)) CHECK(std::abs(hits[w] - 1000) < 150);
}

TEST_CASE("bitwise MAP") {
    Code c = Code::from_graph(example_graph_1());
    for (int v = 0; v < 4; ++v) CHECK(bitwise_map(c, {1e3, 1e3, 1e3, 1e3}, v) > 100);
    Code lone{3, {{0, 1}}};  // x_2 free, x_0 = x_1
    CHECK(bitwise_map(Code{2, {{0}}}, {0.3, -0.2}, 0) == std::numeric_limits<double>::infinity());
    CHECK(std::fabs(bitwise_map(lone, {0.5, 0.7, -0.3}, 2) - (-0.3)) < 1e-12);
}

TEST_CASE("labels") {
    CHECK(label_to_signs(20, 5) == std::vector<int>{-1, 1, -1, 1, 1});
    for (Mask l = 0; l < 32; ++l) CHECK(mask_to_label(label_to_mask(l, 5), 5) == l);
}

TEST_CASE("realization graph of the first example") {
    auto r = build_realization_graph(example_graph_1(), 0, 1.0);
    CHECK(r.cycle_sets.size() == 2);
    auto p = maximum_matching(r);
    CHECK(p.matching.size() == 6);
    std::vector<std::pair<Mask, Mask>> listed{{1, 10}, {2, 9}, {3, 8}, {5, 14}, {6, 13}, {7, 12}};
    CHECK(is_valid_matching(r, listed));
    // patterns reached through I2 = {1,3,4}
    for (Mask x : {1, 2, 3, 5, 6, 7, 8, 9, 10, 12, 13, 14})
        CHECK(std::binary_search(r.vertices.begin(), r.vertices.end(), x));
    for (auto [a, b] : r.edges) CHECK(a < b);
}

TEST_CASE("realization graph of the second example") {
    auto r = build_realization_graph(example_graph_2(), 0, 1.0);
    std::vector<Mask> nb;
    for (auto [a, b] : r.edges) {
        if (a == 20) nb.push_back(b);
        if (b == 20) nb.push_back(a);
    }
    std::sort(nb.begin(), nb.end());
    CHECK(nb == std::vector<Mask>{1, 2, 12});
}

TEST_CASE("no cycles through v") {
    auto g = TannerGraph::from_checks(3, {{0, 1, 2}, {0, 1, 2}, {2}});
    auto r = build_realization_graph(g, 2, 1.0);
    CHECK(r.vertices.empty());
    CHECK(maximum_matching(r).matching.empty());
    CHECK(bit_error_lower_bound(g, 2, Channel::make(ChannelKind::bsc, 0.1), 2) == 0.0);
}

TEST_CASE("maximum matching small graphs") {
    auto one = maximum_matching(2, {{0, 1}});
    CHECK(std::count_if(one.begin(), one.end(), [](int m) { return m >= 0; }) == 2);
    auto star = maximum_matching(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(std::count_if(star.begin(), star.end(), [](int m) { return m >= 0; }) == 2);
    auto odd = maximum_matching(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0}});
    CHECK(std::count_if(odd.begin(), odd.end(), [](int m) { return m >= 0; }) == 4);
}

TEST_CASE("matching against brute force on random graphs") {
    Rng r(31);
    for (int t = 0; t < 300; ++t) {
        int V = 2 + static_cast<int>(uniform_index(r, 19));
        std::vector<std::pair<int, int>> es;
        double p = uniform01(r);
        for (int a = 0; a < V; ++a)
            for (int b = a + 1; b < V; ++b)
                if (uniform01(r) < p * 0.5) es.emplace_back(a, b);
        auto mate = maximum_matching(V, es);
        int size = 0;
        for (int v = 0; v < V; ++v)
            if (mate[v] > v) {
                ++size;
                CHECK(mate[mate[v]] == v);
                CHECK(std::find(es.begin(), es.end(), std::make_pair(v, mate[v])) != es.end());
            }
        CHECK(size == maximum_matching_size_bruteforce(V, es));
    }
}

TEST_CASE("antisymmetry and likelihood band on realization edges") {
    for (auto g : {example_graph_1(), example_graph_2()}) {
        Code c = Code::from_graph(g);
        auto words = enumerate_codewords(c);
        auto r = build_realization_graph(g, 0, 1.0);
        const double a = std::log(0.9 / 0.1);
        for (auto [x, y] : r.edges) {
            auto sx = label_to_signs(x, g.n), sy = label_to_signs(y, g.n);
            std::vector<double> lx(g.n), ly(g.n);
            int flips = 0;
            for (int i = 0; i < g.n; ++i) {
                lx[i] = a * sx[i];
                ly[i] = a * sy[i];
                flips += sx[i] != sy[i];
            }
            CHECK(std::fabs(bitwise_map(words, lx, 0) + bitwise_map(words, ly, 0)) < 1e-9);
            double ratio = pattern_probability(x, g.n, 0.1) / pattern_probability(y, g.n, 0.1);
            CHECK(ratio <= std::pow(9.0, flips) * (1 + 1e-12));
            CHECK(ratio >= std::pow(9.0, -flips) * (1 - 1e-12));
        }
    }
}

TEST_CASE("bit error lower bound") {
    auto g = example_graph_1();
    Code c = Code::from_graph(g);
    for (double p : {0.05, 0.1, 0.2, 0.3}) {
        auto ch = Channel::make(ChannelKind::bsc, p);
        CHECK(bit_error_lower_bound(g, 0, ch, 2) <= exact_bitwise_error(c, 0, ch) + 1e-15);
    }
    CHECK_THROWS_AS(bit_error_lower_bound(g, 0, Channel::make(ChannelKind::bec, 0.2), 2), ValidationError);
    // p near 1/2: the denominator tends to 2
    auto r = build_realization_graph(g, 0, 1.0);
    double mass = 0;
    for (Mask x : maximum_matching(r).vertices) mass += pattern_probability(x, 4, 0.4999999);
    CHECK(std::fabs(bit_error_lower_bound(g, 0, Channel::make(ChannelKind::bsc, 0.4999999), 2) - mass / 2) < 1e-6);
}

TEST_CASE("cycle witness") {
    auto g = example_graph_1();
    CHECK_FALSE(cycle_block_error_witness(g, {1, 1, 1, 1}));
    auto w = cycle_block_error_witness(g, {-1, -1, 1, 1});
    REQUIRE(w);
    CHECK(w->word == 0b0011);
    CHECK(w->score_gain == doctest::Approx(4.0));
    CHECK_FALSE(w->tie);
    auto t = cycle_block_error_witness(g, {-1, 1, 1, 1});
    REQUIRE(t);
    CHECK(t->tie);
    CHECK(block_score(t->word, {-1, 1, 1, 1}) == block_score(0, {-1, 1, 1, 1}));
}

TEST_CASE("edge list text") {
    CHECK(edges_to_text({{1, 10}, {2, 9}}) == "1 10\n2 9\n");
}

TEST_CASE("guards") {
    CHECK_THROWS_AS(build_realization_graph(17, {}, 1.0), GuardError);
}

}
