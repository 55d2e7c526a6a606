#include <doctest.h>

#include <cmath>

#include "errors.hpp"
#include "explore.hpp"
#include "mapdec.hpp"

using namespace ldpcstab;

namespace {

void check_trace_invariants(const ExplorationTrace& t, long long total, int d, int l) {
    long long prevA = 0, prevE = 0;
    for (const auto& s : t.stages) {
        CHECK(s.A == prevA + s.Z - 1);
        long long sum = 0;
        for (long long c : s.status_count) sum += c;
        CHECK(sum == total);
        const long long bound = d == 1 ? 2LL * l : 2 * (static_cast<long long>(std::pow(d, l)) - 1) / (d - 1);
        if (!s.restart) CHECK(s.explored_check - prevE <= bound);
        prevA = s.A;
        prevE = s.explored_check;
    }
    if (t.K) {
        int first = -1;
        for (const auto& s : t.stages)
            if (s.A == 0) {
                first = s.k;
                break;
            }
        CHECK(*t.K == first);
    }
}

}  // namespace

TEST_SUITE("explore") {

TEST_CASE("trace recursion, status conservation, per-stage increments") {
    auto pair = DegreePair::from_node({{2, 0.6}, {3, 0.4}}, {{3, 0.5}, {4, 0.5}});
    for (auto ch : {Channel::make(ChannelKind::bec, 0.7), Channel::make(ChannelKind::bsc, 0.1),
                    Channel::make(ChannelKind::bawgnc, 0.8)})
        for (int l : {1, 2, 3})
            for (int r = 0; r < 20; ++r) {
                ExploreOptions o;
                o.l_steps = l;
                o.eps_frac = 0.3;
                auto counts = degree_counts(pair, 500);
                auto t = run_exploration(pair, 500, ch, o, 5, r);
                check_trace_invariants(t, 2 * counts.edges(), pair.max_check_degree() - 1, l);
            }
}

TEST_CASE("BEC(1) with forced keep grows at the branching rate") {
    ExploreOptions o;
    o.l_steps = 2;
    o.eps_frac = 0.02;
    o.coin = CoinMode::always_keep;
    auto t = run_exploration(DegreePair::cycle_code(), 1 << 16, Channel::make(ChannelKind::bec, 1.0), o, 3, 0);
    double z = 0;
    int k = 0;
    for (const auto& s : t.stages)
        if (s.k > 0) {
            CHECK(s.Z <= 4);
            z += s.Z;
            ++k;
        }
    REQUIRE(k > 100);
    CHECK(z / k > 3.9);
}

TEST_CASE("BEC(0): no path survives") {
    ExploreOptions o;
    o.l_steps = 1;
    auto t = run_exploration(DegreePair::cycle_code(), 300, Channel::make(ChannelKind::bec, 0.0), o, 3, 0);
    for (const auto& s : t.stages)
        if (!s.restart) CHECK(s.Z == 0);
    // One active half-edge is consumed per stage, so K equals A_0.
    REQUIRE(t.K);
    CHECK(*t.K == t.stages.front().A);
}

TEST_CASE("determinism") {
    Rng r(8);
    auto g = sample_graph(DegreePair::cycle_code(), 300, r);
    ExploreOptions o;
    o.l_steps = 2;
    auto ch = Channel::make(ChannelKind::bsc, 0.2);
    auto a = run_exploration(g, ch, o, 77, 4), b = run_exploration(g, ch, o, 77, 4);
    REQUIRE(a.stages.size() == b.stages.size());
    for (std::size_t i = 0; i < a.stages.size(); ++i) CHECK(a.stages[i].A == b.stages[i].A);
    CHECK(a.revealed == b.revealed);
}

TEST_CASE("coin stream is independent of the pairing stream") {
    Rng r(8);
    auto g = sample_graph(DegreePair::cycle_code(), 600, r);
    ExploreOptions keep, drop;
    keep.coin = CoinMode::always_keep;
    drop.coin = CoinMode::always_drop;
    auto ch = Channel::make(ChannelKind::bec, 0.6);
    Explorer a(g, ch, keep, 1, 1), b(g, ch, drop, 1, 1);
    CHECK(a.llrs() == b.llrs());
}

TEST_CASE("no degree-two start node") {
    CHECK_THROWS_AS(run_exploration(DegreePair::regular(3, 6), 60, Channel::make(ChannelKind::bec, 0.5), {}, 1, 0),
                    ValidationError);
}

TEST_CASE("cycle event") {
    // A_{eps n} = 0 means no event.
    ExploreOptions o;
    Explorer dead(degree_counts(DegreePair::cycle_code(), 300), Channel::make(ChannelKind::bec, 0.0), o, 1, 0);
    CHECK_FALSE(dead.detect_cycle_event().occurred);

    // Forced landing on the BSC: the returned set is an all-degree-two cycle
    // with negative LLR sum, verified against the graph and the revealed LLRs.
    Rng r(2);
    auto ch = Channel::make(ChannelKind::bsc, 0.3);
    int seen = 0;
    for (int run = 0; run < 400 && seen < 20; ++run) {
        auto g = sample_graph(DegreePair::cycle_code(), 600, r);
        ExploreOptions f;
        f.l_steps = 2;
        f.eps_frac = 0.05;
        f.force_landing = true;
        f.require_root_negative = true;
        Explorer e(g, ch, f, 9, run);
        auto ev = e.detect_cycle_event();
        if (!ev.occurred) continue;
        ++seen;
        double s = 0;
        for (int v : ev.cycle) {
            CHECK(g.var_degrees[v] == 2);
            s += e.llrs()[v];
        }
        CHECK(s == doctest::Approx(ev.llr_sum));
        CHECK(s < 0);
    }
    CHECK(seen > 0);
}

TEST_CASE("negative degree-two cycles") {
    CHECK(count_deg2_negative_cycles(example_graph_1(), {-1, -1, 1, 1}) == 2);
    CHECK(count_deg2_negative_cycles(example_graph_1(), {1, 1, 1, 1}) == 0);
    Rng r(4);
    auto g = sample_graph(DegreePair::regular(3, 6), 12, r);
    CHECK(count_deg2_negative_cycles(g, std::vector<double>(12, -1.0)) == 0);
}

TEST_CASE("subcritical bound") {
    CHECK(subcritical_bound(1e4, 0.4, 1, 0.5, 0.0, 2) == 1.0);
    // delta^2 gamma^{2l} / d^{2l} = 0.1
    CHECK(std::fabs(subcritical_bound(1e4, 0.4, 1, 1.0, std::sqrt(0.1), 1) - std::exp(-0.1 * std::pow(10, 1.6))) <
          1e-15);
    auto k = subcritical_constants(Channel::make(ChannelKind::bec, 0.3), 2.0, 1);
    CHECK(k.gamma == doctest::Approx(0.3));
    CHECK_THROWS_AS(subcritical_constants(Channel::make(ChannelKind::bec, 1.0), 2.0, 1), ValidationError);
}

TEST_CASE("supercritical bounds") {
    auto b = supercritical_bounds(2000, 0.5, 1, 2.0, 0.4, 4.0, 10);
    CHECK(std::fabs(std::log(b.bound_Ak) + 40) < 1e-9);
    int kappa = kappa_for(1, 2.0, 0.4, 4.0);
    CHECK(supercritical_bounds(2000, 0.5, 1, 2.0, 0.4, 4.0, kappa).c_kappa < 1);
    CHECK(supercritical_bounds(2000, 0.5, 1, 40.0, 0.95, 64.0, 0).bound_Ak < 1e-100);
    CHECK_THROWS_AS(supercritical_bounds(2000, 0.5, 1, 2.0, 0.6, 4.0, 1), ValidationError);
}

TEST_CASE("LP bound and primal") {
    CHECK(std::fabs(lp_bound(2, 4, 0.5) - (0.5 + 0.5 * std::exp(-2.0))) < 1e-15);
    CHECK(std::fabs(lp_bound(2, 4, 0.5) - 0.56767) < 1e-5);
    CHECK(std::fabs(lp_bound(2, 4, 1e3) - 0.5) < 1e-15);
    CHECK(std::fabs(lp_bound(4, 4, 0.3) - std::exp(-1.2)) < 1e-15);
    auto p = lp_solve_primal(2, 4, 0.5);
    CHECK(std::fabs(p.value - lp_bound(2, 4, 0.5)) < 1e-12);
    CHECK_THROWS_AS(lp_bound(5, 4, 0.5), ValidationError);
}

TEST_CASE("g star") {
    CHECK(std::fabs(g_star(2, 4, 0.5) - std::pow(0.5, -0.25) * std::pow(2.0 / 3, 0.75)) < 1e-15);
    CHECK(std::fabs(g_star(2, 4, 0.5) - 0.8773827) < 1e-6);
    CHECK(std::fabs(g_star(2, 4, 1e-6) - 1) < 1e-5);
    auto c = g_star_check(2, 4, 0.5);
    CHECK(c.matches);
    CHECK(c.below_exp_bound);
    CHECK(c.grid_above);
    CHECK_THROWS_AS(g_star(5, 2, 0.5), ValidationError);
}

TEST_CASE("choose epsilon") {
    auto pair = DegreePair::cycle_code();
    for (auto ch : {Channel::make(ChannelKind::bec, 0.8), Channel::make(ChannelKind::bsc, 0.2)}) {
        auto e = choose_epsilon(ch, pair);
        CHECK(e.gamma > 1);
        CHECK(e.gamma < 2);
        CHECK(e.epsilon > 0);
        CHECK(e.lhs >= e.rhs);
        CHECK(std::fabs(e.residual_product - worst_residual(pair, e.epsilon).product()) < 1e-15);
    }
    CHECK_THROWS_AS(choose_epsilon(Channel::make(ChannelKind::bec, 0.5), pair), ValidationError);
}

}
