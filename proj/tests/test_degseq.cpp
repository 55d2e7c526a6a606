#include <doctest.h>

#include <cmath>
#include <random>

#include "degseq.hpp"
#include "errors.hpp"

using namespace ldpcstab;

TEST_SUITE("degseq") {

TEST_CASE("node to edge perspective") {
    auto l1 = node_to_edge({{2, 1.0}});
    CHECK(l1.at(2) == doctest::Approx(1.0));
    auto l2 = node_to_edge({{2, 0.5}, {3, 0.5}});
    CHECK(l2.at(2) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(l2.at(3) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK_THROWS_AS(node_to_edge({{2, 0.5}, {3, 0.2}}), ValidationError);
}

TEST_CASE("node/edge round trip on random distributions") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        Coeffs L;
        double s = 0;
        for (int d = 2; d <= 12; ++d)
            if (u(rng) < 0.6) s += L[d] = u(rng);
        if (L.empty()) L[2] = s = 1;
        for (auto& [d, v] : L) v /= s;
        Coeffs back = edge_to_node(node_to_edge(L));
        for (auto& [d, v] : L) CHECK(std::fabs(back.at(d) - v) < 1e-12);
    }
}

TEST_CASE("heavy-tail Poisson") {
    auto s2 = CapacitySequence::heavy_tail_poisson(2, 0.4);
    CHECK(s2.lambda()[2] == doctest::Approx(1.0));
    for (int N : {128, 512, 2048}) {
        auto s = CapacitySequence::heavy_tail_poisson(N, 0.5);
        CHECK(std::fabs(s.lambda_prime_zero() - 1.0 / harmonic(N - 1)) < 1e-15);
        CHECK(std::fabs(0.5 * s.lambda_prime_zero() * s.rho_prime_one() - 1.0) < 1e-12);
        CHECK(std::fabs(s.fraction_deg2() - 0.5 / (1.0 - 1.0 / N)) < 1e-12);
    }
    CHECK(std::round(CapacitySequence::heavy_tail_poisson(512, 0.5).lambda_prime_zero() * 1e4) / 1e4 ==
          doctest::Approx(0.1467));
    CHECK(std::fabs(CapacitySequence::heavy_tail_poisson(128, 0.5).fraction_deg2() - 0.50394) < 5e-6);
    CHECK_THROWS_AS(CapacitySequence::heavy_tail_poisson(1, 0.5), ValidationError);
    CHECK_THROWS_AS(CapacitySequence::heavy_tail_poisson(8, 1.0), ValidationError);
}

TEST_CASE("right-regular") {
    auto s = CapacitySequence::right_regular(128, 0.5);
    CHECK(std::fabs(s.lambda_prime_zero() - 0.2609) < 5e-5);
    CHECK(std::fabs(s.fraction_deg2() - 0.5735) < 5e-5);
    CHECK(std::fabs(CapacitySequence::right_regular(2048, 0.5).fraction_deg2() - 0.5456) < 5e-5);
    // binom(alpha, 1) = alpha: lambda_2 lambda_alpha = alpha
    CHECK(std::fabs(s.lambda()[2] * s.lambda_alpha() - s.alpha()) < 1e-14);
    for (double c : s.lambda()) CHECK(c >= 0);
}

TEST_CASE("right-regular closed-form envelopes") {
    for (int N : {16, 128, 1024, 1 << 14})
        for (double eps : {0.2, 0.5, 0.8}) {
            auto s = CapacitySequence::right_regular(N, eps);
            auto e = right_regular_envelope(N, eps);
            const double eb = 1 - eps;
            CHECK(s.lambda_alpha() >= 1 - e.c1 * eb - 1e-12);
            CHECK(s.lambda_alpha() <= 1 - e.c0 * eb + 1e-12);
            const double a = s.alpha();
            for (int i = 1; i <= N - 1; ++i) {
                double v = s.lambda_alpha() * s.lambda()[i + 1], ref = a / std::pow(i, a + 1);
                CHECK(v >= e.c_minus * ref * (1 - 1e-12));
                CHECK(v <= e.c_plus * ref * (1 + 1e-12));
            }
        }
}

TEST_CASE("lambda'(0) decreases in N") {
    for (auto k : {SequenceKind::poisson, SequenceKind::right_regular}) {
        double prev = 1;
        for (int N = 8; N <= (1 << 16); N *= 2) {
            double v = CapacitySequence::make(k, N, 0.5).lambda_prime_zero();
            CHECK(v < prev);
            prev = v;
        }
    }
}

TEST_CASE("residual distributions") {
    auto cyc = DegreePair::cycle_code();
    auto r0 = residual(cyc, {}, {}, 0.1);
    CHECK(r0.lambda_hat.at(2) == doctest::Approx(1.0));
    CHECK(r0.lambda_hat.count(1) ? r0.lambda_hat.at(1) == doctest::Approx(0.0) : true);
    auto r = residual(cyc, {{2, 0.1}}, {{3, 0.1}}, 0.1);
    CHECK(r.lambda_hat.at(2) == doctest::Approx(0.95).epsilon(1e-14));
    CHECK_THROWS_AS(residual(cyc, {{2, 0.2}}, {{3, 0.1}}, 0.3), ValidationError);
    for (double e : {0.01, 0.05, 0.1}) {
        auto w = worst_residual(cyc, e);
        CHECK(w.product() >= cyc.lambda_prime_zero() * cyc.rho_prime_one() - residual_slope(cyc) * e - 1e-12);
    }
}

TEST_CASE("harmonic numbers") {
    CHECK(harmonic(1) == 1.0);
    CHECK(harmonic(4) == doctest::Approx(25.0 / 12).epsilon(1e-15));
    CHECK(harmonic_bounds_hold(2));
    CHECK(harmonic_bounds_hold(1000000));
}

TEST_CASE("pair invariants and text round trip") {
    auto p = DegreePair::from_node({{2, 0.3}, {3, 0.5}, {7, 0.2}}, {{5, 0.6}, {8, 0.4}});
    double sl = 0, sr = 0;
    for (auto& [d, v] : p.lambda()) sl += v;
    for (auto& [d, v] : p.rho()) sr += v;
    CHECK(std::fabs(sl - 1) < 1e-12);
    CHECK(std::fabs(sr - 1) < 1e-12);
    CHECK(p.design_rate() > -1);
    CHECK(p.design_rate() < 1);
    auto q = DegreePair::from_text(p.to_text());
    for (auto& [d, v] : p.lambda()) CHECK(std::fabs(q.lambda_coeff(d) - v) < 1e-15);
    for (auto& [d, v] : p.rho()) CHECK(std::fabs(q.rho_coeff(d) - v) < 1e-15);
}

}
