#include <doctest.h>

#include <cmath>

#include "density_evolution.hpp"
#include "errors.hpp"
#include "universal.hpp"

using namespace ldpcstab;

TEST_SUITE("universal") {

TEST_CASE("Poisson f' closed form") {
    for (int N : {128, 2048, 1 << 15}) CHECK(f_prime(SequenceKind::poisson, N, 0.5, 0.0) == 1.0);
    CHECK(std::fabs(f_prime(SequenceKind::poisson, 1 << 19, 0.5, 0.5) - poisson_fprime_eps_limit()) < 0.01);
    CHECK(std::fabs(poisson_fprime_eps_limit() - 0.42962) < 1e-5);
    double prev = 1;
    for (int N = 1 << 7; N <= (1 << 19); N *= 4) {
        double v = f_prime(SequenceKind::poisson, N, 0.5, 0.7);
        CHECK(v < 0.6 * prev);
        prev = v;
    }
}

TEST_CASE("f' agrees with numeric differentiation") {
    for (auto k : {SequenceKind::poisson, SequenceKind::right_regular}) {
        auto s = CapacitySequence::make(k, 256, 0.5);
        const double h = 1e-5;
        for (double x = 0.01; x <= 0.95; x += 0.02) {
            double num = (bec_de_f(s, x + h) - bec_de_f(s, x - h)) / (2 * h);
            CHECK(std::fabs(f_prime(s, x) - num) < 1e-6);
        }
    }
}

TEST_CASE("f'' assembly agrees with second differences") {
    for (auto k : {SequenceKind::poisson, SequenceKind::right_regular}) {
        auto s = CapacitySequence::make(k, 128, 0.5);
        const double h = 1e-4;
        for (double x = 0.02; x <= 0.9; x += 0.04) {
            double num = (bec_de_f(s, x + h) - 2 * bec_de_f(s, x) + bec_de_f(s, x - h)) / (h * h);
            CHECK(std::fabs(f_double_prime(s, x) - num) < 1e-4 * std::max(1.0, std::fabs(num)));
        }
    }
}

TEST_CASE("f'' values") {
    CHECK(f_double_prime(SequenceKind::poisson, 1024, 0.5, 0.0) == 0.0);
    CHECK(std::fabs(f_double_prime(SequenceKind::right_regular, 1024, 0.5, 0.0)) < 1e-12);
    double prev = 0;
    for (int N : {128, 2048, 1 << 15, 1 << 19}) {
        const double eps = 0.5, v = f_double_prime(SequenceKind::poisson, N, eps, eps);
        CHECK(v <= -std::exp(-2.0) * (1 - std::exp(-1.0)) * (std::log(N - 1.0) + 1) / eps);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("equiboundedness") {
    auto p = equibounded_check(SequenceKind::poisson, 0.5, 0.3, 1 << 15);
    CHECK(p.verdict);
    for (auto& r : p.rows) CHECK(r.sup_abs_f2 <= r.explicit_bound);
    auto z = equibounded_check(SequenceKind::poisson, 0.5, 0.0, 1 << 10);
    CHECK(z.M == 0.0);
    auto rr = equibounded_check(SequenceKind::right_regular, 0.5, 0.3, 1 << 15);
    CHECK(rr.empirical);
    CHECK(rr.verdict);
    CHECK_THROWS_AS(equibounded_check(SequenceKind::poisson, 0.5, 0.5, 1024), ValidationError);
}

TEST_CASE("sequence analysis") {
    auto a = analyze_sequence(SequenceKind::poisson, 0.4, {128, 1024, 8192});
    for (double mu : a.mu_N) CHECK(std::fabs(mu - 2.5) < 1e-12);
    CHECK(a.mu_infinity == doctest::Approx(2.5));
    auto r = analyze_sequence(SequenceKind::right_regular, 0.5, {1 << 20});
    CHECK(std::isfinite(r.mu_N[0]));
}

TEST_CASE("xi bound") {
    CHECK(std::fabs(xi_bound(2.0, 1, 0.5) - 0.125) < 1e-15);
    CHECK(xi_bound(2.0, 1, 1e-9) < 1e-9);
    for (double mu = 1.1; mu <= 10; mu += 0.7)
        for (int l = 1; l <= 8; ++l)
            for (double k = 0.05; k < 1; k += 0.15) {
                double xi = xi_bound(mu, l, k);
                CHECK(xi > 0);
                CHECK(xi <= k / std::pow(mu, l + 1) * (1 + 1e-12));
            }
    CHECK_THROWS_AS(xi_bound(1.0, 1, 0.5), ValidationError);
}

TEST_CASE("choose l") {
    // BEC: E(c^{*l}) = eps^l / 2, so l is the first with (eps mu)^l > 2 (and the next one).
    const double e = 0.6, mu = 2.0;
    int expect = 1;
    while (std::pow(e * mu, expect) <= 2) ++expect;
    CHECK(choose_l(Channel::make(ChannelKind::bec, e), mu) == expect);
    CHECK_THROWS_AS(choose_l(Channel::make(ChannelKind::bec, 0.5), 2.0), ValidationError);
    int l = choose_l(Channel::make(ChannelKind::bsc, 0.11), 2.2);
    CHECK(l >= 1);
    CHECK(l <= 64);
}

TEST_CASE("universality violation") {
    for (double e = 0.1; e < 0.95; e += 0.1) {
        auto bec = check_universality_violation(SequenceKind::poisson, e, Channel::make(ChannelKind::bec, e));
        CHECK(std::fabs(bec.b_mu - 1) < 1e-12);
        CHECK_FALSE(bec.violation);
        auto bsc = check_universality_violation(SequenceKind::poisson, e,
                                                Channel::make(ChannelKind::bsc, h2_inverse(e)));
        CHECK(bsc.violation);
    }
}

}
