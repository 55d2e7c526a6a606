#include <doctest.h>

#include <cmath>

#include "density_evolution.hpp"

using namespace ldpcstab;

TEST_SUITE("de") {

TEST_CASE("delta infinity is a fixed point") {
    auto c = make_channel(ChannelKind::bsc, 0.1);
    auto s = de_step(c, DegreePair::regular(3, 6), DeState::from(0, LDensity::delta_inf()));
    CHECK(s.density.pinf == doctest::Approx(1.0));
    CHECK(s.error_prob == 0.0);
}

TEST_CASE("quantized BEC DE follows the scalar recursion") {
    auto pair = DegreePair::regular(3, 6);
    const double e = 0.4;
    auto c = make_channel(ChannelKind::bec, e);
    DeState s = DeState::from(0, c);
    double x = e;
    for (int l = 1; l <= 30; ++l) {
        s = de_step(c, pair, s);
        x = bec_de_f(pair, e, x);
        CHECK(std::fabs(s.error_prob - x / 2) < 1e-6);
        CHECK(std::fabs(s.density.bhattacharyya() - s.bhattacharyya) < 1e-10);
    }
}

TEST_CASE("scalar map") {
    auto pair = DegreePair::regular(3, 6);
    CHECK(bec_de_f(pair, 0.4, 0.0) == 0.0);
    CHECK(std::fabs(bec_de_f(pair, 0.4, 0.4) - 0.4 * std::pow(1 - std::pow(0.6, 5), 2)) < 1e-15);
    CHECK(std::fabs(bec_de_f(pair, 0.4, 0.4) - 0.3402106) < 1e-6);
    auto poi = CapacitySequence::heavy_tail_poisson(128, 0.5);
    double prev = -1;
    for (int i = 0; i <= 100; ++i) {
        double x = i / 100.0, f = bec_de_f(poi, x);
        CHECK(f >= prev);
        CHECK(f <= 0.5 + 1e-15);
        prev = f;
    }
}

TEST_CASE("(3,6) decodes below threshold") {
    auto r = run_scalar_bec_de([](double x) { return bec_de_f(DegreePair::regular(3, 6), 0.3, x); }, 0.3);
    CHECK(r.verdict == DeVerdict::decodes);
    CHECK(r.iterations <= 200);
}

TEST_CASE("BP thresholds over the BEC") {
    CHECK(std::fabs(bp_threshold(ChannelKind::bec, DegreePair::regular(3, 6)) - 0.4294) < 1e-4);
    CHECK(std::fabs(bp_threshold(ChannelKind::bec, DegreePair::cycle_code()) - 0.5) < 1e-4);
    // (3,6): p* = 0.084 over the BSC, sigma* = 0.881 over the BAWGNC
    CHECK(std::fabs(entropy_inverse(ChannelKind::bsc, bp_threshold(ChannelKind::bsc, DegreePair::regular(3, 6))) -
                    0.084) < 1e-3);
    CHECK(std::fabs(entropy_inverse(ChannelKind::bawgnc,
                                    bp_threshold(ChannelKind::bawgnc, DegreePair::regular(3, 6))) -
                    0.881) < 2e-3);
}

TEST_CASE("stability thresholds") {
    CHECK(stability_threshold(ChannelKind::bec, DegreePair::regular(3, 6)) == 1.0);
    CHECK(std::fabs(stability_threshold(ChannelKind::bec, DegreePair::cycle_code()) - 0.5) < 1e-9);
    const double p = (1 - std::sqrt(3.0) / 2) / 2;  // 4 sqrt(p(1-p)) = 1
    CHECK(std::fabs(stability_threshold(ChannelKind::bsc, DegreePair::cycle_code()) - h2(p)) < 1e-6);
}

TEST_CASE("bit error after l iterations") {
    auto pair = DegreePair::regular(3, 6);
    auto c = make_channel(ChannelKind::bec, 0.45);
    double prev = 1;
    for (int l = 1; l <= 10; ++l) {
        double pb = bp_bit_error(c, pair, l);
        CHECK(std::fabs(pb - scalar_bec_bit_error(pair, 0.45, l)) < 1e-6);
        CHECK(pb <= prev + 1e-15);
        prev = pb;
    }
    CHECK(std::fabs(bp_bit_error(c, pair, 1) - 0.5 * 0.45 * std::pow(1 - std::pow(0.55, 5), 3)) < 1e-6);
}

TEST_CASE("symmetry preserved by DE") {
    auto c = make_channel(ChannelKind::bawgnc, 0.9);
    DeState s = DeState::from(0, c);
    for (int l = 0; l < 5; ++l) {
        s = de_step(c, DegreePair::regular(3, 6), s);
        CHECK(s.density.symmetry_defect() < 1e-3);
    }
}

}
