#pragma once

#include <string>

#include "ldensity.hpp"
#include "rng.hpp"

namespace ldpcstab {

enum class ChannelKind { bec, bsc, bawgnc };

ChannelKind parse_channel_kind(const std::string& s);
std::string to_string(ChannelKind k);

// A member of one of the three standard BMS families, with closed-form or
// quadrature functionals that do not depend on the quantization.
struct Channel {
    ChannelKind kind = ChannelKind::bec;
    double param = 0;  // erasure prob, crossover prob, or noise std-dev

    static Channel make(ChannelKind kind, double param);
    static Channel parse(const std::string& spec);  // e.g. "bsc:0.11"
    std::string to_string() const;

    LDensity density(const QuantSpec& q = {}) const;
    double entropy() const;
    double bhattacharyya() const;
    double error_prob() const;
    double sample_llr(Rng& rng) const;

    // Distribution of the sum of l independent channel LLRs.
    double sum_mass(int l, double lo, double hi) const;  // finite part, closed window
    double sum_error_prob(int l) const;                   // E(c^{*l})
    double sum_truncated_error_prob(int l, double M) const;
};

LDensity make_channel(ChannelKind kind, double param, const QuantSpec& q = {});

struct ChannelFamily {
    ChannelKind kind;
    double lo, hi;  // parameter range swept by entropy 0..1
};
ChannelFamily family_of(ChannelKind kind);

double h2(double p);
double h2_inverse(double h);
double entropy_inverse(ChannelKind kind, double h);
// Parameter at which the Bhattacharyya functional equals b.
double bhattacharyya_inverse(ChannelKind kind, double b);

// True when c is degraded with respect to c_prime on a z grid of |D| values.
bool is_degraded(const LDensity& c, const LDensity& c_prime, int z_points = 1024);

double partial_binomial_sum(int k0, int k1, int l, double p);
bool check_bsc_sum_lemma(int l, double p);

// max over the m grid of  int_{-M}^{0} c^{*l} - int_{-m}^{M-m} c^{*l}.
double admissibility_gap(const Channel& c, int l, double M, int m_points = 512);
bool is_admissible(const Channel& c, int l, double M, int m_points = 512);

}  // namespace ldpcstab
