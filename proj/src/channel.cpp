#include "channel.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "errors.hpp"

namespace ldpcstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper tail P(X > t) of N(mu, sd^2), accurate far into the tail.
double gauss_upper(double t, double mu, double sd) { return 0.5 * std::erfc((t - mu) / (sd * M_SQRT2)); }
double gauss_lower(double t, double mu, double sd) { return 0.5 * std::erfc((mu - t) / (sd * M_SQRT2)); }

double gauss_interval(double lo, double hi, double mu, double sd) {
    if (hi < lo) return 0.0;
    if (lo >= mu) return gauss_upper(lo, mu, sd) - gauss_upper(hi, mu, sd);
    if (hi <= mu) return gauss_lower(hi, mu, sd) - gauss_lower(lo, mu, sd);
    return 1.0 - gauss_lower(lo, mu, sd) - gauss_upper(hi, mu, sd);
}

// Simpson rule for E f(X), X ~ N(mu, sd^2).
template <class F>
double gauss_expect(double mu, double sd, F f) {
    const int n = 8000;
    const double a = mu - 14 * sd, b = mu + 14 * sd, h = (b - a) / n;
    double s = 0;
    for (int i = 0; i <= n; ++i) {
        double y = a + i * h;
        double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        double z = (y - mu) / sd;
        s += w * f(y) * std::exp(-0.5 * z * z);
    }
    return s * h / 3.0 / (sd * std::sqrt(2 * M_PI));
}

double log_binom(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double bsc_llr(double p) { return p == 0 ? kInf : std::log((1 - p) / p); }

}  // namespace

ChannelKind parse_channel_kind(const std::string& s) {
    if (s == "bec") return ChannelKind::bec;
    if (s == "bsc") return ChannelKind::bsc;
    if (s == "bawgnc" || s == "awgn" || s == "biawgn") return ChannelKind::bawgnc;
    throw ValidationError("unknown channel kind '" + s + "'");
}

std::string to_string(ChannelKind k) {
    switch (k) {
        case ChannelKind::bec: return "bec";
        case ChannelKind::bsc: return "bsc";
        default: return "bawgnc";
    }
}

Channel Channel::make(ChannelKind kind, double param) {
    switch (kind) {
        case ChannelKind::bec: require(param >= 0 && param <= 1, "BEC erasure probability outside [0,1]"); break;
        case ChannelKind::bsc: require(param >= 0 && param <= 0.5, "BSC crossover probability outside [0,1/2]"); break;
        case ChannelKind::bawgnc: require(param > 0 && std::isfinite(param), "BAWGNC sigma must be positive"); break;
    }
    return Channel{kind, param};
}

Channel Channel::parse(const std::string& spec) {
    auto colon = spec.find(':');
    require(colon != std::string::npos, "channel spec must look like kind:param, got '" + spec + "'");
    double v;
    try {
        std::size_t used = 0;
        v = std::stod(spec.substr(colon + 1), &used);
        require(used == spec.size() - colon - 1, "trailing characters in channel parameter");
    } catch (const std::logic_error&) {
        throw ValidationError("bad channel parameter in '" + spec + "'");
    }
    return make(parse_channel_kind(spec.substr(0, colon)), v);
}

std::string Channel::to_string() const {
    std::ostringstream os;
    os.precision(17);
    os << ldpcstab::to_string(kind) << ':' << param;
    return os.str();
}

LDensity make_channel(ChannelKind kind, double param, const QuantSpec& q) {
    return Channel::make(kind, param).density(q);
}

LDensity Channel::density(const QuantSpec& q) const {
    switch (kind) {
        case ChannelKind::bec:
            return LDensity::from_atoms({{0.0, param}}, 1.0 - param);
        case ChannelKind::bsc: {
            if (param == 0) return LDensity::delta_inf();
            double a = bsc_llr(param);
            return LDensity::from_atoms({{-a, param}, {a, 1.0 - param}}, 0.0);
        }
        default: break;
    }
    const double mu = 2.0 / (param * param), sd = 2.0 / param;
    LDensity d;
    Lattice g(q);
    const double h = g.delta / 2;
    for (int k = -g.K + 1; k <= g.K; ++k) g.at(k) = gauss_interval(g.loc(k) - h, g.loc(k) + h, mu, sd);
    g.at(-g.K) = gauss_lower(g.loc(-g.K) + h, mu, sd);
    d.pinf = gauss_upper(g.loc(g.K) + h, mu, sd);
    d.grid = std::move(g);
    return d;
}

double Channel::entropy() const {
    switch (kind) {
        case ChannelKind::bec: return param;
        case ChannelKind::bsc: return h2(param);
        default: break;
    }
    const double mu = 2.0 / (param * param);
    return gauss_expect(mu, std::sqrt(2 * mu), [](double y) {
               return y >= 0 ? std::log1p(std::exp(-y)) : -y + std::log1p(std::exp(y));
           }) /
           std::log(2.0);
}

double Channel::bhattacharyya() const {
    switch (kind) {
        case ChannelKind::bec: return param;
        case ChannelKind::bsc: return 2.0 * std::sqrt(param * (1.0 - param));
        default: return std::exp(-1.0 / (2.0 * param * param));
    }
}

double Channel::error_prob() const { return sum_error_prob(1); }

double Channel::sample_llr(Rng& rng) const {
    switch (kind) {
        case ChannelKind::bec: return uniform01(rng) < param ? 0.0 : kInf;
        case ChannelKind::bsc: {
            double a = bsc_llr(param);
            return uniform01(rng) < param ? -a : a;
        }
        default: break;
    }
    std::normal_distribution<double> n(0.0, 1.0);
    return 2.0 / (param * param) + (2.0 / param) * n(rng);
}

double Channel::sum_mass(int l, double lo, double hi) const {
    require(l >= 1, "sum length must be >= 1");
    auto in = [&](double y) {
        return y >= lo - 1e-12 * std::max(1.0, std::fabs(lo)) && y <= hi + 1e-12 * std::max(1.0, std::fabs(hi));
    };
    switch (kind) {
        case ChannelKind::bec: return in(0.0) ? std::pow(param, l) : 0.0;
        case ChannelKind::bsc: {
            if (param == 0) return 0.0;
            double a = bsc_llr(param), s = 0;
            for (int i = 0; i <= l; ++i) {
                double y = (l - 2 * i) * a;
                if (in(y))
                    s += std::exp(log_binom(l, i) + i * std::log(param) + (l - i) * std::log1p(-param));
            }
            return s;
        }
        default: break;
    }
    const double mu = 2.0 * l / (param * param);
    return gauss_interval(lo, hi, mu, std::sqrt(2 * mu));
}

double Channel::sum_error_prob(int l) const {
    require(l >= 1, "sum length must be >= 1");
    switch (kind) {
        case ChannelKind::bec: return 0.5 * std::pow(param, l);
        case ChannelKind::bsc: {
            if (param == 0) return 0.0;
            double s = 0;
            for (int i = 0; i <= l; ++i) {
                int y = l - 2 * i;
                if (y > 0) continue;
                double m = std::exp(log_binom(l, i) + i * std::log(param) + (l - i) * std::log1p(-param));
                s += (y == 0 || param == 0.5) ? 0.5 * m : m;
            }
            return param == 0.5 ? 0.5 : s;
        }
        default: break;
    }
    const double mu = 2.0 * l / (param * param);
    return 0.5 * std::erfc(std::sqrt(mu) / 2.0);
}

double Channel::sum_truncated_error_prob(int l, double M) const {
    require(l >= 1, "sum length must be >= 1");
    if (!(M > 0)) return 0.0;
    switch (kind) {
        case ChannelKind::bec: return 0.5 * std::pow(param, l);
        case ChannelKind::bsc: {
            if (param == 0) return 0.0;
            double a = bsc_llr(param), s = 0;
            for (int i = 0; i <= l; ++i) {
                double y = (l - 2 * i) * a;
                if (!(std::fabs(y) < M * (1 - 1e-12))) continue;
                double m = std::exp(log_binom(l, i) + i * std::log(param) + (l - i) * std::log1p(-param));
                s += 0.5 * m * (y <= 0 ? 1.0 : std::exp(-y));
            }
            return s;
        }
        default: break;
    }
    // For a symmetric continuous density the positive half mirrors the negative one.
    const double mu = 2.0 * l / (param * param);
    return gauss_interval(-M, 0.0, mu, std::sqrt(2 * mu));
}

ChannelFamily family_of(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::bec: return {kind, 0.0, 1.0};
        case ChannelKind::bsc: return {kind, 0.0, 0.5};
        default: return {kind, 1e-2, 1e6};
    }
}

double h2(double p) {
    if (p <= 0 || p >= 1) return 0.0;
    return -(p * std::log2(p) + (1 - p) * std::log2(1 - p));
}

double h2_inverse(double h) {
    require(h >= 0 && h <= 1, "entropy outside [0,1]");
    double lo = 0, hi = 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        double mid = 0.5 * (lo + hi);
        (h2(mid) < h ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double entropy_inverse(ChannelKind kind, double h) {
    require(h >= 0 && h <= 1, "entropy outside [0,1]");
    switch (kind) {
        case ChannelKind::bec: return h;
        case ChannelKind::bsc: return h == 1 ? 0.5 : h2_inverse(h);
        default: break;
    }
    ChannelFamily fam = family_of(kind);
    double lo = std::log(fam.lo), hi = std::log(fam.hi);
    for (int it = 0; it < 100; ++it) {
        double mid = 0.5 * (lo + hi);
        double H = Channel{kind, std::exp(mid)}.entropy();
        if (std::fabs(H - h) < 1e-13) return std::exp(mid);
        (H < h ? lo : hi) = mid;
    }
    return std::exp(0.5 * (lo + hi));
}

double bhattacharyya_inverse(ChannelKind kind, double b) {
    require(b >= 0 && b <= 1, "Bhattacharyya value outside [0,1]");
    switch (kind) {
        case ChannelKind::bec: return b;
        case ChannelKind::bsc: return 0.5 * (1.0 - std::sqrt(std::max(0.0, 1.0 - b * b)));
        default: break;
    }
    ChannelFamily fam = family_of(kind);
    if (b <= 0) return fam.lo;
    if (b >= 1) return fam.hi;
    return std::min(fam.hi, std::max(fam.lo, std::sqrt(-1.0 / (2.0 * std::log(b)))));
}

bool is_degraded(const LDensity& c, const LDensity& c_prime, int z_points) {
    require(z_points >= 2, "degradation grid needs at least two points");
    for (int j = 0; j < z_points; ++j) {
        double z = static_cast<double>(j) / (z_points - 1);
        if (c.abs_d_excess(z) > c_prime.abs_d_excess(z) + 1e-12) return false;
    }
    return true;
}

double partial_binomial_sum(int k0, int k1, int l, double p) {
    require(0 <= k0 && k0 <= k1 && k1 <= l, "binomial window must satisfy 0 <= k0 <= k1 <= l");
    require(p >= 0 && p <= 1, "probability outside [0,1]");
    long double s = 0, pl = p, ql = 1.0L - static_cast<long double>(p);
    for (int i = k0; i <= k1; ++i) {
        long double c = 1;
        for (int j = 1; j <= i; ++j) c = c * (l - i + j) / j;
        s += c * std::pow(pl, static_cast<long double>(l - i)) * std::pow(ql, static_cast<long double>(i));
    }
    return static_cast<double>(s);
}

bool check_bsc_sum_lemma(int l, double p) {
    require(l >= 1 && l % 2 == 1, "the binomial window lemma needs odd l");
    require(p >= 0 && p <= 0.5, "crossover probability outside [0,1/2]");
    const int h = (l - 1) / 2;
    const double base = partial_binomial_sum(0, h, l, p);
    for (int k = 0; k <= (l + 1) / 2; ++k)
        if (partial_binomial_sum(k, k + h, l, p) < base - 1e-12) return false;
    return true;
}

double admissibility_gap(const Channel& c, int l, double M, int m_points) {
    require(l >= 1, "admissibility needs l >= 1");
    require(M > 0, "admissibility needs M > 0");
    const double left = c.sum_mass(l, -M, 0.0);
    double worst = -kInf;
    for (int j = 0; j <= m_points + 1; ++j) {
        double m = M * j / (m_points + 1);
        worst = std::max(worst, left - c.sum_mass(l, -m, M - m));
    }
    return worst;
}

bool is_admissible(const Channel& c, int l, double M, int m_points) {
    return admissibility_gap(c, l, M, m_points) <= 1e-9;
}

}  // namespace ldpcstab
