#include "universal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "density_evolution.hpp"
#include "errors.hpp"

namespace ldpcstab {

double f_value(const CapacitySequence& s, double x) { return bec_de_f(s, x); }

double f_prime(const CapacitySequence& s, double x) {
    if (s.kind() == SequenceKind::poisson) {
        // 1 - (1 - e^{-a x})^{N-1}
        double y = -std::expm1(-s.alpha() * x);
        if (y <= 0) return 1.0;
        return -std::expm1((s.N() - 1) * std::log(y));
    }
    const double r = s.check_degree();
    const double w1 = std::pow(1.0 - x, r - 1.0);
    const double u = 1.0 - w1 * (1.0 - x);
    return s.eps() * s.lambda_d1(u) * r * w1;
}

double rr_F0(const CapacitySequence& s) { return -s.lambda()[2] * (s.check_degree() - 1.0); }

double rr_F1(const CapacitySequence& s, double x) {
    const double r = s.check_degree();
    const double w = std::pow(1.0 - x, r);
    const double u = 1.0 - w;
    const std::vector<double>& lam = s.lambda();
    double q = 0;
    for (int i = s.N() - 1; i >= 2; --i) q = q * u + i * lam[i + 1] * ((i * r - 1.0) * w - r + 1.0);
    return q;
}

double f_double_prime(const CapacitySequence& s, double x) {
    if (s.kind() == SequenceKind::poisson) {
        const double a = s.alpha();
        double y = -std::expm1(-a * x);
        if (y <= 0) return 0.0;
        return -a * std::exp(-a * x) * (s.N() - 1) * std::exp((s.N() - 2) * std::log(y));
    }
    const double r = s.check_degree();
    return s.eps() * r * std::pow(1.0 - x, r - 2.0) * (rr_F0(s) + rr_F1(s, x));
}

double f_prime(SequenceKind kind, int N, double eps, double x) {
    return f_prime(CapacitySequence::make(kind, N, eps), x);
}

double f_double_prime(SequenceKind kind, int N, double eps, double x) {
    return f_double_prime(CapacitySequence::make(kind, N, eps), x);
}

SequenceAnalysis analyze_sequence(SequenceKind kind, double eps, const std::vector<int>& N_list) {
    SequenceAnalysis a{kind, eps, N_list, {}, 1.0 / eps};
    for (int N : N_list) {
        CapacitySequence s = CapacitySequence::make(kind, N, eps);
        double mu = s.lambda_prime_zero() * s.rho_prime_one();
        require(std::isfinite(mu), "non-finite lambda'(0) rho'(1)");
        a.mu_N.push_back(mu);
    }
    return a;
}

double poisson_fprime_eps_limit() { return 1.0 - std::exp(-std::exp(-kEulerGamma)); }

Interval poisson_fprime_eps_envelope(int N) {
    require(N >= 3, "envelope needs N >= 3");
    const double m = N - 1.0, eg = std::exp(-kEulerGamma);
    const double low_pow = std::exp(m * std::log1p(-eg / m));       // lower bound on (1-e^{-H})^{N-1}
    const double high_pow = std::exp(-eg) * std::exp(eg / (2 * m)); // upper bound
    return {1.0 - high_pow, 1.0 - low_pow};
}

double poisson_f2_explicit_bound(int N, double eps, double kappa) {
    const double e2 = std::exp(2.0);
    const double t = std::exp(-(kEulerGamma + 0.5) * kappa / eps) * std::pow(static_cast<double>(N), 1.0 - kappa / eps);
    return (2.0 * e2 / eps) * N * std::log(static_cast<double>(N)) * std::exp(-t);
}

EquiboundResult equibounded_check(SequenceKind kind, double eps, double kappa, int N_max, int x_points,
                                  double empirical_cutoff, int empirical_from) {
    require(eps > 0 && eps < 1, "eps must lie in (0,1)");
    require(kappa >= 0 && kappa < eps, "kappa must satisfy 0 <= kappa < eps");
    require(x_points >= 2, "x grid needs at least two points");
    std::vector<int> Ns;
    if (kind == SequenceKind::poisson) Ns.push_back(3);
    for (long long N = 4; N <= N_max; N *= 2)
        if (kind == SequenceKind::poisson || std::log(1.0 / (1.0 - eps)) / std::log(static_cast<double>(N)) < 1)
            Ns.push_back(static_cast<int>(N));
    EquiboundResult res;
    res.empirical = kind == SequenceKind::right_regular;
    for (int N : Ns) {
        CapacitySequence s = CapacitySequence::make(kind, N, eps);
        double sup = 0;
        if (kappa > 0)
            for (int j = 0; j < x_points; ++j) {
                double x = kappa * j / (x_points - 1);
                sup = std::max(sup, std::fabs(f_double_prime(s, x)));
            }
        EquiboundRow row{N, sup, std::numeric_limits<double>::quiet_NaN(), true};
        if (kind == SequenceKind::poisson) {
            row.explicit_bound = poisson_f2_explicit_bound(N, eps, kappa);
            row.bound_ok = sup <= row.explicit_bound * (1 + 1e-12);
        } else if (N >= empirical_from) {
            row.bound_ok = sup < empirical_cutoff;
        }
        res.verdict = res.verdict && row.bound_ok;
        res.M = std::max(res.M, sup);
        res.rows.push_back(row);
    }
    return res;
}

double xi_bound(double mu, int l, double kappa) {
    require(mu > 1, "xi needs mu_infinity > 1");
    require(l >= 1, "xi needs l >= 1");
    require(kappa > 0 && kappa < 1, "xi needs kappa in (0,1)");
    double xi = kappa / std::pow(mu, l + 1);
    for (int t = 0; t <= l; ++t) {
        double beta, theta;
        if (t == 0) {
            beta = 1.0;
            theta = 0.5 * mu / std::pow(2.0, l + 1);
        } else {
            double mt = std::pow(mu, t);
            beta = mt - mt / std::pow(2.0, l - t + 2);
            theta = 0.5 * std::pow(mu, t + 1) / std::pow(2.0, l - t + 2);
        }
        xi = std::min(xi, 2.0 * theta / (beta * beta));
    }
    return xi;
}

int choose_l(const Channel& c, double mu, int l_cap) {
    if (!(c.bhattacharyya() * mu > 1.0))
        throw ValidationError("B(c) * mu <= 1: no l with E(c^{*l}) mu^l > 1 exists");
    auto ok = [&](int l) { return c.sum_error_prob(l) * std::pow(mu, l) > 1.0; };
    for (int l = 1; l <= l_cap; ++l)
        if (ok(l) && ok(l + 1)) return l;
    throw ValidationError("no l <= " + std::to_string(l_cap) + " with E(c^{*l}) mu^l > 1");
}

UniversalityVerdict check_universality_violation(SequenceKind, double eps, const Channel& c) {
    require(eps > 0 && eps < 1, "eps must lie in (0,1)");
    require(std::fabs(c.entropy() - eps) < 1e-6, "channel entropy must equal the design erasure probability");
    // Both sequences have lambda'(0) rho'(1) -> 1/eps.
    double v = c.bhattacharyya() / eps;
    return {v, v > 1.0 + 1e-12};
}

double beta_constant(double B, double b) {
    require(b > 0 && b < B, "beta needs 0 < b < B(c)");
    return std::pow(B * std::exp(1.0), 1.5) * std::sqrt(2.0 * std::log(B / b)) / (9.0 * M_PI);
}

std::vector<int> beta_bound_failures(const Channel& c, double b, int l_max) {
    const double beta = beta_constant(c.bhattacharyya(), b);
    std::vector<int> bad;
    for (int l = 1; l <= l_max; ++l) {
        double lhs = c.sum_error_prob(l);
        double rhs = beta * std::pow(b, l);
        if (lhs < rhs * (1 - 1e-9)) bad.push_back(l);
    }
    return bad;
}

}  // namespace ldpcstab
