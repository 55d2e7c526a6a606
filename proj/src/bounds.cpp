#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"
#include "explore.hpp"

namespace ldpcstab {

double subcritical_bound(double n, double a, int l, double gamma, double delta, double d) {
    require(n >= 1 && a > 0 && a < 0.5, "need n >= 1 and a in (0, 1/2)");
    require(l >= 1 && gamma > 0 && delta >= 0 && d >= 1, "bad subcritical parameters");
    return std::exp(-std::pow(n, a) * delta * delta * std::pow(gamma / d, 2.0 * l));
}

SubcriticalConstants subcritical_constants(const Channel& c, double mu, int l) {
    const double gl = c.sum_error_prob(l) * std::pow(mu, l);
    require(gl > 0 && gl < 1, "E(c^{*l}) mu^l must lie in (0,1) for the subcritical bound");
    return {std::pow(gl, 1.0 / l), 0.5 * (1.0 / gl - 1.0)};
}

SupercriticalBounds supercritical_bounds(double n, double eps_frac, int l, double gamma, double delta, double d,
                                         double kappa) {
    require(delta > 0 && delta < 1, "delta must lie in (0,1)");
    const double gl = std::pow(gamma, l), dl = std::pow(d, l);
    require((1 - delta) * gl > 1, "need (1 - delta) gamma^l > 1");
    const double x = delta * delta * gl / (2 * dl), en = eps_frac * n;
    SupercriticalBounds b;
    b.bound_Ak = std::exp(-en * x);
    b.c_kappa = std::exp(-(kappa + 1) * x) / -std::expm1(-x);
    b.bound_K = b.c_kappa * -std::expm1(-(en - kappa) * x);
    return b;
}

int kappa_for(int l, double gamma, double delta, double d) {
    const double x = delta * delta * std::pow(gamma, l) / (2 * std::pow(d, l));
    int k = std::max(0, static_cast<int>(std::floor(-std::log(-std::expm1(-x)) / x)) - 1);
    while (std::exp(-(k + 1) * x) / -std::expm1(-x) >= 1) ++k;
    return k;
}

double lp_bound(double gl, double dl, double s) {
    require(gl >= 1 && gl <= dl && s > 0, "need 1 <= gamma^l <= d^l and s > 0");
    return 1 - gl / dl + std::exp(-s * dl) * gl / dl;
}

LpPrimal lp_solve_primal(double gl, int D, double s) {
    require(gl >= 1 && gl <= D && s > 0, "need 1 <= gamma^l <= d^l and s > 0");
    // Two inequality constraints: every vertex has at most two nonzero atoms.
    LpPrimal best{std::vector<double>(D + 1, 0.0), -std::numeric_limits<double>::infinity()};
    auto consider = [&](int i, double pi, int j, double pj) {
        double v = pi * std::exp(-s * i) + pj * std::exp(-s * j);
        if (v > best.value) {
            std::fill(best.p.begin(), best.p.end(), 0.0);
            best.p[i] += pi;
            best.p[j] += pj;
            best.value = v;
        }
    };
    for (int j = 0; j <= D; ++j) {
        if (j < gl) continue;
        consider(j, 1.0, j, 0.0);
        consider(j, gl / j, j, 0.0);
    }
    for (int i = 0; i <= D; ++i) {
        if (i > gl) break;
        for (int j = i + 1; j <= D; ++j) {
            if (j < gl) continue;
            consider(i, (j - gl) / (j - i), j, (gl - i) / (j - i));
        }
    }
    return best;
}

double g_function(double gl, double dl, double delta, double s) {
    return std::exp(s * (1 - delta) * gl) * (1 - gl / dl + std::exp(-s * dl) * gl / dl);
}

double g_star(double gl, double dl, double delta) {
    require(delta > 0 && delta < 1, "delta must lie in (0,1)");
    const double db = 1 - delta;
    require(dl > db * gl && gl > 0, "need d^l > (1 - delta) gamma^l");
    const double r = db * gl / dl;
    return std::pow(db, -r) * std::pow((dl - gl) / (dl - db * gl), 1 - r);
}

double g_star_argmin(double gl, double dl, double delta) {
    require(gl < dl, "minimizer is at infinity when gamma^l = d^l");
    const double a = (1 - delta) * gl;
    return std::log(gl * (dl - a) / (a * (dl - gl))) / dl;
}

GStarCheck g_star_check(double gl, double dl, double delta, double s_max, int points) {
    GStarCheck r{};
    r.closed_form = g_star(gl, dl, delta);
    r.exp_bound = std::exp(-delta * delta * gl / (2 * dl));
    double best = std::numeric_limits<double>::infinity();
    int arg = 1;
    r.grid_above = true;
    for (int k = 1; k < points; ++k) {
        double s = s_max * k / (points - 1);
        double g = g_function(gl, dl, delta, s);
        if (g < r.closed_form - 1e-12) r.grid_above = false;
        if (g < best) {
            best = g;
            arg = k;
        }
    }
    // Golden-section refinement inside the bracketing cell.
    double lo = s_max * std::max(arg - 1, 0) / (points - 1), hi = s_max * std::min(arg + 1, points - 1) / (points - 1);
    const double phi = 0.5 * (std::sqrt(5.0) - 1);
    for (int it = 0; it < 100; ++it) {
        double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
        if (g_function(gl, dl, delta, a) < g_function(gl, dl, delta, b))
            hi = b;
        else
            lo = a;
    }
    r.grid_min = std::min(best, g_function(gl, dl, delta, 0.5 * (lo + hi)));
    r.matches = std::fabs(r.grid_min - r.closed_form) <= 1e-6;
    r.below_exp_bound = r.closed_form <= r.exp_bound * (1 + 1e-12);
    return r;
}

EpsilonChoice choose_epsilon(const Channel& c, const DegreePair& pair, int l_cap) {
    const double mu = pair.lambda_prime_zero() * pair.rho_prime_one();
    const double B = c.bhattacharyya();
    const double d = pair.max_check_degree() - 1;
    if (!(B * mu > 1)) throw ValidationError("B(c) lambda'(0) rho'(1) <= 1: no supercritical parameters exist");
    if (!(d > 1)) throw ValidationError("maximum check degree must exceed 2");
    EpsilonChoice e{};
    e.gamma = 0.5 * (1 + std::min(B * mu, d));
    e.bfrak = 0.5 * (e.gamma / mu + B);
    e.xi = 0.5 * (mu - e.gamma / e.bfrak);
    e.slope = residual_slope(pair);
    const double L2 = pair.L().count(2) ? pair.L().at(2) : 0.0;
    e.epsilon = std::min(0.5 * e.xi / e.slope, L2);
    e.residual_product = worst_residual(pair, e.epsilon).product();
    for (int l = 1; l <= l_cap; ++l) {
        double El = c.sum_error_prob(l);
        double lhs = El * std::pow(e.residual_product, l), rhs = std::pow(e.gamma, l);
        if (lhs >= rhs) {
            e.l = l;
            e.e_l = El;
            e.lhs = lhs;
            e.rhs = rhs;
            return e;
        }
    }
    throw ValidationError("no l <= " + std::to_string(l_cap) + " satisfies E(c^{*l}) (lambda'rho')^l >= gamma^l");
}

}  // namespace ldpcstab
