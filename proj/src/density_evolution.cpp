#include "density_evolution.hpp"

#include <cmath>

#include "errors.hpp"

namespace ldpcstab {

DeOptions scalar_defaults() {
    DeOptions o;
    o.max_iterations = 1000000;
    return o;
}

const char* to_string(DeVerdict v) {
    switch (v) {
        case DeVerdict::decodes: return "decodes";
        case DeVerdict::stuck: return "stuck";
        default: return "indeterminate";
    }
}

DeState DeState::from(int iteration, LDensity d) {
    DeState s;
    s.iteration = iteration;
    s.error_prob = d.error_prob();
    s.bhattacharyya = d.bhattacharyya();
    s.density = std::move(d);
    return s;
}

LDensity check_side(const DegreePair& pair, const LDensity& x, const QuantSpec& q) {
    const int r = pair.max_check_degree();
    std::vector<LDensity> pw;
    pw.reserve(r);
    pw.push_back(LDensity::delta_inf());
    for (int k = 1; k < r; ++k) pw.push_back(k == 1 ? x : conv_check(pw.back(), x, q));
    std::vector<std::pair<double, const LDensity*>> parts;
    for (auto& [d, w] : pair.rho()) parts.emplace_back(w, &pw[d - 1]);
    return mix(parts, q);
}

LDensity var_side(const Coeffs& weights, const LDensity& y, const QuantSpec& q, int shift) {
    // sum_i w_i y^{*(i - shift)}
    const int top = weights.rbegin()->first - shift;
    std::vector<LDensity> pw;
    pw.reserve(top + 1);
    pw.push_back(LDensity::delta_zero());
    for (int k = 1; k <= top; ++k) pw.push_back(k == 1 ? y : conv_var(pw.back(), y, q));
    std::vector<std::pair<double, const LDensity*>> parts;
    for (auto& [d, w] : weights) {
        require(d - shift >= 0, "degree below shift in variable-side polynomial");
        parts.emplace_back(w, &pw[d - shift]);
    }
    return mix(parts, q);
}

namespace {

LDensity prepared(const LDensity& d, const DeOptions& o) { return o.force_lattice ? d.quantized(o.quant) : d; }

}  // namespace

DeState de_step(const LDensity& channel, const DegreePair& pair, const DeState& s, const DeOptions& o) {
    const LDensity c = prepared(channel, o);
    LDensity y = check_side(pair, prepared(s.density, o), o.quant);
    LDensity z = var_side(pair.lambda(), y, o.quant, 1);
    LDensity out = conv_var(c, z, o.quant);
    // Mass drift is amplified by about (d_v - 1)(d_c - 1) per iteration.
    const double t = out.total_mass();
    return DeState::from(s.iteration + 1, t > 0 ? out.scaled(1.0 / t) : std::move(out));
}

namespace {

// Shared verdict logic. step(l) returns E(x_l) for l >= 1.
DeResult iterate(double e0, const std::function<double()>& step, const DeOptions& o, long record) {
    DeResult r;
    std::vector<double> window;  // ring of the last stuck_window + 1 errors
    const std::size_t W = static_cast<std::size_t>(o.stuck_window) + 1;
    window.reserve(W);
    double e = e0;
    auto push = [&](long l, double v) {
        if (l <= record) r.errors.push_back(v);
        if (window.size() < W)
            window.push_back(v);
        else
            window[static_cast<std::size_t>(l) % W] = v;
    };
    push(0, e);
    if (e < o.decode_tol) {
        r.verdict = DeVerdict::decodes;
        r.final_error = e;
        return r;
    }
    for (long l = 1; l <= o.max_iterations; ++l) {
        e = step();
        push(l, e);
        r.iterations = l;
        r.final_error = e;
        if (e < o.decode_tol) {
            r.verdict = DeVerdict::decodes;
            return r;
        }
        if (l >= o.stuck_window) {
            double old = window[static_cast<std::size_t>(l - o.stuck_window) % W];
            if (std::fabs(e - old) < o.stuck_tol && e > o.stuck_floor) {
                r.verdict = DeVerdict::stuck;
                return r;
            }
        }
    }
    r.verdict = DeVerdict::indeterminate;
    return r;
}

}  // namespace

DeResult run_de(const LDensity& channel, const DegreePair& pair, const DeOptions& o, long record) {
    DeState s = DeState::from(0, prepared(channel, o));
    return iterate(
        s.error_prob,
        [&] {
            s = de_step(channel, pair, s, o);
            return s.error_prob;
        },
        o, record);
}

double bp_bit_error(const LDensity& channel, const DegreePair& pair, int ell, const DeOptions& o) {
    require(ell >= 1, "iteration count must be >= 1");
    DeState s = DeState::from(0, prepared(channel, o));
    for (int l = 1; l < ell; ++l) s = de_step(channel, pair, s, o);
    LDensity y = check_side(pair, s.density, o.quant);
    LDensity z = var_side(pair.L(), y, o.quant, 0);
    return conv_var(prepared(channel, o), z, o.quant).error_prob();
}

double bec_de_f(const DegreePair& pair, double eps, double x) {
    return eps * pair.lambda_at(1.0 - pair.rho_at(1.0 - x));
}

double bec_de_f(const CapacitySequence& seq, double eps, double x) {
    double inner;
    if (seq.kind() == SequenceKind::poisson)
        inner = -std::expm1(-seq.alpha() * x);
    else
        inner = 1.0 - std::pow(1.0 - x, seq.check_degree());
    return eps * seq.lambda_at(inner);
}

double bec_de_f(const CapacitySequence& seq, double x) { return bec_de_f(seq, seq.eps(), x); }

DeResult run_scalar_bec_de(const std::function<double(double)>& f, double x0, const DeOptions& o, long record) {
    double x = x0;
    return iterate(
        x0 / 2.0,
        [&] {
            x = f(x);
            return x / 2.0;
        },
        o, record);
}

double scalar_bec_bit_error(const DegreePair& pair, double eps, int ell) {
    require(ell >= 1, "iteration count must be >= 1");
    double x = eps;
    for (int l = 1; l < ell; ++l) x = bec_de_f(pair, eps, x);
    return 0.5 * eps * pair.L_at(1.0 - pair.rho_at(1.0 - x));
}

double bp_threshold_bec(const std::function<double(double, double)>& f, const DeOptions& o) {
    auto decodes = [&](double h) {
        return run_scalar_bec_de([&](double x) { return f(h, x); }, h, o).verdict == DeVerdict::decodes;
    };
    if (decodes(1.0)) return 1.0;
    double lo = 0, hi = 1;
    while (hi - lo > o.threshold_tol / 4) {
        double mid = 0.5 * (lo + hi);
        (decodes(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double bp_threshold(ChannelKind family, const DegreePair& pair, const DeOptions& o) {
    if (family == ChannelKind::bec)
        return bp_threshold_bec([&](double h, double x) { return bec_de_f(pair, h, x); }, o);
    auto decodes = [&](double h) {
        Channel c = Channel::make(family, entropy_inverse(family, h));
        return run_de(c.density(o.quant), pair, o).verdict == DeVerdict::decodes;
    };
    double lo = 0, hi = 1;
    if (decodes(hi)) return 1.0;
    while (hi - lo > o.threshold_tol / 4) {
        double mid = 0.5 * (lo + hi);
        (decodes(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

DeOptions threshold_defaults() {
    DeOptions o;
    o.quant = {1.0 / 16.0, 25.0};
    o.max_iterations = 500;
    o.threshold_tol = 1e-3;
    return o;
}

double bp_threshold(ChannelKind family, const DegreePair& pair) {
    return bp_threshold(family, pair, family == ChannelKind::bec ? scalar_defaults() : threshold_defaults());
}

double stability_threshold(ChannelKind family, double mu) {
    require(mu >= 0 && std::isfinite(mu), "lambda'(0) rho'(1) must be finite and nonnegative");
    // Every complete family ends at a channel with B = 1.
    if (mu <= 1.0) return 1.0;
    const double param = bhattacharyya_inverse(family, 1.0 / mu);
    return Channel::make(family, param).entropy();
}

double stability_threshold(ChannelKind family, const DegreePair& pair) {
    return stability_threshold(family, pair.lambda_prime_zero() * pair.rho_prime_one());
}

}  // namespace ldpcstab
