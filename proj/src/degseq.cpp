#include "degseq.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace ldpcstab {

namespace {

double sum_of(const Coeffs& c) {
    double s = 0;
    for (auto& [d, v] : c) s += v;
    return s;
}

Coeffs checked_normalized(Coeffs c, const char* what) {
    Coeffs out;
    for (auto& [d, v] : c) {
        if (d < 1) throw ValidationError(std::string(what) + ": degree " + std::to_string(d) + " < 1");
        if (!(v >= -1e-15 && v <= 1 + 1e-12))
            throw ValidationError(std::string(what) + ": coefficient of degree " + std::to_string(d) +
                                  " outside [0,1]");
        if (v > 0) out[d] = v;
    }
    if (out.empty()) throw ValidationError(std::string(what) + ": empty distribution");
    double s = sum_of(out);
    double tol = 1e-12 + 1e-16 * static_cast<double>(out.size());
    if (std::fabs(s - 1.0) > tol)
        throw ValidationError(std::string(what) + ": coefficients sum to " + std::to_string(s));
    for (auto& [d, v] : out) v /= s;
    return out;
}

double poly_edge(const Coeffs& c, double x) {
    // sum c_i x^{i-1}
    double s = 0;
    for (auto& [d, v] : c) s += v * std::pow(x, d - 1);
    return s;
}

}  // namespace

DegreePair DegreePair::make(Coeffs lambda, Coeffs rho) {
    DegreePair p;
    p.lambda_ = checked_normalized(std::move(lambda), "lambda");
    p.rho_ = checked_normalized(std::move(rho), "rho");
    double rate = p.design_rate();
    if (!(rate > -1.0 && rate < 1.0))
        throw ValidationError("design rate " + std::to_string(rate) + " outside (-1,1)");
    return p;
}

DegreePair DegreePair::from_node(const Coeffs& L, const Coeffs& R) {
    return make(node_to_edge(L), node_to_edge(R));
}

DegreePair DegreePair::regular(int dv, int dc) {
    require(dv >= 1 && dc >= 1, "regular pair needs positive degrees");
    return make({{dv, 1.0}}, {{dc, 1.0}});
}

double DegreePair::lambda_coeff(int i) const {
    auto it = lambda_.find(i);
    return it == lambda_.end() ? 0.0 : it->second;
}

double DegreePair::rho_coeff(int i) const {
    auto it = rho_.find(i);
    return it == rho_.end() ? 0.0 : it->second;
}

Coeffs DegreePair::L() const { return edge_to_node(lambda_); }
Coeffs DegreePair::R() const { return edge_to_node(rho_); }

double DegreePair::L_prime_one() const {
    double s = 0;
    for (auto& [d, v] : lambda_) s += v / d;
    return 1.0 / s;
}

double DegreePair::R_prime_one() const {
    double s = 0;
    for (auto& [d, v] : rho_) s += v / d;
    return 1.0 / s;
}

double DegreePair::lambda_at(double x) const { return poly_edge(lambda_, x); }
double DegreePair::rho_at(double x) const { return poly_edge(rho_, x); }

double DegreePair::L_at(double x) const {
    double s = 0;
    for (auto& [d, v] : L()) s += v * std::pow(x, d);
    return s;
}

double DegreePair::rho_prime_one() const {
    double s = 0;
    for (auto& [d, v] : rho_) s += v * (d - 1);
    return s;
}

double DegreePair::fraction_deg2() const {
    double s = 0;
    for (auto& [d, v] : lambda_) s += v / d;
    return (lambda_coeff(2) / 2.0) / s;
}

std::string DegreePair::to_text() const {
    std::ostringstream os;
    char buf[96];
    for (auto& [d, v] : lambda_) {
        std::snprintf(buf, sizeof buf, "lambda %d %.17g\n", d, v);
        os << buf;
    }
    for (auto& [d, v] : rho_) {
        std::snprintf(buf, sizeof buf, "rho %d %.17g\n", d, v);
        os << buf;
    }
    return os.str();
}

DegreePair DegreePair::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    Coeffs lam, rho;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        int d;
        double v;
        if (!(ls >> d >> v)) throw ValidationError("degree pair line " + std::to_string(lineno) + ": malformed");
        if (tag == "lambda")
            lam[d] += v;
        else if (tag == "rho")
            rho[d] += v;
        else
            throw ValidationError("degree pair line " + std::to_string(lineno) + ": unknown tag " + tag);
    }
    return make(lam, rho);
}

Coeffs node_to_edge(const Coeffs& L) {
    Coeffs n = checked_normalized(L, "node distribution");
    double lp = 0;
    for (auto& [d, v] : n) lp += d * v;
    Coeffs out;
    for (auto& [d, v] : n) out[d] = d * v / lp;
    return out;
}

Coeffs edge_to_node(const Coeffs& lambda) {
    double s = 0;
    for (auto& [d, v] : lambda) s += v / d;
    Coeffs out;
    for (auto& [d, v] : lambda) out[d] = (v / d) / s;
    return out;
}

double harmonic(long long N) {
    // Summing small terms first keeps the rounding error near one ulp.
    double s = 0;
    for (long long i = N; i >= 1; --i) s += 1.0 / static_cast<double>(i);
    return s;
}

bool harmonic_bounds_hold(long long N) {
    if (N < 2) return true;
    double h = harmonic(N);
    double lo = std::log(static_cast<double>(N)) + kEulerGamma;
    return lo < h && h < lo + 1.0 / (2.0 * N);
}

SequenceKind parse_sequence_kind(const std::string& s) {
    if (s == "poisson" || s == "heavy_tail_poisson") return SequenceKind::poisson;
    if (s == "right_regular" || s == "rr") return SequenceKind::right_regular;
    throw ValidationError("unknown sequence kind '" + s + "'");
}

std::string to_string(SequenceKind k) { return k == SequenceKind::poisson ? "poisson" : "right_regular"; }

CapacitySequence CapacitySequence::heavy_tail_poisson(int N, double eps) {
    require(N >= 2, "sequence index N must be >= 2");
    require(eps > 0 && eps < 1, "eps must lie in (0,1)");
    CapacitySequence s;
    s.kind_ = SequenceKind::poisson;
    s.N_ = N;
    s.eps_ = eps;
    s.harm_ = harmonic(N - 1);
    s.alpha_ = s.harm_ / eps;
    s.lambda_.assign(N + 1, 0.0);
    for (int i = 1; i <= N - 1; ++i) s.lambda_[i + 1] = 1.0 / (s.harm_ * i);
    return s;
}

CapacitySequence CapacitySequence::right_regular(int N, double eps) {
    require(N >= 2, "sequence index N must be >= 2");
    require(eps > 0 && eps < 1, "eps must lie in (0,1)");
    CapacitySequence s;
    s.kind_ = SequenceKind::right_regular;
    s.N_ = N;
    s.eps_ = eps;
    const double a = std::log(1.0 / (1.0 - eps)) / std::log(static_cast<double>(N));
    require(a > 0 && a < 1, "right-regular sequence needs 0 < alpha < 1 (increase N)");
    s.alpha_ = a;
    // c_i = binom(a,i)(-1)^{i-1}, all positive for 0 < a < 1.
    std::vector<double> logc(N + 1);
    logc[1] = std::log(a);
    for (int i = 1; i < N; ++i) logc[i + 1] = logc[i] + std::log((i - a) / (i + 1.0));
    s.lambda_alpha_ = 1.0 - (N / a) * std::exp(logc[N]);
    s.lambda_.assign(N + 1, 0.0);
    double total = 0;
    for (int i = 1; i <= N - 1; ++i) {
        s.lambda_[i + 1] = std::exp(logc[i]) / s.lambda_alpha_;
        total += s.lambda_[i + 1];
    }
    require(std::fabs(total - 1.0) < 1e-9, "right-regular coefficients failed to normalize");
    for (double& v : s.lambda_) v /= total;
    return s;
}

CapacitySequence CapacitySequence::make(SequenceKind kind, int N, double eps) {
    return kind == SequenceKind::poisson ? heavy_tail_poisson(N, eps) : right_regular(N, eps);
}

double CapacitySequence::lambda_at(double y) const {
    double q = 0;
    for (int i = N_; i >= 2; --i) q = q * y + lambda_[i];
    return q * y;
}

double CapacitySequence::lambda_d1(double y) const {
    double q = 0;
    for (int i = N_; i >= 2; --i) q = q * y + (i - 1) * lambda_[i];
    return q;
}

double CapacitySequence::lambda_d2(double y) const {
    double q = 0;
    for (int i = N_; i >= 3; --i) q = q * y + static_cast<double>(i - 1) * (i - 2) * lambda_[i];
    return q;
}

double CapacitySequence::rho_at(double x) const {
    if (kind_ == SequenceKind::poisson) return std::exp((x - 1.0) * alpha_);
    return std::pow(x, 1.0 / alpha_);
}

double CapacitySequence::rho_prime_one() const {
    return kind_ == SequenceKind::poisson ? alpha_ : 1.0 / alpha_;
}

double CapacitySequence::fraction_deg2() const {
    double s = 0;
    for (int i = N_; i >= 2; --i) s += lambda_[i] / i;
    return (lambda_[2] / 2.0) / s;
}

Coeffs truncated_poisson_rho(double a, double tail_tol) {
    require(a > 0, "Poisson parameter must be positive");
    Coeffs rho;
    double cum = 0;
    for (int d = 1;; ++d) {
        // degree d carries e^{-a} a^{d-1} / (d-1)!
        double v = std::exp(-a + (d - 1) * std::log(a) - std::lgamma(static_cast<double>(d)));
        if (v > 0) rho[d] = v;
        cum += v;
        if (1.0 - cum < tail_tol && static_cast<double>(d - 1) > a) break;
        if (d > 100000) throw ValidationError("Poisson truncation did not terminate");
    }
    for (auto& [d, v] : rho) v /= cum;
    return rho;
}

DegreePair CapacitySequence::to_pair() const {
    Coeffs lam;
    for (int i = 2; i <= N_; ++i)
        if (lambda_[i] > 0) lam[i] = lambda_[i];
    double s = sum_of(lam);
    for (auto& [d, v] : lam) v /= s;
    if (kind_ == SequenceKind::poisson) return DegreePair::make(lam, truncated_poisson_rho(alpha_));
    int r = std::max(2, static_cast<int>(std::lround(1.0 / alpha_)));
    return DegreePair::make(lam, {{r, 1.0}});
}

double ResidualPair::lambda_hat_prime_zero() const {
    auto it = lambda_hat.find(2);
    return it == lambda_hat.end() ? 0.0 : it->second;
}

double ResidualPair::rho_hat_prime_one() const {
    double s = 0;
    for (auto& [d, v] : rho_hat) s += v * (d - 1);
    return s;
}

ResidualPair residual(const DegreePair& base, const Coeffs& phi, const Coeffs& psi, double eps) {
    require(eps >= 0, "residual budget must be nonnegative");
    const Coeffs L = base.L(), R = base.R();
    const double Lp = base.L_prime_one(), Rp = base.R_prime_one();
    const double r = base.design_rate();
    double sphi = 0, spsi = 0;
    for (auto& [d, v] : phi) {
        auto it = L.find(d);
        double cap = it == L.end() ? 0.0 : d * it->second;
        if (v < 0 || v > cap + 1e-12)
            throw ValidationError("residual: phi at degree " + std::to_string(d) + " outside [0, i L_i]");
        sphi += v;
    }
    for (auto& [d, v] : psi) {
        auto it = R.find(d);
        double cap = it == R.end() ? 0.0 : d * it->second * (1.0 - r);
        if (v < 0 || v > cap + 1e-12)
            throw ValidationError("residual: psi at degree " + std::to_string(d) +
                                  " outside [0, i R_i (1-r)]");
        spsi += v;
    }
    if (std::fabs(sphi - spsi) > 1e-12) throw ValidationError("residual: removed masses differ");
    if (sphi > eps + 1e-12) throw ValidationError("residual: removed mass exceeds budget");

    ResidualPair out;
    out.base = base;
    out.phi = phi;
    out.psi = psi;
    out.eps_budget = eps;
    double s = 0;
    for (auto& [d, v] : L) {
        auto it = phi.find(d);
        double h = (d * v - (it == phi.end() ? 0.0 : it->second)) / Lp;
        out.lambda_hat[d] = h;
        s += h;
    }
    out.lambda_hat[1] += std::max(0.0, 1.0 - s);
    s = 0;
    for (auto& [d, v] : R) {
        auto it = psi.find(d);
        double h = (d * v - (it == psi.end() ? 0.0 : it->second) / (1.0 - r)) / Rp;
        out.rho_hat[d] = h;
        s += h;
    }
    out.rho_hat[1] += std::max(0.0, 1.0 - s);
    return out;
}

ResidualPair worst_residual(const DegreePair& base, double eps) {
    const Coeffs L = base.L(), R = base.R();
    const double r = base.design_rate();
    Coeffs phi, psi;
    double left = eps;
    for (auto& [d, v] : L) {
        if (left <= 0) break;
        double take = std::min(left, d * v);
        phi[d] = take;
        left -= take;
    }
    if (left > 1e-15) throw ValidationError("residual budget exceeds removable variable mass");
    left = eps;
    for (auto it = R.rbegin(); it != R.rend() && left > 0; ++it) {
        double take = std::min(left, it->first * it->second * (1.0 - r));
        psi[it->first] = take;
        left -= take;
    }
    if (left > 1e-15) throw ValidationError("residual budget exceeds removable check mass");
    return residual(base, phi, psi, eps);
}

double residual_slope(const DegreePair& pair) {
    const double Lp = pair.L_prime_one();
    const double r = pair.max_check_degree();
    const double L2 = pair.fraction_deg2();
    return pair.rho_prime_one() / Lp + 2.0 * L2 * r * r / (Lp * Lp);
}

RightRegularEnvelope right_regular_envelope(int N, double eps) {
    const double a = std::log(1.0 / (1.0 - eps)) / std::log(static_cast<double>(N));
    const double z2 = M_PI * M_PI / 6.0;
    RightRegularEnvelope e;
    e.c0 = std::pow(1.0 - a, z2) * std::exp(a * (z2 - kEulerGamma + 1.0 / (2.0 * N)));
    e.c1 = (1.0 - a) * std::exp(a * (1.0 - kEulerGamma + 1.0 / N));
    e.c_plus = (1.0 - a) * std::exp(a * (3.0 - kEulerGamma));
    e.c_minus = (1.0 - a) * (1.0 - a) * std::exp(a * (1.0 - kEulerGamma));
    return e;
}

}  // namespace ldpcstab
