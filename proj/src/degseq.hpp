#pragma once

#include <map>
#include <string>
#include <vector>

namespace ldpcstab {

using Coeffs = std::map<int, double>;  // degree -> coefficient

constexpr double kEulerGamma = 0.57721566490153286061;

// Edge-perspective degree distribution pair. Coefficients are normalized once
// at construction; everything downstream assumes exact normalization.
class DegreePair {
public:
    DegreePair() = default;
    static DegreePair make(Coeffs lambda, Coeffs rho);
    static DegreePair from_node(const Coeffs& L, const Coeffs& R);
    static DegreePair regular(int dv, int dc);
    static DegreePair cycle_code() { return regular(2, 3); }

    const Coeffs& lambda() const { return lambda_; }
    const Coeffs& rho() const { return rho_; }
    int max_var_degree() const { return lambda_.rbegin()->first; }
    int max_check_degree() const { return rho_.rbegin()->first; }
    double lambda_coeff(int i) const;
    double rho_coeff(int i) const;

    Coeffs L() const;
    Coeffs R() const;
    double L_prime_one() const;  // average variable degree
    double R_prime_one() const;
    double design_rate() const { return 1.0 - L_prime_one() / R_prime_one(); }

    double lambda_at(double x) const;
    double rho_at(double x) const;
    double L_at(double x) const;
    double lambda_prime_zero() const { return lambda_coeff(2); }
    double rho_prime_one() const;
    double fraction_deg2() const;

    std::string to_text() const;
    static DegreePair from_text(const std::string& text);

private:
    Coeffs lambda_, rho_;
};

Coeffs node_to_edge(const Coeffs& L);
Coeffs edge_to_node(const Coeffs& lambda);

double harmonic(long long N);
bool harmonic_bounds_hold(long long N);

enum class SequenceKind { poisson, right_regular };

SequenceKind parse_sequence_kind(const std::string& s);
std::string to_string(SequenceKind k);

// One member of a capacity-achieving BEC sequence, kept in analytic form.
// lambda[i] is the edge-perspective coefficient of degree i (i = 2..N).
class CapacitySequence {
public:
    static CapacitySequence heavy_tail_poisson(int N, double eps);
    static CapacitySequence right_regular(int N, double eps);
    static CapacitySequence make(SequenceKind kind, int N, double eps);

    SequenceKind kind() const { return kind_; }
    int N() const { return N_; }
    double eps() const { return eps_; }
    // Poisson: H_{N-1}/eps. Right-regular: ln(1/(1-eps))/ln N.
    double alpha() const { return alpha_; }
    double harmonic_value() const { return harm_; }
    // Right-regular normalizer 1 - (N/alpha) binom(alpha,N)(-1)^{N-1}.
    double lambda_alpha() const { return lambda_alpha_; }
    // Real check degree 1/alpha (right-regular only).
    double check_degree() const { return 1.0 / alpha_; }
    const std::vector<double>& lambda() const { return lambda_; }

    double lambda_at(double y) const;
    double lambda_d1(double y) const;  // lambda'(y)
    double lambda_d2(double y) const;  // lambda''(y)
    double rho_at(double x) const;
    double lambda_prime_zero() const { return lambda_[2]; }
    double rho_prime_one() const;
    double fraction_deg2() const;

    // Finite, sampleable version: Poisson check side truncated and
    // renormalized, right-regular check degree rounded to the nearest integer.
    DegreePair to_pair() const;

private:
    SequenceKind kind_{};
    int N_ = 0;
    double eps_ = 0, alpha_ = 0, harm_ = 0, lambda_alpha_ = 1;
    std::vector<double> lambda_;
};

// Poisson check distribution with mean parameter a, truncated where the
// tail mass drops below tail_tol, then renormalized.
Coeffs truncated_poisson_rho(double a, double tail_tol = 1e-12);

struct ResidualPair {
    DegreePair base;
    Coeffs phi, psi;
    double eps_budget = 0;
    Coeffs lambda_hat, rho_hat;  // include degree 1 entries

    double lambda_hat_prime_zero() const;
    double rho_hat_prime_one() const;
    double product() const { return lambda_hat_prime_zero() * rho_hat_prime_one(); }
};

ResidualPair residual(const DegreePair& base, const Coeffs& phi, const Coeffs& psi, double eps);

// Residual that lowers lambda'(0) rho'(1) the most for a given budget:
// all removed variable mass on degree two, all check mass on the top degree.
ResidualPair worst_residual(const DegreePair& base, double eps);

// rho'(1)/L'(1) + 2 L_2 r^2 / L'(1)^2
double residual_slope(const DegreePair& pair);

// Closed-form envelopes for the right-regular sequence.
struct RightRegularEnvelope {
    double c0, c1;          // 1 - c1*ebar <= lambda_alpha <= 1 - c0*ebar
    double c_minus, c_plus; // c- a / i^{a+1} <= lambda_alpha lambda_{i+1} <= c+ a / i^{a+1}
};
RightRegularEnvelope right_regular_envelope(int N, double eps);

}  // namespace ldpcstab
