#pragma once

#include <vector>

#include "channel.hpp"
#include "degseq.hpp"

namespace ldpcstab {

double f_value(const CapacitySequence& s, double x);
double f_prime(const CapacitySequence& s, double x);
double f_double_prime(const CapacitySequence& s, double x);
double f_prime(SequenceKind kind, int N, double eps, double x);
double f_double_prime(SequenceKind kind, int N, double eps, double x);

// Right-regular pieces: f'' = eps r (1-x)^{r-2} (F0 + F1).
double rr_F0(const CapacitySequence& s);
double rr_F1(const CapacitySequence& s, double x);

struct SequenceAnalysis {
    SequenceKind kind;
    double eps;
    std::vector<int> N_list;
    std::vector<double> mu_N;  // lambda'(0) rho'(1)
    double mu_infinity;        // 1/eps for both sequences
};
SequenceAnalysis analyze_sequence(SequenceKind kind, double eps, const std::vector<int>& N_list);

// Certified two-sided envelope for the Poisson f'(eps) at index N.
struct Interval {
    double lo, hi;
};
Interval poisson_fprime_eps_envelope(int N);
double poisson_fprime_eps_limit();  // 1 - exp(-exp(-gamma))

struct EquiboundRow {
    int N;
    double sup_abs_f2;   // grid max of |f''| on [0, kappa]
    double explicit_bound;  // Poisson only, else NaN
    bool bound_ok;
};
struct EquiboundResult {
    std::vector<EquiboundRow> rows;
    double M = 0;        // max over rows
    bool verdict = true; // Poisson: explicit bound holds everywhere; right-regular: empirical cutoff
    bool empirical = false;
};
double poisson_f2_explicit_bound(int N, double eps, double kappa);
EquiboundResult equibounded_check(SequenceKind kind, double eps, double kappa, int N_max, int x_points = 4097,
                                  double empirical_cutoff = 0.1, int empirical_from = 512);

double xi_bound(double mu_infinity, int l, double kappa);
int choose_l(const Channel& c, double mu_infinity, int l_cap = 64);

struct UniversalityVerdict {
    double b_mu;       // B(c) mu_infinity
    bool violation;    // b_mu > 1: the sequence is not universal under BP
};
UniversalityVerdict check_universality_violation(SequenceKind kind, double eps, const Channel& c);

// beta = (B e)^{3/2} sqrt(2 ln(B/b)) / (9 pi) for some b < B(c).
double beta_constant(double B, double b);
// Values of l in [1, l_max] where E(c^{*l}) < beta b^l (should be empty).
std::vector<int> beta_bound_failures(const Channel& c, double b, int l_max);

}  // namespace ldpcstab
