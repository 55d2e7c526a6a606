#pragma once

#include <functional>
#include <vector>

#include "channel.hpp"
#include "degseq.hpp"
#include "ldensity.hpp"

namespace ldpcstab {

struct DeOptions {
    long max_iterations = 2000;
    double decode_tol = 1e-10;  // E below this: decodes
    double stuck_tol = 1e-12;   // E change over the window below this ...
    int stuck_window = 50;
    double stuck_floor = 1e-6;  // ... while E stays above this: stuck
    QuantSpec quant;
    bool force_lattice = false;
    double threshold_tol = 1e-4;
};

// The scalar recursion converges slowly next to a threshold, so it gets a
// much larger iteration budget than the quantized one.
DeOptions scalar_defaults();
// Coarser lattice and tolerance for threshold searches on non-erasure channels.
DeOptions threshold_defaults();

struct DeState {
    int iteration = 0;
    LDensity density;
    double error_prob = 0;
    double bhattacharyya = 0;

    static DeState from(int iteration, LDensity d);
};

enum class DeVerdict { decodes, stuck, indeterminate };
const char* to_string(DeVerdict v);

struct DeResult {
    DeVerdict verdict = DeVerdict::indeterminate;
    long iterations = 0;
    double final_error = 0;
    std::vector<double> errors;  // E(x_l), l = 0..iterations
};

// rho^{box}(x) and lambda^{*}(y), by repeated convolution with cached powers.
LDensity check_side(const DegreePair& pair, const LDensity& x, const QuantSpec& q);
LDensity var_side(const Coeffs& weights, const LDensity& y, const QuantSpec& q, int shift);

DeState de_step(const LDensity& channel, const DegreePair& pair, const DeState& s, const DeOptions& o = {});
DeResult run_de(const LDensity& channel, const DegreePair& pair, const DeOptions& o = {}, long record = 0);
double bp_bit_error(const LDensity& channel, const DegreePair& pair, int ell, const DeOptions& o = {});

// Scalar BEC map f(x) = eps lambda(1 - rho(1 - x)).
double bec_de_f(const DegreePair& pair, double eps, double x);
double bec_de_f(const CapacitySequence& seq, double eps, double x);
double bec_de_f(const CapacitySequence& seq, double x);

// Iterates x <- f(x) from x0 and applies the verdict rules to E = x/2.
DeResult run_scalar_bec_de(const std::function<double(double)>& f, double x0, const DeOptions& o = scalar_defaults(),
                           long record = 0);
double scalar_bec_bit_error(const DegreePair& pair, double eps, int ell);

double bp_threshold(ChannelKind family, const DegreePair& pair, const DeOptions& o);
double bp_threshold(ChannelKind family, const DegreePair& pair);
double bp_threshold_bec(const std::function<double(double, double)>& f_eps_x, const DeOptions& o = scalar_defaults());

double stability_threshold(ChannelKind family, double mu);
double stability_threshold(ChannelKind family, const DegreePair& pair);

}  // namespace ldpcstab
