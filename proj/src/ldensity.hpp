#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ldpcstab {

struct QuantSpec {
    double delta = 1.0 / 64.0;
    double width = 30.0;
    int half() const;  // number of bins on each side of zero
};

struct Atom {
    double loc;
    double mass;
};

// Point masses on the lattice k*delta, k = -K..K.
struct Lattice {
    double delta = 0;
    int K = 0;
    std::vector<double> mass;  // index k + K

    Lattice() = default;
    explicit Lattice(const QuantSpec& q);
    double loc(int k) const { return k * delta; }
    double& at(int k) { return mass[k + K]; }
    double at(int k) const { return mass[k + K]; }
    QuantSpec spec() const { return {delta, K * delta}; }
};

// Symmetric L-density: exact finite atoms, an optional lattice part, and a
// point mass at +infinity.
class LDensity {
public:
    std::vector<Atom> atoms;  // sorted by location, merged
    std::optional<Lattice> grid;
    double pinf = 0;

    static LDensity delta_zero();
    static LDensity delta_inf();
    static LDensity from_atoms(std::vector<Atom> atoms, double pinf);

    bool is_atomic() const { return !grid.has_value(); }
    double total_mass() const;
    double finite_mass() const { return total_mass() - pinf; }

    // Sum of f(y) * mass over finite support.
    template <class F>
    double expect(F f) const {
        double s = 0;
        for (const Atom& a : atoms) s += a.mass * f(a.loc);
        if (grid)
            for (int k = -grid->K; k <= grid->K; ++k) {
                double m = grid->at(k);
                if (m != 0) s += m * f(grid->loc(k));
            }
        return s;
    }

    double entropy() const;
    double bhattacharyya() const;
    double error_prob() const;
    // 1/2 of the E-integrand over the open window (-M, M).
    double truncated_error_prob(double M) const;
    // Finite mass in the closed window [lo, hi].
    double mass_in(double lo, double hi) const;
    // E[(|D| - z)^+] with |D| = tanh(|L|/2).
    double abs_d_excess(double z) const;
    // max |c(-y) - e^{-y} c(y)| over atoms and bins.
    double symmetry_defect() const;

    LDensity quantized(const QuantSpec& q) const;
    LDensity scaled(double w) const;

    std::string to_text() const;
    static LDensity from_text(const std::string& text);
};

constexpr std::size_t kMaxAtoms = 4096;

LDensity conv_var(const LDensity& a, const LDensity& b, const QuantSpec& q = {});
LDensity conv_check(const LDensity& a, const LDensity& b, const QuantSpec& q = {});
LDensity conv_var_power(const LDensity& c, int k, const QuantSpec& q = {});
LDensity conv_check_power(const LDensity& c, int k, const QuantSpec& q = {});
// Weighted mixture sum w_i c_i; weights need not sum to one.
LDensity mix(const std::vector<std::pair<double, const LDensity*>>& parts, const QuantSpec& q = {});

// -ln tanh(x/2); an involution on [0, inf].
double phi_magnitude(double x);
double boxplus(double a, double b);

}  // namespace ldpcstab
