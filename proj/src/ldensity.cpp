#include "ldensity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "errors.hpp"

namespace ldpcstab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_loc(double x, double y) { return std::fabs(x - y) <= 1e-9 * std::max(1.0, std::fabs(x)); }

void merge_atoms(std::vector<Atom>& v) {
    std::sort(v.begin(), v.end(), [](const Atom& a, const Atom& b) { return a.loc < b.loc; });
    std::vector<Atom> out;
    out.reserve(v.size());
    for (const Atom& a : v) {
        if (!(a.mass > 0)) continue;
        if (!out.empty() && same_loc(out.back().loc, a.loc))
            out.back().mass += a.mass;
        else
            out.push_back(a);
    }
    v.swap(out);
}

struct Sparse {
    std::vector<int> idx;
    std::vector<double> mass;
};

Sparse nonzeros(const Lattice& g) {
    Sparse s;
    for (int k = -g.K; k <= g.K; ++k) {
        double m = g.at(k);
        if (m > 0) {
            s.idx.push_back(k);
            s.mass.push_back(m);
        }
    }
    return s;
}

QuantSpec pick_spec(const LDensity& a, const LDensity& b, const QuantSpec& q) {
    if (a.grid) return a.grid->spec();
    if (b.grid) return b.grid->spec();
    return q;
}

// Check-node table on magnitudes: T[i][j] = round(boxplus(i d, j d) / d).
std::shared_ptr<const std::vector<int>> check_table(double delta, int K) {
    static std::mutex mu;
    static std::map<std::pair<double, int>, std::shared_ptr<const std::vector<int>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(delta, K);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    const int W = K + 1;
    std::vector<double> ph(W);
    for (int i = 0; i < W; ++i) ph[i] = phi_magnitude(i * delta);
    auto t = std::make_shared<std::vector<int>>(static_cast<std::size_t>(W) * W);
    for (int i = 0; i < W; ++i)
        for (int j = i; j < W; ++j) {
            int v;
            if (i == 0 || j == 0) {
                v = 0;
            } else {
                double s = ph[i] + ph[j];
                double mag = s > 0 ? phi_magnitude(s) : std::min(i, j) * delta;
                v = std::min(static_cast<int>(std::lround(mag / delta)), std::min(i, j));
            }
            (*t)[static_cast<std::size_t>(i) * W + j] = v;
            (*t)[static_cast<std::size_t>(j) * W + i] = v;
        }
    cache[key] = t;
    return t;
}

}  // namespace

int QuantSpec::half() const {
    require(delta > 0 && width > 0, "quantization needs positive spacing and width");
    return static_cast<int>(std::lround(width / delta));
}

Lattice::Lattice(const QuantSpec& q) : delta(q.delta), K(q.half()), mass(2 * static_cast<std::size_t>(K) + 1, 0.0) {}

double phi_magnitude(double x) {
    if (x <= 0) return kInf;
    if (std::isinf(x)) return 0.0;
    if (x > 40) return 2.0 * std::exp(-x);
    return std::log1p(2.0 / std::expm1(x));
}

double boxplus(double a, double b) {
    if (a == 0 || b == 0) return 0.0;
    double sign = ((a < 0) != (b < 0)) ? -1.0 : 1.0;
    double x = std::fabs(a), y = std::fabs(b);
    if (std::isinf(x)) return sign * y;
    if (std::isinf(y)) return sign * x;
    double s = phi_magnitude(x) + phi_magnitude(y);
    double mag = s > 0 ? phi_magnitude(s) : std::min(x, y);
    return sign * std::min(mag, std::min(x, y));
}

LDensity LDensity::delta_zero() {
    LDensity d;
    d.atoms.push_back({0.0, 1.0});
    return d;
}

LDensity LDensity::delta_inf() {
    LDensity d;
    d.pinf = 1.0;
    return d;
}

LDensity LDensity::from_atoms(std::vector<Atom> atoms, double pinf) {
    LDensity d;
    for (const Atom& a : atoms) {
        require(a.mass >= 0, "negative atom mass");
        require(!std::isnan(a.loc), "NaN atom location");
        if (std::isinf(a.loc)) {
            require(a.loc > 0, "atom at -infinity");
            pinf += a.mass;
        } else {
            d.atoms.push_back(a);
        }
    }
    require(pinf >= 0, "negative mass at +infinity");
    merge_atoms(d.atoms);
    d.pinf = pinf;
    return d;
}

double LDensity::total_mass() const {
    double s = pinf;
    for (const Atom& a : atoms) s += a.mass;
    if (grid)
        for (double m : grid->mass) s += m;
    return s;
}

double LDensity::entropy() const {
    return expect([](double y) {
               return y >= 0 ? std::log1p(std::exp(-y)) : -y + std::log1p(std::exp(y));
           }) /
           std::log(2.0);
}

double LDensity::bhattacharyya() const {
    return expect([](double y) { return std::exp(-y / 2.0); });
}

double LDensity::error_prob() const {
    return 0.5 * expect([](double y) { return y <= 0 ? 1.0 : std::exp(-y); });
}

double LDensity::truncated_error_prob(double M) const {
    return 0.5 * expect([M](double y) {
               if (!(std::fabs(y) < M)) return 0.0;
               return y <= 0 ? 1.0 : std::exp(-y);
           });
}

double LDensity::mass_in(double lo, double hi) const {
    auto inside = [&](double y) {
        return y >= lo - 1e-12 * std::max(1.0, std::fabs(lo)) && y <= hi + 1e-12 * std::max(1.0, std::fabs(hi));
    };
    double s = expect([&](double y) { return inside(y) ? 1.0 : 0.0; });
    if (std::isinf(hi) && hi > 0) s += pinf;
    return s;
}

double LDensity::abs_d_excess(double z) const {
    double s = expect([z](double y) { return std::max(std::tanh(std::fabs(y) / 2.0) - z, 0.0); });
    return s + pinf * std::max(1.0 - z, 0.0);
}

double LDensity::symmetry_defect() const {
    double worst = 0;
    for (const Atom& a : atoms) {
        if (a.loc == 0) continue;
        double partner = 0;
        auto it = std::lower_bound(atoms.begin(), atoms.end(), -a.loc - 1e-9 * std::max(1.0, std::fabs(a.loc)),
                                   [](const Atom& x, double v) { return x.loc < v; });
        if (it != atoms.end() && same_loc(it->loc, -a.loc)) partner = it->mass;
        if (a.loc > 0)
            worst = std::max(worst, std::fabs(partner - std::exp(-a.loc) * a.mass));
        else if (partner == 0)
            worst = std::max(worst, a.mass);
    }
    if (grid)
        for (int k = 1; k <= grid->K; ++k)
            worst = std::max(worst, std::fabs(grid->at(-k) - std::exp(-grid->loc(k)) * grid->at(k)));
    return worst;
}

LDensity LDensity::quantized(const QuantSpec& q) const {
    LDensity out;
    out.pinf = pinf;
    Lattice g(q);
    auto put = [&](double y, double m) {
        long long k = std::llround(y / g.delta);
        if (k > g.K)
            out.pinf += m;
        else if (k < -g.K)
            g.at(-g.K) += m;
        else
            g.at(static_cast<int>(k)) += m;
    };
    for (const Atom& a : atoms) put(a.loc, a.mass);
    if (grid) {
        if (grid->delta == g.delta && grid->K == g.K) {
            for (std::size_t i = 0; i < g.mass.size(); ++i) g.mass[i] += grid->mass[i];
        } else {
            for (int k = -grid->K; k <= grid->K; ++k)
                if (grid->at(k) != 0) put(grid->loc(k), grid->at(k));
        }
    }
    out.grid = std::move(g);
    return out;
}

LDensity LDensity::scaled(double w) const {
    LDensity out = *this;
    out.pinf *= w;
    for (Atom& a : out.atoms) a.mass *= w;
    if (out.grid)
        for (double& m : out.grid->mass) m *= w;
    return out;
}

std::string LDensity::to_text() const {
    std::ostringstream os;
    char buf[128];
    if (grid)
        std::snprintf(buf, sizeof buf, "atoms %zu  grid %.17g %.17g  pinf %.17g\n", atoms.size(), grid->delta,
                      grid->K * grid->delta, pinf);
    else
        std::snprintf(buf, sizeof buf, "atoms %zu  grid 0 0  pinf %.17g\n", atoms.size(), pinf);
    os << buf;
    for (const Atom& a : atoms) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", a.loc, a.mass);
        os << buf;
    }
    if (grid)
        for (int k = -grid->K; k <= grid->K; ++k)
            if (grid->at(k) != 0) {
                std::snprintf(buf, sizeof buf, "%.17g %.17g\n", grid->loc(k), grid->at(k));
                os << buf;
            }
    return os.str();
}

LDensity LDensity::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tag_atoms, tag_grid, tag_pinf;
    std::size_t k;
    double delta, width, pinf;
    if (!(is >> tag_atoms >> k >> tag_grid >> delta >> width >> tag_pinf >> pinf) || tag_atoms != "atoms" ||
        tag_grid != "grid" || tag_pinf != "pinf")
        throw ValidationError("density text: malformed header");
    LDensity d;
    d.pinf = pinf;
    double y, m;
    for (std::size_t i = 0; i < k; ++i) {
        if (!(is >> y >> m)) throw ValidationError("density text: truncated atom list");
        d.atoms.push_back({y, m});
    }
    merge_atoms(d.atoms);
    if (delta > 0) {
        Lattice g(QuantSpec{delta, width});
        while (is >> y >> m) {
            long long idx = std::llround(y / delta);
            if (idx < -g.K || idx > g.K) throw ValidationError("density text: grid point outside range");
            g.at(static_cast<int>(idx)) += m;
        }
        d.grid = std::move(g);
    }
    if (std::fabs(d.total_mass() - 1.0) > 1e-10) throw ValidationError("density text: total mass is not 1");
    return d;
}

LDensity conv_var(const LDensity& a, const LDensity& b, const QuantSpec& q) {
    LDensity out;
    out.pinf = a.pinf + b.pinf - a.pinf * b.pinf;
    if (a.is_atomic() && b.is_atomic() && a.atoms.size() * b.atoms.size() <= kMaxAtoms * 64) {
        out.atoms.reserve(a.atoms.size() * b.atoms.size());
        for (const Atom& x : a.atoms)
            for (const Atom& y : b.atoms) out.atoms.push_back({x.loc + y.loc, x.mass * y.mass});
        merge_atoms(out.atoms);
        if (out.atoms.size() > kMaxAtoms) return out.quantized(q);
        return out;
    }
    const QuantSpec s = pick_spec(a, b, q);
    LDensity A = a.quantized(s), B = b.quantized(s);
    Lattice g(s);
    Sparse sa = nonzeros(*A.grid), sb = nonzeros(*B.grid);
    for (std::size_t i = 0; i < sa.idx.size(); ++i)
        for (std::size_t j = 0; j < sb.idx.size(); ++j) {
            int k = sa.idx[i] + sb.idx[j];
            double m = sa.mass[i] * sb.mass[j];
            if (k > g.K)
                out.pinf += m;
            else if (k < -g.K)
                g.at(-g.K) += m;
            else
                g.at(k) += m;
        }
    out.grid = std::move(g);
    return out;
}

LDensity conv_check(const LDensity& a, const LDensity& b, const QuantSpec& q) {
    LDensity out;
    out.pinf = a.pinf * b.pinf;
    if (a.is_atomic() && b.is_atomic() && a.atoms.size() * b.atoms.size() <= kMaxAtoms * 64) {
        for (const Atom& x : a.atoms)
            for (const Atom& y : b.atoms) out.atoms.push_back({boxplus(x.loc, y.loc), x.mass * y.mass});
        for (const Atom& x : a.atoms) out.atoms.push_back({x.loc, x.mass * b.pinf});
        for (const Atom& y : b.atoms) out.atoms.push_back({y.loc, y.mass * a.pinf});
        merge_atoms(out.atoms);
        if (out.atoms.size() > kMaxAtoms) return out.quantized(q);
        return out;
    }
    const QuantSpec s = pick_spec(a, b, q);
    LDensity A = a.quantized(s), B = b.quantized(s);
    Lattice g(s);
    const int W = g.K + 1;
    auto table = check_table(g.delta, g.K);
    const std::vector<int>& T = *table;
    Sparse sa = nonzeros(*A.grid), sb = nonzeros(*B.grid);
    for (std::size_t i = 0; i < sa.idx.size(); ++i) {
        const int ia = sa.idx[i];
        const int ma = ia < 0 ? -ia : ia;
        const std::size_t row = static_cast<std::size_t>(ma) * W;
        for (std::size_t j = 0; j < sb.idx.size(); ++j) {
            const int jb = sb.idx[j];
            const int mb = jb < 0 ? -jb : jb;
            int v = T[row + mb];
            if ((ia < 0) != (jb < 0)) v = -v;
            g.at(v) += sa.mass[i] * sb.mass[j];
        }
    }
    for (std::size_t i = 0; i < g.mass.size(); ++i)
        g.mass[i] += A.grid->mass[i] * b.pinf + B.grid->mass[i] * a.pinf;
    out.grid = std::move(g);
    return out;
}

namespace {

template <class Op>
LDensity power(const LDensity& c, int k, LDensity unit, Op op) {
    require(k >= 0, "negative convolution power");
    LDensity result = std::move(unit);
    LDensity base = c;
    bool first = true;
    while (k > 0) {
        if (k & 1) {
            result = first ? base : op(result, base);
            first = false;
        }
        k >>= 1;
        if (k > 0) base = op(base, base);
    }
    return result;
}

}  // namespace

LDensity conv_var_power(const LDensity& c, int k, const QuantSpec& q) {
    return power(c, k, LDensity::delta_zero(), [&](const LDensity& x, const LDensity& y) { return conv_var(x, y, q); });
}

LDensity conv_check_power(const LDensity& c, int k, const QuantSpec& q) {
    return power(c, k, LDensity::delta_inf(), [&](const LDensity& x, const LDensity& y) { return conv_check(x, y, q); });
}

LDensity mix(const std::vector<std::pair<double, const LDensity*>>& parts, const QuantSpec& q) {
    bool atomic = true;
    std::size_t count = 0;
    QuantSpec s = q;
    for (auto& [w, d] : parts) {
        if (!d->is_atomic()) {
            atomic = false;
            s = d->grid->spec();
        }
        count += d->atoms.size();
    }
    LDensity out;
    if (atomic && count <= kMaxAtoms * 4) {
        for (auto& [w, d] : parts) {
            out.pinf += w * d->pinf;
            for (const Atom& a : d->atoms) out.atoms.push_back({a.loc, w * a.mass});
        }
        merge_atoms(out.atoms);
        if (out.atoms.size() > kMaxAtoms) return out.quantized(q);
        return out;
    }
    Lattice g(s);
    for (auto& [w, d] : parts) {
        LDensity Q = d->quantized(s);
        out.pinf += w * Q.pinf;
        for (std::size_t i = 0; i < g.mass.size(); ++i) g.mass[i] += w * Q.grid->mass[i];
    }
    out.grid = std::move(g);
    return out;
}

}  // namespace ldpcstab
