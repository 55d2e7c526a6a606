#include "tanner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "errors.hpp"

namespace ldpcstab {

long long DegreeCounts::edges() const {
    return std::accumulate(var_degrees.begin(), var_degrees.end(), 0LL);
}

namespace {

// Largest remainder: integer counts summing to total, |count_i - total*w_i| < 1.
std::map<int, long long> apportion(const Coeffs& w, long long total) {
    std::map<int, long long> out;
    std::vector<std::pair<double, int>> rem;
    long long used = 0;
    for (auto& [d, p] : w) {
        double x = p * static_cast<double>(total);
        long long f = static_cast<long long>(std::floor(x + 1e-9));
        out[d] = f;
        used += f;
        rem.emplace_back(x - f, d);
    }
    std::stable_sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; used < total && i < rem.size(); ++i, ++used) ++out[rem[i].second];
    return out;
}

bool integral_counts(const DegreePair& pair, long long n) {
    auto close = [](double x) { return std::fabs(x - std::round(x)) < 1e-9; };
    double E = 0;
    for (auto& [d, p] : pair.L()) {
        if (!close(p * n)) return false;
        E += d * std::round(p * n);
    }
    double m = E / pair.R_prime_one();
    if (!close(m)) return false;
    for (auto& [d, p] : pair.R())
        if (!close(p * m)) return false;
    return true;
}

std::string suggest_n(const DegreePair& pair, int n) {
    for (long long k = std::max(n, 1); k <= 10000000LL; ++k)
        if (integral_counts(pair, k)) return "; try n = " + std::to_string(k);
    return "";
}

}  // namespace

DegreeCounts degree_counts(const DegreePair& pair, int n) {
    require(n >= 1, "blocklength must be >= 1");
    DegreeCounts out;
    long long E = 0;
    for (auto& [d, c] : apportion(pair.L(), n)) {
        out.var_degrees.insert(out.var_degrees.end(), c, d);
        E += d * c;
    }
    const long long m = std::llround(static_cast<double>(E) / pair.R_prime_one());
    std::map<int, long long> cc = apportion(pair.R(), m);
    long long Ec = 0;
    for (auto& [d, c] : cc) Ec += d * c;
    for (auto it = cc.rbegin(); Ec > E && it != cc.rend();) {
        if (it->second == 0) {
            ++it;
            continue;
        }
        --it->second;
        Ec -= it->first;
    }
    const int rmax = pair.max_check_degree();
    long long left = E - Ec;
    while (left > rmax) {
        ++cc[rmax];
        left -= rmax;
    }
    if (left > 0) ++cc[static_cast<int>(left)];
    for (auto& [d, c] : cc) out.check_degrees.insert(out.check_degrees.end(), c, d);
    if (E == 0 || out.check_degrees.empty())
        throw ValidationError("infeasible degree counts at n = " + std::to_string(n) + suggest_n(pair, n));
    return out;
}

TannerGraph TannerGraph::from_degrees(std::vector<int> vd, std::vector<int> cd, std::vector<int> pairing) {
    TannerGraph g;
    g.n = static_cast<int>(vd.size());
    g.m = static_cast<int>(cd.size());
    g.var_degrees = std::move(vd);
    g.check_degrees = std::move(cd);
    auto build = [](const std::vector<int>& deg, std::vector<int>& off, std::vector<int>& owner) {
        off.assign(deg.size() + 1, 0);
        for (std::size_t i = 0; i < deg.size(); ++i) {
            require(deg[i] >= 1, "node degrees must be >= 1");
            off[i + 1] = off[i] + deg[i];
        }
        owner.resize(off.back());
        for (std::size_t i = 0; i < deg.size(); ++i)
            for (int h = off[i]; h < off[i + 1]; ++h) owner[h] = static_cast<int>(i);
    };
    build(g.var_degrees, g.var_offset, g.var_owner);
    build(g.check_degrees, g.check_offset, g.check_owner);
    const int E = g.var_offset.back();
    require(E == g.check_offset.back(), "variable and check half-edge totals differ");
    require(static_cast<int>(pairing.size()) == E, "pairing size does not match half-edge count");
    g.inverse.assign(E, -1);
    for (int h = 0; h < E; ++h) {
        require(pairing[h] >= 0 && pairing[h] < E && g.inverse[pairing[h]] < 0, "pairing is not a bijection");
        g.inverse[pairing[h]] = h;
    }
    g.pairing = std::move(pairing);
    return g;
}

TannerGraph TannerGraph::from_checks(int n, const std::vector<std::vector<int>>& rows) {
    std::vector<int> vd(n, 0), cd;
    for (auto& r : rows) {
        cd.push_back(static_cast<int>(r.size()));
        for (int v : r) {
            require(v >= 0 && v < n, "check row references a missing variable");
            ++vd[v];
        }
    }
    std::vector<int> voff(n + 1, 0);
    for (int v = 0; v < n; ++v) voff[v + 1] = voff[v] + vd[v];
    std::vector<int> next(voff.begin(), voff.end() - 1), pairing(voff.back());
    int ch = 0;
    for (auto& r : rows)
        for (int v : r) pairing[next[v]++] = ch++;
    return from_degrees(std::move(vd), std::move(cd), std::move(pairing));
}

std::vector<int> TannerGraph::var_neighbors(int v) const {
    std::vector<int> out;
    for (int h = var_offset[v]; h < var_offset[v + 1]; ++h) out.push_back(check_of_var_halfedge(h));
    return out;
}

std::vector<int> TannerGraph::check_neighbors(int c) const {
    std::vector<int> out;
    for (int h = check_offset[c]; h < check_offset[c + 1]; ++h) out.push_back(var_owner[inverse[h]]);
    return out;
}

std::string TannerGraph::to_text() const {
    std::ostringstream os;
    os << "tanner " << n << ' ' << m << '\n';
    os << "checks";
    for (int d : check_degrees) os << ' ' << d;
    os << '\n';
    for (int v = 0; v < n; ++v) {
        os << "var " << v << ':';
        for (int h = var_offset[v]; h < var_offset[v + 1]; ++h) os << ' ' << check_owner[pairing[h]];
        os << '\n';
    }
    return os.str();
}

TannerGraph TannerGraph::from_text(const std::string& text) {
    std::istringstream is(text);
    std::string tok;
    int n = 0, m = 0;
    require(static_cast<bool>(is >> tok >> n >> m) && tok == "tanner" && n >= 0 && m >= 0, "bad tanner header");
    require(static_cast<bool>(is >> tok) && tok == "checks", "missing checks line");
    std::vector<int> cd(m);
    for (int& d : cd) require(static_cast<bool>(is >> d), "truncated check degree list");
    std::vector<std::vector<int>> adj(n);
    std::string line;
    std::getline(is, line);
    for (int v = 0; v < n; ++v) {
        require(static_cast<bool>(std::getline(is, line)), "missing variable line");
        std::istringstream ls(line);
        std::string name;
        int idx = -1;
        char colon = 0;
        require(static_cast<bool>(ls >> name >> idx >> colon) && name == "var" && idx == v && colon == ':',
                "bad variable line: " + line);
        for (int c; ls >> c;) {
            require(c >= 0 && c < m, "variable line references a missing check");
            adj[v].push_back(c);
        }
    }
    // Check half-edges are handed out in variable order within each check.
    std::vector<int> coff(m + 1, 0), vd;
    for (int c = 0; c < m; ++c) coff[c + 1] = coff[c] + cd[c];
    std::vector<int> next(coff.begin(), coff.end() - 1), pairing;
    for (int v = 0; v < n; ++v) {
        vd.push_back(static_cast<int>(adj[v].size()));
        for (int c : adj[v]) {
            require(next[c] < coff[c + 1], "check degree exceeded in tanner text");
            pairing.push_back(next[c]++);
        }
    }
    return from_degrees(std::move(vd), std::move(cd), std::move(pairing));
}

TannerGraph sample_graph(const DegreeCounts& counts, Rng& rng) {
    const std::size_t E = static_cast<std::size_t>(counts.edges());
    std::vector<int> perm(E);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = E; i > 1; --i) std::swap(perm[i - 1], perm[uniform_index(rng, i)]);
    return TannerGraph::from_degrees(counts.var_degrees, counts.check_degrees, std::move(perm));
}

TannerGraph sample_graph(const DegreePair& pair, int n, Rng& rng) {
    return sample_graph(degree_counts(pair, n), rng);
}

Code Code::from_graph(const TannerGraph& g) {
    Code code;
    code.n = g.n;
    for (int c = 0; c < g.m; ++c) {
        std::map<int, int> mult;
        for (int v : g.check_neighbors(c)) ++mult[v];
        std::vector<int> row;
        for (auto& [v, k] : mult)
            if (k % 2) row.push_back(v);
        code.rows.push_back(std::move(row));
    }
    return code;
}

bool Code::contains(Mask x) const {
    for (auto& r : rows) {
        int par = 0;
        for (int v : r) par ^= (x >> v) & 1;
        if (par) return false;
    }
    return true;
}

std::vector<Mask> enumerate_codewords(const Code& code) {
    if (code.n > kMaxEnumerate)
        throw GuardError("codeword enumeration capped at n = " + std::to_string(kMaxEnumerate));
    std::vector<Mask> rows;
    for (auto& r : code.rows) {
        Mask m = 0;
        for (int v : r) m ^= Mask(1) << v;
        if (m) rows.push_back(m);
    }
    // Reduced row echelon form.
    std::vector<int> pivot;
    std::size_t rank = 0;
    for (int col = 0; col < code.n && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && !((rows[sel] >> col) & 1)) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && ((rows[i] >> col) & 1)) rows[i] ^= rows[rank];
        pivot.push_back(col);
        ++rank;
    }
    Mask pivots = 0;
    for (int p : pivot) pivots |= Mask(1) << p;
    std::vector<Mask> basis;
    for (int f = 0; f < code.n; ++f) {
        if ((pivots >> f) & 1) continue;
        Mask b = Mask(1) << f;
        for (std::size_t r = 0; r < rank; ++r)
            if ((rows[r] >> f) & 1) b |= Mask(1) << pivot[r];
        basis.push_back(b);
    }
    std::vector<Mask> words{0};
    Mask cur = 0;
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << basis.size()); ++i) {
        cur ^= basis[std::countr_zero(i)];
        words.push_back(cur);
    }
    std::sort(words.begin(), words.end());
    return words;
}

std::vector<int> to_signs(Mask x, int n) {
    std::vector<int> s(n);
    for (int i = 0; i < n; ++i) s[i] = ((x >> i) & 1) ? -1 : 1;
    return s;
}

Deg2Subgraph degree_two_subgraph(const TannerGraph& g) {
    Deg2Subgraph out;
    std::vector<int> vnew(g.n, -1), cnew(g.m, -1);
    for (int v = 0; v < g.n; ++v)
        if (g.var_degrees[v] == 2) {
            vnew[v] = static_cast<int>(out.var_map.size());
            out.var_map.push_back(v);
        }
    std::vector<int> cd;
    std::vector<int> new_check_he(g.edges(), -1);
    for (int c = 0; c < g.m; ++c) {
        int deg = 0;
        for (int h = g.check_offset[c]; h < g.check_offset[c + 1]; ++h)
            if (vnew[g.var_owner[g.inverse[h]]] >= 0) ++deg;
        if (deg == 0) continue;
        cnew[c] = static_cast<int>(out.check_map.size());
        out.check_map.push_back(c);
        std::vector<int> rem;
        int base = std::accumulate(cd.begin(), cd.end(), 0), k = 0;
        for (int h = g.check_offset[c]; h < g.check_offset[c + 1]; ++h) {
            int v = g.var_owner[g.inverse[h]];
            if (vnew[v] >= 0)
                new_check_he[h] = base + k++;
            else
                rem.push_back(v);
        }
        std::sort(rem.begin(), rem.end());
        rem.erase(std::unique(rem.begin(), rem.end()), rem.end());
        out.removed.push_back(std::move(rem));
        cd.push_back(deg);
    }
    std::vector<int> vd(out.var_map.size(), 2), pairing;
    for (int v : out.var_map)
        for (int h = g.var_offset[v]; h < g.var_offset[v + 1]; ++h) pairing.push_back(new_check_he[g.pairing[h]]);
    out.graph = TannerGraph::from_degrees(std::move(vd), std::move(cd), std::move(pairing));
    return out;
}

int count_multi_edges(const TannerGraph& g) {
    int extra = 0;
    for (int v = 0; v < g.n; ++v) {
        std::vector<int> nb = g.var_neighbors(v);
        std::sort(nb.begin(), nb.end());
        for (std::size_t i = 1; i < nb.size(); ++i)
            if (nb[i] == nb[i - 1]) ++extra;
    }
    return extra;
}

}  // namespace ldpcstab
