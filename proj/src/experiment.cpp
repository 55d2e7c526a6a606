#include "experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "density_evolution.hpp"
#include "errors.hpp"
#include "explore.hpp"
#include "mapdec.hpp"
#include "universal.hpp"

namespace ldpcstab {

Command parse_command(const std::string& s) {
    static const std::map<std::string, Command> m{{"tables", Command::tables},
                                                  {"derivatives", Command::derivatives},
                                                  {"thresholds", Command::thresholds},
                                                  {"explore", Command::explore},
                                                  {"mapdec", Command::mapdec}};
    auto it = m.find(s);
    if (it == m.end()) throw ValidationError("unknown command '" + s + "'");
    return it->second;
}

std::string to_string(Command c) {
    switch (c) {
        case Command::tables: return "tables";
        case Command::derivatives: return "derivatives";
        case Command::thresholds: return "thresholds";
        case Command::explore: return "explore";
        default: return "mapdec";
    }
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        double x = std::stod(v, &used);
        if (used == v.size() && std::isfinite(x)) return x;
    } catch (const std::logic_error&) {
    }
    throw ValidationError("key '" + key + "': not a finite number: '" + v + "'");
}

long long to_int(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        long long x = std::stoll(v, &used);
        if (used == v.size()) return x;
    } catch (const std::logic_error&) {
    }
    throw ValidationError("key '" + key + "': not an integer: '" + v + "'");
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        if (!v.empty() && v[0] != '-') {
            unsigned long long x = std::stoull(v, &used);
            if (used == v.size()) return x;
        }
    } catch (const std::logic_error&) {
    }
    throw ValidationError("key '" + key + "': not an unsigned 64-bit integer: '" + v + "'");
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ValidationError("key '" + key + "': expected true or false");
}

int to_count(const std::string& key, const std::string& v, long long lo, long long hi) {
    long long x = to_int(key, v);
    if (x < lo || x > hi) throw ValidationError("key '" + key + "' out of range");
    return static_cast<int>(x);
}

template <class T>
std::string join(const std::vector<T>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ',';
        if constexpr (std::is_same_v<T, double>)
            s += fmt(xs[i]);
        else
            s += std::to_string(xs[i]);
    }
    return s;
}

std::string csv_head(const ExperimentConfig& c, const std::string& columns) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "# config-hash: %016llx\n", static_cast<unsigned long long>(c.hash()));
    return buf + columns + "\n";
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    const std::string& v = value;
    if (key == "command") command = parse_command(v);
    else if (key == "sequence") sequence = parse_sequence_kind(v);
    else if (key == "eps") eps = to_double(key, v);
    else if (key == "eps_list") {
        eps_list.clear();
        for (auto& s : split(v, ',')) eps_list.push_back(to_double(key, s));
    } else if (key == "N_list") {
        N_list.clear();
        for (auto& s : split(v, ',')) N_list.push_back(to_count(key, s, 2, 1 << 30));
    } else if (key == "channel") {
        Channel::parse(v);
        channel = v;
    } else if (key == "pair") {
        parse_pair(v);
        pair = v;
    } else if (key == "n") n = to_count(key, v, 1, 1 << 28);
    else if (key == "seed") seed = to_u64(key, v);
    else if (key == "runs") runs = to_count(key, v, 0, 1 << 30);
    else if (key == "l") l = to_count(key, v, 1, 64);
    else if (key == "eps_frac") eps_frac = to_double(key, v);
    else if (key == "a") a = to_double(key, v);
    else if (key == "stop_at_first_zero") stop_at_first_zero = to_bool(key, v);
    else if (key == "require_root_negative") require_root_negative = to_bool(key, v);
    else if (key == "x_points") x_points = to_count(key, v, 2, 1 << 24);
    else if (key == "h_points") h_points = to_count(key, v, 0, 1 << 20);
    else if (key == "graph") {
        if (v != "example1" && v != "example2" && v != "random") throw ValidationError("unknown graph '" + v + "'");
        graph = v;
    } else if (key == "sum_bound") sum_bound = to_double(key, v);
    else if (key == "v") this->v = to_count(key, value, 0, 1 << 30);
    else if (key == "threads") threads = to_count(key, v, 1, 1024);
    else if (key == "output") output = v;
    else throw ValidationError("unknown config key '" + key + "'");
}

std::string ExperimentConfig::to_text() const {
    std::ostringstream os;
    os << "command=" << to_string(command) << '\n'
       << "sequence=" << to_string(sequence) << '\n'
       << "eps=" << fmt(eps) << '\n'
       << "eps_list=" << join(eps_list) << '\n'
       << "N_list=" << join(N_list) << '\n'
       << "channel=" << channel << '\n'
       << "pair=" << pair << '\n'
       << "n=" << n << '\n'
       << "seed=" << seed << '\n'
       << "runs=" << runs << '\n'
       << "l=" << l << '\n'
       << "eps_frac=" << fmt(eps_frac) << '\n'
       << "a=" << fmt(a) << '\n'
       << "stop_at_first_zero=" << (stop_at_first_zero ? "true" : "false") << '\n'
       << "require_root_negative=" << (require_root_negative ? "true" : "false") << '\n'
       << "x_points=" << x_points << '\n'
       << "h_points=" << h_points << '\n'
       << "graph=" << graph << '\n'
       << "sum_bound=" << fmt(sum_bound) << '\n'
       << "v=" << v << '\n'
       << "threads=" << threads << '\n';
    if (!output.empty()) os << "output=" << output << '\n';
    return os.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig c;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
        c.set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::uint64_t ExperimentConfig::hash() const {
    ExperimentConfig c = *this;
    c.threads = 1;
    c.output.clear();
    return fnv1a64(c.to_text());
}

DegreePair parse_pair(const std::string& spec) {
    if (spec == "cycle") return DegreePair::cycle_code();
    auto colon = spec.find(':');
    require(colon != std::string::npos, "pair spec must be cycle, regular:dv,dc, poisson:N,eps or right_regular:N,eps");
    const std::string kind = spec.substr(0, colon);
    auto args = split(spec.substr(colon + 1), ',');
    require(args.size() == 2, "pair spec '" + spec + "' needs two arguments");
    if (kind == "regular")
        return DegreePair::regular(to_count("pair", args[0], 2, 1024), to_count("pair", args[1], 2, 1024));
    return CapacitySequence::make(parse_sequence_kind(kind), to_count("pair", args[0], 2, 1 << 24),
                                  to_double("pair", args[1]))
        .to_pair();
}

std::string cmd_tables(const ExperimentConfig& c) {
    std::string out = csv_head(c, "quantity,sequence,N,eps,value");
    for (SequenceKind k : {SequenceKind::right_regular, SequenceKind::poisson})
        for (int N : c.N_list)
            out += "lambda_prime_zero," + to_string(k) + ',' + std::to_string(N) + ',' + fmt(c.eps) + ',' +
                   fmt(CapacitySequence::make(k, N, c.eps).lambda_prime_zero()) + '\n';
    for (double e : c.eps_list)
        for (int N : c.N_list)
            out += "L2,right_regular," + std::to_string(N) + ',' + fmt(e) + ',' +
                   fmt(CapacitySequence::right_regular(N, e).fraction_deg2()) + '\n';
    return out;
}

std::string cmd_derivatives(const ExperimentConfig& c) {
    std::string out = csv_head(c, "sequence,N,eps,x,f,f1,f2");
    for (int N : c.N_list) {
        auto s = CapacitySequence::make(c.sequence, N, c.eps);
        for (int i = 0; i < c.x_points; ++i) {
            double x = static_cast<double>(i) / (c.x_points - 1);
            out += to_string(c.sequence) + ',' + std::to_string(N) + ',' + fmt(c.eps) + ',' + fmt(x) + ',' +
                   fmt(f_value(s, x)) + ',' + fmt(f_prime(s, x)) + ',' + fmt(f_double_prime(s, x)) + '\n';
        }
    }
    return out;
}

std::string cmd_thresholds(const ExperimentConfig& c) {
    const DegreePair pair = parse_pair(c.pair);
    const ChannelKind family = Channel::parse(c.channel).kind;
    const double mu = pair.lambda_prime_zero() * pair.rho_prime_one();
    std::string out = csv_head(c, "row,family,h,value");
    const std::string fam = to_string(family);
    out += "mu," + fam + ",," + fmt(mu) + '\n';
    out += "stab_threshold," + fam + ",," + fmt(stability_threshold(family, pair)) + '\n';
    out += "bp_threshold," + fam + ",," + fmt(bp_threshold(family, pair)) + '\n';
    for (int i = 1; i <= c.h_points; ++i) {
        double h = static_cast<double>(i) / (c.h_points + 1);
        const DeOptions o = threshold_defaults();
        double e = run_de(make_channel(family, entropy_inverse(family, h), o.quant), pair, o).final_error;
        out += "sweep," + fam + ',' + fmt(h) + ',' + fmt(e) + '\n';
    }
    return out;
}

namespace {

// Runs body(i) for i in [0, runs) on up to `threads` workers.
void parallel_for(int runs, int threads, const std::function<void(int)>& body) {
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto worker = [&] {
        for (int i; (i = next++) < runs;) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> g(mu);
                if (!err) err = std::current_exception();
                next = runs;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < std::min(threads, runs); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

ExploreOptions explore_options(const ExperimentConfig& c) {
    ExploreOptions o;
    o.l_steps = c.l;
    o.eps_frac = c.eps_frac;
    o.stop_at_first_zero = c.stop_at_first_zero;
    o.require_root_negative = c.require_root_negative;
    return o;
}

}  // namespace

std::string cmd_explore(const ExperimentConfig& c) {
    const DegreePair pair = parse_pair(c.pair);
    require(pair.lambda_coeff(2) > 0, "pair has lambda_2 = 0: the exploration needs a degree-two start node");
    require(c.a > 0 && c.a < 0.5, "a must lie in (0, 1/2)");
    const Channel ch = Channel::parse(c.channel);
    const DegreeCounts counts = degree_counts(pair, c.n);
    const ExploreOptions o = explore_options(c);

    struct Row {
        ExplorationTrace t;
        CycleEvent ev;
    };
    std::vector<Row> rows(c.runs);
    parallel_for(c.runs, c.threads, [&](int r) {
        Explorer e(counts, ch, o, c.seed, r);
        rows[r].ev = e.detect_cycle_event();
        rows[r].t = e.trace();
        auto& st = rows[r].t.stages;
        if (!st.empty()) st.erase(st.begin(), st.end() - 1);
        rows[r].t.revealed.clear();
    });

    std::string out = csv_head(c, "run,root,K,A_final,stages,restarts,stop,attempted,landed,occurred,cycle_len");
    const double thr = std::pow(c.n, c.a);
    int big_K = 0, occurred = 0;
    static const char* stops[] = {"budget", "zero", "exhausted"};
    for (int r = 0; r < c.runs; ++r) {
        const auto& t = rows[r].t;
        const auto& ev = rows[r].ev;
        if (!t.K || *t.K > thr) ++big_K;
        occurred += ev.occurred;
        out += std::to_string(r) + ',' + std::to_string(t.root) + ',' + (t.K ? std::to_string(*t.K) : "") + ',' +
               std::to_string(t.A_final()) + ',' + std::to_string(t.stages.empty() ? 0 : t.stages.back().k) + ',' +
               std::to_string(t.restarts) + ',' + stops[static_cast<int>(t.stop)] + ',' +
               std::to_string(ev.attempted) + ',' + std::to_string(ev.landed) + ',' + std::to_string(ev.occurred) +
               ',' + std::to_string(ev.cycle.size()) + '\n';
    }
    if (c.runs > 0) {
        const double p_big = static_cast<double>(big_K) / c.runs, p_cyc = static_cast<double>(occurred) / c.runs;
        out += "# summary: P(K>n^a)=" + fmt(p_big) + " sigma=" + fmt(std::sqrt(p_big * (1 - p_big) / c.runs)) +
               " P(C_v)=" + fmt(p_cyc) + " sigma=" + fmt(std::sqrt(p_cyc * (1 - p_cyc) / c.runs)) + '\n';
        const double mu = pair.lambda_prime_zero() * pair.rho_prime_one();
        const double gl = ch.sum_error_prob(c.l) * std::pow(mu, c.l);
        if (gl > 0 && gl < 1) {
            auto k = subcritical_constants(ch, mu, c.l);
            out += "# summary: subcritical_bound=" +
                   fmt(subcritical_bound(c.n, c.a, c.l, k.gamma, k.delta, pair.max_check_degree() - 1)) + '\n';
        }
    }
    return out;
}

std::string explore_trace_csv(const ExperimentConfig& c, int run) {
    const DegreePair pair = parse_pair(c.pair);
    require(run >= 0, "run index must be nonnegative");
    auto t = run_exploration(pair, c.n, Channel::parse(c.channel), explore_options(c), c.seed, run);
    std::string out = csv_head(c, "k,A_k,Z_k,explored_check_halfedges");
    for (const auto& s : t.stages)
        out += std::to_string(s.k) + ',' + std::to_string(s.A) + ',' + std::to_string(s.Z) + ',' +
               std::to_string(s.explored_check) + '\n';
    return out;
}

std::string cmd_mapdec(const ExperimentConfig& c) {
    const Channel ch = Channel::parse(c.channel);
    std::string out = csv_head(
        c, "run,n,v,vertices,edges,matching,lower_bound,exact_pb,witness,witness_sum,map_block_error");
    const bool fixed = c.graph != "random";
    const int runs = fixed ? std::min(c.runs, 1) : c.runs;
    const DegreePair pair = fixed ? DegreePair::cycle_code() : parse_pair(c.pair);
    std::vector<std::string> lines(runs);
    parallel_for(runs, c.threads, [&](int r) {
        TannerGraph g;
        if (c.graph == "example1")
            g = example_graph_1();
        else if (c.graph == "example2")
            g = example_graph_2();
        else {
            Rng grng = make_rng(c.seed, r, Stream::graph);
            g = sample_graph(pair, c.n, grng);
        }
        require(c.v < g.n, "v out of range for the chosen graph");
        Rng lrng = make_rng(c.seed, r, Stream::channel);
        std::vector<double> llr(g.n);
        for (double& x : llr) x = ch.sample_llr(lrng);

        std::string s = std::to_string(r) + ',' + std::to_string(g.n) + ',' + std::to_string(c.v) + ',';
        if (g.n <= kMaxPatternBits) {
            RealizationGraph rg = build_realization_graph(g, c.v, c.sum_bound);
            PatternGraph pg = maximum_matching(rg);
            s += std::to_string(rg.vertices.size()) + ',' + std::to_string(rg.edges.size()) + ',' +
                 std::to_string(pg.matching.size()) + ',';
            if (ch.kind == ChannelKind::bsc)
                s += fmt(bit_error_lower_bound(g, c.v, ch, c.l, c.sum_bound)) + ',' +
                     fmt(exact_bitwise_error(Code::from_graph(g), c.v, ch)) + ',';
            else
                s += ",,";
        } else {
            s += ",,,,,";
        }
        auto w = cycle_block_error_witness(g, llr);
        Rng coin = make_rng(c.seed, r, Stream::coin);
        auto d = blockwise_map(Code::from_graph(g), llr, &coin);
        s += std::string(w ? "1" : "0") + ',' + (w ? fmt(w->cycle_sum) : "") + ',' + (d.word != 0 ? "1" : "0");
        lines[r] = s + '\n';
    });
    for (auto& l : lines) out += l;
    return out;
}

std::string run_experiment(const ExperimentConfig& c) {
    switch (c.command) {
        case Command::tables: return cmd_tables(c);
        case Command::derivatives: return cmd_derivatives(c);
        case Command::thresholds: return cmd_thresholds(c);
        case Command::explore: return cmd_explore(c);
        default: return cmd_mapdec(c);
    }
}

}  // namespace ldpcstab
