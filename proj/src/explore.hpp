#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "channel.hpp"
#include "degseq.hpp"
#include "tanner.hpp"

namespace ldpcstab {

enum class Status : std::uint8_t { neutral, explored, open, active };

// Test hooks. Both default to the random behaviour.
enum class CoinMode { random, always_keep, always_drop };

struct ExploreOptions {
    int l_steps = 1;
    double eps_frac = 0.5;        // stop once eps_frac * n check half-edges are explored
    bool stop_at_first_zero = false;
    bool restart = true;
    CoinMode coin = CoinMode::random;
    bool force_landing = false;   // e2 lands on an active check half-edge whenever one exists
    bool require_root_negative = false;  // cycle event also needs L_v < 0
};

struct StageRow {
    int k;
    long long A, Z;
    long long explored_check;  // cumulative
    bool restart;              // stage k was a Stage-0 (re)start
    long long status_count[4]; // half-edges of both sides per Status
};

enum class StopReason { budget, zero, exhausted };

struct ExplorationTrace {
    int l_steps = 0;
    double eps_frac = 0;
    long long budget = 0;
    std::vector<StageRow> stages;
    std::optional<int> K;                  // first k with A_k = 0
    std::vector<int> excursion_K;          // stage index of every return to zero
    int restarts = 0;
    StopReason stop = StopReason::budget;
    bool e2_consumed = false;              // root's e2 was hit during exploration
    int root = -1;                         // first start node
    double root_llr = 0;
    std::vector<std::pair<int, double>> revealed;  // (variable, LLR) in reveal order

    long long A_final() const { return stages.empty() ? 0 : stages.back().A; }
};

struct CycleEvent {
    bool attempted = false;   // exploration reached the budget without restart
    bool landed = false;      // e2 hit an active check half-edge
    bool occurred = false;    // landed (and L_v < 0 when required)
    bool tie = false;
    double llr_sum = 0;
    std::vector<int> cycle;   // variables on the cycle, root included
};

// Stateful explorer, graph mode (pre-sampled pairing) or on-the-fly mode
// (uniform pairing draws over the remaining half-edges).
class Explorer {
public:
    Explorer(const TannerGraph& g, const Channel& c, const ExploreOptions& o, std::uint64_t master, std::uint64_t run);
    Explorer(const DegreeCounts& counts, const Channel& c, const ExploreOptions& o, std::uint64_t master,
             std::uint64_t run);

    const ExplorationTrace& run();
    CycleEvent detect_cycle_event();
    const std::vector<double>& llrs() const { return llr_; }
    const ExplorationTrace& trace() const { return trace_; }
    // Realized (variable, check) pairs in graph mode or drawn so far on the fly.
    int check_half_edges_total() const { return E_; }

private:
    struct Frontier {
        int he;
        int node;
        double sum;
    };
    struct PathNode {
        int var;
        int parent;
    };

    void init(const Channel& c, std::uint64_t master, std::uint64_t run);
    int connect_check(int ch);  // returns var half-edge
    int connect_var(int vh);    // returns check half-edge
    void set_var(int h, Status s);
    void set_check(int h, Status s);
    void start_at(int v);
    void stage();
    void record(int k, long long prevA, bool restart);
    int next_root() const;
    bool keep_tie();

    const TannerGraph* graph_ = nullptr;
    std::vector<int> var_deg_, check_deg_, var_off_, check_off_, var_owner_, check_owner_;
    int n_ = 0, E_ = 0;
    ExploreOptions o_;
    Rng pair_rng_, coin_rng_;
    std::vector<double> llr_;
    std::vector<Status> vs_, cs_;
    // Pools of unexplored half-edges with O(1) removal.
    std::vector<int> vpool_, vpos_, cpool_, cpos_;
    std::vector<int> fifo_;
    std::size_t fifo_head_ = 0;
    std::vector<PathNode> nodes_;
    std::vector<int> he_node_;
    long long active_ = 0, explored_check_ = 0;
    long long count_[4] = {0, 0, 0, 0};
    int root_ = -1, root_node_ = -1;
    bool ran_ = false;
    ExplorationTrace trace_;
};

ExplorationTrace run_exploration(const TannerGraph& g, const Channel& c, const ExploreOptions& o,
                                 std::uint64_t master, std::uint64_t run);
ExplorationTrace run_exploration(const DegreePair& pair, int n, const Channel& c, const ExploreOptions& o,
                                 std::uint64_t master, std::uint64_t run);

// Number of degree-two variables on at least one all-degree-two cycle with
// negative LLR sum.
int count_deg2_negative_cycles(const TannerGraph& g, const std::vector<double>& llrs, int max_dim = 20);

// ---- bounds ----

double subcritical_bound(double n, double a, int l, double gamma, double delta, double d);
// Subcritical constants at given l: gamma^l = E(c^{*l}) mu^l, delta halfway to the edge.
struct SubcriticalConstants {
    double gamma, delta;
};
SubcriticalConstants subcritical_constants(const Channel& c, double mu, int l);

struct SupercriticalBounds {
    double bound_Ak, bound_K, c_kappa;
};
SupercriticalBounds supercritical_bounds(double n, double eps_frac, int l, double gamma, double delta, double d,
                                         double kappa);
// Smallest integer kappa with c_kappa < 1.
int kappa_for(int l, double gamma, double delta, double d);

double lp_bound(double gamma_l, double d_l, double s);
struct LpPrimal {
    std::vector<double> p;  // p_j, j = 0..D
    double value;           // max sum p_j e^{-s j}
};
LpPrimal lp_solve_primal(double gamma_l, int d_l, double s);

double g_function(double gamma_l, double d_l, double delta, double s);
double g_star(double gamma_l, double d_l, double delta);
double g_star_argmin(double gamma_l, double d_l, double delta);
struct GStarCheck {
    double grid_min, closed_form, exp_bound;
    bool matches, below_exp_bound, grid_above;
};
GStarCheck g_star_check(double gamma_l, double d_l, double delta, double s_max = 10.0, int points = 200001);

struct EpsilonChoice {
    double gamma, bfrak, xi, slope, epsilon;
    int l;
    double e_l;              // E(c^{*l})
    double residual_product; // worst residual lambda'(0) rho'(1) at budget epsilon
    double lhs, rhs;         // E(c^{*l}) product^l and gamma^l
};
EpsilonChoice choose_epsilon(const Channel& c, const DegreePair& pair, int l_cap = 64);

}  // namespace ldpcstab
