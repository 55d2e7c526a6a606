#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "channel.hpp"
#include "degseq.hpp"

namespace ldpcstab {

enum class Command { tables, derivatives, thresholds, explore, mapdec };
Command parse_command(const std::string& s);
std::string to_string(Command c);

// Flat key=value experiment description. Unknown keys are rejected.
struct ExperimentConfig {
    Command command = Command::tables;
    SequenceKind sequence = SequenceKind::poisson;
    double eps = 0.5;
    std::vector<double> eps_list{0.3, 0.5, 0.7};
    std::vector<int> N_list{128, 512, 2048, 32768, 524288};
    std::string channel = "bec:0.5";
    std::string pair = "cycle";  // cycle | regular:dv,dc | poisson:N,eps | right_regular:N,eps
    int n = 1024;
    std::uint64_t seed = 1;
    int runs = 100;
    // explore
    int l = 1;
    double eps_frac = 0.5;
    double a = 0.4;  // subcritical exponent: reports P(K > n^a)
    bool stop_at_first_zero = false;
    bool require_root_negative = false;
    // derivatives / thresholds
    int x_points = 101;
    int h_points = 0;  // DE sweep resolution, 0 = thresholds only
    // mapdec
    std::string graph = "example1";  // example1 | example2 | random
    double sum_bound = 1.0;
    int v = 0;
    int threads = 1;
    std::string output;

    std::string to_text() const;
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);
    void set(const std::string& key, const std::string& value);
    // Hash of everything that influences the CSV body (threads/output excluded).
    std::uint64_t hash() const;
};

DegreePair parse_pair(const std::string& spec);

std::string cmd_tables(const ExperimentConfig& c);
std::string cmd_derivatives(const ExperimentConfig& c);
std::string cmd_thresholds(const ExperimentConfig& c);
std::string cmd_explore(const ExperimentConfig& c);
std::string cmd_mapdec(const ExperimentConfig& c);
std::string run_experiment(const ExperimentConfig& c);

// (k, A_k, Z_k, explored_check_halfedges) for one run of the explore config.
std::string explore_trace_csv(const ExperimentConfig& c, int run);

std::uint64_t fnv1a64(const std::string& s);

}  // namespace ldpcstab
