#include "ldpcstab/ldpcstab.h"

#include <exception>
#include <new>
#include <string>

#include "density_evolution.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "explore.hpp"
#include "mapdec.hpp"

using namespace ldpcstab;

struct ldst_config {
    ExperimentConfig cfg;
    std::string text;
};

struct ldst_result {
    std::string csv;
};

struct ldst_graph {
    TannerGraph g;
};

namespace {

thread_local std::string last_error;

template <class F>
ldst_status guarded(F&& f) {
    try {
        f();
        last_error.clear();
        return LDST_OK;
    } catch (const ValidationError& e) {
        last_error = e.what();
        return LDST_ERR_VALIDATION;
    } catch (const GuardError& e) {
        last_error = e.what();
        return LDST_ERR_GUARD;
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
        return LDST_ERR_INTERNAL;
    } catch (const std::exception& e) {
        last_error = e.what();
        return LDST_ERR_INTERNAL;
    } catch (...) {
        last_error = "unknown error";
        return LDST_ERR_INTERNAL;
    }
}

template <class T>
void need(T* p, const char* what) {
    if (!p) throw ValidationError(std::string("null argument: ") + what);
}

}  // namespace

extern "C" {

const char* ldst_version(void) { return "0.1.0"; }

const char* ldst_last_error(void) { return last_error.c_str(); }

ldst_status ldst_config_new(ldst_config** out) {
    return guarded([&] {
        need(out, "out");
        *out = new ldst_config{};
    });
}

ldst_status ldst_config_parse(const char* text, ldst_config** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new ldst_config{ExperimentConfig::parse(text), {}};
    });
}

ldst_status ldst_config_load(const char* path, ldst_config** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        *out = new ldst_config{ExperimentConfig::load(path), {}};
    });
}

ldst_status ldst_config_set(ldst_config* cfg, const char* key, const char* value) {
    return guarded([&] {
        need(cfg, "cfg");
        need(key, "key");
        need(value, "value");
        cfg->cfg.set(key, value);
    });
}

ldst_status ldst_config_text(ldst_config* cfg, const char** text) {
    return guarded([&] {
        need(cfg, "cfg");
        need(text, "text");
        cfg->text = cfg->cfg.to_text();
        *text = cfg->text.c_str();
    });
}

ldst_status ldst_config_hash(const ldst_config* cfg, uint64_t* hash) {
    return guarded([&] {
        need(cfg, "cfg");
        need(hash, "hash");
        *hash = cfg->cfg.hash();
    });
}

void ldst_config_free(ldst_config* cfg) { delete cfg; }

ldst_status ldst_run(const ldst_config* cfg, ldst_result** out) {
    return guarded([&] {
        need(cfg, "cfg");
        need(out, "out");
        *out = new ldst_result{run_experiment(cfg->cfg)};
    });
}

ldst_status ldst_explore_trace(const ldst_config* cfg, int run, ldst_result** out) {
    return guarded([&] {
        need(cfg, "cfg");
        need(out, "out");
        *out = new ldst_result{explore_trace_csv(cfg->cfg, run)};
    });
}

const char* ldst_result_csv(const ldst_result* res) { return res ? res->csv.c_str() : ""; }

size_t ldst_result_size(const ldst_result* res) { return res ? res->csv.size() : 0; }

void ldst_result_free(ldst_result* res) { delete res; }

ldst_status ldst_channel_functionals(const char* channel, double* entropy, double* bhattacharyya,
                                     double* error_prob) {
    return guarded([&] {
        need(channel, "channel");
        Channel c = Channel::parse(channel);
        if (entropy) *entropy = c.entropy();
        if (bhattacharyya) *bhattacharyya = c.bhattacharyya();
        if (error_prob) *error_prob = c.error_prob();
    });
}

ldst_status ldst_stability_threshold(const char* family, const char* pair, double* out) {
    return guarded([&] {
        need(family, "family");
        need(pair, "pair");
        need(out, "out");
        *out = stability_threshold(parse_channel_kind(family), parse_pair(pair));
    });
}

ldst_status ldst_bp_threshold(const char* family, const char* pair, double* out) {
    return guarded([&] {
        need(family, "family");
        need(pair, "pair");
        need(out, "out");
        *out = bp_threshold(parse_channel_kind(family), parse_pair(pair));
    });
}

ldst_status ldst_graph_sample(const char* pair, int n, uint64_t seed, ldst_graph** out) {
    return guarded([&] {
        need(pair, "pair");
        need(out, "out");
        Rng rng = make_rng(seed, 0, Stream::graph);
        *out = new ldst_graph{sample_graph(parse_pair(pair), n, rng)};
    });
}

ldst_status ldst_graph_from_text(const char* text, ldst_graph** out) {
    return guarded([&] {
        need(text, "text");
        need(out, "out");
        *out = new ldst_graph{TannerGraph::from_text(text)};
    });
}

ldst_status ldst_graph_example(int which, ldst_graph** out) {
    return guarded([&] {
        need(out, "out");
        require(which == 1 || which == 2, "example index must be 1 or 2");
        *out = new ldst_graph{which == 1 ? example_graph_1() : example_graph_2()};
    });
}

ldst_status ldst_graph_size(const ldst_graph* g, int* n, int* m) {
    return guarded([&] {
        need(g, "g");
        if (n) *n = g->g.n;
        if (m) *m = g->g.m;
    });
}

ldst_status ldst_graph_count_negative_cycles(const ldst_graph* g, const double* llrs, size_t len, int* out) {
    return guarded([&] {
        need(g, "g");
        need(llrs, "llrs");
        need(out, "out");
        *out = count_deg2_negative_cycles(g->g, std::vector<double>(llrs, llrs + len));
    });
}

ldst_status ldst_graph_pattern_matching(const ldst_graph* g, int v, double sum_bound, int* vertices, int* matching) {
    return guarded([&] {
        need(g, "g");
        RealizationGraph r = build_realization_graph(g->g, v, sum_bound);
        if (vertices) *vertices = static_cast<int>(r.vertices.size());
        if (matching) *matching = static_cast<int>(maximum_matching(r).matching.size());
    });
}

ldst_status ldst_graph_bit_error_bounds(const ldst_graph* g, int v, double p, int l, double* lower, double* exact) {
    return guarded([&] {
        need(g, "g");
        Channel c = Channel::make(ChannelKind::bsc, p);
        if (lower) *lower = bit_error_lower_bound(g->g, v, c, l);
        if (exact) *exact = exact_bitwise_error(Code::from_graph(g->g), v, c);
    });
}

void ldst_graph_free(ldst_graph* g) { delete g; }

}  // extern "C"
