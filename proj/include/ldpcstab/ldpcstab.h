#ifndef LDPCSTAB_H
#define LDPCSTAB_H

#include <stddef.h>
#include <stdint.h>

#if defined(LDST_BUILDING)
#define LDST_API __attribute__((visibility("default")))
#else
#define LDST_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Every call that can fail returns one of these; the message
   of the most recent failure on the calling thread is ldst_last_error(). */
typedef enum {
    LDST_OK = 0,
    LDST_ERR_INTERNAL = 1,
    LDST_ERR_VALIDATION = 2,
    LDST_ERR_GUARD = 3
} ldst_status;

typedef struct ldst_config ldst_config;
typedef struct ldst_result ldst_result;
typedef struct ldst_graph ldst_graph;

LDST_API const char* ldst_version(void);
LDST_API const char* ldst_last_error(void);

/* Experiment configs: flat key=value text. */
LDST_API ldst_status ldst_config_new(ldst_config** out);
LDST_API ldst_status ldst_config_parse(const char* text, ldst_config** out);
LDST_API ldst_status ldst_config_load(const char* path, ldst_config** out);
LDST_API ldst_status ldst_config_set(ldst_config* cfg, const char* key, const char* value);
/* Canonical text; the pointer stays valid until the next call on cfg. */
LDST_API ldst_status ldst_config_text(ldst_config* cfg, const char** text);
LDST_API ldst_status ldst_config_hash(const ldst_config* cfg, uint64_t* hash);
LDST_API void ldst_config_free(ldst_config* cfg);

LDST_API ldst_status ldst_run(const ldst_config* cfg, ldst_result** out);
/* Exploration trace (k, A_k, Z_k, explored) of one run of an explore config. */
LDST_API ldst_status ldst_explore_trace(const ldst_config* cfg, int run, ldst_result** out);
LDST_API const char* ldst_result_csv(const ldst_result* res);
LDST_API size_t ldst_result_size(const ldst_result* res);
LDST_API void ldst_result_free(ldst_result* res);

/* Channels are given as "kind:param" with kind bec, bsc or bawgnc.
   Pairs as "cycle", "regular:dv,dc", "poisson:N,eps" or "right_regular:N,eps". */
LDST_API ldst_status ldst_channel_functionals(const char* channel, double* entropy, double* bhattacharyya,
                                              double* error_prob);
LDST_API ldst_status ldst_stability_threshold(const char* family, const char* pair, double* out);
LDST_API ldst_status ldst_bp_threshold(const char* family, const char* pair, double* out);

/* Tanner graphs. Variables and checks are 0-based. */
LDST_API ldst_status ldst_graph_sample(const char* pair, int n, uint64_t seed, ldst_graph** out);
LDST_API ldst_status ldst_graph_from_text(const char* text, ldst_graph** out);
LDST_API ldst_status ldst_graph_example(int which, ldst_graph** out);
LDST_API ldst_status ldst_graph_size(const ldst_graph* g, int* n, int* m);
LDST_API ldst_status ldst_graph_count_negative_cycles(const ldst_graph* g, const double* llrs, size_t len, int* out);
/* Maximum matching size of the realization graph around variable v. */
LDST_API ldst_status ldst_graph_pattern_matching(const ldst_graph* g, int v, double sum_bound, int* vertices,
                                                 int* matching);
LDST_API ldst_status ldst_graph_bit_error_bounds(const ldst_graph* g, int v, double p, int l, double* lower,
                                                 double* exact);
LDST_API void ldst_graph_free(ldst_graph* g);

#ifdef __cplusplus
}
#endif

#endif
