/* Exercises the C surface from plain C. */
#include <math.h>
#include <stdio.h>
#include <string.h>

#include "ldpcstab/ldpcstab.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
    do {                                                               \
        if (!(cond)) {                                                 \
            fprintf(stderr, "%s:%d: failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                \
        }                                                              \
    } while (0)

int main(void) {
    ldst_config* cfg = NULL;
    ldst_result* res = NULL;
    const char* text = NULL;
    uint64_t h1 = 0, h2 = 0;
    double H, B, E, t;
    ldst_graph* g = NULL;
    int n, m, verts, match, count;
    double lo, ex;
    const double llr[4] = {-1, -1, 1, 1};

    EXPECT(ldst_config_parse("command=tables\nN_list=128,512\n", &cfg) == LDST_OK);
    EXPECT(ldst_config_text(cfg, &text) == LDST_OK && strstr(text, "N_list=128,512") != NULL);
    EXPECT(ldst_config_hash(cfg, &h1) == LDST_OK);
    EXPECT(ldst_config_set(cfg, "threads", "3") == LDST_OK);
    EXPECT(ldst_config_hash(cfg, &h2) == LDST_OK && h1 == h2);
    EXPECT(ldst_run(cfg, &res) == LDST_OK);
    EXPECT(strncmp(ldst_result_csv(res), "# config-hash: ", 15) == 0);
    EXPECT(ldst_result_size(res) == strlen(ldst_result_csv(res)));
    ldst_result_free(res);

    EXPECT(ldst_config_set(cfg, "nonsense", "1") == LDST_ERR_VALIDATION);
    EXPECT(strstr(ldst_last_error(), "nonsense") != NULL);
    EXPECT(ldst_config_set(cfg, "pair", "regular:3,6") == LDST_OK);
    EXPECT(ldst_config_set(cfg, "command", "explore") == LDST_OK);
    res = NULL;
    EXPECT(ldst_run(cfg, &res) == LDST_ERR_VALIDATION && res == NULL);
    ldst_config_free(cfg);

    EXPECT(ldst_config_parse(NULL, &cfg) == LDST_ERR_VALIDATION);
    EXPECT(ldst_config_load("/nonexistent/cfg", &cfg) == LDST_ERR_VALIDATION);

    EXPECT(ldst_channel_functionals("bsc:0.1", &H, &B, &E) == LDST_OK);
    EXPECT(fabs(B - 0.6) < 1e-12 && fabs(E - 0.1) < 1e-12 && H > 0.46 && H < 0.47);
    EXPECT(ldst_channel_functionals("xyz:0.1", &H, &B, &E) == LDST_ERR_VALIDATION);
    EXPECT(ldst_stability_threshold("bec", "cycle", &t) == LDST_OK && fabs(t - 0.5) < 1e-9);
    EXPECT(ldst_stability_threshold("bec", "regular:3,6", &t) == LDST_OK && t == 1.0);
    EXPECT(ldst_bp_threshold("bec", "regular:3,6", &t) == LDST_OK && fabs(t - 0.4294) < 1e-4);

    EXPECT(ldst_graph_example(1, &g) == LDST_OK);
    EXPECT(ldst_graph_size(g, &n, &m) == LDST_OK && n == 4 && m == 3);
    EXPECT(ldst_graph_count_negative_cycles(g, llr, 4, &count) == LDST_OK && count == 2);
    EXPECT(ldst_graph_pattern_matching(g, 0, 1.0, &verts, &match) == LDST_OK && match == 6);
    EXPECT(ldst_graph_bit_error_bounds(g, 0, 0.1, 2, &lo, &ex) == LDST_OK && lo <= ex);
    EXPECT(ldst_graph_bit_error_bounds(g, 0, 0.7, 2, &lo, &ex) == LDST_ERR_VALIDATION);
    ldst_graph_free(g);

    EXPECT(ldst_graph_sample("cycle", 30, 5, &g) == LDST_OK);
    EXPECT(ldst_graph_pattern_matching(g, 0, 1.0, &verts, &match) == LDST_ERR_GUARD);
    ldst_graph_free(g);
    EXPECT(ldst_graph_sample("cycle", 0, 5, &g) == LDST_ERR_VALIDATION);
    EXPECT(ldst_graph_example(3, &g) == LDST_ERR_VALIDATION);

    if (failures == 0) printf("capi: all checks passed\n");
    return failures == 0 ? 0 : 1;
}
