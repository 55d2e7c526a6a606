// Command-line experiment runner over the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "ldpcstab/ldpcstab.h"

namespace {

int fail(ldst_status s) {
    std::fprintf(stderr, "ldpc-stab: %s\n", ldst_last_error());
    return static_cast<int>(s);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"LDPC stability experiments: tables, derivatives, thresholds, explore, mapdec"};
    std::string config, out;
    std::uint64_t seed = 0;
    int threads = 0, trace_run = -1;
    app.add_option("--config", config, "experiment config (key=value lines)")->required();
    app.add_option("--out", out, "CSV destination (default: config 'output' key, else stdout)");
    auto* seed_opt = app.add_option("--seed", seed, "master seed, overrides the config");
    auto* thr_opt = app.add_option("--threads", threads, "worker threads, overrides the config")->check(CLI::PositiveNumber);
    app.add_option("--trace", trace_run, "dump the stage trace of one explore run instead of the batch");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    ldst_config* cfg = nullptr;
    ldst_status s = ldst_config_load(config.c_str(), &cfg);
    if (s != LDST_OK) return fail(s);
    if (*seed_opt) s = ldst_config_set(cfg, "seed", std::to_string(seed).c_str());
    if (s == LDST_OK && *thr_opt) s = ldst_config_set(cfg, "threads", std::to_string(threads).c_str());
    if (s != LDST_OK) {
        ldst_config_free(cfg);
        return fail(s);
    }
    if (out.empty()) {
        const char* text = nullptr;
        ldst_config_text(cfg, &text);
        std::string t = text;
        auto pos = t.find("\noutput=");
        if (pos != std::string::npos) out = t.substr(pos + 8, t.find('\n', pos + 1) - pos - 8);
    }

    ldst_result* res = nullptr;
    s = trace_run >= 0 ? ldst_explore_trace(cfg, trace_run, &res) : ldst_run(cfg, &res);
    ldst_config_free(cfg);
    if (s != LDST_OK) return fail(s);

    if (out.empty() || out == "-") {
        std::fwrite(ldst_result_csv(res), 1, ldst_result_size(res), stdout);
    } else {
        std::ofstream f(out, std::ios::binary);
        f.write(ldst_result_csv(res), static_cast<std::streamsize>(ldst_result_size(res)));
        if (!f) {
            std::fprintf(stderr, "ldpc-stab: cannot write '%s'\n", out.c_str());
            ldst_result_free(res);
            return 2;
        }
    }
    ldst_result_free(res);
    return 0;
}
