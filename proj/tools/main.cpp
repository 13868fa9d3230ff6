// mellincalc: verification suites for Mellin-transform spectral multiplier
// experiments on finite self-adjoint models.
//
//   mellincalc <suite> --config <file> [--alpha N] [--multiplier F]
//              [--model M] [--seed S] [--out DIR]
//
// Suites: mellin, norms, maximal, square, decomposition, all.
// Exit code: 0 all checks passed, 1 some check failed, 2 usage/config error.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "mellincalc/config.hpp"
#include "mellincalc/suites.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Mellin multiplier verification suites"};
    std::string suite;
    std::string config_path;
    std::string multiplier, model, out_dir;
    int alpha = -2;
    std::uint64_t seed = 0;

    app.add_option("suite", suite, "mellin|norms|maximal|square|decomposition|all")->required();
    app.add_option("--config", config_path, "config file (key=value or JSON)");
    auto* alpha_opt = app.add_option("--alpha", alpha, "calculus order (required here or in the config)");
    app.add_option("--multiplier", multiplier, "family:params, e.g. bochner_riesz:4");
    app.add_option("--model", model, "cycle:<n> or diagonal:<file>");
    auto* seed_opt = app.add_option("--seed", seed, "ensemble seed");
    app.add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        mellincalc::RunConfig cfg;
        bool have_cfg = !config_path.empty();
        if (have_cfg) cfg = mellincalc::config_from_file(config_path);
        if (alpha_opt->count() > 0) cfg.alpha = alpha;
        if (!multiplier.empty()) cfg.multiplier = multiplier;
        if (!model.empty()) cfg.model = model;
        if (seed_opt->count() > 0) cfg.seed = seed;
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (cfg.alpha < 0)
            throw std::invalid_argument("config: key 'alpha': required (no default exists)");

        auto reports = mellincalc::run_suite(cfg, suite);
        int failed = 0;
        for (const auto& r : reports) {
            std::printf("%-36s %s\n", r.check_name.c_str(), r.pass ? "pass" : "FAIL");
            if (!r.pass) ++failed;
        }
        std::printf("%zu checks, %d failed; reports in %s/reports.json\n", reports.size(), failed,
                    cfg.output_dir.c_str());
        return failed == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
