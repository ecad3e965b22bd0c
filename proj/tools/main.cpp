#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <string>

#include "vortexlab/log.hpp"
#include "vortexlab/runner.hpp"

namespace {

vlab::ScenarioConfig load_or_exit(const std::string& path) {
    try {
        return vlab::ScenarioConfig::load(path);
    } catch (const vlab::ConfigError& e) {
        std::fprintf(stderr, "config error (line %d): %s\n", e.line, e.what());
        std::exit(vlab::kConfigError);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"vortexlab: pseudo-spectral laboratory for the random vorticity equation"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    std::uint64_t seed = 1;
    int workers = 0;
    bool override_smallness = false;

    auto add_common = [&](CLI::App* cmd, bool need_config) {
        auto* opt = cmd->add_option("--config", config_path, "scenario config file");
        if (need_config) opt->required();
        cmd->add_option("--seed", seed, "base seed (64-bit)");
        cmd->add_option("--out", out_dir, "output directory");
        cmd->add_option("--workers", workers, "worker threads (0 = all cores)");
    };

    auto* solve = app.add_subcommand("solve", "single-path Picard solve with full diagnostics");
    add_common(solve, true);
    solve->add_flag("--override-smallness", override_smallness,
                    "run even when the smallness gate fails");

    int n_paths = 0;
    auto* mc = app.add_subcommand("mc", "Monte-Carlo batch over Brownian paths");
    add_common(mc, true);
    mc->add_option("--paths", n_paths, "number of paths (>= 2)")->required();

    auto* calibrate = app.add_subcommand("calibrate", "fit the empirical constants C1, C2");
    add_common(calibrate, true);

    std::string suite = "all";
    std::string report_path = "report.csv";
    int verify_paths = 80;
    auto* verify = app.add_subcommand("verify", "numerical property-test suites");
    add_common(verify, false);
    verify->add_option("--suite", suite, "all|estimates|oracle|moments");
    verify->add_option("--out-report", report_path, "report CSV path");
    verify->add_option("--paths", verify_paths, "Monte-Carlo paths for the moments suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : vlab::kConfigError;
    }

    vlab::RunOptions opts;
    opts.seed = seed;
    opts.out_dir = out_dir;
    opts.workers = workers;
    opts.override_smallness = override_smallness;

    try {
        if (solve->parsed()) {
            std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
            return vlab::run_solve(load_or_exit(config_path), opts);
        }
        if (mc->parsed()) {
            std::printf("seed %llu\n", static_cast<unsigned long long>(seed));
            return vlab::run_mc(load_or_exit(config_path), n_paths, opts);
        }
        if (calibrate->parsed()) return vlab::run_calibrate(load_or_exit(config_path), opts);
        if (verify->parsed()) {
            vlab::ScenarioConfig cfg =
                config_path.empty() ? vlab::ScenarioConfig{} : load_or_exit(config_path);
            return vlab::run_verify(cfg, suite, verify_paths, opts, report_path);
        }
    } catch (const vlab::ConfigError& e) {
        std::fprintf(stderr, "config error (line %d): %s\n", e.line, e.what());
        return vlab::kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
