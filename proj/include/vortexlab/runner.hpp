#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexlab/config.hpp"

namespace vlab {

/// Process exit codes shared by the CLI and the orchestration layer.
enum ExitCode : int {
    kOk = 0,
    kConfigError = 2,
    kSmallnessRefused = 3,
    kNoConvergence = 4,
    kVerifyFailure = 5,
};

struct RunOptions {
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    int workers = 0; // 0 = hardware concurrency
    bool override_smallness = false;
};

/// Full single-path pipeline: paths -> Gamma -> smallness -> Picard ->
/// diagnostics and file outputs (kato.csv, contraction.csv, smallness.txt,
/// pairings.csv, velocity.csv, eta CSV, VMF1 snapshots, config echo).
int run_solve(const ScenarioConfig& cfg, const RunOptions& opts);

/// Monte-Carlo batch: per-path eta CSVs plus aggregate.csv; in `hitting`
/// mode, the reflected hitting-law experiment instead.
int run_mc(const ScenarioConfig& cfg, int n_paths, const RunOptions& opts);

/// Empirical calibration of C1/C2 (C* = 1/(2 C1 C2)); writes constants.cfg
/// and a borderline-run report.
int run_calibrate(const ScenarioConfig& cfg, const RunOptions& opts);

/// Numerical property-test suites; returns kVerifyFailure when any check
/// fails. `suite` is one of all|estimates|oracle|moments.
int run_verify(const ScenarioConfig& cfg, const std::string& suite, int mc_paths,
               const RunOptions& opts, const std::string& report_path);

} // namespace vlab
