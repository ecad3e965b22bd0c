#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "vortexlab/noise.hpp"
#include "vortexlab/solver.hpp"

namespace vlab {

struct ConfigError : std::runtime_error {
    int line;
    ConfigError(const std::string& msg, int line_) : std::runtime_error(msg), line(line_) {}
};

/// Flat key-value scenario configuration ('#' comments, `key = value`).
/// Unknown keys are an error; all derived exponents are recomputed and
/// consistency-checked on load.
struct ScenarioConfig {
    SolverConfig solver;

    int noise_N = 1;
    std::vector<KernelSpec> kernels = {KernelSpec{}}; // broadcast to N when a single entry
    std::vector<double> lambdas = {7.0};

    std::string u0_preset = "taylor_green";
    double u0_norm32 = 0.05;

    std::vector<double> snapshot_times;
    std::vector<std::array<int, 3>> pairing_modes = {{1, 0, 0}};

    std::string mc_mode = "solve"; // solve | hitting
    double mc_nu = 1.0;
    double mc_r = 2.0;
    double mc_tmax = 50.0;
    double mc_dt = 5e-3;

    static ScenarioConfig load(const std::string& path);
    static ScenarioConfig parse(const std::string& text);

    /// Reloadable echo of the effective configuration; derived exponents
    /// appear as comments.
    std::string effective() const;

    GridSpec make_grid() const { return GridSpec(solver.n, solver.L); }
    NoiseModel make_noise(const GridSpec& grid) const;

    /// Pairing test functions: cos(k.x) e1 + sin(k.x) e2 per mode triple.
    std::vector<SpectralVectorField> pairing_functions(const GridSpec& grid) const;
};

} // namespace vlab
