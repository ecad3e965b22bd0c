#pragma once

#include <functional>
#include <string>
#include <vector>

#include "vortexlab/diagnostics.hpp"
#include "vortexlab/gamma.hpp"
#include "vortexlab/kato.hpp"
#include "vortexlab/special_functions.hpp"

namespace vlab {

/// Fallback calibration constants, produced by `calibrate` on the default
/// scenario sweep; config overrides take precedence.
inline constexpr double kDefaultC1 = 0.5179068237300859;
inline constexpr double kDefaultC2 = 0.0024669719554306427;

struct SolverConfig {
    double p = 1.8;
    double T = 0.256;
    int M = 64;            // time nodes (graded mesh)
    double grid_gamma = 2.0;
    int n = 32;            // spatial resolution
    double L = 2.0 * M_PI;
    double tol = 1e-8;
    int max_iter = 12;
    double C1 = 0.0;       // 0 => kDefaultC1
    double C2 = 0.0;       // 0 => kDefaultC2
    double Cstar = 0.0;    // 0 => 1/(2 C1 C2)
    bool nonlinearity_enabled = true;

    double q() const { return 1.0 / (2.0 / p - 1.0 / 3.0); }
    double r1() const { return 3.0 * p / (3.0 - p); }
    double qprime() const { return 3.0 * p / (4.0 * p - 6.0); }
    double c1() const { return C1 > 0.0 ? C1 : kDefaultC1; }
    double c2() const { return C2 > 0.0 ? C2 : kDefaultC2; }
    double cstar() const { return Cstar > 0.0 ? Cstar : 1.0 / (2.0 * c1() * c2()); }

    void validate() const;
    TimeGrid make_time_grid() const { return TimeGrid::graded(T, M, grid_gamma); }
};

/// Per-cell quadrature data for the Duhamel integral: the heat factor is
/// the exactly-integrated weight, the remaining factor is interpolated
/// linearly between the cell's grid nodes (product integration). Weights
/// are generated per cell into caller scratch to keep memory flat in M.
struct DuhamelWorkspace {
    GridSpec grid;
    std::vector<double> t;   // solver nodes
    std::vector<double> ksq; // |k|^2 per mode

    DuhamelWorkspace(const GridSpec& g, const std::vector<double>& nodes);

    std::size_t cells() const { return t.size() - 1; }

    /// Fills e^{-|k|^2 dt_j} and the two endpoint weights for cell j.
    void cell_weights(std::size_t j, std::vector<double>& heat, std::vector<double>& w_left,
                      std::vector<double>& w_right) const;
};

/// F(z)(t_m) = int_0^{t_m} e^{(t_m-s) Lap} Gamma^{-1}(s) M(Gamma(s) z(s)) ds
/// at every solver node, via the exponential product-integration recurrence.
/// `gamma` may be null (Gamma = identity); `path_nodes` maps solver nodes
/// into the path grid and must match z.size().
std::vector<SpectralVectorField> duhamel_integral(const std::vector<SpectralVectorField>& z,
                                                  const GammaMultiplier* gamma,
                                                  const std::vector<std::size_t>& path_nodes,
                                                  const DuhamelWorkspace& ws,
                                                  bool nonlinearity_on = true);

struct SolutionRecord {
    GridSpec grid;
    TimeGrid times;                      // solver nodes
    std::vector<std::size_t> path_nodes; // into the path grid
    std::vector<SpectralVectorField> y;  // converged iterate at the nodes
    KatoTrajectory kato;
    std::vector<double> deltas;         // ||y^{k+1} - y^k|| per iteration
    std::vector<double> ratios;         // successive-difference ratios (from iter 2)
    std::vector<double> iterate_znorms; // ||y^k|| before each sweep (calibration input)
    double residual_rel = 0.0;          // transformed-equation residual, sup-grid relative L2
};

struct PicardOutcome {
    SolutionRecord record;
    bool converged = false;
    int iterations = 0;
    std::string failure_kind; // "", "too_large_data", "quadrature_too_coarse"
    std::string diagnosis;
};

struct PicardOptions {
    bool nonlinearity_enabled = true;
    bool compute_residual = true;
    bool refinement_probe_on_failure = true;
};

/// Picard iteration for the mild map G(y) = e^{t Lap} U0 + F(y), starting
/// from the affine part y0(t) = e^{t Lap} U0. Converges when the Kato-norm
/// step falls below tol * ||y^k||.
PicardOutcome picard_solve(const SpectralVectorField& U0, const GammaMultiplier* gamma,
                           const std::vector<std::size_t>& path_nodes, const SolverConfig& cfg,
                           const PicardOptions& opts = {});

/// Convenience: builds the graded grid from cfg, samples nothing; gamma's
/// path grid must equal the solver grid.
PicardOutcome picard_solve(const SpectralVectorField& U0, const GammaMultiplier& gamma,
                           const SolverConfig& cfg, const PicardOptions& opts = {});

SpectralVectorField vorticity_at(const SolutionRecord& rec, const GammaMultiplier* gamma,
                                 std::size_t node);
SpectralVectorField velocity_at(const SolutionRecord& rec, const GammaMultiplier* gamma,
                                std::size_t node);

struct SmallnessRow {
    std::string name;
    double lhs_exact = 0.0;
    double lhs_analytic = 0.0;
    double rhs = 0.0;
    bool pass_exact = false;
    bool pass_analytic = false;
};

struct SmallnessReport {
    std::vector<SmallnessRow> rows;
    double u0_norm32 = 0.0;
    double eta_inf_exact = 1.0;
    double eta_inf_analytic = 1.0;
    double C1 = 0.0, C2 = 0.0, Cstar = 0.0;
    BetaConstants betas{};
    /// Runtime gate: the smallness condition under the L^2 surrogate.
    bool gate_pass = false;
};

SmallnessReport smallness_check(double u0_norm32, const NoiseDiagnostics& diag,
                                const SolverConfig& cfg);

/// Quadrature inner product <y(t), phi> at every node (computed spectrally
/// via the Parseval identity, which equals the grid quadrature).
std::vector<double> weak_pairing(const std::vector<SpectralVectorField>& y,
                                 const SpectralVectorField& phi);

struct VelocityDiagnostics {
    std::vector<double> t;
    std::vector<double> ratio_x;   // |X|_{r1} / |U|_p
    std::vector<double> ratio_dx;  // max_i |D_i X|_p / |U|_p
    std::vector<double> ratio_d2x; // max_{ij} |D_i D_j X|_p / max_i |D_i U|_p
    std::vector<double> wx;        // t^{1-3/(2p)} |X|_{r1}
    std::vector<double> wdx;       // t^{3/2(1-1/p)} max_i |D_i X|_p
    int skipped = 0;               // nodes with |U|_p == 0
};

VelocityDiagnostics velocity_diagnostics(const SolutionRecord& rec, const GammaMultiplier* gamma,
                                         const SolverConfig& cfg);

} // namespace vlab
