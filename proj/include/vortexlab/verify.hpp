#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vortexlab/field_gen.hpp"
#include "vortexlab/solver.hpp"

namespace vlab {

/// Empirical ratio statistics for one estimate across a resolution sweep.
/// Pass criterion: the max ratio grows by < 25% per resolution doubling.
struct EstimateReport {
    std::string name;
    std::string params;
    std::vector<int> resolutions;
    std::vector<double> max_ratio;
    std::vector<double> median_ratio;
    bool pass = false;

    void evaluate(); // fills `pass` from the 25% doubling criterion
};

/// Heat-smoothing slope fit |e^{t Lap} u|_pt ~ t^slope over t in [1e-4,1e-2]
/// on q-critical singular data; predicted slope -(3/2)(1/qt-1/pt), minus an
/// extra 1/2 with one derivative.
struct SlopeCheck {
    double qt = 0.0, pt = 0.0;
    bool derivative = false;
    double fitted = 0.0;
    double predicted = 0.0;
    double tolerance = 0.1;
    bool pass = false;
    int n = 0;
    double L = 0.0;
};

SlopeCheck check_heat_smoothing(double qt, double pt, bool derivative, int members = 1,
                                std::uint64_t seed = 1);

/// Lemma-2.1 style facts on a sampled path: the per-channel Young bound
/// |B_i z|_q <= |h_i|_1 |z|_q, the series bound on |Gamma z|_q + |Gamma^{-1} z|_q,
/// and the exact L^2 multiplier bound.
struct Lemma21Report {
    double max_young_excess = 0.0;    // max over channels/q of ratio - |h|_1 (<= tol)
    double max_ct_ratio = 0.0;        // max of (|Gz|_q+|G^-1 z|_q)/(C_t |z|_q) (<= 1)
    double max_l2_excess = 0.0;       // |Gz|_2 / (sup|gamma| |z|_2) - 1  (<= 1e-10)
    bool pass = false;
};

Lemma21Report check_lemma21(const GammaMultiplier& gamma, const std::vector<double>& q_list,
                            std::uint64_t seed);

/// |M(z)|_q / (|z|_p |grad z|_p) across resolutions on a fixed-band ensemble.
EstimateReport check_M_estimate(double p, const std::vector<int>& resolutions, int ensemble,
                                std::uint64_t seed);

/// Calderon-Zygmund surrogate |D_j K(z)|_p / |z|_p across resolutions.
EstimateReport check_calderon_zygmund(double p, const std::vector<int>& resolutions, int ensemble,
                                      std::uint64_t seed);

/// Riesz estimate |K(u)|_beta / |u|_alpha, 1/beta = 1/alpha - 1/3.
EstimateReport check_riesz(double alpha, const std::vector<int>& resolutions, int ensemble,
                           std::uint64_t seed);

/// Sobolev-Gagliardo-Nirenberg surrogate |z|_{r1} / |grad z|_p on mean-zero fields.
EstimateReport check_gagliardo_nirenberg(double p, const std::vector<int>& resolutions,
                                         int ensemble, std::uint64_t seed);

/// Box-size stability of the Biot-Savart ratios for a localized blob:
/// compares L and 2L at fixed spacing; pass when the drift is < 25%.
EstimateReport check_box_independence(double alpha, std::uint64_t seed);

/// Band-limited field identical across resolutions (coefficients keyed by
/// mode index), divergence-projected and mean-zero.
SpectralVectorField fixed_band_field(const GridSpec& grid, int kmax, std::uint64_t seed);

/// Exponential-Euler stepper for the transformed equation:
///   y_{m+1} = e^{dt Lap} (y_m + dt Gamma^{-1}(t_m) M(Gamma(t_m) y_m)).
/// Aborts (throws) when the L2 norm grows by more than 1e6.
std::vector<SpectralVectorField> exponential_euler(const SpectralVectorField& U0,
                                                   const GammaMultiplier* gamma,
                                                   const std::vector<std::size_t>& path_nodes,
                                                   bool nonlinearity_on = true);

/// sup over common path nodes (t>0) of |a-b|_2 / |a|_2.
double sup_relative_l2_gap(const std::vector<SpectralVectorField>& a,
                           const std::vector<std::size_t>& nodes_a,
                           const std::vector<SpectralVectorField>& b,
                           const std::vector<std::size_t>& nodes_b,
                           const TimeGrid& path_grid);

/// Picard vs exponential-Euler cross-validation on a shared Brownian path.
struct OracleComparison {
    std::vector<double> dt;
    std::vector<double> gap; // sup-grid relative L2 vs the Picard solution
    std::vector<double> order; // log2(gap_i / gap_{i+1})
    bool picard_converged = false;
};

struct MomentsScenario {
    SolverConfig cfg;
    std::vector<KernelSpec> kernels;
    std::vector<double> lambdas;
    std::string u0_preset = "taylor_green";
    double u0_norm32 = 0.0;
};

OracleComparison picard_vs_euler(const MomentsScenario& scenario, std::uint64_t seed,
                                 const std::vector<double>& dts, int picard_M);

/// Monte-Carlo moments of the Kato norm, E[znorm^r] for r in r_set.
struct MomentsReport {
    std::vector<double> r;
    std::vector<double> estimate;
    std::vector<double> stderr_;
    std::vector<double> znorm_samples;
    int excluded = 0;
    int smallness_failures = 0;
    int n_paths = 0;
};

MomentsReport moments_mc(const MomentsScenario& scenario, int n_paths,
                         const std::vector<double>& r_set, std::uint64_t seed);

} // namespace vlab
