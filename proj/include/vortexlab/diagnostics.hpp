#pragma once

#include <cstdint>
#include <vector>

#include "vortexlab/gamma.hpp"

namespace vlab {

/// Per-path noise diagnostics: eta(t) under both evaluations plus the
/// channel constants entering the tail bound.
struct NoiseDiagnostics {
    std::vector<double> t;
    std::vector<EtaPair> eta;
    std::vector<double> alpha;     // per channel
    double gamma_constant = 0.0;   // 3 max (|h_i|_1 + |lambda_i|)
    double eta_inf_exact = 1.0;    // sup over grid of the L^2 surrogate
    double eta_inf_analytic = 1.0; // sup over grid of the analytic bound
    double log_eta_inf_exact = 0.0;
    double log_eta_inf_analytic = 0.0;
};

NoiseDiagnostics compute_diagnostics(const GammaMultiplier& gamma);

/// P(Omega_r^c) <= 2N r^{-N alpha / gamma^2}, alpha = min alpha_i.
double tail_probability_bound(double r, const NoiseModel& model);

struct HittingLawResult {
    double estimate = 0.0;
    double stderr_ = 0.0;
    double exact = 0.0; // r^{-2 nu}
    int n_paths = 0;
};

/// Monte-Carlo estimate of P[sup_t exp(beta(t) - nu t) >= r] on [0, t_max].
/// Per-step Brownian-bridge crossing sampling removes the bulk of the
/// discrete-monitoring bias; the horizon truncation still underestimates,
/// so the estimate converges to r^{-2 nu} from below as t_max grows.
HittingLawResult hitting_law_mc(double nu, double r, double t_max, double dt, int n_paths,
                                std::uint64_t seed);

} // namespace vlab
