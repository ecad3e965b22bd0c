#pragma once

#include <vector>

#include "vortexlab/brownian.hpp"
#include "vortexlab/field.hpp"
#include "vortexlab/noise.hpp"

namespace vlab {

/// eta(t) under the two evaluations kept side by side: the exact L^2
/// multiplier-norm surrogate and the analytic per-channel bound
/// prod_i exp(3|beta_i|(|h_i|_1+|lambda_i|) - t alpha_i). Log values are
/// authoritative; the plain values may overflow for large horizons.
struct EtaPair {
    double log_exact_l2 = 0.0;
    double log_analytic = 0.0;
    double exact_l2 = 1.0;
    double analytic = 1.0;
};

/// Pathwise transform Gamma(t) = prod_i exp(beta_i(t) Btilde_i - t/2 Btilde_i^2)
/// as a per-wavenumber multiplier, evaluated only at path-grid nodes.
/// With real even kernels the symbol is real and positive, so Gamma
/// preserves real fields and Gamma^{-1} is the reciprocal multiplier.
class GammaMultiplier {
  public:
    GammaMultiplier(const NoiseModel& noise, const BrownianPaths& paths);
    // views, not owners: temporaries would dangle
    GammaMultiplier(const NoiseModel&, BrownianPaths&&) = delete;
    GammaMultiplier(NoiseModel&&, const BrownianPaths&) = delete;
    GammaMultiplier(NoiseModel&&, BrownianPaths&&) = delete;

    const NoiseModel& noise() const { return *noise_; }
    const BrownianPaths& paths() const { return *paths_; }
    const TimeGrid& grid() const { return paths_->grid; }

    /// log gamma(t_node, k) for every k (flat layout).
    std::vector<double> log_symbol(std::size_t node) const;

    /// Pointwise multiply by gamma(t_node, .) or its reciprocal.
    SpectralVectorField apply(std::size_t node, const SpectralVectorField& f,
                              bool inverse = false) const;

    /// Multiply by gamma(t_a,.)/gamma(t_b,.), the propagator Gamma(a)Gamma^{-1}(b).
    SpectralVectorField apply_ratio(std::size_t node_a, std::size_t node_b,
                                    const SpectralVectorField& f) const;

    EtaPair eta(std::size_t node) const;

  private:
    const NoiseModel* noise_;
    const BrownianPaths* paths_;
};

/// eta with the exponent-range precondition of the solver (p in (3/2,2)).
EtaPair eta_at(const GammaMultiplier& gamma, std::size_t node, double p);

} // namespace vlab
