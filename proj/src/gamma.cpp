#include "vortexlab/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace vlab {

GammaMultiplier::GammaMultiplier(const NoiseModel& noise, const BrownianPaths& paths)
    : noise_(&noise), paths_(&paths) {
    if (noise.channels() != paths.channels())
        throw std::invalid_argument("GammaMultiplier: channel count mismatch");
}

std::vector<double> GammaMultiplier::log_symbol(std::size_t node) const {
    if (node >= grid().nodes()) throw std::out_of_range("GammaMultiplier: node out of range");
    const double t = grid().t[node];
    std::vector<double> w(noise_->grid().size(), 0.0);
    for (int i = 0; i < noise_->channels(); ++i) {
        const auto& ch = noise_->channel(i);
        const double b = paths_->beta[static_cast<std::size_t>(i)][node];
        for (std::size_t s = 0; s < w.size(); ++s) {
            double sym = ch.symbol[s] + ch.lambda; // Btilde_i = B_i + lambda_i I
            w[s] += b * sym - 0.5 * t * sym * sym;
        }
    }
    return w;
}

SpectralVectorField GammaMultiplier::apply(std::size_t node, const SpectralVectorField& f,
                                           bool inverse) const {
    if (f.grid != noise_->grid()) throw std::invalid_argument("GammaMultiplier: grid mismatch");
    auto w = log_symbol(node);
    SpectralVectorField out(f.grid);
    const double sign = inverse ? -1.0 : 1.0;
    for (int c = 0; c < 3; ++c)
        for (std::size_t s = 0; s < w.size(); ++s)
            out.comp[c][s] = std::exp(sign * w[s]) * f.comp[c][s];
    return out;
}

SpectralVectorField GammaMultiplier::apply_ratio(std::size_t node_a, std::size_t node_b,
                                                 const SpectralVectorField& f) const {
    auto wa = log_symbol(node_a);
    auto wb = log_symbol(node_b);
    SpectralVectorField out(f.grid);
    for (int c = 0; c < 3; ++c)
        for (std::size_t s = 0; s < wa.size(); ++s)
            out.comp[c][s] = std::exp(wa[s] - wb[s]) * f.comp[c][s];
    return out;
}

EtaPair GammaMultiplier::eta(std::size_t node) const {
    auto w = log_symbol(node);
    double wmax = -std::numeric_limits<double>::infinity();
    double wmin = std::numeric_limits<double>::infinity();
    for (double v : w) {
        wmax = std::max(wmax, v);
        wmin = std::min(wmin, v);
    }
    EtaPair e;
    // three L^2 multiplier norms: sup|gamma|, sup|gamma|, sup|1/gamma|
    e.log_exact_l2 = 2.0 * wmax - wmin;

    const double t = grid().t[node];
    double log_bound = 0.0;
    for (int i = 0; i < noise_->channels(); ++i) {
        const auto& ch = noise_->channel(i);
        double b = paths_->beta[static_cast<std::size_t>(i)][node];
        log_bound += 3.0 * std::abs(b) * (ch.h_l1 + std::abs(ch.lambda)) - t * ch.alpha;
    }
    e.log_analytic = log_bound;
    e.exact_l2 = std::exp(e.log_exact_l2);
    e.analytic = std::exp(e.log_analytic);
    return e;
}

EtaPair eta_at(const GammaMultiplier& gamma, std::size_t node, double p) {
    if (!(p > 1.5 && p < 2.0)) throw std::domain_error("eta: p must lie in (3/2, 2)");
    return gamma.eta(node);
}

} // namespace vlab
