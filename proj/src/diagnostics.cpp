#include "vortexlab/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "vortexlab/rng.hpp"

namespace vlab {

NoiseDiagnostics compute_diagnostics(const GammaMultiplier& gamma) {
    NoiseDiagnostics d;
    const auto& grid = gamma.grid();
    d.t = grid.t;
    d.eta.reserve(grid.nodes());
    for (std::size_t m = 0; m < grid.nodes(); ++m) d.eta.push_back(gamma.eta(m));
    const auto& model = gamma.noise();
    for (int i = 0; i < model.channels(); ++i) d.alpha.push_back(model.channel(i).alpha);
    d.gamma_constant = model.channels() > 0 ? model.gamma_constant() : 0.0;

    d.log_eta_inf_exact = d.log_eta_inf_analytic = 0.0;
    for (const auto& e : d.eta) {
        d.log_eta_inf_exact = std::max(d.log_eta_inf_exact, e.log_exact_l2);
        d.log_eta_inf_analytic = std::max(d.log_eta_inf_analytic, e.log_analytic);
    }
    d.eta_inf_exact = std::exp(d.log_eta_inf_exact);
    d.eta_inf_analytic = std::exp(d.log_eta_inf_analytic);
    return d;
}

double tail_probability_bound(double r, const NoiseModel& model) {
    if (!(r > 1.0)) throw std::domain_error("tail_probability_bound: r must exceed 1");
    double alpha = model.min_alpha();
    if (!(alpha > 0.0))
        throw std::domain_error("tail_probability_bound: needs admissible model (min alpha > 0)");
    double g = model.gamma_constant();
    double N = model.channels();
    return 2.0 * N * std::pow(r, -N * alpha / (g * g));
}

HittingLawResult hitting_law_mc(double nu, double r, double t_max, double dt, int n_paths,
                                std::uint64_t seed) {
    if (!(nu > 0.0)) throw std::domain_error("hitting_law_mc: nu must be > 0");
    if (!(r > 1.0)) throw std::domain_error("hitting_law_mc: r must exceed 1");
    if (!(dt > 0.0) || !(t_max > 0.0) || n_paths < 1)
        throw std::invalid_argument("hitting_law_mc: bad sampling parameters");

    const double level = std::log(r); // hit when beta(t) - nu t >= log r
    const long steps = static_cast<long>(std::ceil(t_max / dt));
    const double sdt = std::sqrt(dt);
    long hits = 0;
    for (int p = 0; p < n_paths; ++p) {
        NormalSampler normal(derive_seed(seed, static_cast<std::uint64_t>(p)));
        SplitMix64 bridge(derive_seed(seed, 0x42000000ULL + static_cast<std::uint64_t>(p)));
        double x = 0.0; // beta - nu t
        bool hit = false;
        for (long s = 1; s <= steps && !hit; ++s) {
            double x_next = x + sdt * normal() - nu * dt;
            if (x_next >= level) {
                hit = true;
                break;
            }
            // Brownian-bridge crossing within the step (drift drops out of the
            // bridge law); kills most of the discrete-monitoring bias
            double pc = std::exp(-2.0 * (level - x) * (level - x_next) / dt);
            if (bridge.uniform() < pc) hit = true;
            x = x_next;
        }
        if (hit) ++hits;
    }
    HittingLawResult res;
    res.n_paths = n_paths;
    res.estimate = static_cast<double>(hits) / n_paths;
    res.stderr_ = std::sqrt(std::max(res.estimate * (1.0 - res.estimate), 1e-300) / n_paths);
    res.exact = std::pow(r, -2.0 * nu);
    return res;
}

} // namespace vlab
