#include "vortexlab/solver.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "vortexlab/norms.hpp"
#include "vortexlab/spectral_ops.hpp"

namespace vlab {

void SolverConfig::validate() const {
    if (!(p > 1.5 && p < 2.0)) throw std::domain_error("SolverConfig: p must lie in (3/2, 2)");
    if (!(T > 0.0)) throw std::domain_error("SolverConfig: T must be positive");
    if (M < 2) throw std::domain_error("SolverConfig: need at least 2 time nodes");
    if (!(tol > 0.0)) throw std::domain_error("SolverConfig: tol must be positive");
    if (max_iter < 1) throw std::domain_error("SolverConfig: max_iter must be >= 1");
    // derived exponents stay consistent with their defining identities
    if (std::abs(1.0 / q() - (2.0 / p - 1.0 / 3.0)) > 1e-12 ||
        std::abs(r1() * (3.0 - p) - 3.0 * p) > 1e-9 ||
        std::abs(qprime() * (4.0 * p - 6.0) - 3.0 * p) > 1e-9)
        throw std::logic_error("SolverConfig: derived exponent inconsistency");
}

namespace {

// weights of int_0^dt e^{-kappa (dt-u)} * linear(u) du with x = kappa dt:
//   w_right/dt = (x - 1 + e^{-x})/x^2,  w_left/dt = (1 - e^{-x}(1+x))/x^2
double w_right_over_dt(double x) {
    if (x < 0.1) {
        double s = 0.0, term = 0.5; // sum (-x)^j / (j+2)!
        for (int j = 0; j < 8; ++j) {
            s += term;
            term *= -x / (j + 3);
        }
        return s;
    }
    return (x - 1.0 + std::exp(-x)) / (x * x);
}

double w_left_over_dt(double x) {
    if (x < 0.1) {
        // sum_{k>=2} (k-1)/k! (-1)^k x^{k-2}
        double s = 0.0, pw = 1.0, fact = 2.0;
        for (int k = 2; k < 11; ++k) {
            s += (k - 1) / fact * pw;
            pw *= -x;
            fact *= (k + 1);
        }
        return s;
    }
    return (1.0 - std::exp(-x) * (1.0 + x)) / (x * x);
}

std::vector<double> ksq_array(const GridSpec& g) {
    std::vector<double> ksq(g.size());
    std::size_t idx = 0;
    for (int ix = 0; ix < g.n; ++ix) {
        double kx = g.wavenumber(ix);
        for (int iy = 0; iy < g.n; ++iy) {
            double ky = g.wavenumber(iy);
            for (int iz = 0; iz < g.n; ++iz, ++idx) {
                double kz = g.wavenumber(iz);
                ksq[idx] = kx * kx + ky * ky + kz * kz;
            }
        }
    }
    return ksq;
}

void multiply_inplace(SpectralVectorField& f, const std::vector<double>& m) {
    for (int c = 0; c < 3; ++c)
        for (std::size_t s = 0; s < m.size(); ++s) f.comp[c][s] *= m[s];
}

void accumulate_weighted(SpectralVectorField& acc, const std::vector<double>& w,
                         const SpectralVectorField& f) {
    for (int c = 0; c < 3; ++c)
        for (std::size_t s = 0; s < w.size(); ++s) acc.comp[c][s] += w[s] * f.comp[c][s];
}

} // namespace

DuhamelWorkspace::DuhamelWorkspace(const GridSpec& g, const std::vector<double>& nodes)
    : grid(g), t(nodes), ksq(ksq_array(g)) {
    if (t.size() < 2) throw std::invalid_argument("DuhamelWorkspace: need at least 2 nodes");
    for (std::size_t j = 1; j < t.size(); ++j)
        if (!(t[j] > t[j - 1]))
            throw std::invalid_argument("DuhamelWorkspace: nodes must increase");
}

void DuhamelWorkspace::cell_weights(std::size_t j, std::vector<double>& heat,
                                    std::vector<double>& wl, std::vector<double>& wr) const {
    double dt = t[j + 1] - t[j];
    heat.resize(ksq.size());
    wl.resize(ksq.size());
    wr.resize(ksq.size());
    for (std::size_t s = 0; s < ksq.size(); ++s) {
        double x = ksq[s] * dt;
        heat[s] = std::exp(-x);
        wl[s] = dt * w_left_over_dt(x);
        wr[s] = dt * w_right_over_dt(x);
    }
}

namespace {

SpectralVectorField integrand_at(const SpectralVectorField& z_m, const GammaMultiplier* gamma,
                                 std::size_t path_node, bool nonlinearity_on) {
    if (!nonlinearity_on) return SpectralVectorField(z_m.grid);
    if (!gamma || gamma->noise().channels() == 0) return nonlinearity(z_m);
    SpectralVectorField u = gamma->apply(path_node, z_m, false);
    return gamma->apply(path_node, nonlinearity(u), true);
}

} // namespace

std::vector<SpectralVectorField> duhamel_integral(const std::vector<SpectralVectorField>& z,
                                                  const GammaMultiplier* gamma,
                                                  const std::vector<std::size_t>& path_nodes,
                                                  const DuhamelWorkspace& ws,
                                                  bool nonlinearity_on) {
    if (z.size() != ws.t.size() || path_nodes.size() != ws.t.size())
        throw std::invalid_argument("duhamel_integral: size mismatch");
    std::vector<SpectralVectorField> F;
    F.reserve(z.size());
    F.emplace_back(ws.grid); // empty integral at t = 0
    SpectralVectorField acc(ws.grid);
    SpectralVectorField phi_prev = integrand_at(z[0], gamma, path_nodes[0], nonlinearity_on);
    std::vector<double> heat, wl, wr;
    for (std::size_t m = 1; m < z.size(); ++m) {
        SpectralVectorField phi_cur = integrand_at(z[m], gamma, path_nodes[m], nonlinearity_on);
        ws.cell_weights(m - 1, heat, wl, wr);
        multiply_inplace(acc, heat);
        accumulate_weighted(acc, wl, phi_prev);
        accumulate_weighted(acc, wr, phi_cur);
        F.push_back(acc);
        phi_prev = std::move(phi_cur);
    }
    return F;
}

namespace {

// w0 + max_i wi at one node: the per-node contribution to the Kato norm
double kato_node_value(const SpectralVectorField& f, double t, double p) {
    if (t <= 0.0) return 0.0;
    double wg = 0.0;
    for (int i = 0; i < 3; ++i) wg = std::max(wg, lp_norm(partial_derivative(f, i), p));
    return kato_weight0(p, t) * lp_norm(f, p) + kato_weight_grad(p, t) * wg;
}

struct BlowUpError : std::runtime_error {
    BlowUpError() : std::runtime_error("Picard iterate left the finite range") {}
};

struct SweepResult {
    double delta = 0.0;      // Kato distance between the new and old iterate
    double old_znorm = 0.0;  // Kato norm of the old iterate
};

// one in-place Picard sweep: y <- e^{t Lap} U0 + F(y)
SweepResult picard_sweep(std::vector<SpectralVectorField>& y, const SpectralVectorField& U0,
                         const GammaMultiplier* gamma,
                         const std::vector<std::size_t>& path_nodes, const DuhamelWorkspace& ws,
                         bool nonlin, double p) {
    SweepResult out;
    SpectralVectorField affine = U0;
    SpectralVectorField acc(ws.grid);
    SpectralVectorField phi_prev = integrand_at(y[0], gamma, path_nodes[0], nonlin);
    std::vector<double> heat, wl, wr;
    for (std::size_t m = 1; m < y.size(); ++m) {
        if (!y[m].finite()) throw BlowUpError();
        SpectralVectorField phi_cur = integrand_at(y[m], gamma, path_nodes[m], nonlin);
        ws.cell_weights(m - 1, heat, wl, wr);
        multiply_inplace(acc, heat);
        accumulate_weighted(acc, wl, phi_prev);
        accumulate_weighted(acc, wr, phi_cur);
        multiply_inplace(affine, heat);
        SpectralVectorField y_new = affine + acc;
        out.old_znorm = std::max(out.old_znorm, kato_node_value(y[m], ws.t[m], p));
        out.delta = std::max(out.delta, kato_node_value(y_new - y[m], ws.t[m], p));
        y[m] = std::move(y_new);
        phi_prev = std::move(phi_cur);
    }
    return out;
}

double residual_relative(const std::vector<SpectralVectorField>& y, const GammaMultiplier* gamma,
                         const std::vector<std::size_t>& path_nodes, const DuhamelWorkspace& ws,
                         bool nonlin) {
    // residual of the transformed vorticity equation:
    // R(t) = U(t) - e^{t Lap} Gamma(t) U0 - int_0^t e^{(t-s)Lap} Gamma(t) Gamma^{-1}(s) M(U(s)) ds
    auto U_at = [&](std::size_t m) {
        return gamma ? gamma->apply(path_nodes[m], y[m], false) : y[m];
    };
    auto chi_at = [&](std::size_t m) { // Gamma^{-1}(s) M(U(s))
        if (!nonlin) return SpectralVectorField(ws.grid);
        SpectralVectorField mu = nonlinearity(U_at(m));
        return gamma ? gamma->apply(path_nodes[m], mu, true) : mu;
    };

    double worst_res = 0.0, worst_mag = 0.0;
    SpectralVectorField acc(ws.grid);
    SpectralVectorField affine = y[0];
    SpectralVectorField chi_prev = chi_at(0);
    std::vector<double> heat, wl, wr;
    for (std::size_t m = 1; m < y.size(); ++m) {
        SpectralVectorField chi_cur = chi_at(m);
        ws.cell_weights(m - 1, heat, wl, wr);
        multiply_inplace(acc, heat);
        accumulate_weighted(acc, wl, chi_prev);
        accumulate_weighted(acc, wr, chi_cur);
        multiply_inplace(affine, heat);
        SpectralVectorField Um = U_at(m);
        SpectralVectorField rhs = affine + acc; // still to be hit by Gamma(t_m)
        SpectralVectorField R =
            gamma ? (Um - gamma->apply(path_nodes[m], rhs, false)) : (Um - rhs);
        worst_res = std::max(worst_res, l2_norm_spectral(R));
        worst_mag = std::max(worst_mag, l2_norm_spectral(Um));
        chi_prev = std::move(chi_cur);
    }
    return worst_mag > 0.0 ? worst_res / worst_mag : worst_res;
}

} // namespace

PicardOutcome picard_solve(const SpectralVectorField& U0, const GammaMultiplier* gamma,
                           const std::vector<std::size_t>& path_nodes, const SolverConfig& cfg,
                           const PicardOptions& opts) {
    cfg.validate();
    if (gamma && path_nodes.empty())
        throw std::invalid_argument("picard_solve: path_nodes required with a Gamma transform");

    std::vector<double> node_times;
    std::vector<std::size_t> nodes = path_nodes;
    if (gamma) {
        node_times.reserve(nodes.size());
        for (std::size_t i : nodes) node_times.push_back(gamma->grid().t[i]);
    } else {
        TimeGrid tg = cfg.make_time_grid();
        node_times = tg.t;
        nodes.resize(node_times.size());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    }
    TimeGrid solver_grid(node_times);

    const bool nonlin = opts.nonlinearity_enabled && cfg.nonlinearity_enabled;
    DuhamelWorkspace ws(U0.grid, node_times);

    // first Picard iterate: the affine part e^{t Lap} U0
    std::vector<SpectralVectorField> y;
    y.reserve(node_times.size());
    y.push_back(U0);
    {
        SpectralVectorField affine = U0;
        std::vector<double> heat, wl, wr;
        for (std::size_t m = 1; m < node_times.size(); ++m) {
            ws.cell_weights(m - 1, heat, wl, wr);
            multiply_inplace(affine, heat);
            y.push_back(affine);
        }
    }

    PicardOutcome out;
    out.record.grid = U0.grid;
    out.record.times = solver_grid;
    out.record.path_nodes = nodes;

    bool converged = false;
    bool blew_up = false;
    int iter = 0;
    for (iter = 1; iter <= cfg.max_iter; ++iter) {
        SweepResult sweep;
        try {
            sweep = picard_sweep(y, U0, gamma, nodes, ws, nonlin, cfg.p);
        } catch (const BlowUpError&) {
            blew_up = true;
            break;
        }
        if (!std::isfinite(sweep.delta)) {
            blew_up = true;
            break;
        }
        out.record.deltas.push_back(sweep.delta);
        if (out.record.deltas.size() >= 2) {
            double prev = out.record.deltas[out.record.deltas.size() - 2];
            out.record.ratios.push_back(prev > 0.0 ? sweep.delta / prev : 0.0);
        }
        out.record.iterate_znorms.push_back(sweep.old_znorm);
        if (sweep.delta <= cfg.tol * sweep.old_znorm ||
            (sweep.old_znorm == 0.0 && sweep.delta == 0.0)) {
            converged = true;
            break;
        }
    }

    out.converged = converged;
    out.iterations = std::min(iter, cfg.max_iter);
    out.record.y = std::move(y);
    if (!blew_up) {
        out.record.kato = kato_trajectory(out.record.y, solver_grid, cfg.p);
        if (opts.compute_residual)
            out.record.residual_rel = residual_relative(out.record.y, gamma, nodes, ws, nonlin);
    } else {
        out.record.residual_rel = std::nan("");
    }

    if (!converged) {
        // distinguish "data too large" from "quadrature too coarse" by a
        // resolution-doubling probe: a coarse quadrature shows improved
        // contraction on a doubled mesh, oversized data keeps ratios >= 1.
        out.failure_kind = "too_large_data";
        std::ostringstream os;
        if (blew_up) os << "iterate blew up after " << out.record.deltas.size() << " steps; ";
        os << "no convergence in " << cfg.max_iter << " iterations; deltas:";
        for (double d : out.record.deltas) os << ' ' << d;
        if (opts.refinement_probe_on_failure && !gamma) {
            SolverConfig probe_cfg = cfg;
            probe_cfg.M = cfg.M * 2;
            probe_cfg.max_iter = std::min(cfg.max_iter, 4);
            PicardOptions probe_opts = opts;
            probe_opts.refinement_probe_on_failure = false;
            probe_opts.compute_residual = false;
            auto probe = picard_solve(U0, nullptr, {}, probe_cfg, probe_opts);
            double orig_ratio = out.record.ratios.empty() ? 1e30 : out.record.ratios.front();
            double probe_ratio = probe.record.ratios.empty() ? 1e30 : probe.record.ratios.front();
            if (probe_ratio < 0.8 * orig_ratio) out.failure_kind = "quadrature_too_coarse";
            os << "; refinement probe ratio " << probe_ratio << " vs " << orig_ratio;
        }
        out.diagnosis = os.str();
    }
    return out;
}

PicardOutcome picard_solve(const SpectralVectorField& U0, const GammaMultiplier& gamma,
                           const SolverConfig& cfg, const PicardOptions& opts) {
    std::vector<std::size_t> nodes(gamma.grid().nodes());
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
    return picard_solve(U0, &gamma, nodes, cfg, opts);
}

SpectralVectorField vorticity_at(const SolutionRecord& rec, const GammaMultiplier* gamma,
                                 std::size_t node) {
    if (node >= rec.y.size()) throw std::out_of_range("vorticity_at: node out of range");
    return gamma ? gamma->apply(rec.path_nodes[node], rec.y[node], false) : rec.y[node];
}

SpectralVectorField velocity_at(const SolutionRecord& rec, const GammaMultiplier* gamma,
                                std::size_t node) {
    return biot_savart(vorticity_at(rec, gamma, node));
}

SmallnessReport smallness_check(double u0_norm32, const NoiseDiagnostics& diag,
                                const SolverConfig& cfg) {
    SmallnessReport rep;
    rep.u0_norm32 = u0_norm32;
    rep.eta_inf_exact = diag.eta_inf_exact;
    rep.eta_inf_analytic = diag.eta_inf_analytic;
    rep.C1 = cfg.c1();
    rep.C2 = cfg.c2();
    rep.Cstar = cfg.cstar();
    rep.betas = beta_constants(cfg.p);

    auto add = [&](const std::string& name, double factor, double rhs, bool strict) {
        SmallnessRow row;
        row.name = name;
        row.lhs_exact = factor * diag.eta_inf_exact * u0_norm32;
        row.lhs_analytic = factor * diag.eta_inf_analytic * u0_norm32;
        row.rhs = rhs;
        row.pass_exact = strict ? row.lhs_exact < rhs : row.lhs_exact <= rhs;
        row.pass_analytic = strict ? row.lhs_analytic < rhs : row.lhs_analytic <= rhs;
        rep.rows.push_back(row);
    };
    add("eta_inf*|U0|_3/2 <= C*", 1.0, rep.Cstar, false);
    add("eta_inf*|U0|_3/2 <= 1/(4 C1^2)", 1.0, 1.0 / (4.0 * rep.C1 * rep.C1), false);
    add("2 C1 C2 eta_inf*|U0|_3/2 < 1", 2.0 * rep.C1 * rep.C2, 1.0, true);

    rep.gate_pass = rep.rows[0].pass_exact; // runtime gate: L^2 surrogate
    return rep;
}

std::vector<double> weak_pairing(const std::vector<SpectralVectorField>& y,
                                 const SpectralVectorField& phi) {
    std::vector<double> out;
    out.reserve(y.size());
    double vol = phi.grid.L * phi.grid.L * phi.grid.L;
    for (const auto& f : y) {
        if (f.grid != phi.grid) throw std::invalid_argument("weak_pairing: grid mismatch");
        double acc = 0.0;
        for (int c = 0; c < 3; ++c)
            for (std::size_t s = 0; s < f.comp[c].size(); ++s)
                acc += (f.comp[c][s] * std::conj(phi.comp[c][s])).real();
        out.push_back(vol * acc);
    }
    return out;
}

VelocityDiagnostics velocity_diagnostics(const SolutionRecord& rec, const GammaMultiplier* gamma,
                                         const SolverConfig& cfg) {
    VelocityDiagnostics d;
    const double nan = std::nan("");
    for (std::size_t m = 0; m < rec.y.size(); ++m) {
        double t = rec.times.t[m];
        d.t.push_back(t);
        SpectralVectorField U = vorticity_at(rec, gamma, m);
        SpectralVectorField X = biot_savart(U);
        double up = lp_norm(U, cfg.p);
        double xr1 = lp_norm(X, cfg.r1());
        double dxp = 0.0, dup = 0.0, d2xp = 0.0;
        for (int i = 0; i < 3; ++i) {
            SpectralVectorField dX = partial_derivative(X, i);
            dxp = std::max(dxp, lp_norm(dX, cfg.p));
            dup = std::max(dup, lp_norm(partial_derivative(U, i), cfg.p));
            for (int j = i; j < 3; ++j)
                d2xp = std::max(d2xp, lp_norm(partial_derivative(dX, j), cfg.p));
        }
        if (up > 0.0) {
            d.ratio_x.push_back(xr1 / up);
            d.ratio_dx.push_back(dxp / up);
            d.ratio_d2x.push_back(dup > 0.0 ? d2xp / dup : nan);
        } else {
            ++d.skipped;
            d.ratio_x.push_back(nan);
            d.ratio_dx.push_back(nan);
            d.ratio_d2x.push_back(nan);
        }
        d.wx.push_back(t > 0.0 ? kato_weight0(cfg.p, t) * xr1 : 0.0);
        d.wdx.push_back(t > 0.0 ? kato_weight_grad(cfg.p, t) * dxp : 0.0);
    }
    return d;
}

} // namespace vlab
