#include <doctest.h>

#include <cmath>

#include "test_util.hpp"
#include "vortexlab/field_gen.hpp"
#include "vortexlab/norms.hpp"
#include "vortexlab/solver.hpp"
#include "vortexlab/spectral_ops.hpp"
#include "vortexlab/verify.hpp"

using namespace vlab;
using namespace vlab::test;

TEST_CASE("solver config") {
    SolverConfig cfg;
    cfg.p = 1.8;
    cfg.validate();
    CHECK(cfg.q() == doctest::Approx(9.0 / 7.0).epsilon(1e-12));
    CHECK(cfg.r1() == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(cfg.qprime() == doctest::Approx(4.5).epsilon(1e-12));
    SolverConfig bad = cfg;
    bad.p = 2.1;
    CHECK_THROWS_AS(bad.validate(), std::domain_error);

    TimeGrid grid = cfg.make_time_grid();
    CHECK(grid.t.front() == 0.0);
    CHECK(grid.t.back() == doctest::Approx(cfg.T));
    CHECK(grid.t[1] < cfg.T / cfg.M); // graded mesh clusters near 0
}

namespace {

// adaptive Simpson quadrature of the field-valued Duhamel integrand,
// independent of the product-integration path under test
SpectralVectorField integrand(const SpectralVectorField& U0, double s, double t) {
    return heat_semigroup(nonlinearity(heat_semigroup(U0, s)), t - s);
}

SpectralVectorField simpson(const SpectralVectorField& U0, double a, double b, double t) {
    SpectralVectorField fa = integrand(U0, a, t);
    SpectralVectorField fm = integrand(U0, 0.5 * (a + b), t);
    SpectralVectorField fb = integrand(U0, b, t);
    SpectralVectorField s = fa + fb;
    axpby(cplx(1.0), s, cplx(4.0), fm);
    return ((b - a) / 6.0) * s;
}

void adaptive(const SpectralVectorField& U0, double a, double b, double t,
              const SpectralVectorField& whole, double tol, int depth, SpectralVectorField& acc) {
    double m = 0.5 * (a + b);
    SpectralVectorField left = simpson(U0, a, m, t);
    SpectralVectorField right = simpson(U0, m, b, t);
    SpectralVectorField sum = left + right;
    double err = l2_norm_spectral(sum - whole);
    if (depth <= 0 || err < tol) {
        axpby(cplx(1.0), acc, cplx(1.0), sum);
        return;
    }
    adaptive(U0, a, m, t, left, 0.5 * tol, depth - 1, acc);
    adaptive(U0, m, b, t, right, 0.5 * tol, depth - 1, acc);
}

SpectralVectorField duhamel_oracle(const SpectralVectorField& U0, double t, double tol) {
    SpectralVectorField acc(U0.grid);
    adaptive(U0, 0.0, t, t, simpson(U0, 0.0, t, t), tol, 14, acc);
    return acc;
}

} // namespace

TEST_CASE("duhamel integral") {
    GridSpec g(16, 2.0 * M_PI);

    SUBCASE("zero trajectory yields zero at every node") {
        SolverConfig cfg;
        cfg.n = 16;
        TimeGrid grid = cfg.make_time_grid();
        DuhamelWorkspace ws(g, grid.t);
        std::vector<SpectralVectorField> z(grid.nodes(), SpectralVectorField(g));
        std::vector<std::size_t> nodes(grid.nodes());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
        auto F = duhamel_integral(z, nullptr, nodes, ws);
        CHECK(max_abs(F.front()) == 0.0); // empty integral at t = 0
        for (const auto& f : F) CHECK(max_abs(f) == 0.0);
    }

    SUBCASE("heat-flow trajectory against the adaptive quadrature oracle") {
        SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 0.4);
        const double T = 0.5;
        const int M = 256;
        TimeGrid grid = TimeGrid::graded(T, M, 2.0);
        std::vector<SpectralVectorField> z;
        z.reserve(grid.nodes());
        for (double t : grid.t) z.push_back(heat_semigroup(U0, t));
        DuhamelWorkspace ws(g, grid.t);
        std::vector<std::size_t> nodes(grid.nodes());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
        auto F = duhamel_integral(z, nullptr, nodes, ws);

        for (std::size_t m : {grid.nodes() / 2, grid.nodes() - 1}) {
            SpectralVectorField oracle = duhamel_oracle(U0, grid.t[m], 1e-9);
            CHECK(rel_l2_error(F[m], oracle) < 1e-4);
        }
    }

    SUBCASE("quadratic scaling F(cz) = c^2 F(z)") {
        SpectralVectorField U0 = rescale_to_l32(random_band_limited(g, 3), 0.3);
        TimeGrid grid = TimeGrid::graded(0.25, 24, 2.0);
        std::vector<SpectralVectorField> z, cz;
        for (double t : grid.t) {
            z.push_back(heat_semigroup(U0, t));
            cz.push_back(3.0 * z.back());
        }
        DuhamelWorkspace ws(g, grid.t);
        std::vector<std::size_t> nodes(grid.nodes());
        for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i] = i;
        auto F = duhamel_integral(z, nullptr, nodes, ws);
        auto Fc = duhamel_integral(cz, nullptr, nodes, ws);
        CHECK(rel_l2_error(Fc.back(), 9.0 * F.back()) < 1e-12);
    }
}

TEST_CASE("picard fixed point") {
    GridSpec g(16, 2.0 * M_PI);
    SolverConfig cfg;
    cfg.n = 16;
    cfg.M = 24;
    cfg.T = 0.2;
    cfg.max_iter = 15;

    SUBCASE("zero data converges to the zero record in one iteration") {
        PicardOutcome out = picard_solve(SpectralVectorField(g), nullptr, {}, cfg);
        CHECK(out.converged);
        CHECK(out.iterations == 1);
        CHECK(out.record.kato.znorm() == 0.0);
        for (const auto& y : out.record.y) CHECK(max_abs(y) == 0.0);
    }

    SUBCASE("nonlinearity disabled reduces to the exact heat flow in one iteration") {
        SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 0.5);
        PicardOptions opts;
        opts.nonlinearity_enabled = false;
        PicardOutcome out = picard_solve(U0, nullptr, {}, cfg, opts);
        CHECK(out.converged);
        CHECK(out.iterations == 1);
        for (std::size_t m = 0; m < out.record.times.nodes(); ++m)
            CHECK(rel_l2_error(out.record.y[m], heat_semigroup(U0, out.record.times.t[m])) <
                  1e-13);
        CHECK(out.record.residual_rel < 1e-13);
    }

    SUBCASE("deterministic small-data solve: contraction, residual, divergence") {
        SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 0.12);
        PicardOutcome out = picard_solve(U0, nullptr, {}, cfg);
        CHECK(out.converged);
        for (double r : out.record.ratios) CHECK(r < 1.0);
        CHECK(out.record.residual_rel < 1e-5);
        for (const auto& y : out.record.y) CHECK(relative_divergence(y) < 1e-10);
    }

    SUBCASE("oversized data is reported, not silently looped") {
        SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 400.0);
        SolverConfig quick = cfg;
        quick.max_iter = 6;
        PicardOutcome out = picard_solve(U0, nullptr, {}, quick);
        CHECK_FALSE(out.converged);
        CHECK(!out.failure_kind.empty());
        CHECK(!out.diagnosis.empty());
    }
}

TEST_CASE("smallness report") {
    GridSpec g(16, 2.0 * M_PI);
    SolverConfig cfg;
    cfg.n = 16;
    NoiseModel none(g, {}, {});
    TimeGrid grid = TimeGrid::uniform(0.1, 4);
    BrownianPaths paths = sample_paths(1, grid, 0);
    GammaMultiplier gamma(none, paths);
    NoiseDiagnostics diag = compute_diagnostics(gamma); // eta == 1 identically

    SUBCASE("zero data passes everything") {
        SmallnessReport rep = smallness_check(0.0, diag, cfg);
        CHECK(rep.gate_pass);
        for (const auto& row : rep.rows) {
            CHECK(row.pass_exact);
            CHECK(row.pass_analytic);
        }
    }

    SUBCASE("factor-2 margin at half the threshold") {
        SmallnessReport rep = smallness_check(0.5 * cfg.cstar(), diag, cfg);
        CHECK(rep.rows[0].pass_exact);
        CHECK(rep.rows[0].rhs / rep.rows[0].lhs_exact == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("oversized data fails the gate") {
        SmallnessReport rep = smallness_check(10.0 * cfg.cstar(), diag, cfg);
        CHECK_FALSE(rep.gate_pass);
    }
}

TEST_CASE("weak pairings") {
    GridSpec g(16, 2.0 * M_PI);
    SolverConfig cfg;
    cfg.n = 16;
    cfg.M = 24;
    cfg.T = 0.2;
    SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 0.4);
    PicardOptions opts;
    opts.nonlinearity_enabled = false;
    PicardOutcome out = picard_solve(U0, nullptr, {}, cfg, opts);

    SUBCASE("zero test function pairs to zero") {
        auto series = weak_pairing(out.record.y, SpectralVectorField(g));
        for (double v : series) CHECK(v == 0.0);
    }

    SUBCASE("linear case against the diagonal closed form") {
        // phi = single TG-type mode: pairing decays by e^{-|k|^2 t}, |k|^2 = 3
        SpectralVectorField phi = taylor_green_vorticity(g);
        auto series = weak_pairing(out.record.y, phi);
        double base = weak_pairing({U0}, phi)[0];
        for (std::size_t m = 0; m < out.record.times.nodes(); ++m) {
            double expected = std::exp(-3.0 * out.record.times.t[m]) * base;
            CHECK(series[m] == doctest::Approx(expected).epsilon(1e-10));
        }
    }
}

TEST_CASE("weak pairing jumps shrink under time refinement") {
    GridSpec g(16, 2.0 * M_PI);
    NoiseModel model(g, {KernelSpec{}}, {7.0});
    SolverConfig cfg;
    cfg.n = 16;
    cfg.T = 0.2;
    cfg.max_iter = 18;
    SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 0.1);
    SpectralVectorField phi = taylor_green_vorticity(g);

    // one Brownian path sampled on the fine grid; the coarse graded grid is
    // exactly its even-index subset, so both solves see the same omega
    const int M_fine = 48;
    TimeGrid fine = TimeGrid::graded(cfg.T, M_fine, 2.0);
    BrownianPaths paths = sample_paths(31, fine, 1);
    GammaMultiplier gamma(model, paths);

    auto max_jump = [&](int stride) {
        std::vector<std::size_t> nodes;
        for (std::size_t m = 0; m < fine.nodes(); m += static_cast<std::size_t>(stride))
            nodes.push_back(m);
        if (nodes.back() != fine.nodes() - 1) nodes.push_back(fine.nodes() - 1);
        PicardOutcome out = picard_solve(U0, &gamma, nodes, cfg);
        REQUIRE(out.converged);
        auto series = weak_pairing(out.record.y, phi);
        double jump = 0.0;
        for (std::size_t i = 1; i < series.size(); ++i)
            jump = std::max(jump, std::abs(series[i] - series[i - 1]));
        return jump;
    };

    double coarse_jump = max_jump(2);
    double fine_jump = max_jump(1);
    CHECK(coarse_jump / fine_jump >= 1.5);
}

TEST_CASE("velocity diagnostics") {
    GridSpec g(16, 2.0 * M_PI);
    SolverConfig cfg;
    cfg.n = 16;
    cfg.M = 12;
    cfg.T = 0.1;

    SUBCASE("zero run reports skipped ratios") {
        PicardOutcome out = picard_solve(SpectralVectorField(g), nullptr, {}, cfg);
        VelocityDiagnostics d = velocity_diagnostics(out.record, nullptr, cfg);
        CHECK(d.skipped == static_cast<int>(d.t.size()));
    }

    SUBCASE("single-mode pair against a 1D quadrature oracle") {
        // U = (0, sin x, 0), X = (0, 0, cos x): the 3D grid quadrature
        // factorizes into a 1D sum over |sin| (|cos| hits the same point
        // multiset, shifted by a quarter period)
        SpectralVectorField U = single_mode_shear(g);
        SpectralVectorField X = biot_savart(U);
        auto norm_1d = [&](double p, int samples) {
            double acc = 0.0;
            for (int i = 0; i < samples; ++i)
                acc += std::pow(std::abs(std::sin(2.0 * M_PI * i / samples)), p) * (g.L / samples);
            return std::pow(acc * g.L * g.L, 1.0 / p);
        };
        double ratio = lp_norm(X, cfg.r1()) / lp_norm(U, cfg.p);
        double expected_grid = norm_1d(cfg.r1(), g.n) / norm_1d(cfg.p, g.n);
        CHECK(ratio == doctest::Approx(expected_grid).epsilon(1e-12));
        // and the grid quadrature sits close to the continuum value
        double expected_cont = norm_1d(cfg.r1(), 200000) / norm_1d(cfg.p, 200000);
        CHECK(ratio == doctest::Approx(expected_cont).epsilon(2e-3));
    }

    SUBCASE("ratios stable under resolution doubling on a fixed band field") {
        double prev = 0.0;
        for (int n : {16, 32}) {
            GridSpec gg(n, 2.0 * M_PI);
            SpectralVectorField U = fixed_band_field(gg, 5, 7);
            double ratio = lp_norm(biot_savart(U), cfg.r1()) / lp_norm(U, cfg.p);
            if (prev > 0.0) CHECK(std::abs(ratio - prev) / prev < 0.10);
            prev = ratio;
        }
    }
}

TEST_CASE("divergence-free propagation through a noisy solve") {
    GridSpec g(16, 2.0 * M_PI);
    NoiseModel model(g, {KernelSpec{}}, {7.0});
    SolverConfig cfg;
    cfg.n = 16;
    cfg.M = 16;
    cfg.T = 0.15;
    cfg.max_iter = 18;
    TimeGrid grid = cfg.make_time_grid();
    BrownianPaths paths = sample_paths(3, grid, 1);
    GammaMultiplier gamma(model, paths);
    SpectralVectorField U0 = rescale_to_l32(taylor_green_vorticity(g), 0.08);
    PicardOutcome out = picard_solve(U0, gamma, cfg);
    REQUIRE(out.converged);
    for (std::size_t m = 0; m < out.record.times.nodes(); ++m) {
        CHECK(relative_divergence(out.record.y[m]) < 1e-10);
        CHECK(relative_divergence(vorticity_at(out.record, &gamma, m)) < 1e-10);
        CHECK(relative_divergence(velocity_at(out.record, &gamma, m)) < 1e-10);
    }
}
