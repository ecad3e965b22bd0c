import math

import numpy as np
import pytest

vl = pytest.importorskip("vortexlab")


@pytest.fixture
def grid():
    return vl.GridSpec(16, 2.0 * math.pi)


def coords(grid):
    x = np.arange(grid.n) * grid.L / grid.n
    return np.meshgrid(x, x, x, indexing="ij")


def test_transform_roundtrip(grid):
    rng = np.random.default_rng(7)
    f = rng.standard_normal((3, grid.n, grid.n, grid.n))
    back = vl.to_physical(grid, vl.to_spectral(grid, f))
    assert np.max(np.abs(back - f)) < 1e-12 * np.max(np.abs(f))


def test_lp_norm_constant(grid):
    f = np.zeros((3, grid.n, grid.n, grid.n))
    f[0] = 2.0
    assert vl.lp_norm(grid, f, 2.0) == pytest.approx(2.0 * grid.L ** 1.5, rel=1e-12)
    assert vl.lp_norm(grid, f, math.inf) == pytest.approx(2.0, rel=1e-12)


def test_biot_savart_single_mode(grid):
    x1, _, _ = coords(grid)
    u = np.zeros((3, grid.n, grid.n, grid.n))
    u[1] = np.sin(x1)
    X = vl.to_physical(grid, vl.biot_savart(grid, vl.to_spectral(grid, u)))
    assert np.max(np.abs(X[2] - np.cos(x1))) < 1e-12
    assert np.max(np.abs(X[0])) < 1e-12


def test_curl_inverts_biot_savart(grid):
    U = vl.random_band_limited(grid, seed=3, kmax=5)
    back = vl.curl(grid, vl.biot_savart(grid, U))
    assert np.max(np.abs(back - U)) < 1e-12 * np.max(np.abs(U))
    assert vl.relative_divergence(grid, vl.biot_savart(grid, U)) < 1e-13


def test_heat_semigroup_decay(grid):
    x1, _, _ = coords(grid)
    f = np.zeros((3, grid.n, grid.n, grid.n))
    f[1] = np.sin(x1)
    out = vl.to_physical(grid, vl.heat_semigroup(grid, vl.to_spectral(grid, f), 1.0))
    assert np.max(np.abs(out[1] - math.exp(-1.0) * np.sin(x1))) < 1e-13


def test_gamma_scalar_example(grid):
    model = vl.NoiseModel(grid, ["gaussian{eps=0.25,mass=0}"], [7.0])
    tg = vl.TimeGrid.uniform(0.01, 1)
    paths = vl.sample_paths(1, tg, 1)
    gamma = vl.GammaMultiplier(model, paths)
    eta0 = gamma.eta(0)
    assert eta0.exact_l2 == 1.0 and eta0.analytic == 1.0


def test_noise_model_constants(grid):
    model = vl.NoiseModel(grid, ["gaussian{eps=0.25,mass=1}"], [7.0])
    assert model.h_l1(0) == pytest.approx(1.0, rel=1e-12)
    assert model.alpha(0) == pytest.approx(2.0, rel=1e-12)
    assert model.admissible(0)
    assert model.gamma_constant() == pytest.approx(24.0, rel=1e-12)
    assert vl.tail_probability_bound(2.0, model) == pytest.approx(
        2.0 * 2.0 ** (-1.0 / 288.0), rel=1e-12
    )


def test_beta_constants():
    c = vl.beta_constants(1.8)
    assert c.finite1 and c.finite2
    assert c.value1 == pytest.approx(6.677476047133833, rel=1e-10)
    assert c.value2 == pytest.approx(11.565727779959978, rel=1e-10)
    edge = vl.beta_constants(1.5)
    assert not edge.finite2


def test_small_solve(grid):
    cfg = vl.SolverConfig()
    cfg.n = grid.n
    cfg.T = 0.128
    cfg.M = 16
    cfg.max_iter = 16
    u0 = vl.u0_preset("taylor_green", grid, 0.08)
    model = vl.NoiseModel(grid, ["gaussian{eps=0.25,mass=1}"], [7.0])
    tg = vl.TimeGrid.graded(cfg.T, cfg.M, cfg.grid_gamma)
    paths = vl.sample_paths(11, tg, 1)
    gamma = vl.GammaMultiplier(model, paths)
    out = vl.picard_solve(grid, u0, gamma, cfg)
    assert out.converged
    assert all(r < 1.0 for r in out.ratios)
    assert out.residual < 1e-5
    assert out.kato.znorm() > 0.0


def test_hitting_law_quick():
    res = vl.hitting_law_mc(nu=1.0, r=2.0, t_max=40.0, dt=1e-2, n_paths=1500, seed=5)
    assert abs(res.estimate - 0.25) < 0.05
