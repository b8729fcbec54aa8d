import math

import numpy as np
import pytest

from braidspectra.lyapunov import (
    StepMeasure,
    ZeroPoint,
    annulus_fraction,
    chi,
    equidistribution_compare,
    laplacian_density,
    log_norms,
    lyapunov_estimate,
    lyapunov_grid,
    lyapunov_many,
    omega_family_mass,
    omega_family_profile,
    sample_root_batch,
    symmetry_check,
    walk_steps,
)
from braidspectra.spectral import GridField


def test_step_measure_round_trip():
    mu = StepMeasure.parse([("a", "1/3"), ("bab", "1/2"), ("bb", "1/6")])
    assert StepMeasure.parse(mu.to_spec()) == mu
    assert mu.mean_length == pytest.approx(1 / 3 + 3 / 2 + 2 / 6)
    with pytest.raises(ValueError):
        StepMeasure.parse([("a", "1/2"), ("b", "1/3")])
    with pytest.raises(ValueError):
        StepMeasure.parse([("aB", "1")])


def test_zero_point():
    with pytest.raises(ZeroPoint):
        lyapunov_estimate(0)
    lam, se = lyapunov_many([0, 0.5], n_walks=20, walk_length=20)
    assert lam[0] == -np.inf and se[0] == 0
    assert np.isfinite(lam[1])


def test_chi_examples():
    assert chi(0.5, -0.5) == 0.0
    assert chi(2.0, 0.1) == pytest.approx(math.log(2))
    assert chi(-2.0, 0.1) == pytest.approx(math.log(2))
    t = np.exp(0.4j)
    lam = lyapunov_estimate(t, n_walks=200, walk_length=100).lambda_hat
    assert chi(t, lam) == pytest.approx(0.0, abs=0.02)


def test_lambda_zero_on_AR():
    # near θ = π/3 the walk mixes slowly; length 100 still shows the transient
    for theta in (0.3, 1.0, 1.9):
        est = lyapunov_estimate(np.exp(1j * theta), n_walks=1000, walk_length=1000, seed=3)
        assert abs(est.lambda_hat) < 3 * est.stderr + 1e-12


def test_lambda_positive_on_AL():
    for theta in (2.3, 2.7, math.pi):
        est = lyapunov_estimate(np.exp(1j * theta), n_walks=1000, walk_length=100, seed=4)
        assert est.lambda_hat > 3 * est.stderr


def test_symmetry_random_points():
    rng = np.random.default_rng(5)
    for _ in range(6):
        r = rng.uniform(0.3, 0.9)
        t = r * np.exp(1j * rng.uniform(-math.pi, math.pi))
        s = symmetry_check(t, n_walks=500, walk_length=100, seed=6)
        assert s.expected == pytest.approx(-math.log(r))
        assert s.z_score < 3


def test_half_log_lower_bound():
    rng = np.random.default_rng(8)
    ts = rng.uniform(-2, 2, 60) + 1j * rng.uniform(-2, 2, 60)
    lam, se = lyapunov_many(ts, n_walks=300, walk_length=100, seed=9)
    assert np.all(lam >= 0.5 * np.log(np.abs(ts)) - 3 * se)


def test_doubling_walk_length_is_stable():
    ts = [0.5 + 0.5j, -0.7 + 0.1j, np.exp(2.5j), 1.3 - 0.4j]
    a, sa = lyapunov_many(ts, n_walks=1000, walk_length=100, seed=10)
    b, sb = lyapunov_many(ts, n_walks=1000, walk_length=200, seed=11)
    assert np.all(np.abs(a - b) < 3 * np.hypot(sa, sb))


def test_renormalized_matches_direct_product():
    mu = StepMeasure.parse([("a", "1/4"), ("b", "1/4"), ("aab", "1/2")])
    ts = np.array([0.3 + 0.2j, -1.7, np.exp(2.2j), 0.9j])
    steps = walk_steps(mu, 12, 30, seed=12)
    got = log_norms(ts, steps, mu, [30])[30]
    gens = {1: lambda t: np.array([[-t, 1], [0, 1]]), 2: lambda t: np.array([[1, 0], [t, -t]])}
    for i, t in enumerate(ts):
        for j in range(steps.shape[0]):
            M = np.eye(2, dtype=complex)
            for k in steps[j]:
                for g in mu.words[k].letters:
                    M = M @ gens[g](t)
            assert got[i, j] == pytest.approx(math.log(np.abs(M).max()), abs=1e-9)


def test_seed_determinism():
    a = lyapunov_many([0.4 + 0.3j], n_walks=50, walk_length=40, seed=1)
    b = lyapunov_many([0.4 + 0.3j], n_walks=50, walk_length=40, seed=1)
    assert a[0][0] == b[0][0] and a[1][0] == b[1][0]


def test_harmonic_patch_has_zero_density():
    shell = GridField((-1.0, 1.0, -1.0, 1.0), (20, 20), np.empty((20, 20)))
    g = GridField(shell.bounds, shell.resolution, shell.points.real.copy())
    dens = laplacian_density(g)
    inner = dens.values[1:-1, 1:-1]
    assert np.all(np.isnan(dens.values[0])) and np.all(np.isnan(dens.values[:, -1]))
    assert np.allclose(inner, 0, atol=1e-10)
    q = GridField(shell.bounds, shell.resolution, np.abs(shell.points) ** 2)
    # Δ|z|² = 4, so the density is 2/π
    assert np.allclose(laplacian_density(q).values[1:-1, 1:-1], 2 / math.pi)


def test_grid_shape_and_density_near_circle():
    g = lyapunov_grid((-1.6, 1.6, -1.6, 1.6), (32, 32), n_walks=100, walk_length=60, seed=2)
    assert g.lam.values.shape == (32, 32)
    rows = list(g.rows())
    assert len(rows) == 32 * 32 and len(rows[0]) == 6
    assert g.lines
    z = g.density.points
    mass = np.nan_to_num(g.cell_mass)
    near = np.abs(np.abs(z) - 1) < 0.3
    assert mass[near].sum() > 0.5 * mass.sum()
    with pytest.raises(ValueError):
        lyapunov_grid((-1, 1, -1, 1), (4, 4))


def test_grid_zero_density_inside_negative_lambda():
    g = lyapunov_grid((-0.5, 0.5, -0.5, 0.5), (12, 12), n_walks=200, walk_length=100, seed=3)
    assert np.all(g.lam.values < 0)
    assert np.allclose(np.nan_to_num(g.density.values), 0)


def test_omega_profile_and_mass():
    ts = np.array([0.5, 0.5j, 2.0, -2.0 + 0.5j])
    prof = omega_family_profile(200, ts)
    want = np.maximum(0, 3 * np.log(np.abs(ts)))
    assert np.allclose(prof, want, atol=0.02)
    total, near = omega_family_mass(60, resolution=(80, 80), band=0.15)
    assert near > 0.8 * total


def test_equidistribution_and_annulus():
    roots = sample_root_batch(120, 6, seed=4)
    assert len(roots) == 6 and all(r.size == 118 for r in roots)
    rep = equidistribution_compare(120, 6, (-0.76, -0.66, 0.0, 0.15), roots=roots)
    assert 0 <= rep.root_mass < 0.05 and rep.bif_mass is None
    frac = annulus_fraction(roots, 0.9, 1.1)
    assert frac >= (7 - 3 * math.sqrt(5)) / 12 - 0.01
    assert annulus_fraction(roots, 0.9, 1.1, arc="AR") + frac <= 1.0


def test_equidistribution_with_grid_tv():
    g = lyapunov_grid((-1.5, 1.5, -1.5, 1.5), (16, 16), n_walks=60, walk_length=40, seed=5)
    roots = sample_root_batch(60, 4, seed=5)
    rep = equidistribution_compare(60, 4, (-1.2, 1.2, -1.2, 1.2), grid=g, roots=roots)
    assert rep.bif_mass is not None and 0 <= rep.tv_distance <= 2
