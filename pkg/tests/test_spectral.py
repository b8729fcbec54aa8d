import math

import numpy as np
import pytest

from braidspectra.braid import BraidWord, nielsen_thurston_type
from braidspectra.burau import NotApplicable, SingularAtZero, evaluate
from braidspectra.roots import alexander_roots
from braidspectra.spectral import (
    EigenBranch,
    circle_level_arcs,
    discriminant_set,
    grid_R_w,
    in_u_region,
    log_spectral_radius,
    norm_certificates,
    norm_inf,
    real_axis_scan,
    rho,
    rho_at_roots,
    rho_mp,
    sample_u_region,
    spectral_radius,
    u_matrix,
    u_region_values,
)
from braidspectra.sampling import make_rng


def W(s: str) -> BraidWord:
    return BraidWord.parse(s)


def words(n, length, seed, letters=(1, 2)):
    rng = np.random.default_rng(seed)
    return [BraidWord(tuple(int(x) for x in rng.choice(letters, size=length))) for _ in range(n)]


def test_rho_matches_eigvals():
    # oracle: numpy eigenvalues of the directly evaluated matrix
    rng = np.random.default_rng(0)
    for w in words(30, 25, 1, (1, 2, -1, -2)):
        t = complex(*rng.uniform(-1.3, 1.3, 2))
        want = np.abs(np.linalg.eigvals(evaluate(w, t, streaming=False))).max()
        assert spectral_radius(w, t).rho == pytest.approx(want, rel=1e-9)


def test_rho_one_on_AR():
    th = np.linspace(-2 * np.pi / 3, 2 * np.pi / 3, 66)[1:-1]
    for w in words(20, 60, 2, (1, 2, -1, -2)) + [W("aBbbBA")]:
        assert np.abs(rho(w, np.exp(1j * th)) - 1).max() < 1e-8


def test_rho_at_least_one_on_circle():
    th = np.linspace(0, 2 * np.pi, 256, endpoint=False)
    for w in words(100, 40, 3, (1, 2, -1, -2)):
        assert rho(w, np.exp(1j * th)).min() > 1 - 1e-8


def test_stretch_factor_at_minus_one():
    w = W("aaabbb")
    s = spectral_radius(w, -1)
    assert s.rho == pytest.approx(6.854101966249685, rel=1e-12)
    assert s.rho == pytest.approx(nielsen_thurston_type(w).stretch, rel=1e-12)
    assert s.branch is EigenBranch.TWO_REAL


def test_conjugate_pair_branch():
    s = spectral_radius(W("abab"), 0.5j)
    assert s.branch is EigenBranch.CONJUGATE_PAIR
    assert s.rho == pytest.approx(0.5 ** 2, rel=1e-12)


def test_singular_at_zero():
    with pytest.raises(SingularAtZero):
        spectral_radius(W("aB"), 0)


def test_extended_precision_path_agrees():
    for w in words(5, 30, 4):
        t = 0.4 - 0.7j
        assert spectral_radius(w, t, precision=128).rho == pytest.approx(spectral_radius(w, t).rho, rel=1e-10)


def test_long_words_do_not_overflow():
    w = words(1, 3000, 5)[0]
    lr, _ = log_spectral_radius(w, [-1.0, 1.5, 0.3j])
    assert np.all(np.isfinite(lr))


def test_discriminant_example():
    ds = discriminant_set(W("aaabbb"))
    real = sorted({round(z.real, 9) for z in ds.roots.values() if abs(z.imag) < 1e-9 and -1 <= z.real <= 1})
    assert real == [0.0, round((3 - math.sqrt(5)) / 2, 9)]
    assert discriminant_set(W("")).identically_zero


def test_discriminant_disjoint_from_level_set():
    w = W("aaabbb")
    for z in discriminant_set(w).roots.values():
        if 1e-6 < abs(z) < 1 - 1e-6:
            assert abs(rho(w, [z])[0] - 1) > 1e-6


def test_continuity_at_discriminant_points():
    w = W("aaabbb")
    x0 = (3 - math.sqrt(5)) / 2
    left, right = rho(w, [x0 - 1e-14, x0 + 1e-14])
    assert abs(left - right) < 1e-6


def test_roots_lie_on_level_set():
    for w in words(10, 60, 6):
        if w.is_generator_power():
            continue
        v = alexander_roots(w).values()
        v = v[np.abs(v) <= 1 + 1e-6]
        assert np.abs(rho_at_roots(w, v) - 1).max() < 1e-6


def test_rho_mp_exact_identity():
    assert float(rho_mp(W(""), 0.3)) == 1.0


def test_grid_R_w_figure_word():
    w = BraidWord.parse("aba" * 3 + "bbbb" + "aaaaaa" + "bbb")
    rep = grid_R_w(w, resolution=(121, 121))
    assert rep.arc_check_max < 1e-8
    assert rep.root_level_max < 1e-6
    assert rep.lines


def test_omega_power_level_set_is_circle():
    w = W("aba" * 3)
    g = grid_R_w(w, resolution=(81, 81))
    pts = g.field.points
    inner = pts[np.abs(pts) < 0.95]
    assert np.all(rho(w, inner) < 1)
    assert circle_level_arcs(w) == 1


def test_disconnected_circle_level_set():
    w = BraidWord.from_powers([1, 2, 3, 3, 9, 2])
    assert str(w) == "abbaaabbbaaaaaaaaabb"
    assert circle_level_arcs(w) >= 2


def test_real_axis_scan():
    sc = real_axis_scan(W("aaabbb"))
    assert -1 < sc.crossing <= (math.sqrt(5) - 3) / 2
    assert sc.monotone_on_neg and sc.below_one_on_unit_interval
    assert sc.rho_at_zero == 0
    assert abs(rho(W("aaabbb"), [sc.crossing])[0] - 1) < 1e-9
    with pytest.raises(NotApplicable):
        real_axis_scan(W("aab"))


def test_negative_reals_are_hardest():
    rng = np.random.default_rng(7)
    for w in words(20, 40, 8):
        t = complex(*rng.uniform(-1, 1, 2))
        assert rho(w, [t])[0] <= rho(w, [-abs(t)])[0] * (1 + 1e-9)


def test_u_region_and_certificates():
    a, b = u_region_values(0.3)
    assert a == pytest.approx(0.3351, abs=1e-12)
    assert in_u_region(0.3)
    rep = norm_certificates([0.3])
    assert rep.ok and rep.formula_max_error < 1e-12
    assert norm_certificates([0.0]).ok
    assert norm_inf(u_matrix(W("a"), 0)) == 1
    assert norm_inf(u_matrix(W("aabb"), 0)) == 0
    rep = norm_certificates(sample_u_region(200, make_rng(1, 0)))
    assert rep.ok and rep.in_region == rep.samples == 200
