import math

import mpmath
import numpy as np
import pytest

from braidspectra.braid import BraidWord, NotPositive
from braidspectra.burau import NotApplicable, alexander_poly
from braidspectra.laurent import IntPoly, LaurentPoly, T, from_trace_coords
from braidspectra.roots import (
    SMALL_DISK_RADIUS,
    ArcSpec,
    NotAKnot,
    RegionTag,
    RootSet,
    ZeroAlexander,
    alexander_roots,
    arc_lower_bound,
    classify,
    count_arc_roots_exact,
    count_circle_roots_exact,
    empirical_measure,
    find_roots,
    is_squarefree,
    pairing_defect,
    polish_root,
    real_roots_in_unit_interval,
    rh_polynomials,
    squarefree_decomposition,
    tag_text,
    two_thirds_bound,
    two_thirds_bound_from_degree,
)
from braidspectra.sampling import SamplerMode, WordSampler, make_rng, sample_knot, sample_word


def W(s: str) -> BraidWord:
    return BraidWord.parse(s)


def lp(s: str) -> LaurentPoly:
    return LaurentPoly.parse(s)


def knots(n, length, seed):
    rng = make_rng(seed, 0)
    return [sample_knot(WordSampler(SamplerMode.UNIFORM_POSITIVE, length=length), rng) for _ in range(n)]


def test_trefoil_roots():
    rs = find_roots(lp("t^2 - t + 1"))
    got = sorted(rs.values(), key=lambda z: z.imag)
    want = [np.exp(-1j * np.pi / 3), np.exp(1j * np.pi / 3)]
    assert np.abs(np.array(got) - want).max() < 1e-14
    assert all(m == 1 for _, m in rs.roots)


def test_multiplicity_from_squarefree_decomposition():
    p = (T - 2) ** 2 * (2 * T - 1)
    rs = find_roots(p)
    mult = {round(z.real, 9): m for z, m in rs.roots}
    assert mult == {2.0: 2, 0.5: 1}
    assert sum(m for _, m in rs.roots) == rs.source_degree == 3


def test_squarefree_helpers():
    f = IntPoly((-1, 1)) ** 3 * IntPoly((1, 1, 1))
    assert is_squarefree(IntPoly((1, 1, 1)))
    assert not is_squarefree(f)
    assert sorted((g.coeffs, m) for g, m in squarefree_decomposition(f)) == [((-1, 1), 3), ((1, 1, 1), 1)]


def test_zero_roots_and_laurent_shift():
    rs = find_roots(LaurentPoly(2, (1, 0, -1)))  # t²(1 − t²)
    vals = sorted(rs.values(), key=lambda z: z.real)
    assert np.allclose(vals, [-1, 0, 0, 1])


def test_density_family_roots():
    rs = alexander_roots(W("ababbbbb"))
    vals = rs.values()
    # 6 roots: the 7th roots of −1 other than −1 itself
    assert len(vals) == 6
    assert np.allclose(vals**7, -1, atol=1e-12)
    assert np.all(np.abs(vals + 1) > 0.1)
    assert count_circle_roots_exact(W("ababbbbb")).total_on_circle == 6


def test_alexander_roots_against_mpmath():
    # independent oracle: mpmath polyroots on the exact coefficients at high precision
    for w in knots(3, 40, 3):
        d = alexander_poly(w)
        with mpmath.workdps(60):
            ref = np.array([complex(r) for r in mpmath.polyroots(list(reversed(d.coeffs)), maxsteps=400, extraprec=400)])
        got = alexander_roots(w).values()
        for z in ref:
            assert np.abs(got - z).min() < 1e-9


def test_residuals_and_pairing_long_words():
    for w in knots(4, 400, 5):
        rs = alexander_roots(w)
        assert rs.max_residual < 1e-8
        assert sum(m for _, m in rs.roots) == len(w) - 2
        assert pairing_defect(rs) < 1e-6


def test_zero_alexander_rejected():
    with pytest.raises(ZeroAlexander):
        alexander_roots(W("aaaa"))


def test_classify_examples():
    tag = classify(np.exp(1j * np.pi / 3))
    assert RegionTag.ON_CIRCLE in tag and RegionTag.ARC_AR in tag and RegionTag.ARC_AL not in tag
    tag = classify(0)
    assert RegionTag.IN_REGION_T in tag and RegionTag.IN_SMALL_DISK in tag and RegionTag.INSIDE_DISK in tag
    assert RegionTag.IN_REGION_T not in classify(-0.5)
    assert RegionTag.ARC_AL in classify(-1)
    assert "OnCircle" in tag_text(classify(1j))
    with pytest.raises(ValueError):
        classify(0.1, tol=0)


def test_small_disk_radius():
    assert SMALL_DISK_RADIUS == pytest.approx(0.3819660112501051)


def test_circle_count_examples():
    c = count_circle_roots_exact(W("abab"))
    assert (c.total_on_circle, c.on_AR, c.on_AL) == (2, 2, 0)
    delta = from_trace_coords(IntPoly((-1, -1, 1))).shift(2)
    c = count_circle_roots_exact(delta)
    assert (c.total_on_circle, c.on_AR, c.on_AL) == (4, 4, 0)


def test_circle_count_links_and_multiplicities():
    # (t − 1)² and (t + 1) factors are counted with multiplicity
    p = (T - 1) ** 2 * (T + 1) * lp("1 - t + t^2")
    c = count_circle_roots_exact(p)
    assert c.total_on_circle == 5
    assert c.on_AL == 1


def test_numeric_matches_exact_circle_counts():
    for w in knots(10, 120, 7):
        vals = alexander_roots(w).values()
        numeric = int(np.sum(np.abs(np.abs(vals) - 1) < 1e-6))
        assert numeric == count_circle_roots_exact(w).total_on_circle


def test_arc_lower_bound():
    w = BraidWord((1, 2) * 300)  # #w = 600
    assert arc_lower_bound(w, 0, 2 * math.pi / 3) == 198
    assert arc_lower_bound(w, 0.5, 0.5 + 1e-9) == 0
    with pytest.raises(ValueError):
        arc_lower_bound(w, 0, 3.0)
    with pytest.raises(ZeroAlexander):
        arc_lower_bound(W("aaaa"), 0, 1)


def test_arc_bound_below_exact_arc_count():
    for w in knots(10, 100, 9):
        for t1, t2 in [(0, 2 * math.pi / 3), (0.3, 1.1)]:
            assert arc_lower_bound(w, t1, t2) <= count_arc_roots_exact(w, t1, t2)


def test_two_thirds_bound():
    assert two_thirds_bound_from_degree(762, 1) == 508
    assert two_thirds_bound_from_degree(10, 2) == 7
    with pytest.raises(NotApplicable):
        two_thirds_bound(W("aaaa"))
    for w in knots(10, 100, 11):
        assert two_thirds_bound(w) <= count_circle_roots_exact(w).on_AR


def test_no_roots_in_unit_interval():
    for w in knots(10, 80, 13):
        assert real_roots_in_unit_interval(w) == 0
        assert real_roots_in_unit_interval(w, route="direct") == 0


def test_unit_interval_routes_agree():
    # figure eight: t² − 3t + 1 has one root in (0, 1)
    assert real_roots_in_unit_interval(W("aBaB")) == 1
    rng = make_rng(21)
    for _ in range(60):
        w = sample_word(WordSampler(SamplerMode.UNIFORM_FOUR, length=int(rng.integers(2, 40))), rng)
        if alexander_poly(w).is_zero:
            continue
        assert real_roots_in_unit_interval(w) == real_roots_in_unit_interval(w, route="direct"), w


def test_rh_polynomials_trefoil():
    r = rh_polynomials(W("abab"))
    assert r.f == IntPoly((-1, 0, 1))
    assert r.h == IntPoly((1, 0, 1))
    assert r.b == (1, 1) and r.all_positive
    with pytest.raises(NotAKnot):
        rh_polynomials(W("aab"))
    with pytest.raises(NotPositive):
        rh_polynomials(W("abAb"))


def test_rh_b0_is_one():
    for w in knots(10, 40, 17):
        assert rh_polynomials(w).b[0] == 1


def test_empirical_measure():
    sixth = RootSet(tuple((complex(np.exp(2j * np.pi * k / 6)), 1) for k in range(6)), 6)
    m = empirical_measure(sixth, bins=6)
    assert m.total == 6
    assert m.angle_counts.sum() == 4  # upper half including 1 and −1
    m = empirical_measure(find_roots(lp("t^2 - t + 1")), bins=4)
    assert m.angle_counts.tolist() == [0, 1, 0, 0]  # π/3 in [π/4, π/2)


def test_arc_projection_endpoints():
    arc = ArcSpec()
    assert arc.project(complex(arc.real_crossing, 0)) == pytest.approx(0, abs=1e-12)
    assert abs(abs(arc.endpoint - arc.center) - arc.radius) < 1e-12


def test_polish_root():
    z = polish_root(lp("t^2 - t + 1"), 0.5 + 0.86j, 200)
    with mpmath.workprec(200):
        assert abs(z - mpmath.exp(1j * mpmath.pi / 3)) < mpmath.mpf(2) ** -180
