import math

import numpy as np
import pytest

from braidspectra.braid import BraidWord, burau_at_minus_one
from braidspectra.sl2walk import (
    DRIFT,
    HITTING,
    IDENTITY,
    SIGNATURE_DRIFT,
    PSL2Word,
    _WalkBatch,
    clt_experiment,
    conj_a_paired,
    drift_experiment,
    hitting_measure_experiment,
    image,
    psl2_mul,
    rademacher,
    random_psl2,
    signature_estimate,
    walk_rademacher,
)


def P(s: str) -> PSL2Word:
    return PSL2Word.reduce(s)


def test_constants():
    assert DRIFT == pytest.approx(0.0729490, abs=1e-7)
    assert SIGNATURE_DRIFT == pytest.approx(0.690983, abs=1e-6)
    assert HITTING["a"] == HITTING["b"] + HITTING["B"] == pytest.approx(0.5)


def test_reduction_rules():
    assert psl2_mul(P("a"), P("a")) == IDENTITY
    assert psl2_mul(P("b"), P("b")) == P("B")
    assert P("bbb") == IDENTITY
    with pytest.raises(ValueError):
        PSL2Word("aa")


def test_generator_images():
    assert image(BraidWord.parse("a")) == P("ba")
    assert image(BraidWord.parse("b")) == P("ab")
    assert image(BraidWord.parse("aba" * 4)) == IDENTITY
    assert image(BraidWord.parse("aba")) == P("a")


def test_associativity():
    rng = np.random.default_rng(0)
    for _ in range(10_000):
        x, y, z = (random_psl2(rng, int(rng.integers(0, 8))) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_homomorphism_and_matrix_lift():
    rng = np.random.default_rng(1)
    for _ in range(300):
        u = BraidWord(tuple(int(x) for x in rng.choice([1, 2, -1, -2], size=int(rng.integers(0, 20)))))
        v = BraidWord(tuple(int(x) for x in rng.choice([1, 2, -1, -2], size=int(rng.integers(0, 20)))))
        assert image(u * v) == psl2_mul(image(u), image(v))
        (a, _), (_, d) = burau_at_minus_one(u)
        m = image(u).matrix()
        assert abs(a + d) == abs(m[0, 0] + m[1, 1])


def test_rademacher_examples():
    for n in range(1, 8):
        assert rademacher(P("ab" * n)) == n
        assert rademacher(image(BraidWord.parse("aba" * n))) == 0


def test_rademacher_defect():
    rng = np.random.default_rng(2)
    seen = set()
    for _ in range(100_000):
        g, h = random_psl2(rng, int(rng.integers(0, 10))), random_psl2(rng, int(rng.integers(0, 10)))
        d = rademacher(g * h) - rademacher(g) - rademacher(h)
        seen.add(d)
    assert seen <= {-3, 0, 3}


def test_signature_estimate():
    for n in range(1, 6):
        assert signature_estimate(BraidWord((2,) * n)).estimate == pytest.approx(-n)
    e = signature_estimate(BraidWord(()))
    assert e.estimate == 0 and e.error_bound == pytest.approx(7 / 3)


def test_vectorized_walk_matches_exact_reduction():
    rng = np.random.default_rng(3)
    letters = rng.integers(1, 3, size=(64, 120))
    wb = _WalkBatch(64, 240)
    for k in range(120):
        wb.step(letters[:, k])
    for i in range(64):
        g = image(BraidWord(tuple(int(x) for x in letters[i])))
        assert wb.R[i] == rademacher(g)
        first = {"a": 0, "b": 1, "B": 2}[g.syllables[0]] if len(g) else 3
        assert wb.first_syllable()[i] == first


def test_walk_is_reproducible_and_thread_independent():
    from concurrent.futures import ThreadPoolExecutor

    a = walk_rademacher(50, 3000, seed=9, batch=1000)[50]
    with ThreadPoolExecutor(3) as ex:
        b = walk_rademacher(50, 3000, seed=9, batch=1000, executor=ex)[50]
    np.testing.assert_array_equal(a, b)


def test_drift_small():
    st = drift_experiment(1000, 4000, seed=1)
    assert abs(st.normalized - DRIFT) < 5 * st.stderr + 0.01
    assert st.value == pytest.approx(st.normalized * st.n)
    assert st.variance > 0


def test_conj_a_invariance():
    plain, swapped = conj_a_paired(300, 2000, seed=4)
    # same walks with σ₁ ↔ σ₂: R is unchanged sample by sample
    np.testing.assert_array_equal(plain, swapped)


def test_hitting_small():
    h = hitting_measure_experiment(200, 20_000, seed=5)
    assert h.p_a + h.p_b + h.p_B == pytest.approx(1)
    assert max(h.sigma_distance()) < 4


def test_clt_spread_scaling():
    rows = clt_experiment([250, 1000], 4000, seed=6)
    ratio = rows[0].std / rows[1].std
    assert abs(ratio - 2) < 0.5
    assert rows[1].mean == pytest.approx(SIGNATURE_DRIFT, abs=0.02)
    assert (7 / 3) / 1000 < 0.003
