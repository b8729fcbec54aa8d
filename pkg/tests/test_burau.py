import numpy as np
import pytest

from braidspectra.braid import BraidWord, CanonicalForm, Simple, left_greedy_normal_form
from braidspectra.burau import (
    BurauMatrix,
    Convention,
    NotApplicable,
    SignMatrix,
    SingularAtZero,
    alexander_poly,
    all_same_sign,
    burau_of_word,
    definiteness_audit,
    degree_and_monic_check,
    det_check,
    evaluate,
    minus_t_power,
    predict_sign_matrix,
    predict_sign_matrix_alt,
    sign_matrix_of,
    stream_product,
)
from braidspectra.laurent import LaurentPoly, T


def W(s: str) -> BraidWord:
    return BraidWord.parse(s)


def lp(s: str) -> LaurentPoly:
    return LaurentPoly.parse(s)


def random_word(rng, n, letters=(1, 2, -1, -2)) -> BraidWord:
    return BraidWord(tuple(int(x) for x in rng.choice(letters, size=n)))


def test_generator_matrices():
    m = burau_of_word(W("a"))
    assert m.entries == ((-T, lp("1")), (LaurentPoly.zero(), lp("1")))
    m = burau_of_word(W("aab"), Convention.MINUS_T)
    assert m.entries == ((-T, T + T * T), (-T, T))
    m = burau_of_word(W("aba"), Convention.MINUS_T)
    assert m.entries == ((LaurentPoly.zero(), T), (-T * T, LaurentPoly.zero()))


def test_homomorphism():
    rng = np.random.default_rng(1)
    for _ in range(50):
        u, v = random_word(rng, 15), random_word(rng, 15)
        assert burau_of_word(u * v) == burau_of_word(u) @ burau_of_word(v)


def test_det_examples():
    assert burau_of_word(W("ab")).det() == T * T
    assert burau_of_word(W("A")).det() == minus_t_power(-1)
    assert burau_of_word(W("")).det() == LaurentPoly.one()
    assert det_check(W("abAAB"))


def test_alexander_examples():
    assert alexander_poly(W("abab")) == lp("1 - t + t^2")
    assert alexander_poly(W("aaaaa")).is_zero
    for n in range(1, 21):
        w = BraidWord((1, 2, 1) + (2,) * n)
        # det(B − I) as the explicit alternating sum, every n
        s = 1 + sum(((-T) ** k for k in range(2, n + 2)), LaurentPoly.zero()) + (-T) ** (n + 3)
        assert alexander_poly(w) == s.exact_div(lp("1 + t + t^2")).normalized()
        assert alexander_poly(w) == (1 - (-T) ** (n + 2)).exact_div(1 + T)
        if n % 2:
            assert alexander_poly(w) == (1 + T ** (n + 2)).exact_div(1 + T)


def test_alexander_closed_form_needs_odd_n():
    # for even n the closure is a 2-component link and (1 + t^{n+2}) is not divisible by 1 + t
    from braidspectra.laurent import NotDivisible

    with pytest.raises(NotDivisible):
        (1 + T**4).exact_div(1 + T)
    assert alexander_poly(BraidWord((1, 2, 1, 2, 2))) == lp("1 - t + t^2 - t^3")


def test_alexander_is_conjugacy_invariant():
    rng = np.random.default_rng(4)
    for _ in range(50):
        u, v = random_word(rng, 12), random_word(rng, 8)
        assert alexander_poly(v * u * v.inverse()) == alexander_poly(u)


def test_degree_and_monic():
    assert degree_and_monic_check(W("abab")) == (2, True)
    assert degree_and_monic_check(W("aabbb")) == (3, True)
    with pytest.raises(NotApplicable):
        degree_and_monic_check(W("aaaa"))
    with pytest.raises(NotApplicable):
        degree_and_monic_check(W("aB"))


def test_link_alexander_leads_with_unit():
    # 2-component closure: anti-palindromic, so the positive-constant normalization leads with −1
    d = alexander_poly(W("baa"))
    assert d == lp("1 - t")
    assert degree_and_monic_check(W("baa")) == (1, True)


def test_sign_prediction_examples():
    c = left_greedy_normal_form(W("a"))
    got = sign_matrix_of(burau_of_word(W("a"), Convention.MINUS_T))
    assert got.compatible(predict_sign_matrix(c))
    c = left_greedy_normal_form(W("aab"))
    assert sign_matrix_of(burau_of_word(W("aab"), Convention.MINUS_T)) == SignMatrix((-1, 1, -1, 1))
    assert predict_sign_matrix(c).compatible(SignMatrix((-1, 1, -1, 1)))
    c4 = CanonicalForm(c.omega_power + 4, c.factors)
    assert predict_sign_matrix(c4) == predict_sign_matrix(c)


def test_sign_prediction_routes_agree():
    # the two closed forms of the prediction must coincide on every canonical form reached
    rng = np.random.default_rng(2)
    for _ in range(500):
        c = left_greedy_normal_form(random_word(rng, int(rng.integers(1, 40)), (1, 2)))
        if c.factors:
            assert predict_sign_matrix(c) == predict_sign_matrix_alt(c)


def test_definiteness_audit():
    rep = definiteness_audit(W("aab"))
    assert rep.entries_definite and rep.trace_definite
    rng = np.random.default_rng(8)
    rep = definiteness_audit(random_word(rng, 50, (1, 2)))
    assert rep.entries_definite
    for l in (1, 2, 3):
        m = burau_of_word(W("aba" * (2 * l)), Convention.MINUS_T)
        assert m.trace() == LaurentPoly.monomial(2 * (-1) ** (3 * l), 3 * l)


def test_same_sign_conjugate():
    rng = np.random.default_rng(12)
    for _ in range(100):
        w = random_word(rng, int(rng.integers(2, 40)), (1, 2))
        rep = definiteness_audit(w)
        if rep.same_sign_conjugate is not None:
            v = rep.same_sign_conjugate
            assert alexander_poly(v) == alexander_poly(w)
            assert all_same_sign(burau_of_word(v, Convention.MINUS_T))


def test_evaluate():
    np.testing.assert_array_equal(evaluate(W("a"), -1), [[1, 1], [0, 1]])
    ev = np.linalg.eigvals(evaluate(W("abab"), 1))
    z3 = np.exp(2j * np.pi / 3)
    assert sorted(ev, key=lambda z: z.imag) == pytest.approx([z3.conjugate(), z3], abs=1e-12)
    with pytest.raises(SingularAtZero):
        evaluate(W("A"), 0)


def test_streaming_matches_exact():
    rng = np.random.default_rng(6)
    for _ in range(100):
        w = random_word(rng, int(rng.integers(1, 201)))
        t = complex(*rng.uniform(-1, 1, 2))
        if abs(t) > 1 or abs(t) < 0.2:
            t = 0.7 * np.exp(1j * rng.uniform(0, 2 * np.pi))
        exact = evaluate(w, t, streaming=False)
        ((a, b), (c, d)), ls = stream_product(w.letters, np.array([t]))
        stream = np.array([[a[0], b[0]], [c[0], d[0]]]) * np.exp(ls[0])
        # relative to the matrix norm; Horner on big-coefficient entries has its own rounding
        assert np.linalg.norm(stream - exact) <= 1e-10 * np.linalg.norm(exact)


def test_json_roundtrip():
    m = burau_of_word(W("abAbb"))
    assert BurauMatrix.from_json(m.to_json()) == m
