"""Reduced Burau representation of B₃ over Z[t, 1/t].

B_t(σ₁) = [[-t, 1], [0, 1]],  B_t(σ₂) = [[1, 0], [t, -t]].

The MINUS_T convention substitutes t → -t, which is the form in which all
entries become definite.  Exact matrices use LaurentPoly entries; numeric
evaluation either substitutes into the exact entries or streams 2×2 complex
products letter by letter.
"""

from __future__ import annotations

import enum
import functools
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from braidspectra.braid import (
    BraidWord,
    CanonicalForm,
    EmptyFactors,
    Simple,
    first_letter,
    last_letter,
    left_greedy_normal_form,
    summit,
)
from braidspectra.laurent import Definiteness, LaurentPoly

STREAMING_THRESHOLD = 256

_ZERO = LaurentPoly.zero()
_ONE = LaurentPoly.one()
_CYCLOTOMIC_3 = LaurentPoly(0, (1, 1, 1))


class Convention(enum.Enum):
    T = "T"
    MINUS_T = "MinusT"


class NotApplicable(ValueError):
    pass


class SingularAtZero(ZeroDivisionError):
    pass


# generator entries as (coef, exp) monomials, None for zero
_GEN_T = {
    1: (((-1, 1), (1, 0)), (None, (1, 0))),
    2: (((1, 0), None), ((1, 1), (-1, 1))),
    -1: (((-1, -1), (1, -1)), (None, (1, 0))),
    -2: (((1, 0), None), ((1, 0), (-1, -1))),
}


def _flip(entry):
    if entry is None:
        return None
    c, e = entry
    return (-c if e % 2 else c, e)


_GEN_MINUS_T = {
    x: tuple(tuple(_flip(e) for e in row) for row in rows) for x, rows in _GEN_T.items()
}


def _gen_table(convention: Convention):
    return _GEN_T if convention is Convention.T else _GEN_MINUS_T


@dataclass(frozen=True, slots=True)
class BurauMatrix:
    a: LaurentPoly
    b: LaurentPoly
    c: LaurentPoly
    d: LaurentPoly
    convention: Convention = Convention.T

    @classmethod
    def identity(cls, convention: Convention = Convention.T) -> BurauMatrix:
        return cls(_ONE, _ZERO, _ZERO, _ONE, convention)

    @property
    def entries(self) -> tuple[tuple[LaurentPoly, LaurentPoly], tuple[LaurentPoly, LaurentPoly]]:
        return (self.a, self.b), (self.c, self.d)

    def __matmul__(self, other: BurauMatrix) -> BurauMatrix:
        if self.convention is not other.convention:
            raise ValueError("mixing variable conventions")
        return BurauMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.convention,
        )

    def times_generator(self, x: int) -> BurauMatrix:
        """Right multiplication by the image of one letter (sparse monomial update)."""
        (g11, g12), (g21, g22) = _gen_table(self.convention)[x]
        rows = []
        for m1, m2 in ((self.a, self.b), (self.c, self.d)):
            out = []
            for top, bot in ((g11, g21), (g12, g22)):
                acc = _ZERO
                if top is not None and m1.coeffs:
                    acc = m1.mul_monomial(*top)
                if bot is not None and m2.coeffs:
                    acc = acc + m2.mul_monomial(*bot)
                out.append(acc)
            rows.append(out)
        return BurauMatrix(rows[0][0], rows[0][1], rows[1][0], rows[1][1], self.convention)

    def trace(self) -> LaurentPoly:
        return self.a + self.d

    def det(self) -> LaurentPoly:
        return self.a * self.d - self.b * self.c

    def minus_identity(self) -> BurauMatrix:
        return BurauMatrix(self.a - _ONE, self.b, self.c, self.d - _ONE, self.convention)

    def evaluate(self, t: complex) -> np.ndarray:
        if t == 0 and any(e.min_exp < 0 for e in (self.a, self.b, self.c, self.d) if e.coeffs):
            raise SingularAtZero("negative powers of t at t = 0")
        a, b, c, d = (e.evaluate_exact(t) for e in (self.a, self.b, self.c, self.d))
        return np.array([[a, b], [c, d]])

    def signs(self) -> tuple[Definiteness, Definiteness, Definiteness, Definiteness]:
        return (
            self.a.is_definite(),
            self.b.is_definite(),
            self.c.is_definite(),
            self.d.is_definite(),
        )

    def to_json(self) -> str:
        return json.dumps(
            {
                "convention": self.convention.value,
                "entries": [[self.a.to_json(), self.b.to_json()], [self.c.to_json(), self.d.to_json()]],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> BurauMatrix:
        obj = json.loads(text)
        (a, b), (c, d) = [[LaurentPoly.from_json(e) for e in row] for row in obj["entries"]]
        return cls(a, b, c, d, Convention(obj["convention"]))


def burau_of_word(w: BraidWord, convention: Convention = Convention.T) -> BurauMatrix:
    m = BurauMatrix.identity(convention)
    for x in w.letters:
        m = m.times_generator(x)
    return m


def minus_t_power(n: int) -> LaurentPoly:
    """(-t)^n as a Laurent polynomial."""
    return LaurentPoly(n, (-1 if n % 2 else 1,))


def det_check(w: BraidWord) -> bool:
    return burau_of_word(w).det() == minus_t_power(w.exponent_sum())


def det_minus_identity(w: BraidWord) -> LaurentPoly:
    """det(B_t(w) - I) computed from the exact entries."""
    return burau_of_word(w).minus_identity().det()


@functools.lru_cache(maxsize=256)
def alexander_poly(w: BraidWord) -> LaurentPoly:
    """Δ = det(B_t(w) - I)/(t² + t + 1), normalized to t^0 with positive constant."""
    num = det_minus_identity(w)
    if num.is_zero:
        return num
    return num.exact_div(_CYCLOTOMIC_3).normalized()


def degree_and_monic_check(w: BraidWord) -> tuple[int, bool]:
    if not w.is_positive() or w.is_generator_power():
        raise NotApplicable("needs a positive word that is not a power of one generator")
    # Δ is defined up to ±t^k; with a positive constant term links can lead with −1
    delta = alexander_poly(w)
    return delta.max_exp, abs(delta.coeffs[-1]) == 1


# ---------------------------------------------------------------------------
# sign calculus for B_{-t}


@dataclass(frozen=True, slots=True)
class SignMatrix:
    """Entries in {+1, -1, 0}; 0 is a wildcard when comparing."""

    entries: tuple[int, int, int, int]

    def compatible(self, other: SignMatrix) -> bool:
        return all(x == 0 or y == 0 or x == y for x, y in zip(self.entries, other.entries))

    def __str__(self) -> str:
        sym = {1: "+", -1: "-", 0: "0"}
        e = [sym[x] for x in self.entries]
        return f"[[{e[0]},{e[1]}],[{e[2]},{e[3]}]]"


_SIGN_OF = {
    Definiteness.POSITIVE: 1,
    Definiteness.NEGATIVE: -1,
    Definiteness.ZERO: 0,
}


def sign_matrix_of(m: BurauMatrix) -> SignMatrix | None:
    """Sign pattern of a matrix, or None if some entry is indefinite."""
    signs = m.signs()
    if any(s is Definiteness.INDEFINITE for s in signs):
        return None
    return SignMatrix(tuple(_SIGN_OF[s] for s in signs))  # type: ignore[arg-type]


def _rotate(entries: tuple[int, int, int, int], k: int) -> tuple[int, int, int, int]:
    # left multiplication by [[0, 1], [-1, 0]], k mod 4 times
    p, q, r, s = entries
    for _ in range(k % 4):
        p, q, r, s = r, s, -p, -q
    return p, q, r, s


def _sign_counts(c: CanonicalForm) -> tuple[int, int, int, int]:
    if not c.factors:
        raise EmptyFactors("sign prediction needs n ≥ 1")
    i = first_letter(c.factors[0])
    j = last_letter(c.factors[-1])
    e = sum(1 for f in c.factors if f == Simple.S12)
    f = sum(1 for f in c.factors if f == Simple.S21)
    return i, j, e, f


def predict_sign_matrix(c: CanonicalForm) -> SignMatrix:
    """[[0,1],[-1,0]]^k · [[(-1)^e, (-1)^(e+j+1)], [(-1)^(f+j+1), (-1)^f]]."""
    _, j, e, f = _sign_counts(c)
    base = ((-1) ** e, (-1) ** (e + j + 1), (-1) ** (f + j + 1), (-1) ** f)
    return SignMatrix(_rotate(base, c.omega_power))


def predict_sign_matrix_alt(c: CanonicalForm) -> SignMatrix:
    """(-1)^e [[0,1],[-1,0]]^k [[1, (-1)^(j+1)], [(-1)^(i+1), (-1)^(i+j)]]."""
    i, j, e, _ = _sign_counts(c)
    s = (-1) ** e
    base = (s, s * (-1) ** (j + 1), s * (-1) ** (i + 1), s * (-1) ** (i + j))
    return SignMatrix(_rotate(base, c.omega_power))


@dataclass(frozen=True)
class DefinitenessReport:
    entries_definite: bool
    trace_definite: bool
    same_sign_conjugate: BraidWord | None


def same_sign_conjugate(w: BraidWord) -> BraidWord | None:
    """A conjugate whose B_{-t} entries share one sign, when the summit has n ≥ 2."""
    top = summit(left_greedy_normal_form(w), len(w))
    if top.n < 2:
        return None
    if last_letter(top.factors[-1]) == 2:
        top = top.swapped()
    return top.to_word()


def all_same_sign(m: BurauMatrix) -> bool:
    pattern = sign_matrix_of(m)
    if pattern is None:
        return False
    nonzero = {x for x in pattern.entries if x}
    return len(nonzero) <= 1


def definiteness_audit(w: BraidWord) -> DefinitenessReport:
    m = burau_of_word(w, Convention.MINUS_T)
    entries_ok = all(s.is_definite for s in m.signs())
    trace_ok = m.trace().is_definite().is_definite
    return DefinitenessReport(entries_ok, trace_ok, same_sign_conjugate(w))


# ---------------------------------------------------------------------------
# numeric evaluation


def evaluate(w: BraidWord, t: complex, streaming: bool | None = None) -> np.ndarray:
    """B_t(w) at a complex point.

    Words longer than STREAMING_THRESHOLD default to numeric generator products;
    shorter ones substitute t into the exact entries.
    """
    if t == 0 and not w.is_positive():
        raise SingularAtZero("inverse letters are singular at t = 0")
    if streaming is None:
        streaming = len(w) > STREAMING_THRESHOLD
    if not streaming:
        return burau_of_word(w).evaluate(t)
    (a, b), (c, d) = stream_product(w.letters, np.array([t], dtype=complex), renorm_every=0)[0]
    return np.array([[a[0], b[0]], [c[0], d[0]]])


def _step(x: int, t, a, b, c, d):
    if x == 1:
        return -t * a, a + b, -t * c, c + d
    if x == 2:
        return a + t * b, -t * b, c + t * d, -t * d
    if x == -1:
        u = 1 / t
        return -u * a, u * a + b, -u * c, u * c + d
    u = 1 / t
    return a + b, -u * b, c + d, -u * d


def stream_product(
    letters: Sequence[int], ts: np.ndarray, renorm_every: int = 16
) -> tuple[tuple[tuple[np.ndarray, np.ndarray], tuple[np.ndarray, np.ndarray]], np.ndarray]:
    """B_t(w) at every t in ts, as ((a, b), (c, d)) arrays times exp(logscale).

    With renorm_every > 0 the running product is divided by its largest entry
    modulus at that period and the logs accumulate in the returned scale.
    """
    ts = np.asarray(ts, dtype=complex)
    a = np.ones_like(ts)
    b = np.zeros_like(ts)
    c = np.zeros_like(ts)
    d = np.ones_like(ts)
    logscale = np.zeros(ts.shape)
    for n, x in enumerate(letters, 1):
        a, b, c, d = _step(x, ts, a, b, c, d)
        if renorm_every and n % renorm_every == 0:
            s = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.maximum(np.abs(c), np.abs(d)))
            s = np.where(s > 0, s, 1.0)
            a, b, c, d = a / s, b / s, c / s, d / s
            logscale += np.log(s)
    return ((a, b), (c, d)), logscale


def stream_trace_with_derivative(
    letters: Sequence[int], ts: np.ndarray, renorm_every: int = 8
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(tr, d tr/dt, logscale) with tr·exp(logscale) = tr B_t(w)."""
    ts = np.asarray(ts, dtype=complex)
    a = np.ones_like(ts)
    b = np.zeros_like(ts)
    c = np.zeros_like(ts)
    d = np.ones_like(ts)
    da = np.zeros_like(ts)
    db = np.zeros_like(ts)
    dc = np.zeros_like(ts)
    dd = np.zeros_like(ts)
    logscale = np.zeros(ts.shape)
    inv = 1 / ts if any(x < 0 for x in letters) else None
    for n, x in enumerate(letters, 1):
        # derivative of M·G is M'·G + M·G'
        na, nb, nc, nd = _step(x, ts, a, b, c, d)
        pa, pb, pc, pd = _step(x, ts, da, db, dc, dd)
        if x == 1:
            pa, pc = pa - a, pc - c
        elif x == 2:
            pa, pb, pc, pd = pa + b, pb - b, pc + d, pd - d
        elif x == -1:
            u = inv * inv
            pa, pb, pc, pd = pa + u * a, pb - u * a, pc + u * c, pd - u * c
        else:
            u = inv * inv
            pb, pd = pb + u * b, pd + u * d
        a, b, c, d, da, db, dc, dd = na, nb, nc, nd, pa, pb, pc, pd
        if renorm_every and n % renorm_every == 0:
            s = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.maximum(np.abs(c), np.abs(d)))
            s = np.where(s > 0, s, 1.0)
            a, b, c, d = a / s, b / s, c / s, d / s
            da, db, dc, dd = da / s, db / s, dc / s, dd / s
            logscale += np.log(s)
    return a + d, da + dd, logscale
