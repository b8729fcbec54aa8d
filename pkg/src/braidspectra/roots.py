"""Roots of integer polynomials, region tags, exact circle counts, RH scan.

Two numeric routes share one Aberth-Ehrlich core:

* ``find_roots`` works from the coefficients alone, escalating from double to
  128- and 256-bit arithmetic (mpmath) when the a-priori root error estimate
  is too large.
* ``alexander_roots`` evaluates Δ through the 2×2 Burau product instead of the
  coefficient vector.  Coefficients of Δ grow exponentially with the word
  length while the matrix product stays tame near the unit circle, so this is
  the route that stays accurate in double precision for long words.

Multiplicities always come from an exact square-free decomposition.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import mpmath
import numpy as np

from braidspectra.braid import BraidWord, NotPositive
from braidspectra.burau import (
    NotApplicable,
    alexander_poly,
    det_minus_identity,
    stream_trace_with_derivative,
)
from braidspectra.laurent import (
    IntPoly,
    LaurentPoly,
    NotSymmetric,
    _GCD_PRIMES,
    _derivative,
    _gcd_mod,
    squarefree_part,
    sturm_chain,
    sturm_count,
    to_trace_coords,
)

SMALL_DISK_RADIUS = (3 - math.sqrt(5)) / 2
ZETA3 = complex(-0.5, math.sqrt(3) / 2)
MAX_ITER = 200
PRECISION_LADDER = (53, 128, 256)
ESCALATE_TOL = 1e-10


class ZeroAlexander(ValueError):
    pass


class NotAKnot(ValueError):
    pass


# ---------------------------------------------------------------------------
# square-free decomposition


def is_squarefree(p: IntPoly) -> bool | None:
    """Modular certificate: True if certainly square-free, None if undecided."""
    if p.degree < 2:
        return True
    dp = _derivative(p.coeffs)
    for prime in _GCD_PRIMES[:3]:
        if p.coeffs[-1] % prime == 0 or dp[-1] % prime == 0:
            continue
        if len(_gcd_mod(p.coeffs, dp, prime)) == 1:
            return True
        return None
    return None


def squarefree_decomposition(p: IntPoly) -> list[tuple[IntPoly, int]]:
    """Yun's algorithm over Z: p = c·Π f_i^i with primitive, pairwise coprime f_i."""
    if p.degree < 1:
        return []
    p = p.primitive()
    if is_squarefree(p):
        return [(p, 1)]
    out: list[tuple[IntPoly, int]] = []
    dp = p.derivative()
    a0 = p.gcd(dp)
    b = p.exact_div(a0)
    c = dp.exact_div(a0)
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        a = b.gcd(d)
        if a.degree > 0:
            out.append((a, i))
        b = b.exact_div(a)
        c = d.exact_div(a)
        d = c - b.derivative()
        i += 1
    return out


# ---------------------------------------------------------------------------
# Aberth iteration


def _initial_guess(n: int, radius: float = 1.0) -> np.ndarray:
    k = np.arange(n)
    return radius * np.exp(1j * (2 * np.pi * k / n + 0.4 / max(n, 1) + 0.25))


def aberth(
    logderiv: Callable[[np.ndarray], np.ndarray],
    z0: np.ndarray,
    tol: float = 4e-15,
    max_iter: int = MAX_ITER,
    floor: float = 1e-9,
    escape: float = 1e6,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Simultaneous Aberth-Ehrlich iteration given z ↦ p'(z)/p(z).

    A root is frozen once its step drops below tol, or once the step is under
    `floor` and has stopped shrinking (the evaluation noise floor).  Returns
    (roots, mask of roots still moving at max_iter, iterations).
    """
    z = np.array(z0, dtype=complex)
    n = z.size
    active = np.ones(n, dtype=bool)
    prev = np.full(n, np.inf)
    it = 0
    for it in range(1, max_iter + 1):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            L = logderiv(z[idx])
            diff = z[idx, None] - z[None, :]
            diff[np.arange(idx.size), idx] = np.inf
            S = (1.0 / diff).sum(axis=1)
            corr = 1.0 / (L - S)
        bad = ~np.isfinite(corr)
        corr[bad] = 0.0
        z[idx] -= corr
        # a non-finite step or a runaway root is re-seeded, never frozen
        lost = bad | (np.abs(z[idx]) > escape)
        if lost.any():
            k = np.nonzero(lost)[0]
            z[idx[k]] = np.exp(2j * np.pi * ((it * 0.618034 + k * 0.137) % 1.0)) * 0.99
            prev[idx[k]] = np.inf
        step = np.abs(corr) / np.maximum(1.0, np.abs(z[idx]))
        stalled = (step < floor) & (step >= 0.5 * prev[idx])
        prev[idx] = np.where(lost, np.inf, step)
        active[idx[~lost & ((step <= tol) | stalled)]] = False
    return z, active, it


def _newton_polish(logderiv, z: np.ndarray, steps: int = 1) -> np.ndarray:
    for _ in range(steps):
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            corr = 1.0 / logderiv(z)
        ok = np.isfinite(corr) & (np.abs(corr) < 1e-6 * np.maximum(1.0, np.abs(z)))
        z = np.where(ok, z - np.where(ok, corr, 0), z)
    return z


class _CoeffPoly:
    """Float view of an integer polynomial, scaled by its max coefficient."""

    def __init__(self, coeffs: Sequence[int]) -> None:
        m = max(abs(c) for c in coeffs)
        self.n = len(coeffs) - 1
        self.c = np.array([c / m for c in coeffs], dtype=float)
        self.rc = self.c[::-1].copy()
        self.dc = self.c[1:] * np.arange(1, self.n + 1)
        self.rdc = self.rc[1:] * np.arange(1, self.n + 1)

    @staticmethod
    def _horner(c: np.ndarray, z: np.ndarray) -> np.ndarray:
        acc = np.zeros_like(z)
        for v in c[::-1]:
            acc = acc * z + v
        return acc

    def logderiv(self, z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        out = np.empty_like(z)
        inside = np.abs(z) <= 1
        if inside.any():
            zi = z[inside]
            out[inside] = self._horner(self.dc, zi) / self._horner(self.c, zi)
        if (~inside).any():
            zo = z[~inside]
            w = 1 / zo
            out[~inside] = self.n / zo - w * w * self._horner(self.rdc, w) / self._horner(self.rc, w)
        return out

    def scaled_residual(self, z: np.ndarray) -> np.ndarray:
        """|p(z)|/(‖p‖∞ max(1,|z|)^n)."""
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape)
        inside = np.abs(z) <= 1
        out[inside] = np.abs(self._horner(self.c, z[inside]))
        out[~inside] = np.abs(self._horner(self.rc, 1 / z[~inside]))
        return out

    def error_estimate(self, z: np.ndarray, eps: float) -> np.ndarray:
        """First-order bound on the forward root error from rounding in Horner."""
        z = np.asarray(z, dtype=complex)
        out = np.empty(z.shape)
        inside = np.abs(z) <= 1
        ac, arc = np.abs(self.c), np.abs(self.rc)
        if inside.any():
            zi = z[inside]
            s = self._horner(ac, np.abs(zi).astype(complex)).real
            out[inside] = 2 * self.n * eps * s / np.abs(self._horner(self.dc, zi))
        if (~inside).any():
            w = 1 / z[~inside]
            s = self._horner(arc, np.abs(w).astype(complex)).real
            err_w = 2 * self.n * eps * s / np.abs(self._horner(self.rdc, w))
            out[~inside] = err_w * np.abs(z[~inside]) ** 2 / np.abs(z[~inside])
        return out


def _refine_mp(
    coeffs: Sequence[int], z: np.ndarray, idx: Sequence[int], bits: int
) -> tuple[np.ndarray, np.ndarray]:
    """Aberth steps at `bits` precision on the roots in idx, the others held fixed.

    Returns the updated roots and a mask of the idx roots whose step converged.
    """
    z = np.array(z, dtype=complex)
    done = np.zeros(z.size, dtype=bool)
    with mpmath.workprec(bits):
        tol = mpmath.mpf(2) ** (-(bits - 10))
        c = [mpmath.mpf(x) for x in coeffs]
        dc = [i * c[i] for i in range(1, len(c))]
        zs = [mpmath.mpc(v) for v in z]
        for k in idx:
            for _ in range(60):
                x = zs[k]
                p = mpmath.polyval(c[::-1], x)
                if p == 0:
                    done[k] = True
                    break
                L = mpmath.polyval(dc[::-1], x) / p
                S = mpmath.fsum(1 / (x - zs[j]) for j in range(len(zs)) if j != k)
                corr = 1 / (L - S)
                zs[k] = x - corr
                if abs(corr) <= tol * max(1, abs(zs[k])):
                    done[k] = True
                    break
        return np.array([complex(v) for v in zs]), done


def polish_root(p: LaurentPoly, z: complex, bits: int = 212) -> mpmath.mpc:
    """Newton on the square-free part of p from z, carried out at `bits` precision."""
    if p.is_zero:
        raise ZeroAlexander("cannot polish a root of the zero polynomial")
    f = squarefree_part(IntPoly(p.coeffs))
    with mpmath.workprec(bits):
        c = [mpmath.mpf(x) for x in reversed(f.coeffs)]
        x = mpmath.mpc(z)
        tol = mpmath.mpf(2) ** (-(bits - 8))
        for _ in range(100):
            v, dv = mpmath.polyval(c, x, derivative=True)
            if v == 0 or dv == 0:
                break
            step = v / dv
            x -= step
            if abs(step) <= tol * max(1, abs(x)):
                break
        return +x


@dataclass(frozen=True)
class RootSet:
    roots: tuple[tuple[complex, int], ...]
    source_degree: int
    residuals: tuple[float, ...] = ()
    precision: int = 53
    converged: bool = True

    def values(self) -> np.ndarray:
        """All roots repeated by multiplicity."""
        out = [z for z, m in self.roots for _ in range(m)]
        return np.array(out, dtype=complex)

    def __len__(self) -> int:
        return sum(m for _, m in self.roots)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def _closed_form(coeffs: Sequence[int]) -> np.ndarray | None:
    if len(coeffs) == 2:
        return np.array([-coeffs[0] / coeffs[1]], dtype=complex)
    if len(coeffs) == 3:
        c, b, a = (complex(x) for x in coeffs)
        disc = np.sqrt(b * b - 4 * a * c)
        q = -(b + (disc if (b.conjugate() * disc).real >= 0 else -disc)) / 2
        if q == 0:
            return np.zeros(2, dtype=complex)
        return np.array([q / a, c / q], dtype=complex)
    return None


def _roots_of_squarefree(f: IntPoly, precision: int) -> tuple[np.ndarray, int, bool]:
    """Roots of a square-free integer polynomial with precision escalation."""
    coeffs = f.coeffs
    zeros = 0
    while coeffs[zeros] == 0:
        zeros += 1
    coeffs = coeffs[zeros:]
    head = np.zeros(zeros, dtype=complex)
    closed = _closed_form(coeffs)
    if closed is not None or len(coeffs) == 1:
        vals = closed if closed is not None else np.zeros(0, dtype=complex)
        return np.concatenate([head, vals]), 53, True
    cp = _CoeffPoly(coeffs)
    n = len(coeffs) - 1
    radius = (abs(coeffs[0]) / abs(coeffs[-1])) ** (1.0 / n)
    z, moving, _ = aberth(cp.logderiv, _initial_guess(n, radius))
    z = _newton_polish(cp.logderiv, z)
    return _escalate(coeffs, cp, z, moving, precision)


def _escalate(
    coeffs: Sequence[int], cp: _CoeffPoly, z: np.ndarray, moving: np.ndarray, precision: int
) -> tuple[np.ndarray, int, bool]:
    """Re-solve, at rising precision, the roots whose error estimate is too large."""
    used = 53
    need = moving | ~(cp.error_estimate(z, 2.0**-52) < ESCALATE_TOL * np.maximum(1.0, np.abs(z)))
    ladder = [p for p in PRECISION_LADDER if p > 53 and p >= precision]
    for bits in ladder:
        if not need.any():
            break
        z, _ = _refine_mp(coeffs, z, np.nonzero(need)[0], bits)
        used = bits
        need = ~(cp.error_estimate(z, 2.0 ** (1 - bits)) < ESCALATE_TOL * np.maximum(1.0, np.abs(z)))
    return z, used, not need.any()


def find_roots(p: LaurentPoly, precision: int = 53) -> RootSet:
    """All roots of p, read as an ordinary polynomial when min_exp ≥ 0.

    For a Laurent polynomial with negative exponents the roots are those of
    t^(-min_exp)·p; with min_exp > 0 the origin is a root of that multiplicity.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no root set")
    zero_mult = max(p.min_exp, 0)
    poly = IntPoly(p.coeffs)
    roots: list[tuple[complex, int]] = []
    if zero_mult:
        roots.append((0j, zero_mult))
    used = 53
    ok_all = True
    for f, mult in squarefree_decomposition(poly):
        vals, bits, ok = _roots_of_squarefree(f, precision)
        used = max(used, bits)
        ok_all &= ok
        roots.extend((complex(z), mult) for z in vals)
    degree = zero_mult + poly.degree
    full = (0,) * zero_mult + poly.coeffs
    if len(full) > 1:
        cp = _CoeffPoly(full)
        res = tuple(float(r) for r in cp.scaled_residual(np.array([z for z, _ in roots])))
    else:
        res = ()
    return RootSet(tuple(roots), degree, res, used, ok_all)


# ---------------------------------------------------------------------------
# Alexander roots through the Burau product


def _factor_logderiv(f: IntPoly) -> Callable[[np.ndarray], np.ndarray]:
    return _CoeffPoly(f.coeffs).logderiv


def alexander_logderiv(w: BraidWord, delta_shift: int) -> Callable[[np.ndarray], np.ndarray]:
    """z ↦ Δ'(z)/Δ(z) with Δ = ±t^(-shift)·det(B_t(w) - I)/(t² + t + 1).

    det(B_t(w) - I) = (-t)^#w - tr B_t(w) + 1, with the trace streamed in
    floating point and kept in log-scaled form.
    """
    letters = w.letters
    n = w.exponent_sum()

    def logderiv(z: np.ndarray) -> np.ndarray:
        z = np.asarray(z, dtype=complex)
        tr, dtr, ls = stream_trace_with_derivative(letters, z)
        with np.errstate(over="ignore", under="ignore"):
            pw = np.exp(n * np.log(-z) - ls)
            unit = np.exp(-ls)
        D = pw - tr + unit
        dD = n * pw / z - dtr
        return dD / D - (2 * z + 1) / (z * z + z + 1) - delta_shift / z

    return logderiv


def _root_bound(coeffs: Sequence[int]) -> float:
    """Fujiwara-style bound on root moduli, computed in logs."""
    lc = math.log(abs(coeffs[-1]))
    n = len(coeffs) - 1
    best = 0.0
    for i, c in enumerate(coeffs[:-1]):
        if c:
            best = max(best, (math.log(abs(c)) - lc) / (n - i))
    return 2 * math.exp(best) + 1


def _pairing_ok(z: np.ndarray, tol: float = 1e-6) -> bool:
    """Roots of a palindromic factor come in pairs z, 1/z."""
    off = z[np.abs(np.abs(z) - 1) >= tol]
    if off.size == 0:
        return True
    return bool(np.abs(1 / off[:, None] - z[None, :]).min(axis=1).max() < tol)


def alexander_roots(w: BraidWord, precision: int = 53) -> RootSet:
    """Roots of Δ_ŵ with exact multiplicities."""
    delta = alexander_poly(w)
    if delta.is_zero:
        raise ZeroAlexander(f"Δ vanishes identically for {w}")
    if delta.span == 0:
        return RootSet((), 0)
    dm = det_minus_identity(w)
    shift = dm.min_exp
    poly = IntPoly(delta.coeffs)
    parts = squarefree_decomposition(poly)
    simple = [f for f, m in parts if m == 1]
    repeated = [(f, m) for f, m in parts if m > 1]
    roots: list[tuple[complex, int]] = []
    ok_all = True
    used = 53
    for f, m in repeated:
        vals, bits, ok = _roots_of_squarefree(f, precision)
        ok_all &= ok
        used = max(used, bits)
        roots.extend((complex(z), m) for z in vals)
    if simple:
        main = simple[0]
        base = alexander_logderiv(w, shift)
        extra = [(_factor_logderiv(f), m) for f, m in repeated]

        def logderiv(z: np.ndarray) -> np.ndarray:
            out = base(z)
            for ld, m in extra:
                out = out - m * ld(z)
            return out

        for attempt in range(3):
            z0 = _initial_guess(main.degree) * np.exp(0.7j * attempt)
            z, moving, _ = aberth(logderiv, z0, escape=_root_bound(main.coeffs))
            z = _newton_polish(logderiv, z)
            if _pairing_ok(z):
                break
        # only roots still moving get the high-precision treatment; the
        # coefficient form is far worse conditioned than the matrix product
        moving |= ~np.isfinite(z)
        z = np.where(np.isfinite(z), z, 0)
        for bits in [p for p in PRECISION_LADDER if p > 53 and p >= precision]:
            if not moving.any():
                break
            z, done = _refine_mp(main.coeffs, z, np.nonzero(moving)[0], bits)
            moving &= ~done
            used = bits
        ok_all &= not moving.any()
        roots.extend((complex(v), 1) for v in z)
    cp = _CoeffPoly(poly.coeffs)
    res = tuple(float(r) for r in cp.scaled_residual(np.array([z for z, _ in roots])))
    return RootSet(tuple(roots), poly.degree, res, used, ok_all)


# ---------------------------------------------------------------------------
# region tags


class RegionTag(enum.Flag):
    NONE = 0
    ON_CIRCLE = enum.auto()
    ARC_AR = enum.auto()
    ARC_AL = enum.auto()
    IN_REGION_T = enum.auto()
    IN_SMALL_DISK = enum.auto()
    INSIDE_DISK = enum.auto()
    OUTSIDE_DISK = enum.auto()
    T_BOUNDARY = enum.auto()

    def labels(self) -> list[str]:
        return [f.name for f in RegionTag if f and f in self and f.name]


_TAG_NAMES = {
    RegionTag.ON_CIRCLE: "OnCircle",
    RegionTag.ARC_AR: "ArcAR",
    RegionTag.ARC_AL: "ArcAL",
    RegionTag.IN_REGION_T: "InRegionT",
    RegionTag.IN_SMALL_DISK: "InSmallDisk",
    RegionTag.INSIDE_DISK: "InsideDisk",
    RegionTag.OUTSIDE_DISK: "OutsideDisk",
    RegionTag.T_BOUNDARY: "Boundary",
}


def tag_text(tag: RegionTag) -> str:
    return "|".join(name for flag, name in _TAG_NAMES.items() if flag in tag)


def region_t_values(z: complex) -> tuple[float, float]:
    """Left-hand sides of the two inequalities cutting out region T."""
    r = abs(z)
    s = math.sqrt(r)
    return s * abs(1 - z) + r**2, s * abs(1 - z + z * z) + r**3


def in_region_t(z: complex) -> bool:
    a, b = region_t_values(z)
    return a < 1 and b < 1


def classify(z: complex, tol: float = 1e-6) -> RegionTag:
    if tol <= 0:
        raise ValueError("tol must be positive")
    z = complex(z)
    r = abs(z)
    tag = RegionTag.NONE
    if abs(r - 1) < tol:
        tag |= RegionTag.ON_CIRCLE
        theta = abs(math.atan2(z.imag, z.real))
        if theta < 2 * math.pi / 3:
            tag |= RegionTag.ARC_AR
        elif theta > 2 * math.pi / 3:
            tag |= RegionTag.ARC_AL
    elif r < 1:
        tag |= RegionTag.INSIDE_DISK
    else:
        tag |= RegionTag.OUTSIDE_DISK
    a, b = region_t_values(z)
    if a < 1 and b < 1:
        tag |= RegionTag.IN_REGION_T
    if abs(max(a, b) - 1) < tol:
        tag |= RegionTag.T_BOUNDARY
    if r < SMALL_DISK_RADIUS:
        tag |= RegionTag.IN_SMALL_DISK
    return tag


# ---------------------------------------------------------------------------
# exact circle counts


@dataclass(frozen=True)
class CircleCount:
    total_on_circle: int
    on_AR: int
    on_AL: int


@dataclass(frozen=True)
class _TraceData:
    """Δ = (t - 1)^a (t + 1)^b Q with Q(t) = t^d g(t + 1/t)."""

    at_one: int
    at_minus_one: int
    strata: tuple[tuple[IntPoly, int, tuple], ...]  # (g_k, k, sturm chain)


def _strip_factor(p: LaurentPoly, root: int) -> tuple[int, LaurentPoly]:
    lin = LaurentPoly(0, (-root, 1))
    count = 0
    while not p.is_zero and p.evaluate(root) == 0:
        p = p.exact_div(lin)
        count += 1
    return count, p


# arc and circle counts on one Δ share the Sturm chains
@functools.lru_cache(maxsize=32)
def _trace_data(delta: LaurentPoly) -> _TraceData:
    if delta.is_zero:
        raise ZeroAlexander("Δ vanishes identically")
    a, q = _strip_factor(delta, 1)
    b, q = _strip_factor(q, -1)
    q = q.normalized()
    if not q.is_symmetric():
        raise NotSymmetric(f"{q} is not palindromic")
    g = to_trace_coords(q)
    strata = []
    for gk, k in squarefree_decomposition(g):
        strata.append((gk, k, tuple(map(tuple, sturm_chain(gk)))))
    return _TraceData(a, b, tuple(strata))


def _count_closed(gk: IntPoly, chain, lo: Fraction, hi: Fraction) -> int:
    """Distinct roots of gk in [lo, hi]."""
    n = sturm_count(gk, lo, hi, chain=[list(c) for c in chain])
    if gk.sign_at(lo) == 0:
        n += 1
    return n


def count_circle_roots_exact(w: BraidWord | LaurentPoly) -> CircleCount:
    """Multiplicity-weighted unit-circle root counts of Δ by Sturm chains.

    Factors (t - 1)^a and (t + 1)^b are split off first; what remains is always
    palindromic with even degree, so every link is handled, not only knots.
    """
    delta = alexander_poly(w) if isinstance(w, BraidWord) else w
    data = _trace_data(delta)
    on_ar = data.at_one
    on_al = data.at_minus_one
    total = on_ar + on_al
    m1, p2, m2 = Fraction(-1), Fraction(2), Fraction(-2)
    for gk, k, chain in data.strata:
        ch = [list(c) for c in chain]
        n_r = sturm_count(gk, m1, p2, chain=ch) - (gk.sign_at(p2) == 0)
        n_l = sturm_count(gk, m2, m1, chain=ch) - (gk.sign_at(m1) == 0)
        at_zeta = 1 if gk.sign_at(m1) == 0 else 0
        on_ar += 2 * k * n_r
        on_al += 2 * k * n_l
        total += 2 * k * (n_r + n_l + at_zeta)
    return CircleCount(total, on_ar, on_al)


def _rational_cos(theta: float) -> Fraction:
    """2cos θ as an exact rational, exact at the special angles used here."""
    special = {
        0.0: Fraction(2),
        math.pi / 3: Fraction(1),
        math.pi / 2: Fraction(0),
        2 * math.pi / 3: Fraction(-1),
        math.pi: Fraction(-2),
    }
    for ang, val in special.items():
        if abs(theta - ang) < 1e-15:
            return val
    return Fraction(2 * math.cos(theta))


def count_arc_roots_exact(w: BraidWord | LaurentPoly, theta1: float, theta2: float) -> int:
    """Roots e^{iθ} with θ ∈ [θ₁, θ₂] ⊂ [0, π], counted with multiplicity."""
    if not 0 <= theta1 <= theta2 <= math.pi:
        raise ValueError("need 0 ≤ θ₁ ≤ θ₂ ≤ π")
    delta = alexander_poly(w) if isinstance(w, BraidWord) else w
    data = _trace_data(delta)
    lo, hi = _rational_cos(theta2), _rational_cos(theta1)
    count = 0
    if hi == 2:
        count += data.at_one
    if lo == -2:
        count += data.at_minus_one
    for gk, k, chain in data.strata:
        count += k * _count_closed(gk, chain, lo, hi)
    return count


def arc_lower_bound(w: BraidWord, theta1: float, theta2: float) -> int:
    if not 0 <= theta1 < theta2 <= 2 * math.pi / 3 + 1e-15:
        raise ValueError("need 0 ≤ θ₁ < θ₂ ≤ 2π/3")
    if alexander_poly(w).is_zero:
        raise ZeroAlexander(f"Δ vanishes identically for {w}")
    raw = (theta2 - theta1) / (2 * math.pi) * abs(w.exponent_sum()) - 2
    return max(0, math.ceil(raw - 1e-12))


def _ceil_parity(r: Fraction, parity: int) -> int:
    n = math.ceil(r)
    if n % 2 != parity:
        n += 1
    return n


def two_thirds_bound_from_degree(degree: int, components: int) -> int:
    r = Fraction(2 * (degree - 1), 3)
    return _ceil_parity(r, 0 if components % 2 else 1)


def two_thirds_bound(w: BraidWord) -> int:
    if not w.is_positive() or w.is_generator_power():
        raise NotApplicable("needs a positive word that is not a power of one generator")
    degree = alexander_poly(w).max_exp
    return two_thirds_bound_from_degree(degree, w.closure_components())


def real_roots_in_unit_interval(w: BraidWord | LaurentPoly, route: str = "trace") -> int:
    """Distinct roots of Δ in the open interval (0, 1), counted exactly.

    The "trace" route uses r ↦ r + 1/r, which sends (0, 1) onto (2, ∞) and
    reuses the half-degree chains of the circle counts; "direct" runs a Sturm
    chain on Δ itself.
    """
    delta = alexander_poly(w) if isinstance(w, BraidWord) else w
    if delta.is_zero:
        raise ZeroAlexander(f"Δ vanishes identically for {w}")
    if route == "trace":
        strata = _trace_data(delta).strata
        return sum(sturm_count(gk, 2, None, chain=[list(c) for c in chain]) for gk, _, chain in strata)
    if route != "direct":
        raise ValueError(f"unknown route {route!r}")
    poly = IntPoly(delta.coeffs)
    n = sturm_count(poly, Fraction(0), Fraction(1))
    return n - (poly.sign_at(1) == 0)


# ---------------------------------------------------------------------------
# RH polynomials


@dataclass(frozen=True)
class RHPolys:
    f: IntPoly
    h: IntPoly
    b: tuple[int, ...]

    @property
    def all_positive(self) -> bool:
        return all(x > 0 for x in self.b)


def rh_polynomials(w: BraidWord) -> RHPolys:
    if not w.is_positive():
        raise NotPositive(f"{w} has inverse letters")
    if w.closure_components() != 1:
        raise NotAKnot(f"closure of {w} is not a knot")
    dm = det_minus_identity(w)
    m = len(w) // 2
    if dm.min_exp != 0 or dm.max_exp != 2 * m:
        raise ValueError("unexpected support of det(B - I)")
    f = to_trace_coords(dm)
    a = list(f.coeffs) + [0] * (m + 1 - len(f.coeffs))
    b = tuple((-1) ** k * a[m - 2 * k] for k in range(m // 2 + 1))
    h_coeffs = [0] * (m + 1)
    for k, bk in enumerate(b):
        h_coeffs[m - 2 * k] = bk
    return RHPolys(f, IntPoly(tuple(h_coeffs)), b)


# ---------------------------------------------------------------------------
# empirical measures


@dataclass(frozen=True)
class ArcSpec:
    """Circular arc through real_crossing and ζ₃, ζ̄₃ (symmetric about R)."""

    real_crossing: float = -0.782
    endpoint: complex = ZETA3

    @property
    def center(self) -> float:
        x0, e = self.real_crossing, self.endpoint
        # |x0 - c|² = |e - c|² with c real
        return (abs(e) ** 2 - x0 * x0) / (2 * (e.real - x0))

    @property
    def radius(self) -> float:
        return abs(self.real_crossing - self.center)

    def project(self, z: complex) -> float | None:
        """Arc angle of the radial projection of z (from the real crossing, clockwise)."""
        c, r = self.center, self.radius
        u = z / abs(z)
        # solve |s·u - c| = r for s > 0
        bq = -2 * c * u.real
        disc = bq * bq - 4 * (c * c - r * r)
        if disc < 0:
            return None
        s = (-bq + math.sqrt(disc)) / 2
        p = s * u - c
        phi = math.atan2(p.imag, p.real)
        # angle measured from the crossing point (at angle π about the center)
        return math.pi - phi if phi >= 0 else -(math.pi + phi)


@dataclass
class EmpiricalMeasure:
    angle_edges: np.ndarray
    angle_counts: np.ndarray
    arc_edges: np.ndarray
    arc_counts: np.ndarray
    points: list[tuple[float, float, int]] = field(default_factory=list)
    total: int = 0


def empirical_measure(
    root_sets: RootSet | Iterable[RootSet],
    bins: int = 60,
    arc: ArcSpec | None = None,
    arc_bins: int = 40,
    tol: float = 1e-6,
    arc_window: Callable[[complex], bool] | None = None,
) -> EmpiricalMeasure:
    """Histograms behind the circle and arc plots, plus raw (re, im, mult)."""
    if isinstance(root_sets, RootSet):
        root_sets = [root_sets]
    arc = arc or ArcSpec()
    if arc_window is None:
        def arc_window(z: complex) -> bool:
            return abs(z) < 1 - tol and z.real < 0

    angles: list[float] = []
    arc_angles: list[float] = []
    points: list[tuple[float, float, int]] = []
    total = 0
    for rs in root_sets:
        for z, m in rs.roots:
            total += m
            points.append((z.real, z.imag, m))
            if abs(abs(z) - 1) < tol and z.imag >= 0:
                angles.extend([math.atan2(z.imag, z.real)] * m)
            if z != 0 and arc_window(z) and z.imag >= 0:
                a = arc.project(z)
                if a is not None:
                    arc_angles.extend([a] * m)
    angle_counts, angle_edges = np.histogram(angles, bins=bins, range=(0.0, math.pi))
    span = math.pi - math.atan2(arc.endpoint.imag, arc.endpoint.real - arc.center)
    arc_counts, arc_edges = np.histogram(arc_angles, bins=arc_bins, range=(0.0, span))
    return EmpiricalMeasure(angle_edges, angle_counts, arc_edges, arc_counts, points, total)


def pairing_defect(rs: RootSet, tol: float = 1e-6) -> float:
    """Largest distance from an off-circle root's inverse to the nearest root."""
    vals = rs.values()
    off = vals[np.abs(np.abs(vals) - 1) >= tol]
    if off.size == 0:
        return 0.0
    inv = 1 / off
    d = np.abs(inv[:, None] - vals[None, :]).min(axis=1)
    return float(d.max())
