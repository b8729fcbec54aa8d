"""Exact integer Laurent polynomials and ordinary integer polynomials.

Coefficients are Python ints throughout, so nothing ever overflows.  Large
products go through Kronecker substitution (pack the coefficient vector into
one big integer, multiply, unpack), which keeps Burau traces of words with a
few hundred letters cheap.

The module also hosts the exact real-root machinery used by the circle-root
counts: primitive pseudo-remainder sequences, gcd, and Sturm chains.
"""

from __future__ import annotations

import enum
import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, float, complex]


class NotDivisible(ArithmeticError):
    """Raised by exact division when the remainder is nonzero."""


class NotSymmetric(ValueError):
    """Raised when a polynomial lacks the palindromic symmetry we need."""


class Definiteness(enum.Enum):
    POSITIVE = "Positive"
    NEGATIVE = "Negative"
    ZERO = "Zero"
    INDEFINITE = "Indefinite"

    @property
    def is_definite(self) -> bool:
        return self is not Definiteness.INDEFINITE


# ---------------------------------------------------------------------------
# coefficient-list kernels (ascending order, no trimming guarantees)

_KRONECKER_MIN = 24


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return out


def _pack(c: Sequence[int], nbytes: int) -> int:
    pos = b"".join(x.to_bytes(nbytes, "little") if x > 0 else bytes(nbytes) for x in c)
    neg = b"".join((-x).to_bytes(nbytes, "little") if x < 0 else bytes(nbytes) for x in c)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _unpack(v: int, nbytes: int, length: int) -> list[int]:
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes((bytes(nbytes - 1) + b"\x80") * length, "little")
    raw = (v + offset).to_bytes(nbytes * length, "little")
    return [
        int.from_bytes(raw[i : i + nbytes], "little") - half
        for i in range(0, nbytes * length, nbytes)
    ]


def _mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    if min(len(a), len(b)) < _KRONECKER_MIN:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return out
    ma = max(abs(x) for x in a)
    mb = max(abs(x) for x in b)
    bits = ma.bit_length() + mb.bit_length() + min(len(a), len(b)).bit_length() + 2
    nbytes = (bits + 7) // 8
    prod = _pack(a, nbytes) * _pack(b, nbytes)
    return _unpack(prod, nbytes, len(a) + len(b) - 1)


def _divmod_exact(p: Sequence[int], q: Sequence[int]) -> tuple[list[int], list[int]]:
    """Long division over Z; raises NotDivisible if a quotient digit is fractional."""
    r = list(p)
    dq = len(q) - 1
    lc = q[-1]
    if len(r) <= dq:
        return [], _trim(r)
    quot = [0] * (len(r) - dq)
    for k in range(len(r) - 1, dq - 1, -1):
        top = r[k]
        if top == 0:
            continue
        c, rem = divmod(top, lc)
        if rem:
            raise NotDivisible("leading coefficient does not divide")
        quot[k - dq] = c
        base = k - dq
        for i, y in enumerate(q):
            r[base + i] -= c * y
    return _trim(quot), _trim(r[:dq])


def _content(c: Sequence[int]) -> int:
    g = 0
    for x in c:
        g = math.gcd(g, x)
        if g == 1:
            break
    return g


def _primitive(c: list[int]) -> list[int]:
    g = _content(c)
    if g > 1:
        c = [x // g for x in c]
    return c


def _prem(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Pseudo-remainder with a positive multiplier |lc(b)|^(da-db+1)."""
    r = list(a)
    db = len(b) - 1
    lc = b[-1]
    alc = abs(lc)
    steps = len(r) - db
    for _ in range(steps):
        _trim(r)
        if len(r) <= db:
            # remaining multiplier factors are positive; skipping them keeps the sign
            break
        top = r[-1]
        shift = len(r) - 1 - db
        r = [alc * x for x in r]
        f = top if lc > 0 else -top
        for i, y in enumerate(b):
            r[shift + i] -= f * y
        r.pop()
    return _trim(r)


def _derivative(c: Sequence[int]) -> list[int]:
    return [i * c[i] for i in range(1, len(c))]


# primes just below 2^61 for the modular gcd
_GCD_PRIMES = (
    2305843009213693951, 2305843009213693921, 2305843009213693907, 2305843009213693723,
    2305843009213693693, 2305843009213693669, 2305843009213693613, 2305843009213693561,
    2305843009213693549, 2305843009213693487, 2305843009213693421, 2305843009213693373,
    2305843009213693277, 2305843009213693193, 2305843009213693153, 2305843009213693133,
    2305843009213693123, 2305843009213693109, 2305843009213693093, 2305843009213693013,
    2305843009213692967, 2305843009213692937, 2305843009213692799, 2305843009213692757,
)


def _gcd_mod(a: Sequence[int], b: Sequence[int], P: int) -> list[int]:
    """Monic gcd over GF(P)."""
    x = _trim([c % P for c in a])
    y = _trim([c % P for c in b])
    while y:
        inv = pow(y[-1], P - 2, P)
        dy = len(y) - 1
        while len(x) > dy:
            f = x[-1] * inv % P
            s = len(x) - 1 - dy
            for i, c in enumerate(y):
                x[s + i] = (x[s + i] - f * c) % P
            x = _trim(x)
        x, y = y, x
    inv = pow(x[-1], P - 2, P)
    return [c * inv % P for c in x]


def _divides(q: Sequence[int], p: Sequence[int]) -> bool:
    try:
        return not _divmod_exact(p, q)[1]
    except NotDivisible:
        return False


def _gcd_modular(a: list[int], b: list[int]) -> list[int] | None:
    """gcd of primitive a, b by CRT over word-size primes, verified by division.

    Returns None if the prime list runs out before the candidate divides both.
    """
    lcg = math.gcd(a[-1], b[-1])
    best = None
    G: list[int] = []
    M = 1
    for P in _GCD_PRIMES:
        if a[-1] % P == 0 or b[-1] % P == 0:
            continue
        g = _gcd_mod(a, b, P)
        d = len(g) - 1
        if d == 0:
            return [1]
        if best is not None and d > best:
            continue  # unlucky prime
        g = [c * lcg % P for c in g]
        if best is None or d < best:
            best, G, M = d, g, P
        else:
            inv = pow(M, -1, P)
            G = [x + M * ((y - x) * inv % P) for x, y in zip(G, g)]
            M *= P
        half = M // 2
        cand = _primitive([x - M if x > half else x for x in G])
        cand = _normalize_sign(cand)
        if _divides(cand, a) and _divides(cand, b):
            return cand
    return None


def _gcd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Primitive gcd over Z[x] with positive leading coefficient.

    A modular gcd handles the common case quickly; the primitive PRS is the
    fallback.
    """
    a = _primitive(_trim(list(a)))
    b = _primitive(_trim(list(b)))
    if not a:
        return _normalize_sign(b)
    if not b:
        return _normalize_sign(a)
    if len(a) < len(b):
        a, b = b, a
    if len(b) == 1:
        return [1]
    fast = _gcd_modular(a, b)
    if fast is not None:
        return fast
    while b:
        r = _prem(a, b)
        a, b = b, _primitive(r)
    return _normalize_sign(a)


def _normalize_sign(c: list[int]) -> list[int]:
    if c and c[-1] < 0:
        return [-x for x in c]
    return c


def _sign_at(c: Sequence[int], x: Fraction) -> int:
    """Exact sign of the polynomial at a rational point."""
    num, den = x.numerator, x.denominator
    v = 0
    dpow = 1
    for coef in reversed(c):
        v = v * num + coef * dpow
        dpow *= den
    # v = den^(n) * p(x) up to a positive factor
    return (v > 0) - (v < 0)


def _sign_at_inf(c: Sequence[int], negative: bool) -> int:
    lead = c[-1]
    s = (lead > 0) - (lead < 0)
    if negative and (len(c) - 1) % 2:
        s = -s
    return s


# ---------------------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class LaurentPoly:
    """Σ coeffs[i]·t^(min_exp+i) with Python int coefficients, stored trimmed."""

    min_exp: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = self.coeffs
        if not isinstance(c, tuple):
            c = tuple(c)
        lo = 0
        while lo < len(c) and c[lo] == 0:
            lo += 1
        hi = len(c)
        while hi > lo and c[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            object.__setattr__(self, "min_exp", 0)
            object.__setattr__(self, "coeffs", ())
        elif lo or hi != len(c) or c is not self.coeffs:
            object.__setattr__(self, "min_exp", self.min_exp + lo)
            object.__setattr__(self, "coeffs", tuple(c[lo:hi]))

    # constructors -----------------------------------------------------------
    @classmethod
    def zero(cls) -> LaurentPoly:
        return cls(0, ())

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls(0, (1,))

    @classmethod
    def monomial(cls, coef: int, exp: int) -> LaurentPoly:
        return cls(exp, (coef,))

    @classmethod
    def from_terms(cls, terms: dict[int, int]) -> LaurentPoly:
        terms = {e: c for e, c in terms.items() if c}
        if not terms:
            return cls.zero()
        lo, hi = min(terms), max(terms)
        return cls(lo, tuple(terms.get(e, 0) for e in range(lo, hi + 1)))

    # basic queries ----------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def max_exp(self) -> int:
        return self.min_exp + len(self.coeffs) - 1

    @property
    def span(self) -> int:
        """Degree span; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, exp: int) -> int:
        i = exp - self.min_exp
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def terms(self) -> dict[int, int]:
        return {self.min_exp + i: c for i, c in enumerate(self.coeffs) if c}

    def norm_inf(self) -> int:
        return max((abs(c) for c in self.coeffs), default=0)

    # arithmetic -------------------------------------------------------------
    def __add__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        lo = min(self.min_exp, other.min_exp)
        a = [0] * (self.min_exp - lo) + list(self.coeffs)
        b = [0] * (other.min_exp - lo) + list(other.coeffs)
        return LaurentPoly(lo, tuple(_add(a, b)))

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly(self.min_exp, tuple(-c for c in self.coeffs))

    def __sub__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        return self + (-other)

    def __rsub__(self, other: int) -> LaurentPoly:
        return LaurentPoly(0, (other,)) - self

    def __mul__(self, other: LaurentPoly | int) -> LaurentPoly:
        if isinstance(other, int):
            return self.scalar_mul(other)
        if not self.coeffs or not other.coeffs:
            return LaurentPoly.zero()
        if len(other.coeffs) == 1:
            return self.mul_monomial(other.coeffs[0], other.min_exp)
        if len(self.coeffs) == 1:
            return other.mul_monomial(self.coeffs[0], self.min_exp)
        return LaurentPoly(self.min_exp + other.min_exp, tuple(_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def scalar_mul(self, k: int) -> LaurentPoly:
        if k == 0:
            return LaurentPoly.zero()
        return LaurentPoly(self.min_exp, tuple(k * c for c in self.coeffs))

    def mul_monomial(self, coef: int, exp: int) -> LaurentPoly:
        """Multiply by coef·t^exp."""
        if coef == 1:
            return LaurentPoly(self.min_exp + exp, self.coeffs)
        if coef == -1:
            return LaurentPoly(self.min_exp + exp, tuple(-c for c in self.coeffs))
        return LaurentPoly(self.min_exp + exp, tuple(coef * c for c in self.coeffs))

    def shift(self, exp: int) -> LaurentPoly:
        return LaurentPoly(self.min_exp + exp, self.coeffs)

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self.coeffs) == 1 and abs(self.coeffs[0]) == 1:
                return LaurentPoly(self.min_exp * n, (self.coeffs[0] ** (-n),))
            raise ValueError("negative power of a non-unit")
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def exact_div(self, q: LaurentPoly) -> LaurentPoly:
        """Return self/q; raise NotDivisible unless q divides self in Z[t, 1/t]."""
        if q.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero:
            return self
        quot, rem = _divmod_exact(self.coeffs, q.coeffs)
        if rem:
            raise NotDivisible(f"{self} is not divisible by {q}")
        return LaurentPoly(self.min_exp - q.min_exp, tuple(quot))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = LaurentPoly(0, (other,))
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.min_exp == other.min_exp and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.min_exp, self.coeffs))

    # substitutions ----------------------------------------------------------
    def substitute_neg(self) -> LaurentPoly:
        """p(-t)."""
        return LaurentPoly(
            self.min_exp,
            tuple(c if (self.min_exp + i) % 2 == 0 else -c for i, c in enumerate(self.coeffs)),
        )

    def reciprocal(self) -> LaurentPoly:
        """p(1/t)."""
        return LaurentPoly(-self.max_exp, tuple(reversed(self.coeffs))) if self.coeffs else self

    def derivative(self) -> LaurentPoly:
        return LaurentPoly(
            self.min_exp - 1, tuple((self.min_exp + i) * c for i, c in enumerate(self.coeffs))
        )

    def normalized(self) -> LaurentPoly:
        """Unit normalization: lowest exponent 0, positive constant term."""
        if not self.coeffs:
            return self
        c = self.coeffs if self.coeffs[0] > 0 else tuple(-x for x in self.coeffs)
        return LaurentPoly(0, c)

    def centered(self) -> tuple[int, LaurentPoly]:
        """Split off t^d so that the rest is supported on [-d', d'] symmetrically."""
        if self.span % 2:
            raise NotSymmetric("odd degree span cannot be centered")
        d = self.min_exp + self.span // 2
        return d, self.shift(-d)

    def is_symmetric(self) -> bool:
        """True if p(1/t) = t^(-e) p(t) with a plus sign after centering."""
        return self.coeffs == self.coeffs[::-1]

    # evaluation -------------------------------------------------------------
    def __call__(self, z: Number) -> Number:
        return self.evaluate(z)

    def evaluate(self, z: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        if self.min_exp:
            acc = acc * z**self.min_exp
        return acc

    def evaluate_exact(self, z: complex) -> complex:
        """Value at a float point with a single final rounding.

        A float is a dyadic rational, so z = (X + iY)/2^s and Horner runs in
        Gaussian integers; no cancellation error however large the coefficients.
        """
        z = complex(z)
        if not self.coeffs:
            return 0j
        fr, fi = Fraction(z.real), Fraction(z.imag)
        den = max(fr.denominator, fi.denominator)
        X, Y = int(fr * den), int(fi * den)
        if self.min_exp < 0 and X == 0 and Y == 0:
            raise ZeroDivisionError("negative powers of t at t = 0")
        d = len(self.coeffs) - 1
        hr, hi = 0, 0
        for k in range(d, -1, -1):
            hr, hi = hr * X - hi * Y + self.coeffs[k] * den ** (d - k), hr * Y + hi * X
        # value = H / den^d · z^min_exp
        scale = den**d
        m = self.min_exp
        if m > 0:
            pr, pi = 1, 0
            for _ in range(m):
                pr, pi = pr * X - pi * Y, pr * Y + pi * X
            hr, hi = hr * pr - hi * pi, hr * pi + hi * pr
            scale *= den**m
        elif m < 0:
            pr, pi = 1, 0
            for _ in range(-m):
                pr, pi = pr * X + pi * Y, pi * X - pr * Y  # times conj(z)
            hr, hi = hr * pr - hi * pi, hr * pi + hi * pr
            scale = Fraction(scale, den ** (-m)) * (X * X + Y * Y) ** (-m)
        return complex(float(Fraction(hr) / scale), float(Fraction(hi) / scale))

    def is_definite(self) -> Definiteness:
        if not self.coeffs:
            return Definiteness.ZERO
        pos = any(c > 0 for c in self.coeffs)
        neg = any(c < 0 for c in self.coeffs)
        if pos and neg:
            return Definiteness.INDEFINITE
        return Definiteness.POSITIVE if pos else Definiteness.NEGATIVE

    # conversions ------------------------------------------------------------
    def to_intpoly(self) -> IntPoly:
        if self.min_exp < 0:
            raise ValueError("negative exponents present")
        return IntPoly((0,) * self.min_exp + self.coeffs)

    def to_text(self) -> str:
        if not self.coeffs:
            return "0"
        parts = [f"{c}*t^{e}" for e, c in sorted(self.terms().items())]
        return " + ".join(parts).replace("+ -", "- ")

    @classmethod
    def parse(cls, text: str) -> LaurentPoly:
        """Inverse of to_text; also accepts the bare forms 't', '-t^3', '5'."""
        s = text.replace(" ", "").replace("−", "-")
        if s in ("", "0"):
            return cls.zero()
        terms: dict[int, int] = {}
        for m in re.finditer(r"([+-]?)(\d*)(\*?t(?:\^\(?(-?\d+)\)?)?)?", s):
            if not m.group(0):
                continue
            sign = -1 if m.group(1) == "-" else 1
            digits, tpart, exp = m.group(2), m.group(3), m.group(4)
            if not digits and not tpart:
                raise ValueError(f"cannot parse {text!r}")
            coef = int(digits) if digits else 1
            e = (int(exp) if exp is not None else 1) if tpart else 0
            terms[e] = terms.get(e, 0) + sign * coef
        return cls.from_terms(terms)

    def to_json(self) -> dict:
        return {"min_exp": self.min_exp, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj: dict | str) -> LaurentPoly:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["min_exp"]), tuple(int(c) for c in obj["coeffs"]))

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


T = LaurentPoly(1, (1,))


def exact_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p.exact_div(q)


def is_definite(p: LaurentPoly) -> Definiteness:
    return p.is_definite()


@dataclass(frozen=True, slots=True)
class IntPoly:
    """Ordinary integer polynomial, coefficients from degree 0 upward."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        c = list(self.coeffs)
        _trim(c)
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def x(cls) -> IntPoly:
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self) -> int:
        return self.coeffs[-1]

    def __add__(self, other: IntPoly) -> IntPoly:
        return IntPoly(tuple(_add(self.coeffs, other.coeffs)))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly | int) -> IntPoly:
        if isinstance(other, int):
            return IntPoly(tuple(other * c for c in self.coeffs))
        return IntPoly(tuple(_mul(self.coeffs, other.coeffs)))

    __rmul__ = __mul__

    def __pow__(self, n: int) -> IntPoly:
        out = IntPoly((1,))
        for _ in range(n):
            out = out * self
        return out

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(_derivative(self.coeffs)))

    def content(self) -> int:
        return _content(self.coeffs)

    def primitive(self) -> IntPoly:
        return _normalize_poly(IntPoly(tuple(_primitive(list(self.coeffs)))))

    def exact_div(self, q: IntPoly) -> IntPoly:
        quot, rem = _divmod_exact(self.coeffs, q.coeffs)
        if rem:
            raise NotDivisible("not an exact divisor")
        return IntPoly(tuple(quot))

    def gcd(self, other: IntPoly) -> IntPoly:
        return IntPoly(tuple(_gcd(self.coeffs, other.coeffs)))

    def evaluate(self, z: Number) -> Number:
        acc: Number = 0
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    __call__ = evaluate

    def sign_at(self, x: Fraction | int) -> int:
        return _sign_at(self.coeffs, Fraction(x))

    def compose(self, other: IntPoly) -> IntPoly:
        out = IntPoly(())
        for c in reversed(self.coeffs):
            out = out * other + IntPoly((c,))
        return out

    def to_laurent(self) -> LaurentPoly:
        return LaurentPoly(0, self.coeffs)

    def to_text(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts = [f"{c}*{var}^{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.to_text()


def _normalize_poly(p: IntPoly) -> IntPoly:
    if p.coeffs and p.coeffs[-1] < 0:
        return -p
    return p


# ---------------------------------------------------------------------------
# trace coordinates


def chebyshev_like(k: int) -> IntPoly:
    """p_k with t^k + t^-k = p_k(t + 1/t); p_0 = 2, p_1 = x."""
    return _chebyshev_table(k)[k]


_CHEB_CACHE: list[list[int]] = [[2], [0, 1]]


def _chebyshev_table(k: int) -> list[IntPoly]:
    while len(_CHEB_CACHE) <= k:
        a, b = _CHEB_CACHE[-2], _CHEB_CACHE[-1]
        nxt = [0] + b
        for i, c in enumerate(a):
            nxt[i] -= c
        _CHEB_CACHE.append(nxt)
    return [IntPoly(tuple(c)) for c in _CHEB_CACHE[: k + 1]]


def to_trace_coords(delta: LaurentPoly) -> IntPoly:
    """g with delta = t^d · g(t + 1/t) for a palindromic delta of even span."""
    if delta.is_zero:
        raise NotSymmetric("zero polynomial")
    if not delta.is_symmetric():
        raise NotSymmetric(f"{delta} is not palindromic")
    _, cen = delta.centered()
    d = cen.max_exp
    for k in range(len(_CHEB_CACHE), d + 1):
        _chebyshev_table(k)
    out = [0] * (d + 1)
    out[0] = cen.coeff(0)
    for k in range(1, d + 1):
        c = cen.coeff(k)
        if c:
            for i, v in enumerate(_CHEB_CACHE[k]):
                out[i] += c * v
    return IntPoly(tuple(out))


def from_trace_coords(g: IntPoly) -> LaurentPoly:
    """Centered Laurent polynomial g(t + 1/t)."""
    x = LaurentPoly(-1, (1, 0, 1))
    out = LaurentPoly.zero()
    for c in reversed(g.coeffs):
        out = out * x + LaurentPoly(0, (c,))
    return out


# ---------------------------------------------------------------------------
# Sturm chains


def sturm_chain(g: IntPoly) -> list[list[int]]:
    """Sturm sequence of g (assumed square-free) via a primitive PRS."""
    a = _primitive(list(g.coeffs))
    if a[-1] < 0:
        a = [-c for c in a]
    b = _primitive(_derivative(a))
    chain = [a]
    if not b:
        return chain
    chain.append(b)
    while len(b) > 1:
        r = _prem(a, b)
        if not r:
            break
        r = [-c for c in _primitive(r)]
        chain.append(r)
        a, b = b, r
    return chain


def _variations(chain: list[list[int]], x: Fraction | None, negative: bool = False) -> int:
    count = 0
    last = 0
    for c in chain:
        s = _sign_at_inf(c, negative) if x is None else _sign_at(c, x)
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def squarefree_part(g: IntPoly) -> IntPoly:
    if g.degree < 1:
        return g
    d = g.gcd(g.derivative())
    if d.degree < 1:
        return g.primitive()
    return g.primitive().exact_div(d).primitive()


def sturm_count(
    g: IntPoly,
    a: Fraction | int | None,
    b: Fraction | int | None,
    chain: list[list[int]] | None = None,
) -> int:
    """Number of distinct real roots of g in (a, b]; None means an infinite end.

    Works for any endpoints: with zero-skipping, the variation count of a
    square-free Sturm chain is right-continuous, so roots at a are excluded
    and roots at b included without nudging.
    """
    if g.is_zero:
        raise ValueError("zero polynomial")
    if chain is None:
        chain = sturm_chain(squarefree_part(g))
    va = _variations(chain, None if a is None else Fraction(a), negative=True)
    vb = _variations(chain, None if b is None else Fraction(b), negative=False)
    return va - vb


def cauchy_bound(g: IntPoly) -> int:
    """Integer bound B with every real root of g in [-B, B]."""
    lc = abs(g.coeffs[-1])
    return 1 + max((abs(c) for c in g.coeffs[:-1]), default=0) // lc + 1
