"""Words in the 3-strand braid group and their Garside combinatorics.

Letters are signed generator indices: +1 = σ₁, +2 = σ₂, -1 = σ₁⁻¹, -2 = σ₂⁻¹.
The text form uses a, b, A, B for the same four letters.

Normal forms are left-greedy: Ω^k w₁…w_n with each w_i one of the four proper
simple braids σ₁, σ₂, σ₁σ₂, σ₂σ₁ and every pair (w_i, w_{i+1}) left-weighted.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from itertools import groupby
from typing import Iterable, Sequence

_CHAR_TO_LETTER = {"a": 1, "b": 2, "A": -1, "B": -2}
_LETTER_TO_CHAR = {v: k for k, v in _CHAR_TO_LETTER.items()}


class EmptyFactors(ValueError):
    """Operation needs at least one non-Ω factor."""


class NotPositive(ValueError):
    """Operation is only defined for positive braids."""


@dataclass(frozen=True, slots=True)
class BraidWord:
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        letters = tuple(self.letters)
        for x in letters:
            if x not in (1, 2, -1, -2):
                raise ValueError(f"bad braid letter {x!r}")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, text: str) -> BraidWord:
        text = text.strip()
        try:
            return cls(tuple(_CHAR_TO_LETTER[ch] for ch in text))
        except KeyError as exc:
            raise ValueError(f"bad character {exc.args[0]!r} in braid word {text!r}") from None

    @classmethod
    def from_powers(cls, exponents: Sequence[int], start: int = 1) -> BraidWord:
        """σ_start^{e₀} σ_other^{e₁} … with alternating generators."""
        out: list[int] = []
        gen = start
        for e in exponents:
            out.extend([gen if e > 0 else -gen] * abs(e))
            gen = 3 - gen
        return cls(tuple(out))

    def __str__(self) -> str:
        return "".join(_LETTER_TO_CHAR[x] for x in self.letters)

    def __repr__(self) -> str:
        return f"BraidWord({str(self)!r})"

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __mul__(self, other: BraidWord) -> BraidWord:
        return BraidWord(self.letters + other.letters)

    def __pow__(self, n: int) -> BraidWord:
        if n < 0:
            return self.inverse() ** (-n)
        return BraidWord(self.letters * n)

    def inverse(self) -> BraidWord:
        return BraidWord(tuple(-x for x in reversed(self.letters)))

    def swapped(self) -> BraidWord:
        """Exchange σ₁ and σ₂ (conjugation by Ω)."""
        return BraidWord(tuple(_swap_letter(x) for x in self.letters))

    def is_positive(self) -> bool:
        return all(x > 0 for x in self.letters)

    def is_generator_power(self) -> bool:
        """True for σ_i^n (n ≥ 0 any sign), including the empty word."""
        return len({abs(x) for x in self.letters}) <= 1

    def exponent_sum(self) -> int:
        return sum(1 if x > 0 else -1 for x in self.letters)

    def closure_components(self) -> int:
        return closure_components(self)


def _swap_letter(x: int) -> int:
    return (3 - abs(x)) * (1 if x > 0 else -1)


def exponent_sum(w: BraidWord) -> int:
    return w.exponent_sum()


def permutation(w: BraidWord) -> tuple[int, int, int]:
    """Image in Sym₃, acting left to right on positions 0, 1, 2."""
    perm = [0, 1, 2]
    for x in w.letters:
        i = abs(x) - 1
        perm[i], perm[i + 1] = perm[i + 1], perm[i]
    return tuple(perm)  # type: ignore[return-value]


def closure_components(w: BraidWord) -> int:
    perm = permutation(w)
    seen = [False] * 3
    cycles = 0
    for start in range(3):
        if not seen[start]:
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
    return cycles


# ---------------------------------------------------------------------------
# simple braids of B₃


class Simple(enum.IntEnum):
    E = 0
    S1 = 1
    S2 = 2
    S12 = 3
    S21 = 4
    D = 5

    @property
    def letters(self) -> tuple[int, ...]:
        return _SIMPLE_WORDS[self]

    @property
    def label(self) -> str:
        return self.name.lower()


_SIMPLE_WORDS = {
    Simple.E: (),
    Simple.S1: (1,),
    Simple.S2: (2,),
    Simple.S12: (1, 2),
    Simple.S21: (2, 1),
    Simple.D: (1, 2, 1),
}
_WORD_TO_SIMPLE = {v: k for k, v in _SIMPLE_WORDS.items()}
_WORD_TO_SIMPLE[(2, 1, 2)] = Simple.D


def _simple_of(word: tuple[int, ...]) -> Simple | None:
    return _WORD_TO_SIMPLE.get(word)


def _build_tables():
    n = len(Simple)
    mul: list[list[Simple | None]] = [[None] * n for _ in range(n)]
    for x in Simple:
        for y in Simple:
            mul[x][y] = _simple_of(x.letters + y.letters)
    quo: list[list[Simple | None]] = [[None] * n for _ in range(n)]  # quo[x][y] = x⁻¹y
    for x in Simple:
        for z in Simple:
            y = mul[x][z]
            if y is not None:
                quo[x][y] = z
    comp = [quo[x][Simple.D] for x in Simple]
    gcd: list[list[Simple]] = [[Simple.E] * n for _ in range(n)]
    for x in Simple:
        for y in Simple:
            common = [c for c in Simple if quo[c][x] is not None and quo[c][y] is not None]
            gcd[x][y] = max(common, key=lambda c: len(c.letters))
    tau = [_simple_of(tuple(3 - a for a in s.letters)) for s in Simple]
    tau[Simple.D] = Simple.D
    return mul, quo, comp, gcd, tau


_MUL, _QUO, _COMP, _GCD, _TAU = _build_tables()

# σ_i⁻¹ = Ω⁻¹·(Ωσ_i⁻¹) with Ωσ₁⁻¹ = σ₁σ₂ and Ωσ₂⁻¹ = σ₂σ₁
_INVERSE_TAIL = {1: Simple.S12, 2: Simple.S21}

# allowed left-weighted successors
ALLOWED_TRANSITIONS = {
    Simple.S1: {Simple.S1, Simple.S12},
    Simple.S21: {Simple.S1, Simple.S12},
    Simple.S2: {Simple.S2, Simple.S21},
    Simple.S12: {Simple.S2, Simple.S21},
}


def tau(s: Simple, k: int = 1) -> Simple:
    return _TAU[s] if k % 2 else s


def first_letter(s: Simple) -> int:
    return s.letters[0]


def last_letter(s: Simple) -> int:
    return s.letters[-1]


class _Accumulator:
    """Left normal form Ω^k·facs under right multiplication by simples."""

    __slots__ = ("k", "facs")

    def __init__(self, k: int = 0, facs: Iterable[Simple] = ()) -> None:
        self.k = k
        self.facs: list[Simple] = list(facs)

    def omega(self, power: int) -> None:
        if power % 2:
            self.facs = [_TAU[f] for f in self.facs]
        self.k += power

    def push(self, s: Simple) -> None:
        if s == Simple.E:
            return
        if s == Simple.D:
            self.omega(1)
            return
        facs = self.facs
        facs.append(s)
        i = len(facs) - 2
        # domino pass: left-weight (facs[i], facs[i+1]) right to left
        while i >= 0:
            x, y = facs[i], facs[i + 1]
            m = _GCD[y][_COMP[x]]
            if m == Simple.E:
                break
            facs[i] = _MUL[x][m]
            facs[i + 1] = _QUO[m][y]
            i -= 1
        while facs and facs[-1] == Simple.E:
            facs.pop()
        lead = 0
        while lead < len(facs) and facs[lead] == Simple.D:
            lead += 1
        if lead:
            del facs[:lead]
            self.k += lead

    def push_letter(self, x: int) -> None:
        if x > 0:
            self.push(Simple.S1 if x == 1 else Simple.S2)
        else:
            self.omega(-1)
            self.push(_INVERSE_TAIL[-x])

    def result(self) -> CanonicalForm:
        return CanonicalForm(self.k, tuple(self.facs))


@dataclass(frozen=True, slots=True)
class CanonicalForm:
    omega_power: int
    factors: tuple[Simple, ...] = ()

    @classmethod
    def build(cls, k: int, simples: Iterable[Simple]) -> CanonicalForm:
        """Normal form of Ω^k·s₁·s₂⋯ for arbitrary simples s_i."""
        acc = _Accumulator(k)
        for s in simples:
            acc.push(s)
        return acc.result()

    @property
    def n(self) -> int:
        return len(self.factors)

    def to_word(self) -> BraidWord:
        k = self.omega_power
        omega = (1, 2, 1) if k >= 0 else (-1, -2, -1)
        letters = list(omega * abs(k))
        for f in self.factors:
            letters.extend(f.letters)
        return BraidWord(tuple(letters))

    def letters(self) -> tuple[int, ...]:
        """Concatenated letters of w₁…w_n (without the Ω^k prefix)."""
        out: list[int] = []
        for f in self.factors:
            out.extend(f.letters)
        return tuple(out)

    def is_valid(self) -> bool:
        return all(
            b in ALLOWED_TRANSITIONS[a] for a, b in zip(self.factors, self.factors[1:])
        ) and all(f not in (Simple.E, Simple.D) for f in self.factors)

    def swapped(self) -> CanonicalForm:
        """Conjugate by Ω: every factor has σ₁ and σ₂ interchanged."""
        return CanonicalForm(self.omega_power, tuple(_TAU[f] for f in self.factors))

    def is_cooler_than(self, other: CanonicalForm) -> bool:
        return self.omega_power > other.omega_power or (
            self.omega_power == other.omega_power and self.n < other.n
        )

    def __str__(self) -> str:
        return f"k={self.omega_power};factors={','.join(f.label for f in self.factors)}"

    @classmethod
    def parse(cls, text: str) -> CanonicalForm:
        head, _, tail = text.strip().partition(";")
        if not head.startswith("k=") or not tail.startswith("factors="):
            raise ValueError(f"bad canonical form {text!r}")
        names = [s for s in tail[len("factors=") :].split(",") if s]
        return cls(int(head[2:]), tuple(Simple[s.upper()] for s in names))


def left_greedy_normal_form(w: BraidWord) -> CanonicalForm:
    acc = _Accumulator()
    for x in w.letters:
        acc.push_letter(x)
    return acc.result()


def cycle(c: CanonicalForm) -> CanonicalForm:
    """Ω^k·τ^k(w_n)·w₁⋯w_{n-1}."""
    if not c.factors:
        raise EmptyFactors("cycling needs n ≥ 1")
    k = c.omega_power
    return CanonicalForm.build(k, (tau(c.factors[-1], k),) + c.factors[:-1])


def decycle(c: CanonicalForm) -> CanonicalForm:
    """Ω^k·w₂⋯w_n·τ^k(w₁)."""
    if not c.factors:
        raise EmptyFactors("decycling needs n ≥ 1")
    k = c.omega_power
    return CanonicalForm.build(k, c.factors[1:] + (tau(c.factors[0], k),))


def summit(c: CanonicalForm, length_hint: int | None = None) -> CanonicalForm:
    """Cycle/decycle until neither move is strictly cooler (cycling tried first)."""
    if length_hint is None:
        length_hint = 3 * abs(c.omega_power) + len(c.letters())
    k0 = c.omega_power
    bound = (max(length_hint // 3 - k0, 0) + 1) * (max(length_hint - 3 * k0, 0) + 1) + 1
    cur = c
    for _ in range(bound + 1):
        if not cur.factors:
            return cur
        nxt = cycle(cur)
        if not nxt.is_cooler_than(cur):
            nxt = decycle(cur)
            if not nxt.is_cooler_than(cur):
                return cur
        cur = nxt
    raise RuntimeError(f"summit iteration bound {bound} exceeded for {c}")


@dataclass(frozen=True, slots=True)
class SummitShape:
    """Conjugacy representative Ω^k σ₁^{a₁} σ₂^{a₂} ⋯ (generators alternate)."""

    shape: int
    omega_power: int
    exponents: tuple[int, ...]

    def to_word(self) -> BraidWord:
        return BraidWord((1, 2, 1) * self.omega_power) * BraidWord.from_powers(self.exponents)


def _syllables(letters: Sequence[int]) -> list[list[int]]:
    return [[g, len(list(run))] for g, run in groupby(letters)]


def summit_normalize(w: BraidWord) -> SummitShape:
    """Conjugate a positive braid into one of the four standard shapes.

    (1) Ω^k σ₁^a, (2) Ω^k σ₁σ₂, (3) Ω^k σ₁^{a₁}σ₂^{a₂}⋯σ₂^{a_ℓ} with k even,
    ℓ even and all a_i ≥ 2, (4) k odd with ℓ ≥ 3 odd, starting and ending in σ₁.
    """
    if not w.is_positive():
        raise NotPositive(f"{w} has inverse letters")
    top = summit(left_greedy_normal_form(w), len(w))
    k = top.omega_power
    facs = top.factors
    if not facs:
        return SummitShape(1, k, (0,))
    if len(facs) == 1:
        f = facs[0] if facs[0] in (Simple.S1, Simple.S12) else _TAU[facs[0]]
        if f == Simple.S1:
            return SummitShape(1, k, (1,))
        return SummitShape(2, k, (1, 1))
    if last_letter(facs[-1]) == 2:
        facs = tuple(_TAU[f] for f in facs)
    syl = _syllables([x for f in facs for x in f.letters])
    if k % 2 == 0:
        # Ω^k is central: rotate cyclically
        if len(syl) > 1 and syl[0][0] == syl[-1][0]:
            syl[0][1] += syl.pop()[1]
        if syl[0][0] == 2:
            syl = syl[1:] + syl[:1]
        if len(syl) == 1:
            return SummitShape(1, k, (syl[0][1],))
        return SummitShape(3, k, tuple(s[1] for s in syl))
    # odd k: a front syllable moved to the back changes generator
    while len(syl) > 1 and (syl[0][0] == 2 or syl[-1][0] == 2):
        if syl[0][0] == 2:
            g, a = syl.pop(0)
            if syl[-1][0] == 1:
                syl[-1][1] += a
            else:
                syl.append([1, a])
        else:
            g, a = syl.pop()
            syl[0][1] += a
    if len(syl) == 1:
        return SummitShape(1, k, (syl[0][1],))
    return SummitShape(4, k, tuple(s[1] for s in syl))


# ---------------------------------------------------------------------------
# Nielsen-Thurston type


class NTKind(enum.Enum):
    PERIODIC = "Periodic"
    REDUCIBLE = "Reducible"
    PSEUDO_ANOSOV = "PseudoAnosov"


@dataclass(frozen=True, slots=True)
class NTType:
    kind: NTKind
    stretch: float | None = None


_B_MINUS_ONE = {
    1: ((1, 1), (0, 1)),
    2: ((1, 0), (-1, 1)),
    -1: ((1, -1), (0, 1)),
    -2: ((1, 0), (1, 1)),
}


def burau_at_minus_one(w: BraidWord) -> tuple[tuple[int, int], tuple[int, int]]:
    """B_{-1}(w) ∈ SL(2, Z) by direct integer products."""
    a, b, c, d = 1, 0, 0, 1
    for x in w.letters:
        (p, q), (r, s) = _B_MINUS_ONE[x]
        a, b, c, d = a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s
    return (a, b), (c, d)


def nielsen_thurston_type(w: BraidWord) -> NTType:
    (a, b), (c, d) = burau_at_minus_one(w)
    tr = a + d
    scalar = b == 0 and c == 0 and a == d
    if abs(tr) <= 1 or scalar:
        return NTType(NTKind.PERIODIC)
    if abs(tr) == 2:
        return NTType(NTKind.REDUCIBLE)
    return NTType(NTKind.PSEUDO_ANOSOV, (abs(tr) + math.sqrt(tr * tr - 4)) / 2)
