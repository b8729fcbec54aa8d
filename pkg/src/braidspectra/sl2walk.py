"""PSL(2, Z) = Z/2 * Z/3, the Rademacher function and random-walk experiments.

Reduced words are strings over ``a`` (order 2), ``b`` and ``B`` = b⁻¹ (order 3).
The braid image is σ₁ ↦ ba, σ₂ ↦ ab.
"""

from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass, field

import numpy as np

from braidspectra.braid import BraidWord
from braidspectra.sampling import make_rng

DRIFT = (7 - 3 * math.sqrt(5)) / 4
SIGNATURE_DRIFT = (5 - math.sqrt(5)) / 4
HITTING = {"a": 0.5, "b": (math.sqrt(5) - 1) / 4, "B": (3 - math.sqrt(5)) / 4}
SIGNATURE_ERROR = 7 / 3
BATCH = 2000
MIN_HITTING_STEPS = 200

_B_EXP = {"b": 1, "B": 2}
_B_TOKEN = {1: "b", 2: "B"}
_IMAGE = {1: "ba", 2: "ab", -1: "aB", -2: "Ba"}


def _reduce(tokens) -> str:
    stack: list[str] = []
    for x in tokens:
        if x not in "abB":
            raise ValueError(f"bad PSL2 letter {x!r}")
        if stack and x == "a" and stack[-1] == "a":
            stack.pop()
        elif stack and x != "a" and stack[-1] != "a":
            e = (_B_EXP[stack.pop()] + _B_EXP[x]) % 3
            if e:
                stack.append(_B_TOKEN[e])
        else:
            stack.append(x)
    return "".join(stack)


@dataclass(frozen=True)
class PSL2Word:
    syllables: str = ""

    def __post_init__(self) -> None:
        if _reduce(self.syllables) != self.syllables:
            raise ValueError(f"{self.syllables!r} is not reduced")

    @classmethod
    def reduce(cls, text: str) -> PSL2Word:
        return cls(_reduce(text))

    def __mul__(self, other: PSL2Word) -> PSL2Word:
        return psl2_mul(self, other)

    def inverse(self) -> PSL2Word:
        inv = {"a": "a", "b": "B", "B": "b"}
        return PSL2Word("".join(inv[x] for x in reversed(self.syllables)))

    def __str__(self) -> str:
        return self.syllables or "1"

    def __len__(self) -> int:
        return len(self.syllables)

    def matrix(self) -> np.ndarray:
        """An SL(2, Z) lift: a ↦ [[0,1],[−1,0]], b ↦ [[1,−1],[1,0]]."""
        mats = {
            "a": np.array([[0, 1], [-1, 0]], dtype=object),
            "b": np.array([[1, -1], [1, 0]], dtype=object),
            "B": np.array([[0, 1], [-1, 1]], dtype=object),
        }
        m = np.array([[1, 0], [0, 1]], dtype=object)
        for x in self.syllables:
            m = m.dot(mats[x])
        return m


IDENTITY = PSL2Word("")


def psl2_mul(x: PSL2Word, y: PSL2Word) -> PSL2Word:
    return PSL2Word(_reduce(x.syllables + y.syllables))


def image(w: BraidWord) -> PSL2Word:
    return PSL2Word(_reduce("".join(_IMAGE[x] for x in w.letters)))


def rademacher(g: PSL2Word) -> int:
    return g.syllables.count("b") - g.syllables.count("B")


@dataclass(frozen=True)
class SignatureEstimate:
    estimate: float
    error_bound: float = SIGNATURE_ERROR


def signature_estimate(w: BraidWord) -> SignatureEstimate:
    r = rademacher(image(w))
    return SignatureEstimate(-r / 3 - 2 * w.exponent_sum() / 3)


def random_psl2(rng: np.random.Generator, length: int) -> PSL2Word:
    toks = rng.choice(np.array(list("abB")), size=length)
    return PSL2Word.reduce("".join(toks))


# ---------------------------------------------------------------------------
# vectorized walks
#
# Each sample holds its reduced word as an int8 stack (0 = a, 1 = b, 2 = B)
# with a sentinel 3 at the bottom, plus a running Rademacher value.

_A, _SENT = 0, 3
_CONTRIB = np.array([0, 1, -1, 0], dtype=np.int64)


class _WalkBatch:
    def __init__(self, size: int, capacity: int) -> None:
        self.stack = np.full((size, capacity + 1), _SENT, dtype=np.int8)
        self.length = np.ones(size, dtype=np.int64)
        self.R = np.zeros(size, dtype=np.int64)
        self.rows = np.arange(size)

    def push(self, tok: np.ndarray) -> None:
        """Right-multiply every sample by its own token."""
        top_idx = self.length - 1
        top = self.stack[self.rows, top_idx].astype(np.int64)
        tok = tok.astype(np.int64)
        is_a = tok == _A
        top_a = top == _A
        top_b = (top == 1) | (top == 2)
        # a·a cancels
        cancel_a = is_a & top_a
        # b-type onto b-type merges in Z/3
        merge = ~is_a & top_b
        e = np.where(merge, (top + tok) % 3, 0)
        vanish = merge & (e == 0)
        replace = merge & (e != 0)
        plain = ~(cancel_a | merge)
        self.R += np.where(merge, _CONTRIB[np.where(replace, e, 3)] - _CONTRIB[top], 0)
        self.R += np.where(plain, _CONTRIB[tok], 0)
        self.stack[self.rows[replace], top_idx[replace]] = e[replace]
        pops = cancel_a | vanish
        self.stack[self.rows[pops], top_idx[pops]] = _SENT
        self.length -= pops
        pr = self.rows[plain]
        self.stack[pr, self.length[plain]] = tok[plain]
        self.length += plain

    def step(self, letters: np.ndarray) -> None:
        """σ₁ ↦ ba, σ₂ ↦ ab applied to each sample."""
        first = np.where(letters == 1, 1, 0).astype(np.int8)
        second = np.where(letters == 1, 0, 1).astype(np.int8)
        self.push(first)
        self.push(second)

    def first_syllable(self) -> np.ndarray:
        return self.stack[:, 1]


def _batches(n_samples: int, batch: int) -> list[tuple[int, int]]:
    return [(i, min(batch, n_samples - i * batch)) for i in range((n_samples + batch - 1) // batch)]


def _map(executor: Executor | None, fn, items):
    if executor is None:
        return [fn(x) for x in items]
    return list(executor.map(fn, items))


def walk_rademacher(
    n_steps: int, n_samples: int, seed: int, checkpoints=None, swap: bool = False,
    executor: Executor | None = None, batch: int = BATCH,
) -> dict[int, np.ndarray]:
    """R(w_n) at each checkpoint for the uniform walk on {σ₁, σ₂}.

    swap=True replays the same letters with σ₁ and σ₂ exchanged.
    """
    cps = sorted(set(checkpoints or [n_steps]))
    if cps[-1] > n_steps or cps[0] < 1:
        raise ValueError("checkpoints must lie in [1, n_steps]")

    def run(task):
        idx, size = task
        rng = make_rng(seed, idx)
        wb = _WalkBatch(size, 2 * n_steps)
        out = {}
        ci = 0
        for n in range(1, n_steps + 1):
            letters = rng.integers(1, 3, size=size)
            if swap:
                letters = 3 - letters
            wb.step(letters)
            if n == cps[ci]:
                out[n] = wb.R.copy()
                ci += 1
                if ci == len(cps):
                    break
        return out

    parts = _map(executor, run, _batches(n_samples, batch))
    return {n: np.concatenate([p[n] for p in parts]) for n in cps}


@dataclass(frozen=True)
class WalkStats:
    n: int
    value: float
    normalized: float
    batch: int
    stderr: float = 0.0
    variance: float = 0.0
    samples: np.ndarray | None = field(default=None, repr=False, compare=False)


def drift_experiment(
    n_steps: int, n_samples: int, seed: int, executor: Executor | None = None
) -> WalkStats:
    """Mean of R(w_n)/n; variance reported is that of R(w_n)/√n."""
    if n_steps < 1:
        raise ValueError("n_steps must be ≥ 1")
    R = walk_rademacher(n_steps, n_samples, seed, executor=executor)[n_steps].astype(float)
    x = R / n_steps
    var = float(np.var(R / math.sqrt(n_steps), ddof=1)) if n_samples > 1 else 0.0
    se = float(np.std(x, ddof=1) / math.sqrt(n_samples)) if n_samples > 1 else 0.0
    return WalkStats(n_steps, float(R.mean()), float(x.mean()), n_samples, se, var, x)


@dataclass(frozen=True)
class HittingStats:
    p_a: float
    p_b: float
    p_B: float
    n_samples: int
    stderr: tuple[float, float, float]
    discarded: int = 0

    def sigma_distance(self) -> tuple[float, float, float]:
        """|p − target| in units of the binomial σ of the target."""
        out = []
        for p, key in zip((self.p_a, self.p_b, self.p_B), ("a", "b", "B")):
            q = HITTING[key]
            out.append(abs(p - q) / math.sqrt(q * (1 - q) / self.n_samples))
        return tuple(out)


def hitting_measure_experiment(
    n_steps: int, n_samples: int, seed: int, confirm: bool = False,
    executor: Executor | None = None, batch: int = BATCH,
) -> HittingStats:
    """First-syllable frequencies of the reduced word of w_n.

    With confirm=True, samples whose first syllable changes during the second
    half of the walk are discarded and counted.
    """
    if n_steps < MIN_HITTING_STEPS:
        raise ValueError(f"n_steps must be ≥ {MIN_HITTING_STEPS} for the first syllable to settle")

    def run(task):
        idx, size = task
        rng = make_rng(seed, idx)
        wb = _WalkBatch(size, 2 * n_steps)
        stable = np.ones(size, dtype=bool)
        prev = None
        for n in range(1, n_steps + 1):
            wb.step(rng.integers(1, 3, size=size))
            if confirm and n > n_steps // 2:
                cur = wb.first_syllable().copy()
                if prev is not None:
                    stable &= cur == prev
                prev = cur
        return wb.first_syllable().copy(), stable

    parts = _map(executor, run, _batches(n_samples, batch))
    first = np.concatenate([p[0] for p in parts])
    stable = np.concatenate([p[1] for p in parts])
    kept = first[stable]
    m = kept.size
    ps = [float(np.mean(kept == k)) for k in (0, 1, 2)]
    se = tuple(math.sqrt(p * (1 - p) / m) for p in ps)
    return HittingStats(ps[0], ps[1], ps[2], m, se, int(n_samples - m))


@dataclass(frozen=True)
class CLTRow:
    n: int
    mean: float
    std: float
    count: int
    histogram: tuple[np.ndarray, np.ndarray] | None = field(default=None, repr=False, compare=False)


def clt_experiment(
    lengths, samples: int, seed: int, bins: int = 40, executor: Executor | None = None
) -> list[CLTRow]:
    """|signature_estimate|/n statistics at each length, from one walk per sample.

    All lengths are read off the same trajectories at checkpoints.
    """
    lengths = sorted(set(int(n) for n in lengths))
    Rs = walk_rademacher(lengths[-1], samples, seed, checkpoints=lengths, executor=executor)
    rows = []
    for n in lengths:
        sig = -Rs[n] / 3 - 2 * n / 3
        x = np.abs(sig) / n
        std = float(np.std(x, ddof=1)) if samples > 1 else 0.0
        normalized = (np.abs(sig) - SIGNATURE_DRIFT * n) / math.sqrt(n)
        rows.append(CLTRow(n, float(x.mean()), std, samples, np.histogram(normalized, bins=bins)))
    return rows


def conj_a_paired(n_steps: int, n_samples: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """R on the same walks with and without σ₁ ↔ σ₂."""
    plain = walk_rademacher(n_steps, n_samples, seed)[n_steps]
    swapped = walk_rademacher(n_steps, n_samples, seed, swap=True)[n_steps]
    return plain, swapped
