"""Seeded random streams and random braid words."""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from braidspectra.braid import BraidWord

MIN_LENGTH = 4


def make_rng(seed: int, task: int = 0) -> np.random.Generator:
    """Counter-based stream for (seed, task); independent of scheduling order."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(task)])))


class SamplerMode(enum.Enum):
    UNIFORM_POSITIVE = "UniformPositive"
    UNIFORM_FOUR = "UniformFourGenerator"
    FIXED_LENGTH_DISTRIBUTION = "FixedLengthDistribution"


@dataclass(frozen=True)
class WordSampler:
    mode: SamplerMode = SamplerMode.UNIFORM_POSITIVE
    length: int = 100
    mean: float = 500.0
    std: float = 170.0
    letters: tuple[int, ...] = (1, 2)

    def draw_length(self, rng: np.random.Generator) -> int:
        if self.mode is not SamplerMode.FIXED_LENGTH_DISTRIBUTION:
            return self.length
        while True:
            n = int(round(rng.normal(self.mean, self.std)))
            if n >= MIN_LENGTH:
                return n

    def alphabet(self) -> tuple[int, ...]:
        if self.mode is SamplerMode.UNIFORM_FOUR:
            return (1, 2, -1, -2)
        return self.letters


def sample_word(s: WordSampler, rng: np.random.Generator) -> BraidWord:
    n = s.draw_length(rng)
    alpha = np.array(s.alphabet(), dtype=np.int64)
    picks = alpha[rng.integers(0, alpha.size, size=n)]
    return BraidWord(tuple(int(x) for x in picks))


def sample_knot(
    s: WordSampler, rng: np.random.Generator, max_tries: int = 1000, exclude_powers: bool = True
) -> BraidWord:
    """Rejection-sample until the closure is a knot (and not a generator power)."""
    if s.mode is not SamplerMode.UNIFORM_FOUR and s.mode is not SamplerMode.FIXED_LENGTH_DISTRIBUTION and s.length % 2:
        raise ValueError(f"positive words of odd length {s.length} never close to a knot")
    for _ in range(max_tries):
        w = sample_word(s, rng)
        if w.closure_components() == 1 and not (exclude_powers and w.is_generator_power()):
            return w
    raise RuntimeError("no knot found; check the sampler parameters")


def random_letters(rng: np.random.Generator, shape, alphabet=(1, 2)) -> np.ndarray:
    alpha = np.asarray(alphabet, dtype=np.int8)
    return alpha[rng.integers(0, alpha.size, size=shape)]
