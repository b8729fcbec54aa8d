"""Monte Carlo Lyapunov exponents of Burau products and the bifurcation measure."""

from __future__ import annotations

import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from braidspectra.braid import BraidWord
from braidspectra.burau import stream_product
from braidspectra.roots import ZeroAlexander, alexander_roots
from braidspectra.sampling import make_rng, random_letters
from braidspectra.spectral import GridField, contour_lines

RENORM_EVERY = 16
CHUNK = 256


class ZeroPoint(ValueError):
    """λ(0) = −∞; the estimator is not run there."""


@dataclass(frozen=True)
class StepMeasure:
    """Finitely supported probability measure on positive words."""

    words: tuple[BraidWord, ...]
    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.words) != len(self.weights) or not self.words:
            raise ValueError("need matching, nonempty words and weights")
        if sum(self.weights) != 1 or any(p < 0 for p in self.weights):
            raise ValueError("weights must be nonnegative and sum to 1")
        if not all(w.is_positive() for w in self.words):
            raise ValueError("step words must be positive")

    @classmethod
    def uniform_generators(cls) -> StepMeasure:
        return cls((BraidWord((1,)), BraidWord((2,))), (Fraction(1, 2), Fraction(1, 2)))

    @classmethod
    def parse(cls, spec: Sequence[tuple[str, str | Fraction]]) -> StepMeasure:
        return cls(
            tuple(BraidWord.parse(w) for w, _ in spec),
            tuple(Fraction(p) for _, p in spec),
        )

    def to_spec(self) -> list[tuple[str, str]]:
        return [(str(w), str(p)) for w, p in zip(self.words, self.weights)]

    @property
    def mean_length(self) -> float:
        return float(sum(p * len(w) for w, p in zip(self.words, self.weights)))

    def draw(self, rng: np.random.Generator, shape) -> np.ndarray:
        p = np.array([float(x) for x in self.weights])
        return rng.choice(len(self.words), size=shape, p=p).astype(np.int16)


def _step_matrices(mu: StepMeasure, ts: np.ndarray) -> np.ndarray:
    """B_t(word) for every support word: shape (n_words, n_t, 4)."""
    out = np.empty((len(mu.words), ts.size, 4), dtype=complex)
    for i, w in enumerate(mu.words):
        ((a, b), (c, d)), ls = stream_product(w.letters, ts, renorm_every=0)
        out[i] = np.stack([a, b, c, d], axis=-1)
    return out


def log_norms(
    ts: np.ndarray, steps: np.ndarray, mu: StepMeasure, record: Sequence[int]
) -> dict[int, np.ndarray]:
    """log max-entry norm of the walk products at the requested step counts.

    steps has shape (n_walks, n_steps) of support indices; returns arrays of
    shape (n_t, n_walks).
    """
    ts = np.asarray(ts, dtype=complex).ravel()
    n_walks, n_steps = steps.shape
    M = _step_matrices(mu, ts)
    shape = (ts.size, n_walks)
    a = np.ones(shape, dtype=complex)
    b = np.zeros(shape, dtype=complex)
    c = np.zeros(shape, dtype=complex)
    d = np.ones(shape, dtype=complex)
    ls = np.zeros(shape)
    want = set(record)
    out = {}
    for k in range(n_steps):
        g = M[steps[:, k]]  # (n_walks, n_t, 4)
        p, q, r, s = (g[..., j].T for j in range(4))
        a, b, c, d = a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s
        n = k + 1
        if n % RENORM_EVERY == 0 or n in want:
            m = np.maximum(np.maximum(np.abs(a), np.abs(b)), np.maximum(np.abs(c), np.abs(d)))
            m = np.where(m > 0, m, 1.0)
            a, b, c, d = a / m, b / m, c / m, d / m
            with np.errstate(divide="ignore"):
                ls += np.log(m)
            if n in want:
                out[n] = ls.copy()
    return out


@dataclass(frozen=True)
class LyapunovEstimate:
    t: complex
    lambda_hat: float
    n_walks: int
    walk_length: int
    stderr: float


@dataclass
class _MCBlock:
    lam: np.ndarray  # (n_t,)
    stderr: np.ndarray
    per_walk: np.ndarray = field(repr=False)  # (n_t, n_walks)


def _estimate_block(
    ts: np.ndarray, steps: np.ndarray, mu: StepMeasure, burn_in: bool
) -> _MCBlock:
    n = steps.shape[1]
    n0 = n // 2 if burn_in else 0
    rec = [n] if n0 == 0 else [n0, n]
    L = log_norms(ts, steps, mu, rec)
    per = (L[n] - (L[n0] if n0 else 0.0)) / (n - n0)
    lam = per.mean(axis=1)
    se = per.std(axis=1, ddof=1) / math.sqrt(per.shape[1]) if per.shape[1] > 1 else np.zeros(lam.shape)
    return _MCBlock(lam, se, per)


def walk_steps(mu: StepMeasure, n_walks: int, walk_length: int, seed: int) -> np.ndarray:
    """Shared step indices; the same walks are reused at every t (common random numbers)."""
    rng = make_rng(seed, 0)
    if len(mu.words) == 2 and mu.weights[0] == mu.weights[1]:
        return (random_letters(rng, (n_walks, walk_length)) - 1).astype(np.int16)
    return mu.draw(rng, (n_walks, walk_length))


def lyapunov_many(
    ts,
    mu: StepMeasure | None = None,
    n_walks: int = 1000,
    walk_length: int = 100,
    seed: int = 0,
    burn_in: bool = True,
    executor: Executor | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """(λ̂, stderr) at every t; t = 0 gives −∞ with zero stderr."""
    mu = mu or StepMeasure.uniform_generators()
    ts = np.asarray(ts, dtype=complex).ravel()
    steps = walk_steps(mu, n_walks, walk_length, seed)
    lam = np.full(ts.size, -np.inf)
    se = np.zeros(ts.size)
    nz = np.nonzero(ts != 0)[0]
    chunks = [nz[i : i + CHUNK] for i in range(0, nz.size, CHUNK)]

    def run(idx):
        return idx, _estimate_block(ts[idx], steps, mu, burn_in)

    results = map(run, chunks) if executor is None else executor.map(run, chunks)
    for idx, blk in results:
        lam[idx] = blk.lam
        se[idx] = blk.stderr
    return lam, se


def lyapunov_estimate(
    t: complex,
    mu: StepMeasure | None = None,
    n_walks: int = 1000,
    walk_length: int = 100,
    seed: int = 0,
    burn_in: bool = True,
) -> LyapunovEstimate:
    """λ̂(t) from n_walks walks of walk_length steps.

    With burn_in the estimate is the mean growth rate over the second half of
    each walk, which removes the O(1/n) offset from the initial vector.
    """
    if t == 0:
        raise ZeroPoint("λ(0) = −∞")
    lam, se = lyapunov_many([t], mu, n_walks, walk_length, seed, burn_in)
    return LyapunovEstimate(complex(t), float(lam[0]), n_walks, walk_length, float(se[0]))


@dataclass(frozen=True)
class SymmetryCheck:
    t: complex
    difference: float  # λ̂(1/t) − λ̂(t)
    expected: float  # −E|w|·log|t|
    stderr: float

    @property
    def z_score(self) -> float:
        return abs(self.difference - self.expected) / self.stderr if self.stderr else math.inf


def symmetry_check(
    t: complex, mu: StepMeasure | None = None, n_walks: int = 1000, walk_length: int = 100,
    seed: int = 0,
) -> SymmetryCheck:
    """Paired check of λ(1/t) = λ(t) − log|t| on shared walks."""
    mu = mu or StepMeasure.uniform_generators()
    steps = walk_steps(mu, n_walks, walk_length, seed)
    blk = _estimate_block(np.array([t, 1 / t]), steps, mu, True)
    diff = blk.per_walk[1] - blk.per_walk[0]
    se = float(diff.std(ddof=1) / math.sqrt(diff.size))
    # the paired stderr can vanish when the identity holds walk by walk
    se = max(se, 1e-12)
    return SymmetryCheck(complex(t), float(diff.mean()), -mu.mean_length * math.log(abs(t)), se)


def log_plus(x) -> np.ndarray:
    with np.errstate(divide="ignore"):
        return np.maximum(0.0, np.log(x))


def chi(t, lam) -> np.ndarray | float:
    out = np.maximum(lam, log_plus(np.abs(t)))
    return float(out) if np.ndim(out) == 0 else out


# ---------------------------------------------------------------------------
# grids


def laplacian_density(g: GridField) -> GridField:
    """(1/2π)·5-point Laplacian; the boundary ring is NaN (no one-sided stencils)."""
    v = g.values
    x0, x1, y0, y1 = g.bounds
    nx, ny = g.resolution
    hx, hy = (x1 - x0) / (nx - 1), (y1 - y0) / (ny - 1)
    out = np.full(v.shape, np.nan)
    with np.errstate(invalid="ignore"):
        out[1:-1, 1:-1] = (
            (v[1:-1, 2:] + v[1:-1, :-2] - 2 * v[1:-1, 1:-1]) / hx**2
            + (v[2:, 1:-1] + v[:-2, 1:-1] - 2 * v[1:-1, 1:-1]) / hy**2
        ) / (2 * math.pi)
    return GridField(g.bounds, g.resolution, out)


@dataclass
class MeasureGrid:
    lam: GridField
    stderr: GridField
    chi: GridField
    density: GridField
    lines: list[np.ndarray]
    params: dict

    @property
    def cell_mass(self) -> np.ndarray:
        return self.density.values * self.density.cell_area

    @property
    def total_mass(self) -> float:
        return float(np.nansum(self.cell_mass))

    @property
    def negative_cells(self) -> int:
        return int(np.sum(self.density.values < 0))

    def mass_in(self, rect: tuple[float, float, float, float]) -> float:
        x0, x1, y0, y1 = rect
        z = self.density.points
        m = (z.real >= x0) & (z.real <= x1) & (z.imag >= y0) & (z.imag <= y1)
        return float(np.nansum(self.cell_mass[m]))

    def rows(self):
        pts = self.lam.points
        for j in range(pts.shape[0]):
            for i in range(pts.shape[1]):
                z = pts[j, i]
                yield (
                    float(z.real), float(z.imag), float(self.lam.values[j, i]),
                    float(self.stderr.values[j, i]), float(self.chi.values[j, i]),
                    float(self.density.values[j, i]),
                )


def lyapunov_grid(
    bounds: tuple[float, float, float, float],
    resolution: tuple[int, int],
    mu: StepMeasure | None = None,
    n_walks: int = 1000,
    walk_length: int = 100,
    seed: int = 0,
    executor: Executor | None = None,
) -> MeasureGrid:
    nx, ny = resolution
    if nx < 8 or ny < 8:
        raise ValueError("resolution must be at least 8×8")
    mu = mu or StepMeasure.uniform_generators()
    shell = GridField(tuple(map(float, bounds)), (int(nx), int(ny)), np.empty((ny, nx)))
    pts = shell.points
    lam, se = lyapunov_many(pts.ravel(), mu, n_walks, walk_length, seed, executor=executor)
    lam_f = GridField(shell.bounds, shell.resolution, lam.reshape(ny, nx))
    se_f = GridField(shell.bounds, shell.resolution, se.reshape(ny, nx))
    chi_f = GridField(shell.bounds, shell.resolution, chi(pts, lam_f.values))
    dens = laplacian_density(chi_f)
    gap = GridField(shell.bounds, shell.resolution, lam_f.values - log_plus(np.abs(pts)))
    gap.values = np.where(np.isfinite(gap.values), gap.values, -1e3)
    lines = contour_lines(gap, 0.0)
    params = {
        "mu": mu.to_spec(), "n_walks": n_walks, "walk_length": walk_length, "seed": seed,
        "bounds": list(shell.bounds), "resolution": list(shell.resolution),
    }
    return MeasureGrid(lam_f, se_f, chi_f, dens, lines, params)


# ---------------------------------------------------------------------------
# root measures against the bifurcation measure


@dataclass(frozen=True)
class EquidistributionReport:
    n: int
    batch: int
    rect: tuple[float, float, float, float]
    root_mass: float  # mean fraction of roots of ν_{w_n} in rect
    root_mass_stderr: float
    bif_mass: float | None
    tv_distance: float | None


def sample_root_batch(n: int, batch: int, seed: int, executor: Executor | None = None) -> list[np.ndarray]:
    """Alexander roots for `batch` uniform positive walks of length n."""

    def one(i):
        rng = make_rng(seed, i)
        while True:
            letters = random_letters(rng, n)
            w = BraidWord(tuple(int(x) for x in letters))
            if not w.is_generator_power():
                break
        try:
            return alexander_roots(w).values()
        except ZeroAlexander:
            return np.zeros(0, dtype=complex)

    return list(map(one, range(batch)) if executor is None else executor.map(one, range(batch)))


def _in_rect(z: np.ndarray, rect) -> np.ndarray:
    x0, x1, y0, y1 = rect
    return (z.real >= x0) & (z.real <= x1) & (z.imag >= y0) & (z.imag <= y1)


def equidistribution_compare(
    n: int,
    batch: int,
    rect: tuple[float, float, float, float],
    seed: int = 0,
    grid: MeasureGrid | None = None,
    roots: list[np.ndarray] | None = None,
    executor: Executor | None = None,
) -> EquidistributionReport:
    """Root mass of ν_{w_n} in rect, and optionally its binned TV distance to ν_bif.

    The rectangle is chosen by the caller and should sit inside the open set
    where the comparison is meaningful.
    """
    roots = roots if roots is not None else sample_root_batch(n, batch, seed, executor)
    fr = np.array([_in_rect(r, rect).mean() if r.size else 0.0 for r in roots])
    se = float(fr.std(ddof=1) / math.sqrt(fr.size)) if fr.size > 1 else 0.0
    bif = tv = None
    if grid is not None:
        bif = grid.mass_in(rect)
        g = grid.density
        xs, ys = g.xs, g.ys
        hx, hy = xs[1] - xs[0], ys[1] - ys[0]
        ex = np.concatenate([xs - hx / 2, [xs[-1] + hx / 2]])
        ey = np.concatenate([ys - hy / 2, [ys[-1] + hy / 2]])
        allr = np.concatenate(roots) if roots else np.zeros(0, dtype=complex)
        total = sum(r.size for r in roots)
        sel = allr[_in_rect(allr, rect)]
        H, _, _ = np.histogram2d(sel.imag, sel.real, bins=[ey, ex])
        p = H / max(total, 1)
        q = np.where(_in_rect(g.points, rect), np.nan_to_num(grid.cell_mass), 0.0)
        p = np.where(_in_rect(g.points, rect), p, 0.0)
        tv = float(0.5 * np.abs(p - q).sum())
    return EquidistributionReport(n, len(roots), tuple(rect), float(fr.mean()), se, bif, tv)


def annulus_fraction(roots: list[np.ndarray], inner: float, outer: float, arc: str = "AL") -> float:
    """Mean fraction of roots with inner ≤ |z| ≤ outer and argument in the chosen arc."""
    fr = []
    for r in roots:
        if r.size == 0:
            continue
        th = np.abs(np.angle(r))
        in_arc = th > 2 * np.pi / 3 if arc == "AL" else th < 2 * np.pi / 3
        m = (np.abs(r) >= inner) & (np.abs(r) <= outer) & in_arc
        fr.append(m.mean())
    return float(np.mean(fr)) if fr else 0.0


def omega_family_profile(n: int, ts) -> np.ndarray:
    """(1/n)·log|det(B_t(Ω^n) − I)| at each t."""
    ts = np.asarray(ts, dtype=complex)
    flat = ts.ravel()
    w = BraidWord((1, 2, 1)) ** n
    ((a, _), (_, d)), ls = stream_product(w.letters, flat)
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        det_s = np.exp(3 * n * np.log(-flat) - ls) - (a + d) + np.exp(-ls)
        out = (np.log(np.abs(det_s)) + ls) / n
    # grid points that land exactly on a root carry no usable value
    out = np.where(np.isfinite(out), out, np.nan)
    return out.reshape(ts.shape)


def omega_family_mass(n: int, bounds=(-2, 2, -2, 2), resolution=(160, 160), band: float = 0.1) -> tuple[float, float]:
    """(total, near-circle) Laplacian mass of the Ω^n profile."""
    shell = GridField(tuple(map(float, bounds)), resolution, np.empty((resolution[1], resolution[0])))
    shell.values = omega_family_profile(n, shell.points)
    dens = laplacian_density(shell)
    mass = dens.values * dens.cell_area
    near = np.abs(np.abs(shell.points) - 1) < band
    return float(np.nansum(mass)), float(np.nansum(mass[near]))
