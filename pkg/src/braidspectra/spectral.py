"""Spectral radius ρ_w(t) of the Burau matrix, its level set R_w and friends."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import contourpy
import mpmath
import numpy as np

from braidspectra.braid import BraidWord, NTKind, nielsen_thurston_type
from braidspectra.burau import NotApplicable, SingularAtZero, _step, alexander_poly, burau_of_word, stream_product
from braidspectra.laurent import LaurentPoly
from braidspectra.roots import RootSet, alexander_roots, find_roots, polish_root

NEG_AXIS_BRACKET = (-1 + 1e-9, -1e-9)


class EigenBranch(enum.Enum):
    TWO_REAL = "TwoReal"  # eigenvalues of distinct modulus
    CONJUGATE_PAIR = "ConjugatePair"  # equal modulus, ρ = |t|^{#w/2}


@dataclass(frozen=True)
class SpectralSample:
    t: complex
    rho: float
    branch: EigenBranch
    log_rho: float


def log_spectral_radius(w: BraidWord, ts, equal_tol: float = 1e-9) -> tuple[np.ndarray, np.ndarray]:
    """(log ρ, equal-modulus mask) at every t, via streamed trace and exact det."""
    ts = np.atleast_1d(np.asarray(ts, dtype=complex))
    if not w.is_positive() and np.any(ts == 0):
        raise SingularAtZero("ρ_w(0) is undefined for words with inverse letters")
    n = w.exponent_sum()
    ((a, b), (c, d)), ls = stream_product(w.letters, ts)
    p = a + d
    with np.errstate(divide="ignore", invalid="ignore", over="ignore", under="ignore"):
        logt = np.log(-ts)
        det_s = np.exp(n * logt - 2 * ls)
        det_s = np.where(ts == 0, 0.0 if n > 0 else 1.0, det_s)
        # near a double eigenvalue p² − 4det cancels to sqrt(eps); (a − d)² + 4bc does not
        trace_scale = np.abs(p) ** 2 + 4 * np.abs(det_s)
        entry_scale = np.abs(a - d) ** 2 + 4 * np.abs(b * c)
        disc = np.where(entry_scale < trace_scale, (a - d) ** 2 + 4 * b * c, p * p - 4 * det_s)
        root = np.sqrt(disc)
        sgn = np.where((np.conj(p) * root).real >= 0, 1.0, -1.0)
        lam1 = (p + sgn * root) / 2
        lam2 = np.where(lam1 != 0, det_s / lam1, 0)
        m1, m2 = np.abs(lam1), np.abs(lam2)
        big = np.maximum(m1, m2)
        log_rho = np.where(big > 0, np.log(big) + ls, -np.inf)
    equal = np.abs(m1 - m2) <= equal_tol * np.maximum(big, 1e-300)
    return log_rho, equal


def rho_mp(w: BraidWord, t, bits: int = 212) -> mpmath.mpf:
    """ρ_w(t) with the whole product carried at `bits` precision; t may be an mpc."""
    with mpmath.workprec(bits):
        t = mpmath.mpc(t)
        if t == 0 and not w.is_positive():
            raise SingularAtZero("ρ_w(0) is undefined for words with inverse letters")
        one, zero = mpmath.mpc(1), mpmath.mpc(0)
        a, b, c, d = one, zero, zero, one
        for x in w.letters:
            a, b, c, d = _step(x, t, a, b, c, d)
        p = a + d
        root = mpmath.sqrt((a - d) ** 2 + 4 * b * c)
        return +max(abs((p + root) / 2), abs((p - root) / 2))


def spectral_radius(w: BraidWord, t: complex, precision: int = 53) -> SpectralSample:
    if precision > 53:
        r = rho_mp(w, t, precision)
        lam = float(mpmath.log(r)) if r > 0 else -math.inf
        det_mod = float(abs(mpmath.mpc(t)) ** w.exponent_sum()) ** 0.5
        equal = abs(float(r) - det_mod) <= 1e-9 * max(float(r), 1e-300)
        branch = EigenBranch.CONJUGATE_PAIR if equal else EigenBranch.TWO_REAL
        return SpectralSample(complex(t), float(r), branch, lam)
    lr, eq = log_spectral_radius(w, [t])
    branch = EigenBranch.CONJUGATE_PAIR if eq[0] else EigenBranch.TWO_REAL
    return SpectralSample(complex(t), float(np.exp(lr[0])), branch, float(lr[0]))


def rho(w: BraidWord, ts) -> np.ndarray:
    return np.exp(log_spectral_radius(w, ts)[0])


def rho_at_roots(w: BraidWord, zs, tol: float = 1e-6, bits: int = 212) -> np.ndarray:
    """ρ at Alexander roots, re-evaluated in extended precision where double is inconclusive.

    Near a double eigenvalue of a non-normal product the double-precision error
    grows like sqrt(eps)·‖B‖, so points with |ρ − 1| above tol/100 get the root
    polished and ρ recomputed at `bits`.
    """
    zs = np.atleast_1d(np.asarray(zs, dtype=complex))
    out = rho(w, zs)
    redo = np.nonzero(~(np.abs(out - 1) < tol / 100))[0]
    if redo.size:
        delta = alexander_poly(w)
        for k in redo:
            out[k] = float(rho_mp(w, polish_root(delta, zs[k], bits), bits))
    return out


@dataclass(frozen=True)
class DiscriminantSet:
    """d(w); identically_zero marks the degenerate case p² ≡ 4(−t)^{#w}."""

    roots: RootSet | None
    polynomial: LaurentPoly
    identically_zero: bool = False


def discriminant_poly(w: BraidWord) -> LaurentPoly:
    p = burau_of_word(w).trace()
    n = w.exponent_sum()
    det = LaurentPoly.monomial((-1) ** (n % 2), n)
    return p * p - det * 4


def discriminant_set(w: BraidWord, precision: int = 53) -> DiscriminantSet:
    disc = discriminant_poly(w)
    if disc.is_zero:
        return DiscriminantSet(None, disc, True)
    if disc.span == 0:
        rs = RootSet(((0j, disc.min_exp),) if disc.min_exp > 0 else (), max(disc.min_exp, 0))
        return DiscriminantSet(rs, disc)
    return DiscriminantSet(find_roots(disc, precision), disc)


# ---------------------------------------------------------------------------
# grids and contours


@dataclass
class GridField:
    bounds: tuple[float, float, float, float]
    resolution: tuple[int, int]
    values: np.ndarray = field(repr=False)  # shape (ny, nx)

    @property
    def xs(self) -> np.ndarray:
        return np.linspace(self.bounds[0], self.bounds[1], self.resolution[0])

    @property
    def ys(self) -> np.ndarray:
        return np.linspace(self.bounds[2], self.bounds[3], self.resolution[1])

    @property
    def points(self) -> np.ndarray:
        x, y = np.meshgrid(self.xs, self.ys)
        return x + 1j * y

    @property
    def cell_area(self) -> float:
        x0, x1, y0, y1 = self.bounds
        nx, ny = self.resolution
        return (x1 - x0) / (nx - 1) * (y1 - y0) / (ny - 1)

    def rows(self):
        for j, y in enumerate(self.ys):
            for i, x in enumerate(self.xs):
                yield float(x), float(y), float(self.values[j, i])


def evaluate_grid(
    fn, bounds: tuple[float, float, float, float], resolution: tuple[int, int]
) -> GridField:
    nx, ny = resolution
    if nx < 2 or ny < 2:
        raise ValueError("resolution must be at least 2×2")
    g = GridField(tuple(map(float, bounds)), (int(nx), int(ny)), np.empty((ny, nx)))
    g.values = np.asarray(fn(g.points.ravel())).reshape(ny, nx)
    return g


def contour_lines(g: GridField, level: float = 0.0) -> list[np.ndarray]:
    """Marching-squares polylines of {values = level}; each an (m, 2) array."""
    z = np.ma.masked_invalid(g.values)
    gen = contourpy.contour_generator(g.xs, g.ys, z, name="serial")
    return [np.asarray(line) for line in gen.lines(level)]


@dataclass
class LevelSetReport:
    field: GridField
    lines: list[np.ndarray]
    arc_check_max: float  # max |log ρ| over A_R sample points
    root_level_max: float  # max |ρ − 1| over Δ-roots in the closed disk
    root_contour_distance: float  # max distance from those roots to a contour vertex


def grid_R_w(
    w: BraidWord,
    bounds: tuple[float, float, float, float] = (-1.1, 1.1, -1.1, 1.1),
    resolution: tuple[int, int] = (201, 201),
    level_tol: float = 1e-6,
    arc_samples: int = 64,
) -> LevelSetReport:
    """Contour of log ρ_w = 0, with the A_R ⊂ R_w and Z_w ∩ D̄ ⊂ R_w checks."""
    g = evaluate_grid(lambda z: log_spectral_radius(w, z)[0], bounds, resolution)
    lines = contour_lines(g, 0.0)
    theta = np.linspace(-2 * np.pi / 3, 2 * np.pi / 3, arc_samples + 2)[1:-1]
    arc = float(np.max(np.abs(log_spectral_radius(w, np.exp(1j * theta))[0])))
    root_level = 0.0
    root_dist = 0.0
    try:
        vals = alexander_roots(w).values()
    except ValueError:
        vals = np.zeros(0, dtype=complex)
    inside = vals[np.abs(vals) <= 1 + level_tol]
    if inside.size:
        root_level = float(np.max(np.abs(rho(w, inside) - 1)))
        if lines:
            verts = np.concatenate(lines)
            vz = verts[:, 0] + 1j * verts[:, 1]
            root_dist = float(np.max(np.min(np.abs(inside[:, None] - vz[None, :]), axis=1)))
        else:
            root_dist = math.inf
    return LevelSetReport(g, lines, arc, root_level, root_dist)


def circle_level_arcs(w: BraidWord, n_samples: int = 4096, tol: float = 1e-8) -> int:
    """Connected arcs of {ρ_w = 1} on the unit circle, by sampling."""
    theta = 2 * np.pi * (np.arange(n_samples) + 0.5) / n_samples
    on = np.abs(log_spectral_radius(w, np.exp(1j * theta))[0]) < tol
    if on.all():
        return 1
    if not on.any():
        return 0
    starts = on & ~np.roll(on, 1)
    return int(starts.sum())


# ---------------------------------------------------------------------------
# real axis


@dataclass(frozen=True)
class RealAxisScan:
    crossing: float | None
    monotone_on_neg: bool
    below_one_on_unit_interval: bool
    rho_at_minus_one: float
    rho_at_zero: float


def real_axis_scan(w: BraidWord, n_samples: int = 400, bisect_tol: float = 1e-13) -> RealAxisScan:
    if not w.is_positive():
        raise NotApplicable(f"{w} is not positive")
    if w.closure_components() != 1:
        raise NotApplicable(f"closure of {w} is not a knot")
    xs = np.linspace(-1.0, 0.0, n_samples)
    lr = log_spectral_radius(w, xs)[0]
    # ρ should fall from ρ(−1) to 0 as t runs from −1 to 0
    monotone = bool(np.all(np.diff(lr) <= 1e-10))
    pos = np.linspace(0.0, 1.0, n_samples, endpoint=False)
    below = bool(np.all(log_spectral_radius(w, pos)[0] < 0))
    crossing = None
    if nielsen_thurston_type(w).kind is NTKind.PSEUDO_ANOSOV:
        lo, hi = NEG_AXIS_BRACKET
        f = lambda x: float(log_spectral_radius(w, [x])[0][0])  # noqa: E731
        if f(lo) > 0 > f(hi):
            while hi - lo > bisect_tol:
                mid = (lo + hi) / 2
                if f(mid) > 0:
                    lo = mid
                else:
                    hi = mid
            crossing = (lo + hi) / 2
    return RealAxisScan(crossing, monotone, below, float(np.exp(lr[0])), float(np.exp(lr[-1])))


# ---------------------------------------------------------------------------
# L∞ certificates on the u-region


def u_region_values(u) -> tuple[np.ndarray, np.ndarray]:
    u = np.asarray(u, dtype=complex)
    r = np.abs(u)
    return np.abs(u + u**3) + r**4, np.abs(u + u**3 + u**5) + r**6


def in_u_region(u) -> np.ndarray:
    a, b = u_region_values(u)
    return (a < 1) & (b < 1)


def _u_gen(x: int, u: complex) -> np.ndarray:
    if x == 1:
        return np.array([[u * u, u], [0, 1]], dtype=complex)
    return np.array([[1, 0], [-u, u * u]], dtype=complex)


def u_matrix(w: BraidWord, u: complex) -> np.ndarray:
    """Burau in u-coordinates (t = −u², conjugated by diag(u, 1)); positive words."""
    m = np.eye(2, dtype=complex)
    for x in w.letters:
        if x < 0:
            raise ValueError("u-coordinate matrices are only tabulated for positive letters")
        m = m @ _u_gen(x, u)
    return m


def norm_inf(m: np.ndarray) -> float:
    return float(np.max(np.abs(m).sum(axis=1)))


@dataclass
class CertificateReport:
    samples: int
    in_region: int
    power_failures: list[complex] = field(default_factory=list)
    product_failures: list[complex] = field(default_factory=list)
    omega_failures: list[complex] = field(default_factory=list)
    formula_max_error: float = 0.0

    @property
    def ok(self) -> bool:
        return not (self.power_failures or self.product_failures or self.omega_failures)


def sample_u_region(n: int, rng: np.random.Generator) -> np.ndarray:
    """n points of the u-region by rejection from the unit disk."""
    out: list[complex] = []
    while len(out) < n:
        r = np.sqrt(rng.random(4 * n)) * 0.9
        th = rng.random(4 * n) * 2 * np.pi
        u = r * np.exp(1j * th)
        out.extend(u[in_u_region(u)].tolist())
    return np.array(out[:n])


def norm_certificates(u_grid, k_max: int = 4, tol: float = 1e-12) -> CertificateReport:
    """Check the four L∞ norm facts behind the root-free region at each sample."""
    us = np.atleast_1d(np.asarray(u_grid, dtype=complex)).ravel()
    mask = in_u_region(us)
    rep = CertificateReport(int(us.size), int(mask.sum()))
    words = {a: BraidWord((1,) * a) for a in (2, 3)}
    mixed = {(a, b): BraidWord((1,) * a + (2,) * b) for a in (2, 3) for b in (2, 3)}
    omega = BraidWord((1, 2, 1))
    for u in us[mask]:
        u = complex(u)
        s, s3 = u_region_values(u)
        for a, wa in words.items():
            if abs(norm_inf(u_matrix(wa, u)) - 1) > tol or abs(norm_inf(u_matrix(wa.swapped(), u)) - 1) > tol:
                rep.power_failures.append(u)
                break
        for (a, b), wab in mixed.items():
            nrm = norm_inf(u_matrix(wab, u))
            expect = float(s if b == 2 else s3)
            rep.formula_max_error = max(rep.formula_max_error, abs(nrm - expect))
            if not nrm < 1:
                rep.product_failures.append(u)
                break
        for k in range(1, k_max + 1):
            if norm_inf(u_matrix(omega**k, u)) > abs(u) ** (3 * k) * (1 + tol) + tol or abs(u) >= 1:
                rep.omega_failures.append(u)
                break
    return rep
