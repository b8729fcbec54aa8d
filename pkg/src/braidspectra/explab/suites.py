"""Property suites behind `braidspectra verify`.

Each suite walks a seeded corpus and records every violation with enough
data to reproduce it.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import Executor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from braidspectra.braid import BraidWord, left_greedy_normal_form
from braidspectra.burau import (
    Convention,
    all_same_sign,
    alexander_poly,
    burau_of_word,
    det_check,
    definiteness_audit,
    degree_and_monic_check,
    predict_sign_matrix,
    sign_matrix_of,
)
from braidspectra.roots import (
    ZeroAlexander,
    alexander_roots,
    arc_lower_bound,
    classify,
    count_arc_roots_exact,
    count_circle_roots_exact,
    pairing_defect,
    real_roots_in_unit_interval,
    two_thirds_bound,
    RegionTag,
    SMALL_DISK_RADIUS,
)
from braidspectra.sampling import SamplerMode, WordSampler, make_rng, sample_knot, sample_word
from braidspectra.spectral import log_spectral_radius, rho_at_roots


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _words(count: int, seed: int, task: int, max_len: int, mode: SamplerMode, min_len: int = 1):
    rng = make_rng(seed, task)
    for _ in range(count):
        n = int(rng.integers(min_len, max_len + 1))
        yield sample_word(WordSampler(mode, length=n), rng)


def _positive_non_power(count: int, seed: int, task: int, max_len: int, min_len: int = 2):
    for w in _words(count * 4, seed, task, max_len, SamplerMode.UNIFORM_POSITIVE, min_len):
        if not w.is_generator_power():
            yield w
            count -= 1
            if count == 0:
                return


def _knots(count: int, seed: int, task: int, max_len: int, min_len: int = 4):
    # positive knots need even length: the closure permutation must be a 3-cycle
    rng = make_rng(seed, task)
    for _ in range(count):
        n = 2 * int(rng.integers((min_len + 1) // 2, max_len // 2 + 1))
        yield sample_knot(WordSampler(SamplerMode.UNIFORM_POSITIVE, length=n), rng)


def _map(executor: Executor | None, fn: Callable, items):
    return list(map(fn, items) if executor is None else executor.map(fn, items))


def suite_possign(count: int, max_len: int, seed: int, executor=None) -> list[SuiteResult]:
    """Entry and trace definiteness of B_{−t}, plus the same-sign conjugate."""
    entries = SuiteResult("possign")
    trace = SuiteResult("tracedef")
    good = SuiteResult("goodsign")
    words = list(_words(count, seed, 11, max_len, SamplerMode.UNIFORM_FOUR))

    def one(w):
        rep = definiteness_audit(w)
        ss = None
        if rep.same_sign_conjugate is not None:
            ss = all_same_sign(burau_of_word(rep.same_sign_conjugate, Convention.MINUS_T))
        return w, rep, ss

    for w, rep, ss in _map(executor, one, words):
        entries.checked += 1
        trace.checked += 1
        if not rep.entries_definite:
            entries.violations.append(str(w))
        if not rep.trace_definite:
            trace.violations.append(str(w))
        if ss is not None:
            good.checked += 1
            if not ss:
                good.violations.append(f"{w} -> {rep.same_sign_conjugate}")
    return [entries, trace, good]


def suite_sign_prediction(max_len: int) -> SuiteResult:
    """Predicted sign pattern against the computed one for every positive word."""
    res = SuiteResult("sign_prediction")
    for n in range(1, max_len + 1):
        for letters in itertools.product((1, 2), repeat=n):
            w = BraidWord(letters)
            c = left_greedy_normal_form(w)
            if not c.factors:
                continue
            res.checked += 1
            got = sign_matrix_of(burau_of_word(w, Convention.MINUS_T))
            want = predict_sign_matrix(c)
            if got is None or not got.compatible(want):
                res.violations.append(f"{w}: got {got}, predicted {want}")
    return res


def suite_det_identity(count: int, max_len: int, seed: int) -> SuiteResult:
    res = SuiteResult("det_identity")
    for w in _words(count, seed, 12, max_len, SamplerMode.UNIFORM_FOUR):
        res.checked += 1
        if not det_check(w):
            res.violations.append(str(w))
    return res


def suite_root_free(count: int, max_len: int, seed: int, tol: float = 1e-6, executor=None) -> list[SuiteResult]:
    """No Alexander root in region T or the small disk; ρ = 1 at roots in D̄; pairing."""
    region = SuiteResult("root_free_T")
    disk = SuiteResult("zero_free_disk")
    level = SuiteResult("roots_on_R_w")
    pairing = SuiteResult("root_pairing")
    words = list(_positive_non_power(count, seed, 13, max_len, min_len=3))

    def one(w):
        rs = alexander_roots(w)
        vals = rs.values()
        tags = [classify(z, tol) for z in vals]
        inside = vals[np.abs(vals) <= 1 + tol]
        dev = np.abs(rho_at_roots(w, inside, 1e-6) - 1) if inside.size else np.zeros(0)
        return w, vals, tags, dev, pairing_defect(rs, tol)

    for w, vals, tags, dev, pd in _map(executor, one, words):
        for s in (region, disk, level, pairing):
            s.checked += 1
        bad_t = [z for z, g in zip(vals, tags) if RegionTag.IN_REGION_T in g and RegionTag.T_BOUNDARY not in g]
        if bad_t:
            region.violations.append(f"{w}: {bad_t[:3]}")
        bad_d = [z for z in vals if abs(z) < SMALL_DISK_RADIUS - tol]
        if bad_d:
            disk.violations.append(f"{w}: {bad_d[:3]}")
        if dev.size and dev.max() >= 1e-6:
            level.violations.append(f"{w}: max |ρ − 1| = {dev.max():.3g}")
        if pd >= 1e-6:
            pairing.violations.append(f"{w}: pairing defect {pd:.3g}")
    return [region, disk, level, pairing]


def suite_arc_level(count: int, max_len: int, seed: int, samples: int = 64) -> SuiteResult:
    """ρ = 1 on A_R within 1e−8."""
    res = SuiteResult("rho_on_AR")
    theta = np.linspace(-2 * np.pi / 3, 2 * np.pi / 3, samples + 2)[1:-1]
    pts = np.exp(1j * theta)
    for w in _words(count, seed, 14, max_len, SamplerMode.UNIFORM_FOUR):
        res.checked += 1
        dev = np.abs(np.exp(log_spectral_radius(w, pts)[0]) - 1).max()
        if dev >= 1e-8:
            res.violations.append(f"{w}: {dev:.3g}")
    return res


def suite_circle_bounds(count: int, max_len: int, seed: int, executor=None) -> list[SuiteResult]:
    """Arc and 2/3 lower bounds against exact counts; Conway positivity on (0, 1)."""
    arc = SuiteResult("arc_lower_bound")
    third = SuiteResult("two_thirds_bound")
    conway = SuiteResult("no_roots_in_0_1")
    numeric = SuiteResult("numeric_vs_exact_circle")
    words = list(_knots(count, seed, 15, max_len))
    arcs = [(0.0, 2 * math.pi / 3), (0.0, math.pi / 3), (math.pi / 3, 2 * math.pi / 3), (math.pi / 6, math.pi / 2)]

    def one(w):
        cc = count_circle_roots_exact(w)
        arc_pairs = []
        for t1, t2 in arcs:
            arc_pairs.append((t1, t2, arc_lower_bound(w, t1, t2), count_arc_roots_exact(w, t1, t2)))
        tt = None if w.is_generator_power() else two_thirds_bound(w)
        vals = alexander_roots(w).values()
        n_on = int(np.sum(np.abs(np.abs(vals) - 1) < 1e-6))
        return w, cc, arc_pairs, tt, real_roots_in_unit_interval(w), n_on

    for w, cc, arc_pairs, tt, n01, n_on in _map(executor, one, words):
        arc.checked += 1
        conway.checked += 1
        numeric.checked += 1
        for t1, t2, lb, got in arc_pairs:
            if lb > got:
                arc.violations.append(f"{w}: arc ({t1:.4f}, {t2:.4f}) bound {lb} > {got}")
        if tt is not None:
            third.checked += 1
            if tt > cc.on_AR:
                third.violations.append(f"{w}: bound {tt} > on_AR {cc.on_AR}")
        if n01:
            conway.violations.append(f"{w}: {n01} roots in (0, 1)")
        if n_on != cc.total_on_circle:
            numeric.violations.append(f"{w}: numeric {n_on} vs exact {cc.total_on_circle}")
    return [arc, third, conway, numeric]


def suite_burau_pos(count: int, max_len: int, seed: int) -> SuiteResult:
    """deg Δ = #w − 2 and Δ monic for positive non-power words."""
    res = SuiteResult("burau_pos")
    for w in _positive_non_power(count, seed, 16, max_len):
        res.checked += 1
        deg, monic = degree_and_monic_check(w)
        if deg != len(w) - 2 or not monic:
            res.violations.append(str(w))
    return res


PRESET_COUNTS = {
    # (possign, sign-prediction length, det, root-free, arc-level, circle bounds, burau-pos)
    "ci": dict(possign=1000, sign_len=10, det=1000, root_free=100, arc_level=100, bounds=50, burau_pos=300),
    "paper": dict(possign=10000, sign_len=12, det=10000, root_free=1000, arc_level=1000, bounds=500, burau_pos=1000),
}


def run_all(preset: str, seed: int, executor: Executor | None = None) -> list[SuiteResult]:
    c = PRESET_COUNTS[preset]
    out: list[SuiteResult] = []
    out += suite_possign(c["possign"], 200, seed, executor)
    out.append(suite_sign_prediction(c["sign_len"]))
    out.append(suite_det_identity(c["det"], 100, seed))
    out.append(suite_burau_pos(c["burau_pos"], 100, seed))
    out += suite_root_free(c["root_free"], 200, seed, executor=executor)
    out.append(suite_arc_level(c["arc_level"], 200, seed))
    out += suite_circle_bounds(c["bounds"], 300, seed, executor)
    return out


def run_on_words(words: Sequence[BraidWord]) -> list[SuiteResult]:
    """Per-word checks for a user-supplied corpus."""
    det = SuiteResult("det_identity")
    entries = SuiteResult("possign")
    region = SuiteResult("root_free_T")
    for w in words:
        det.checked += 1
        entries.checked += 1
        if not det_check(w):
            det.violations.append(str(w))
        if not definiteness_audit(w).entries_definite:
            entries.violations.append(str(w))
        if w.is_positive() and not w.is_generator_power() and len(w) >= 3:
            region.checked += 1
            try:
                vals = alexander_roots(w).values()
            except ZeroAlexander:
                continue
            bad = [z for z in vals if (g := classify(z)) and RegionTag.IN_REGION_T in g and RegionTag.T_BOUNDARY not in g]
            if bad:
                region.violations.append(f"{w}: {bad[:3]}")
    return [det, entries, region]
