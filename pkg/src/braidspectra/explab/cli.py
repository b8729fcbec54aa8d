"""`braidspectra` command line: batch experiments writing CSV, JSON and PNG files.

Exit codes: 0 ok, 1 verification violation, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from contextlib import nullcontext
from fractions import Fraction
from pathlib import Path

import numpy as np

from braidspectra.braid import BraidWord
from braidspectra.explab import io
from braidspectra.explab.suites import run_all, run_on_words
from braidspectra.lyapunov import StepMeasure, lyapunov_grid
from braidspectra.roots import (
    RegionTag,
    ZeroAlexander,
    alexander_roots,
    classify,
    empirical_measure,
    rh_polynomials,
    tag_text,
    two_thirds_bound,
)
from braidspectra.sampling import SamplerMode, WordSampler, make_rng, sample_knot
from braidspectra.sl2walk import (
    DRIFT,
    HITTING,
    SIGNATURE_DRIFT,
    clt_experiment,
    drift_experiment,
    hitting_measure_experiment,
)

log = logging.getLogger("braidspectra")

CIRCLE_MASS = (5 - math.sqrt(5)) / 4
CIRCLE_BAND = (0.66, 0.72)
SHARP_FRACTION = 0.626

PRESETS = {
    "root-cloud": {"ci": dict(count=100, length_mean=300.0, length_std=100.0),
                   "paper": dict(count=2500, length_mean=500.0, length_std=170.0)},
    "drift": {"ci": dict(n_steps=2000, samples=2000), "paper": dict(n_steps=10000, samples=10000)},
    "hitting": {"ci": dict(n_steps=300, samples=4000), "paper": dict(n_steps=1000, samples=100000)},
    "clt": {"ci": dict(lengths="250,1000", samples=1000),
            "paper": dict(lengths="625,1250,2500,5000,10000", samples=10000)},
    "lyapunov-grid": {"ci": dict(grid="-1.5,1.5,-1.5,1.5,40,40", walks=200, walk_length=100),
                      "paper": dict(grid="-1.5,1.5,-1.5,1.5,300,300", walks=10000, walk_length=300)},
    "rh-scan": {"ci": dict(count=100, max_length=60), "paper": dict(count=500, max_length=60)},
}


class BadInput(ValueError):
    pass


# ---------------------------------------------------------------------------
# helpers


def _resolve(args, name: str, default):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return PRESETS[args.command][args.preset].get(name, default)


def _load_words(path: str) -> list[BraidWord]:
    try:
        return [BraidWord.parse(s) for s in io.read_words(path)]
    except (OSError, ValueError) as exc:
        raise BadInput(f"cannot read word list {path}: {exc}") from exc


def _parse_grid(text: str) -> tuple[tuple[float, float, float, float], tuple[int, int]]:
    try:
        parts = [p.strip() for p in text.split(",")]
        x0, x1, y0, y1 = map(float, parts[:4])
        nx, ny = map(int, parts[4:6])
    except ValueError as exc:
        raise BadInput(f"bad --grid {text!r}: {exc}") from exc
    if len(parts) != 6 or x1 <= x0 or y1 <= y0:
        raise BadInput(f"bad --grid {text!r}: want x0,x1,y0,y1,nx,ny")
    return (x0, x1, y0, y1), (nx, ny)


def _parse_mu(text: str | None) -> StepMeasure:
    if not text:
        return StepMeasure.uniform_generators()
    try:
        pairs = [item.split(":") for item in text.split(",")]
        return StepMeasure.parse([(w.strip(), Fraction(p.strip())) for w, p in pairs])
    except (ValueError, ZeroDivisionError) as exc:
        raise BadInput(f"bad --mu {text!r}: {exc}") from exc


def _meta(args, **params) -> dict:
    return {"command": args.command, "seed": args.seed, "preset": args.preset, "params": params}


def _plotting(args):
    if args.no_plot:
        return None
    from braidspectra.explab import plotting

    return plotting


# ---------------------------------------------------------------------------
# commands


def cmd_root_cloud(args, executor) -> int:
    out = Path(args.out)
    tol = args.tol
    if args.words:
        words = _load_words(args.words)
        params = dict(words=args.words, tol=tol, precision=args.precision)
    else:
        count = _resolve(args, "count", 100)
        mean = _resolve(args, "length_mean", 300.0)
        std = _resolve(args, "length_std", 100.0)
        sampler = WordSampler(SamplerMode.FIXED_LENGTH_DISTRIBUTION, mean=mean, std=std)
        words = [sample_knot(sampler, make_rng(args.seed, i)) for i in range(count)]
        params = dict(count=count, length_mean=mean, length_std=std, tol=tol, precision=args.precision)

    def one(w):
        try:
            rs = alexander_roots(w, args.precision)
        except ZeroAlexander:
            return w, None, [], None
        tags = [classify(z, tol) for z, _ in rs.roots]
        bound = None
        if w.is_positive() and not w.is_generator_power():
            bound = two_thirds_bound(w)
        return w, rs, tags, bound

    results = list(executor.map(one, words) if executor else map(one, words))
    root_rows, word_rows, fractions, sharp = [], [], [], []
    for i, (w, rs, tags, bound) in enumerate(results):
        if rs is None:
            word_rows.append((i, str(w), 0, "", "", "", ""))
            continue
        for (z, m), tag in zip(rs.roots, tags):
            root_rows.append((i, z.real, z.imag, m, tag_text(tag)))
        deg = len(rs)
        on = sum(m for (_, m), g in zip(rs.roots, tags) if RegionTag.ON_CIRCLE in g)
        on_ar = sum(m for (_, m), g in zip(rs.roots, tags) if RegionTag.ARC_AR in g)
        frac = on / deg if deg else float("nan")
        is_sharp = bound is not None and bound == on_ar
        if deg:
            fractions.append(frac)
        if bound is not None:
            sharp.append(is_sharp)
        word_rows.append((i, str(w), deg, frac, on_ar, "" if bound is None else bound, is_sharp))
    meta = _meta(args, **params)
    io.write_csv(out / "roots.csv", ["word_id", "re", "im", "multiplicity", "flags"], root_rows, meta)
    io.write_csv(
        out / "words.csv",
        ["word_id", "word", "degree", "circle_fraction", "on_AR", "two_thirds_bound", "bound_sharp"],
        word_rows, meta,
    )
    em = empirical_measure([r[1] for r in results if r[1] is not None], tol=tol)
    io.write_csv(out / "circle_hist.csv", ["bin_start", "bin_end", "count"],
                 io.histogram_rows(em.angle_edges, em.angle_counts), meta)
    io.write_csv(out / "arc_hist.csv", ["bin_start", "bin_end", "count"],
                 io.histogram_rows(em.arc_edges, em.arc_counts), meta)
    mean_frac = float(np.mean(fractions)) if fractions else float("nan")
    sharp_frac = float(np.mean(sharp)) if sharp else float("nan")
    summary = {
        **meta,
        "words": len(words),
        "mean_circle_fraction": mean_frac,
        "circle_fraction_target": CIRCLE_MASS,
        "circle_fraction_in_band": CIRCLE_BAND[0] <= mean_frac <= CIRCLE_BAND[1],
        "bound_sharp_fraction": sharp_frac,
        "bound_sharp_reference": SHARP_FRACTION,
        "bound_sharp_within_10pct": abs(sharp_frac - SHARP_FRACTION) <= 0.10,
    }
    io.write_json(out / "root_cloud_summary.json", summary)
    plt = _plotting(args)
    if plt:
        plt.root_cloud(em.points, out / "root_cloud.png", f"{len(words)} closures")
        plt.histogram(em.angle_edges, em.angle_counts, out / "circle_hist.png", "argument on the upper half circle")
        plt.histogram(em.arc_edges, em.arc_counts, out / "arc_hist.png", "angle along the arc")
    print(f"mean circle fraction {mean_frac:.4f} (target {CIRCLE_MASS:.6f}); bound sharp {sharp_frac:.3f}")
    return 0


def cmd_verify(args, executor) -> int:
    out = Path(args.out)
    if args.words:
        results = run_on_words(_load_words(args.words))
    else:
        results = run_all(args.preset, args.seed, executor)
    rows = [(r.name, r.checked, len(r.violations)) for r in results]
    meta = _meta(args, words=args.words)
    io.write_csv(out / "verify.csv", ["suite", "checked", "violations"], rows, meta)
    bad = [r for r in results if r.violations]
    if bad:
        with open(out / "violations.txt", "w") as fh:
            for r in bad:
                for v in r.violations:
                    fh.write(f"{r.name}\t{v}\n")
    for name, checked, nv in rows:
        print(f"{'FAIL' if nv else 'ok  '} {name:26s} checked {checked:6d} violations {nv}")
    return 1 if bad else 0


def cmd_drift(args, executor) -> int:
    out = Path(args.out)
    n = _resolve(args, "n_steps", 2000)
    m = _resolve(args, "samples", 2000)
    st = drift_experiment(n, m, args.seed, executor)
    meta = _meta(args, n_steps=n, samples=m)
    R = st.samples * n
    io.write_csv(out / "drift.csv", ["sample", "R", "R_over_n"],
                 ((i, int(round(r)), float(x)) for i, (r, x) in enumerate(zip(R, st.samples))), meta)
    io.write_json(out / "drift_summary.json", {
        **meta, "mean_R_over_n": st.normalized, "stderr": st.stderr,
        "variance_R_over_sqrt_n": st.variance, "target": DRIFT,
    })
    plt = _plotting(args)
    if plt:
        counts, edges = np.histogram(st.samples, bins=50)
        plt.histogram(edges, counts, out / "drift.png", "R(w_n)/n")
    print(f"mean R/n = {st.normalized:.6f} ± {st.stderr:.6f} (target {DRIFT:.7f})")
    return 0


def cmd_hitting(args, executor) -> int:
    out = Path(args.out)
    n = _resolve(args, "n_steps", 300)
    m = _resolve(args, "samples", 4000)
    st = hitting_measure_experiment(n, m, args.seed, confirm=args.confirm, executor=executor)
    meta = _meta(args, n_steps=n, samples=m, confirm=args.confirm)
    io.write_csv(out / "hitting.csv",
                 ["p_a", "p_b", "p_B", "n_samples", "stderr_a", "stderr_b", "stderr_B", "discarded"],
                 [(st.p_a, st.p_b, st.p_B, st.n_samples, *st.stderr, st.discarded)], meta)
    plt = _plotting(args)
    if plt:
        plt.bar_compare(["a", "b", "B"], [st.p_a, st.p_b, st.p_B], [HITTING[k] for k in "abB"],
                        out / "hitting.png", "first syllable")
    sig = st.sigma_distance()
    print(f"p_a {st.p_a:.4f}  p_b {st.p_b:.4f}  p_B {st.p_B:.4f}  (σ distances {sig[0]:.2f}, {sig[1]:.2f}, {sig[2]:.2f})")
    return 0


def cmd_clt(args, executor) -> int:
    out = Path(args.out)
    try:
        lengths = [int(x) for x in str(_resolve(args, "lengths", "250,1000")).split(",")]
    except ValueError as exc:
        raise BadInput(f"bad --lengths: {exc}") from exc
    m = _resolve(args, "samples", 1000)
    rows = clt_experiment(lengths, m, args.seed, executor=executor)
    meta = _meta(args, lengths=lengths, samples=m)
    io.write_csv(out / "clt.csv", ["n", "mean", "std", "count"],
                 ((r.n, r.mean, r.std, r.count) for r in rows), meta)
    hist_rows = []
    for r in rows:
        counts, edges = r.histogram
        hist_rows += [(r.n, lo, hi, c) for lo, hi, c in io.histogram_rows(edges, counts)]
    io.write_csv(out / "clt_hist.csv", ["n", "bin_start", "bin_end", "count"], hist_rows, meta)
    plt = _plotting(args)
    if plt:
        plt.clt_panels(rows, out / "clt.png")
    for r in rows:
        print(f"n {r.n:6d}  mean |σ|/n {r.mean:.5f}  std {r.std:.5f}  (target {SIGNATURE_DRIFT:.6f})")
    return 0


def cmd_lyapunov_grid(args, executor) -> int:
    out = Path(args.out)
    bounds, res = _parse_grid(_resolve(args, "grid", None))
    walks = _resolve(args, "walks", 200)
    length = _resolve(args, "walk_length", 100)
    mu = _parse_mu(args.mu)
    g = lyapunov_grid(bounds, res, mu, walks, length, args.seed, executor)
    meta = _meta(args, **g.params)
    io.write_csv(out / "lyapunov.csv", ["x", "y", "lambda_hat", "stderr", "chi", "density"], g.rows(), meta)
    io.write_csv(out / "lyapunov_contour.csv", ["line", "x", "y"], io.polyline_rows(g.lines), meta)
    io.write_json(out / "lyapunov_summary.json", {
        **meta, "total_mass": g.total_mass, "negative_cells": g.negative_cells,
    })
    plt = _plotting(args)
    if plt:
        plt.field_with_contours(g.chi, g.lines, out / "lyapunov_chi.png", "χ")
        plt.field_with_contours(g.density, [], out / "lyapunov_density.png", "ν_bif density")
    print(f"discrete bifurcation mass {g.total_mass:.4f}; negative cells {g.negative_cells}")
    return 0


def cmd_rh_scan(args, executor) -> int:
    out = Path(args.out)
    if args.words:
        words = _load_words(args.words)
    else:
        count = _resolve(args, "count", 100)
        max_len = _resolve(args, "max_length", 60)
        words = []
        for i in range(count):
            rng = make_rng(args.seed, i)
            n = int(rng.integers(4, max_len // 2 + 1)) * 2
            words.append(sample_knot(WordSampler(SamplerMode.UNIFORM_POSITIVE, length=n), rng))
    rows = []
    findings = 0
    for i, w in enumerate(words):
        try:
            rh = rh_polynomials(w)
        except ValueError as exc:
            rows.append((i, str(w), "", "", f"skipped: {exc}"))
            continue
        findings += not rh.all_positive
        rows.append((i, str(w), len(w) // 2, " ".join(map(str, rh.b)), rh.all_positive))
    meta = _meta(args, words=len(words))
    io.write_csv(out / "rh.csv", ["word_id", "word", "m", "b", "all_positive"], rows, meta)
    io.write_json(out / "rh_summary.json", {**meta, "nonpositive_findings": findings})
    print(f"{len(words)} words scanned; {findings} with some b_k ≤ 0")
    return 0


COMMANDS = {
    "root-cloud": cmd_root_cloud,
    "verify": cmd_verify,
    "drift": cmd_drift,
    "hitting": cmd_hitting,
    "clt": cmd_clt,
    "lyapunov-grid": cmd_lyapunov_grid,
    "rh-scan": cmd_rh_scan,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", default="out")
    common.add_argument("--preset", choices=("ci", "paper"), default="ci")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--no-plot", action="store_true", help="skip PNG rendering")
    common.add_argument("--tol", type=float, default=1e-6, help="on-circle tolerance")
    common.add_argument("--precision", type=int, default=53, help="root-finding precision in bits")
    common.add_argument("--words", help="word-list file, one word per line")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="braidspectra", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    rc = sub.add_parser("root-cloud", parents=[common])
    rc.add_argument("--count", type=int)
    rc.add_argument("--length-mean", type=float)
    rc.add_argument("--length-std", type=float)
    sub.add_parser("verify", parents=[common])
    for name in ("drift", "hitting"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--n-steps", type=int)
        sp.add_argument("--samples", type=int)
        if name == "hitting":
            sp.add_argument("--confirm", action="store_true",
                            help="discard samples whose first syllable moves in the second half")
    cl = sub.add_parser("clt", parents=[common])
    cl.add_argument("--lengths")
    cl.add_argument("--samples", type=int)
    lg = sub.add_parser("lyapunov-grid", parents=[common])
    lg.add_argument("--grid", help="x0,x1,y0,y1,nx,ny")
    lg.add_argument("--walks", type=int)
    lg.add_argument("--walk-length", type=int)
    lg.add_argument("--mu", help="step measure, e.g. 'a:1/2,b:1/2'")
    rh = sub.add_parser("rh-scan", parents=[common])
    rh.add_argument("--count", type=int)
    rh.add_argument("--max-length", type=int)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    if args.threads < 1 or args.tol <= 0 or args.precision < 53:
        print("error: --threads ≥ 1, --tol > 0 and --precision ≥ 53 required", file=sys.stderr)
        return 2
    Path(args.out).mkdir(parents=True, exist_ok=True)
    pool = ThreadPoolExecutor(args.threads) if args.threads > 1 else nullcontext(None)
    try:
        with pool as executor:
            return COMMANDS[args.command](args, executor)
    except ValueError as exc:
        # BadInput and parameter checks raised by the library
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
