"""PNG figures rendered next to the CSV outputs (Agg backend, no display)."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

DPI = 150


def _save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, dpi=DPI, bbox_inches="tight")
    plt.close(fig)
    return path


def _unit_circle(ax, **kw) -> None:
    th = np.linspace(0, 2 * math.pi, 400)
    ax.plot(np.cos(th), np.sin(th), lw=0.6, color=kw.get("color", "0.5"))


def root_cloud(points, path, title: str = "") -> Path:
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    fig, ax = plt.subplots(figsize=(6, 6))
    _unit_circle(ax)
    ax.scatter(pts[:, 0], pts[:, 1], s=0.5, color="k", alpha=0.6, linewidths=0)
    ax.set_aspect("equal")
    ax.set_xlim(-2.2, 2.2)
    ax.set_ylim(-2.2, 2.2)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    if title:
        ax.set_title(title)
    return _save(fig, path)


def histogram(edges, counts, path, xlabel: str = "", title: str = "") -> Path:
    edges = np.asarray(edges)
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.stairs(np.asarray(counts), edges, fill=True, color="0.35")
    ax.set_xlabel(xlabel)
    ax.set_ylabel("count")
    if title:
        ax.set_title(title)
    return _save(fig, path)


def field_with_contours(field, lines, path, label: str = "", title: str = "", roots=None) -> Path:
    x0, x1, y0, y1 = field.bounds
    fig, ax = plt.subplots(figsize=(6, 5))
    vals = np.ma.masked_invalid(field.values)
    im = ax.imshow(vals, origin="lower", extent=(x0, x1, y0, y1), cmap="viridis", aspect="equal")
    fig.colorbar(im, ax=ax, label=label)
    for line in lines:
        ax.plot(line[:, 0], line[:, 1], color="k", lw=0.8)
    if roots is not None and len(roots):
        r = np.asarray(roots)
        ax.scatter(r.real, r.imag, s=6, color="r")
    _unit_circle(ax, color="w")
    ax.set_xlim(x0, x1)
    ax.set_ylim(y0, y1)
    if title:
        ax.set_title(title)
    return _save(fig, path)


def clt_panels(rows, path) -> Path:
    fig, axes = plt.subplots(1, 2, figsize=(10, 3.5))
    ns = [r.n for r in rows]
    axes[0].errorbar(ns, [r.mean for r in rows], yerr=[r.std for r in rows], fmt="o-", color="k")
    axes[0].axhline((5 - math.sqrt(5)) / 4, color="r", lw=0.8)
    axes[0].set_xscale("log")
    axes[0].set_xlabel("n")
    axes[0].set_ylabel("|signature estimate| / n")
    last = rows[-1]
    if last.histogram is not None:
        counts, edges = last.histogram
        axes[1].stairs(counts, edges, fill=True, color="0.35")
        axes[1].set_xlabel(f"normalized signature, n = {last.n}")
    return _save(fig, path)


def bar_compare(labels, observed, targets, path, title: str = "") -> Path:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    x = np.arange(len(labels))
    ax.bar(x - 0.2, observed, width=0.4, color="0.35", label="observed")
    ax.bar(x + 0.2, targets, width=0.4, color="0.75", label="target")
    ax.set_xticks(x, labels)
    ax.legend()
    if title:
        ax.set_title(title)
    return _save(fig, path)
