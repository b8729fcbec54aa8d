"""CSV files with a one-line JSON metadata header, and a reader for them."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path
from typing import Any, Iterable, Sequence

from braidspectra import __version__

VERSION_STRING = f"braidspectra {__version__}"


def _fmt(v: Any) -> str:
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "1" if v else "0"
    return str(v)


def render_csv(header: Sequence[str], rows: Iterable[Sequence[Any]], meta: dict) -> str:
    buf = io.StringIO()
    meta = {"version": VERSION_STRING, **meta}
    buf.write("# " + json.dumps(meta, sort_keys=True, default=str) + "\n")
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(header)
    for row in rows:
        wr.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def write_csv(path: str | Path, header: Sequence[str], rows: Iterable[Sequence[Any]], meta: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(render_csv(header, rows, meta))
    return path


def read_csv(path: str | Path) -> tuple[dict, list[str], list[dict[str, str]]]:
    """(metadata, header, rows) from a file written by write_csv."""
    text = Path(path).read_text()
    first, _, rest = text.partition("\n")
    if not first.startswith("# "):
        raise ValueError(f"{path}: missing metadata line")
    meta = json.loads(first[2:])
    rd = csv.reader(io.StringIO(rest))
    header = next(rd)
    rows = [dict(zip(header, r)) for r in rd]
    return meta, header, rows


def write_json(path: str | Path, data: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps({"version": VERSION_STRING, **data}, sort_keys=True, indent=2, default=str) + "\n")
    return path


def read_words(path: str | Path) -> list[str]:
    """Word-list file: one word per line; '#' starts a comment."""
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def histogram_rows(edges, counts):
    for lo, hi, c in zip(edges[:-1], edges[1:], counts):
        yield float(lo), float(hi), int(c)


def polyline_rows(lines):
    for k, line in enumerate(lines):
        for x, y in line:
            yield k, float(x), float(y)
