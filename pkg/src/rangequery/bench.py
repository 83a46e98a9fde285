"""Space and probe measurements over a grid of kinds and sizes.

Words and probes come from the indexes' own counters.  Each row also
carries its ratio to the previous row of the same kind, which is what the
scaling checks look at.
"""
from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass, fields

from .core import ProbeCounter
from .formats import TREE_KINDS, build_index
from .instances import node_pairs, random_list, random_tree, short_ranges, uniform_ranges


@dataclass
class MeasurementRow:
    kind: str
    n: int
    parameter: str
    build_seconds: float
    words: int
    mean_probes: float
    mean_query_us: float
    probes_ratio: float | None = None
    words_ratio: float | None = None


HEADER = [f.name for f in fields(MeasurementRow)]


def _workload(kind: str, n: int, queries: int, seed: int, shape: str):
    if kind in TREE_KINDS:
        return [(u, v) for u, v in node_pairs(n, queries, seed)]
    if shape == "short":
        return short_ranges(n, queries, seed)
    return uniform_ranges(n, queries, seed)


def measure(kind: str, n: int, *, queries: int = 1000, seed: int = 0, workload: str = "uniform",
            **params) -> MeasurementRow:
    data = random_tree(n, seed) if kind in TREE_KINDS else random_list(n, seed)
    given = {k: v for k, v in params.items() if v is not None}
    t0 = time.perf_counter()
    idx = build_index(kind, data, **given)
    build = time.perf_counter() - t0
    work = _workload(kind, n, queries, seed + 1, workload)
    counter = ProbeCounter()
    t0 = time.perf_counter()
    for a, b in work:
        idx.query(a, b, counter)
    elapsed = time.perf_counter() - t0
    words = getattr(idx, "total_words", idx.words)
    label = ";".join(f"{k}={v}" for k, v in sorted(given.items())) or "default"
    return MeasurementRow(kind, n, label, round(build, 6), int(words),
                          counter.probes / max(1, len(work)), round(1e6 * elapsed / max(1, len(work)), 3))


def run_bench(kinds, sizes, **kwargs) -> list[MeasurementRow]:
    """Rows in grid order (kind-major); ratios are against the previous size of the same kind."""
    rows = []
    for kind in kinds:
        prev = None
        for n in sizes:
            row = measure(kind, n, **kwargs)
            if prev is not None:
                row.probes_ratio = row.mean_probes / prev.mean_probes if prev.mean_probes else None
                row.words_ratio = row.words / prev.words if prev.words else None
            rows.append(row)
            prev = row
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(HEADER)
    for row in rows:
        writer.writerow(["" if v is None else (f"{v:.6g}" if isinstance(v, float) else v) for v in astuple(row)])
    return buf.getvalue()
