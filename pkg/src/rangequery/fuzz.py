"""Differential fuzzing of every index against the brute-force oracles."""
from __future__ import annotations

import json
import random
from bisect import bisect_left, insort
from collections import Counter
from dataclasses import dataclass, field

from .core import NIL, LabeledTree, oracle_median, oracle_path_labels
from .formats import ALL_KINDS, TREE_KINDS, build_index, format_tree
from .instances import TREE_SHAPES, make_tree, random_list
from .mode_list import OccurrenceIndex

DEFAULT_SIZES = (1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 200)


class OffByOneOccurrences(OccurrenceIndex):
    """Deliberately broken counter: forgets an occurrence at the right end."""

    def count(self, x, i: int, j: int) -> int:
        arr = self.positions.get(x)
        if arr is None:
            return 0
        return bisect_left(arr, j) - bisect_left(arr, i)


@dataclass
class Finding:
    kind: str
    params: dict
    instance: object
    query: tuple[int, int]
    expected: object
    got: object

    def to_json(self) -> str:
        inst = (format_tree(self.instance) if isinstance(self.instance, LabeledTree)
                else list(self.instance))
        return json.dumps({"kind": self.kind, "params": self.params, "instance": inst,
                           "query": list(self.query), "expected": self.expected, "got": self.got},
                          indent=2, default=str) + "\n"


@dataclass
class FuzzReport:
    lines: list[str] = field(default_factory=list)
    findings: list[Finding] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.findings

    def text(self) -> str:
        return "\n".join(self.lines + ["PASS" if self.passed else "FAIL"]) + "\n"


def _params_for(kind: str, n: int, rng: random.Random) -> dict:
    if kind in ("mode-tradeoff", "mode-tree"):
        return {"epsilon": rng.choice((0.5, 0.25))}
    if kind in ("mode-constant", "median-constant"):
        return {"k": rng.randint(1, max(1, min(n, 5)))}
    if kind == "median-block":
        return {"blocks": rng.randint(2, max(2, min(n, 6)))}
    if kind == "median-range-tree":
        return {"arity": rng.choice((2, 3, 4, 16))}
    return {}


def _fit_params(kind: str, params: dict, n: int) -> dict:
    out = dict(params)
    if "k" in out:
        out["k"] = max(1, min(out["k"], n))
    if kind == "median-block":
        out["blocks"] = max(2, min(out["blocks"], n)) if n > 1 else 2
    return out


def _build(kind: str, instance, params: dict, mutate: bool):
    idx = build_index(kind, instance, **_fit_params(kind, params, len(instance)))
    if mutate and kind == "mode-tradeoff":
        idx.occurrences = OffByOneOccurrences(idx.labels)
    return idx


def _first_mismatch_list(kind: str, labels: list, idx) -> Finding | None:
    n = len(labels)
    for i in range(1, n + 1):
        counts: Counter = Counter()
        ordered: list = []
        best = 0
        best_val = None
        for j in range(i, n + 1):
            x = labels[j - 1]
            counts[x] += 1
            if counts[x] > best or (counts[x] == best and x < best_val):
                best, best_val = counts[x], x
            got = idx.query(i, j)
            if kind.startswith("mode"):
                ok = got.frequency == best and counts[got.value] == best
                expected = (best_val, best)
            else:
                insort(ordered, x)
                expected = ordered[len(ordered) // 2]
                ok = got.value == expected
            if not ok:
                return Finding(kind, {}, labels, (i, j), expected, tuple(got))
    return None


def _first_mismatch_tree(kind: str, tree: LabeledTree, idx) -> Finding | None:
    for u in range(tree.n):
        for v in range(tree.n):
            items = oracle_path_labels(tree, u, v)
            got = idx.query(u, v)
            if kind == "mode-tree":
                counts = Counter(items)
                best = max(counts.values())
                ok = got.frequency == best and counts[got.value] == best
                expected = (min(x for x, c in counts.items() if c == best), best)
            else:
                exp = oracle_median(items)
                ok = got.value == exp.value
                expected = exp.value
            if not ok:
                return Finding(kind, {}, tree, (u + 1, v + 1), expected, tuple(got))
    return None


def _check(kind: str, instance, params: dict, mutate: bool) -> Finding | None:
    idx = _build(kind, instance, params, mutate)
    if kind in TREE_KINDS:
        found = _first_mismatch_tree(kind, instance, idx)
    else:
        found = _first_mismatch_list(kind, instance, idx)
    if found is not None:
        found.params = _fit_params(kind, params, len(instance))
    return found


def _drop_leaf(tree: LabeledTree, leaf: int) -> LabeledTree:
    keep = [v for v in range(tree.n) if v != leaf]
    new_id = {v: t for t, v in enumerate(keep)}
    parent = [new_id[tree.parent[v]] if tree.parent[v] != NIL else NIL for v in keep]
    return LabeledTree(parent, [tree.labels[v] for v in keep])


def minimize(finding: Finding, mutate: bool) -> Finding:
    """Greedily delete list elements (or tree leaves) while the mismatch persists."""
    kind, params, inst = finding.kind, finding.params, finding.instance
    changed = True
    while changed:
        changed = False
        if isinstance(inst, LabeledTree):
            if inst.n == 1:
                break
            leaves = [v for v in range(inst.n) if not inst.children[v] and v != inst.root]
            candidates = [_drop_leaf(inst, v) for v in leaves]
        else:
            candidates = [inst[:p] + inst[p + 1:] for p in range(len(inst))] if len(inst) > 1 else []
        for cand in candidates:
            smaller = _check(kind, cand, params, mutate)
            if smaller is not None:
                finding, inst, changed = smaller, cand, True
                break
    return finding


def run_fuzz(kinds=ALL_KINDS, sizes=DEFAULT_SIZES, seeds: int = 1, base_seed: int = 0,
             mutate: bool = False) -> FuzzReport:
    """Build every kind on seeded instances and compare all queries with the oracle.

    The report contains no timings, so equal arguments give equal bytes.
    """
    report = FuzzReport()
    for kind in kinds:
        for n in sizes:
            for s in range(seeds):
                seed = base_seed * 1_000_003 + n * 101 + s
                rng = random.Random(f"{kind}/{seed}")
                if kind in TREE_KINDS:
                    shape = sorted(TREE_SHAPES)[s % len(TREE_SHAPES)]
                    instance = make_tree(shape, n, seed)
                    what = f"tree={shape}"
                else:
                    dist = ("uniform", "zipf")[s % 2]
                    instance = random_list(n, seed, dist)
                    what = f"labels={dist}"
                params = _params_for(kind, n, rng)
                found = _check(kind, instance, params, mutate)
                shown = " ".join(f"{k}={v}" for k, v in sorted(_fit_params(kind, params, n).items()))
                status = "PASS"
                if found is not None:
                    found = minimize(found, mutate)
                    report.findings.append(found)
                    status = f"FAIL query={found.query[0]},{found.query[1]} minimized_n={len(found.instance)}"
                report.lines.append(f"{kind} n={n} seed={seed} {what} {shown} {status}".replace("  ", " "))
    return report
