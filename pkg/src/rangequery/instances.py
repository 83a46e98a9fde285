"""Seeded generators for test and benchmark instances."""
from __future__ import annotations

import math

import numpy as np

from .core import NIL, LabeledTree


def uniform_labels(n: int, alphabet: int, seed: int) -> list[int]:
    rng = np.random.default_rng(seed)
    return rng.integers(0, max(1, alphabet), size=n).tolist()


def zipf_labels(n: int, exponent: float, seed: int, alphabet: int | None = None) -> list[int]:
    """Labels with P(rank r) proportional to r**-exponent over ``alphabet`` symbols."""
    rng = np.random.default_rng(seed)
    alphabet = alphabet or max(1, n)
    weights = 1.0 / np.arange(1, alphabet + 1) ** exponent
    return rng.choice(alphabet, size=n, p=weights / weights.sum()).tolist()


def random_list(n: int, seed: int, distribution: str = "uniform") -> list[int]:
    if distribution == "uniform":
        return uniform_labels(n, max(1, math.isqrt(n)), seed)
    if distribution == "zipf":
        return zipf_labels(n, 1.2, seed)
    raise ValueError(f"unknown label distribution {distribution!r}")


def _tree(parent: list[int], seed: int, alphabet: int | None) -> LabeledTree:
    n = len(parent)
    labels = uniform_labels(n, alphabet or max(1, math.isqrt(n)), seed + 7919)
    return LabeledTree(parent, labels)


def random_tree(n: int, seed: int, alphabet: int | None = None) -> LabeledTree:
    """Random recursive tree: node v attaches to a uniform earlier node."""
    rng = np.random.default_rng(seed)
    parent = [NIL] + [int(rng.integers(0, v)) for v in range(1, n)]
    return _tree(parent, seed, alphabet)


def path_tree(n: int, seed: int, alphabet: int | None = None) -> LabeledTree:
    # rooted in the middle so both arms are long
    mid = n // 2
    parent = [NIL] * n
    for v in range(n):
        if v < mid:
            parent[v] = v + 1
        elif v > mid:
            parent[v] = v - 1
    return _tree(parent, seed, alphabet)


def star_tree(n: int, seed: int, alphabet: int | None = None) -> LabeledTree:
    return _tree([NIL] + [0] * (n - 1), seed, alphabet)


def caterpillar_tree(n: int, seed: int, alphabet: int | None = None) -> LabeledTree:
    """A spine of about n/2 nodes, each with one leaf hanging off it."""
    spine = (n + 1) // 2
    parent = [NIL] * n
    for v in range(1, spine):
        parent[v] = v - 1
    for q, v in enumerate(range(spine, n)):
        parent[v] = q % spine
    return _tree(parent, seed, alphabet)


TREE_SHAPES = {
    "random": random_tree,
    "path": path_tree,
    "star": star_tree,
    "caterpillar": caterpillar_tree,
}


def make_tree(shape: str, n: int, seed: int, alphabet: int | None = None) -> LabeledTree:
    try:
        return TREE_SHAPES[shape](n, seed, alphabet)
    except KeyError:
        raise ValueError(f"unknown tree shape {shape!r}") from None


def uniform_ranges(n: int, count: int, seed: int) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    a = rng.integers(1, n + 1, size=count)
    b = rng.integers(1, n + 1, size=count)
    return [(int(min(x, y)), int(max(x, y))) for x, y in zip(a, b)]


def short_ranges(n: int, count: int, seed: int, max_len: int = 16) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        length = int(rng.integers(1, min(n, max_len) + 1))
        i = int(rng.integers(1, n - length + 2))
        out.append((i, i + length - 1))
    return out


def node_pairs(n: int, count: int, seed: int) -> list[tuple[int, int]]:
    rng = np.random.default_rng(seed)
    return [(int(u), int(v)) for u, v in rng.integers(0, n, size=(count, 2))]
