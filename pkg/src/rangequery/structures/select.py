"""Rank selection in a union of search trees and sorted arrays.

Both entry points run the same descent.  Each source is viewed as a binary
search tree (a sorted array ``a[lo:hi]`` is the implicit tree rooted at
its midpoint).  Elements are totally ordered by ``(value, source index,
in-source position)``.  With root keys ``x_1..x_k`` and left-subtree sizes
``l_1..l_k``, put ``S = sum(l_t) + k - 1``:

* if ``r <= S`` the target precedes the largest root, so that root and its
  right subtree are dropped;
* otherwise the smallest root and its left subtree all precede the target,
  so they are dropped and ``r`` shrinks accordingly.

Every step removes one level from one source, so the number of steps is at
most the sum of the source heights.
"""
from __future__ import annotations

from typing import Sequence

from ..core import RankOutOfRange, UnsortedInput
from .pbst import VersionHandle

_TREE = 0
_ARRAY = 1


def _select(kinds: list, refs: list, lo: list, hi: list, r: int, counter=None) -> object:
    k = len(kinds)
    steps = 0
    comparisons = 0
    while True:
        active = []
        vals = []
        lsz = []
        for t in range(k):
            if kinds[t] == _TREE:
                node = lo[t]
                if node == 0:
                    continue
                store = refs[t]
                active.append(t)
                vals.append(store.value[node])
                lsz.append(store.size[store.left[node]])
            else:
                a, b = lo[t], hi[t]
                if a >= b:
                    continue
                mid = (a + b) >> 1
                active.append(t)
                vals.append(refs[t][mid])
                lsz.append(mid - a)
        if len(active) == 1:
            t = active[0]
            if counter is not None:
                counter.probes += steps
                counter.comparisons += comparisons
            if kinds[t] == _TREE:
                return refs[t].select_root(lo[t], r)
            return refs[t][lo[t] + r - 1]
        steps += 1
        threshold = sum(lsz) + len(active) - 1
        comparisons += len(active) - 1
        if r <= threshold:
            best = 0
            for q in range(1, len(active)):
                if vals[q] >= vals[best]:
                    best = q
            t = active[best]
            if kinds[t] == _TREE:
                lo[t] = refs[t].left[lo[t]]
            else:
                hi[t] = (lo[t] + hi[t]) >> 1
        else:
            best = 0
            for q in range(1, len(active)):
                if vals[q] < vals[best]:
                    best = q
            t = active[best]
            r -= lsz[best] + 1
            if kinds[t] == _TREE:
                lo[t] = refs[t].right[lo[t]]
            else:
                lo[t] = ((lo[t] + hi[t]) >> 1) + 1


def select_union(trees: Sequence[VersionHandle] = (), arrays: Sequence[Sequence] = (), r: int = 1,
                 counter=None, array_bounds: Sequence[tuple[int, int]] | None = None):
    """Element of 1-based rank ``r`` in the union of ``trees`` and ``arrays``.

    ``array_bounds`` optionally restricts each array to ``a[lo:hi]``.
    """
    kinds, refs, lo, hi = [], [], [], []
    total = 0
    for h in trees:
        if h.root:
            kinds.append(_TREE)
            refs.append(h.store)
            lo.append(h.root)
            hi.append(0)
            total += h.store.size[h.root]
    for idx, a in enumerate(arrays):
        a_lo, a_hi = (0, len(a)) if array_bounds is None else array_bounds[idx]
        if a_hi > a_lo:
            kinds.append(_ARRAY)
            refs.append(a)
            lo.append(a_lo)
            hi.append(a_hi)
            total += a_hi - a_lo
    if not 1 <= r <= total:
        raise RankOutOfRange(f"rank {r} outside 1..{total}")
    return _select(kinds, refs, lo, hi, r, counter)


def select_three_trees(a: VersionHandle, b: VersionHandle, c: VersionHandle, r: int, counter=None):
    """Rank-``r`` element of the multiset union of three tree versions."""
    return select_union((a, b, c), (), r, counter)


def select_sorted_arrays(arrays: Sequence[Sequence], r: int, counter=None, validate: bool = False):
    """Rank-``r`` element of the union of ascending arrays.

    With ``validate=True`` each array is checked for order first (linear
    cost, so off by default).
    """
    if validate:
        for a in arrays:
            if any(a[q] > a[q + 1] for q in range(len(a) - 1)):
                raise UnsortedInput("select_sorted_arrays needs ascending arrays")
    return select_union((), arrays, r, counter)
