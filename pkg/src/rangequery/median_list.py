"""Range median indexes on lists.

:class:`MedianBlockIndex`
    Blocks of size ``s = ceil(n/b)``, a forward and a backward persistent
    treap per block, and for each pair of blocks the rank window of the
    middle that can still contain the median.  A cross-block query selects
    from (suffix version, window, prefix version); same-block queries recurse.
:class:`RangeTreeIndex`
    A complete ``b``-ary tree over the positions with a sorted array per
    node; a query selects across the canonical decomposition.
:class:`MedianConstantIndex`
    Per-pair candidate arrays and shared k*k rank tables; three reads per
    query.
"""
from __future__ import annotations

import math

import numpy as np

from . import _kernels
from .core import (BadBranching, BadParams, EmptyInput, MedianAnswer, ProbeCounter, as_label_sequence,
                   check_range, median_rank, normalize_values)
from .structures.pbst import PersistentTreeStore, VersionHandle
from .structures.select import select_sorted_arrays, select_union


def _base_size(b: int) -> int:
    return max(b, 8)


class MedianBlockIndex:
    kind = "median-block"

    def __init__(self, labels, b: int = 2, *, store: PersistentTreeStore | None = None, _depth: int = 0):
        labels = list(as_label_sequence(labels))
        n = len(labels)
        if n == 0:
            raise EmptyInput("cannot index an empty list")
        if _depth == 0 and not 2 <= b <= n and n > 1:
            raise BadBranching(f"branching must lie in 2..{n}, got {b}")
        self.n = n
        self.b = b
        self.labels = labels
        self.depth = _depth
        self.store = store if store is not None else PersistentTreeStore()
        self.base = n <= _base_size(b)
        self.words = n
        if self.base:
            self.block_size = n
            self.block_count = 1
            return

        s = math.ceil(n / b)
        nb = math.ceil(n / s)
        store = self.store
        forward: list[list[int]] = []
        backward: list[list[int]] = []
        for t in range(nb):
            block = labels[t * s:(t + 1) * s]
            roots = [0]
            for x in block:
                roots.append(store.insert_root(roots[-1], x))
            forward.append(roots)
            back = [0]
            for x in reversed(block):
                back.append(store.insert_root(back[-1], x))
            # backward[t][x] holds block offsets x..end
            backward.append(back[::-1])

        windows: dict[tuple[int, int], tuple[list, int, int]] = {}
        window_words = 0
        for a in range(nb):
            middle: list = []
            for c in range(a + 2, nb):
                middle = sorted(middle + labels[(c - 1) * s:c * s])
                m = len(middle)
                if m <= 4 * s + 1:
                    lo, hi = 1, m
                else:
                    centre = median_rank(m)
                    lo, hi = centre - 2 * s, centre + 2 * s
                windows[a, c] = (middle[lo - 1:hi], lo - 1, m)
                window_words += hi - lo + 3

        self.block_size = s
        self.block_count = nb
        self.forward = forward
        self.backward = backward
        self.windows = windows
        self.children = [MedianBlockIndex(labels[t * s:(t + 1) * s], b, store=self.store, _depth=_depth + 1)
                         for t in range(nb)]
        self.words = (n + window_words + sum(len(r) for r in forward) + sum(len(r) for r in backward)
                      + sum(ch.words for ch in self.children))

    @property
    def recursion_depth(self) -> int:
        if self.base:
            return 1
        return 1 + max(ch.recursion_depth for ch in self.children)

    @property
    def total_words(self) -> int:
        """Words including the shared persistent node pool."""
        return self.words + self.store.words

    def suffix_version(self, block: int, offset: int) -> VersionHandle:
        """Version holding offsets ``offset..end`` (0-based) of ``block``."""
        return VersionHandle(self.store, self.backward[block][offset])

    def prefix_version(self, block: int, count: int) -> VersionHandle:
        """Version holding the first ``count`` elements of ``block``."""
        return VersionHandle(self.store, self.forward[block][count])

    def window(self, a: int, c: int):
        """(sorted window, number of middle elements below it, middle size)."""
        return self.windows.get((a, c), ([], 0, 0))

    def query(self, i: int, j: int, counter: ProbeCounter | None = None) -> MedianAnswer:
        check_range(self.n, i, j)
        if counter is not None:
            counter.queries += 1
        return self._query(i, j, counter)

    def _query(self, i: int, j: int, counter) -> MedianAnswer:
        if self.base:
            items = sorted(self.labels[i - 1:j])
            r = median_rank(len(items))
            if counter is not None:
                counter.probes += len(items)
            return MedianAnswer(items[r - 1], r)
        s = self.block_size
        a, c = (i - 1) // s, (j - 1) // s
        if a == c:
            return self.children[a]._query(i - a * s, j - a * s, counter)
        x = i - 1 - a * s
        y = j - c * s
        win, below, mid_size = self.window(a, c)
        left = self.suffix_version(a, x)
        right = self.prefix_version(c, y)
        total = left.size + right.size + mid_size
        r = median_rank(total)
        value = select_union((left, right), (win,), r - below, counter)
        return MedianAnswer(value, r)


def build_median_block(labels, b: int = 2) -> MedianBlockIndex:
    return MedianBlockIndex(labels, b)


def query_median_block(idx: MedianBlockIndex, i: int, j: int, counter=None) -> MedianAnswer:
    return idx.query(i, j, counter)


class RangeTreeIndex:
    """Complete ``b``-ary tree over positions; level ``h`` nodes span ``b**h`` positions."""

    kind = "median-range-tree"

    def __init__(self, labels, b: int = 2):
        labels = list(as_label_sequence(labels))
        n = len(labels)
        if n == 0:
            raise EmptyInput("cannot index an empty list")
        if b < 2:
            raise BadBranching(f"arity must be at least 2, got {b}")
        levels = [[[x] for x in labels]]
        width = 1
        while width < n:
            width *= b
            levels.append([sorted(labels[t:t + width]) for t in range(0, n, width)])
        self.n = n
        self.b = b
        self.labels = labels
        self.levels = levels
        self.height = len(levels) - 1
        self.words = sum(len(arr) + 2 for lvl in levels for arr in lvl)

    @property
    def stored_elements(self) -> int:
        return sum(len(arr) for lvl in self.levels for arr in lvl)

    def decomposition_nodes(self, i: int, j: int) -> list[tuple[int, int]]:
        """(level, index) of the maximal tree nodes covering positions i..j."""
        check_range(self.n, i, j)
        b, n = self.b, self.n
        lo, hi = i - 1, j  # half-open, 0-based
        out = []
        while lo < hi:
            # climb while the parent starts at lo and ends inside the range
            h, width = 0, 1
            while h < self.height and lo % (width * b) == 0 and min(lo + width * b, n) <= hi:
                h += 1
                width *= b
            out.append((h, lo // width))
            lo = min(lo + width, n)
        return out

    def canonical_decomposition(self, i: int, j: int) -> list[list]:
        return [self.levels[h][t] for h, t in self.decomposition_nodes(i, j)]

    def query(self, i: int, j: int, counter: ProbeCounter | None = None) -> MedianAnswer:
        arrays = self.canonical_decomposition(i, j)
        r = median_rank(j - i + 1)
        if counter is not None:
            counter.queries += 1
            counter.candidates += len(arrays)
        return MedianAnswer(select_sorted_arrays(arrays, r, counter), r)


def build_range_tree(labels, b: int = 2) -> RangeTreeIndex:
    return RangeTreeIndex(labels, b)


def canonical_decomposition(idx: RangeTreeIndex, i: int, j: int) -> list[list]:
    return idx.canonical_decomposition(i, j)


def query_median_range_tree(idx: RangeTreeIndex, i: int, j: int, counter=None) -> MedianAnswer:
    return idx.query(i, j, counter)


def default_median_k(n: int) -> int:
    if n < 4:
        return 1
    lg = math.log2(n)
    return max(1, round(lg / math.log2(lg)))


class MedianConstantIndex:
    """Constant-time range median with content-addressed rank tables.

    Each query reads the pair (or block) record, one table cell and one
    translation entry.
    """

    kind = "median-constant"
    PROBES_PER_QUERY = 3

    def __init__(self, labels, k: int | None = None):
        labels = list(as_label_sequence(labels))
        n = len(labels)
        if n == 0:
            raise EmptyInput("cannot index an empty list")
        if k is None:
            k = default_median_k(n)
        if not 1 <= k <= n:
            raise BadParams(f"block size k must lie in 1..{n}")
        if 6 * k + 1 > 255:
            raise BadParams("block size too large for byte-coded tables")
        ids, inverse = normalize_values(labels)
        L = len(inverse)
        ids_arr = np.asarray(ids, dtype=np.int64)
        nb = math.ceil(n / k)
        pairs = nb * (nb - 1) // 2
        label_dtype = np.int16 if L < 2 ** 15 else np.int32
        bvals = np.empty((nb, k), dtype=np.int64)
        boffs = np.empty((nb, k), dtype=np.int64)
        _kernels.block_sorted(ids_arr, k, nb, bvals, boffs)
        width = 6 * k + 1
        trans = np.empty((pairs, width), dtype=label_dtype)
        tables = np.zeros((pairs, k * k), dtype=np.uint8)
        window_lo = np.zeros(pairs, dtype=np.int32)
        window_len = np.zeros(pairs, dtype=np.int16)
        _kernels.median_pair_tables(ids_arr, k, nb, L, bvals, boffs, trans, tables, window_lo, window_len)
        self.tables, self.pair_table = _kernels.dedupe_rows(tables)
        del tables
        in_tables = np.zeros((nb, k * k), dtype=np.uint8)
        _kernels.median_inblock_tables(k, nb, n, bvals, boffs, in_tables)
        self.inblock_tables, self.block_table = _kernels.dedupe_rows(in_tables)

        self.n = n
        self.k = k
        self.block_count = nb
        self.inverse = inverse
        self.translation = trans
        self.block_values = bvals.astype(label_dtype)
        self.window_lo = window_lo
        self.window_len = window_len
        self.words = (n + pairs * (width + 1) + nb * (k + 1)
                      + k * k * (len(self.tables) + len(self.inblock_tables)))

    @property
    def distinct_tables(self) -> int:
        return len(self.tables)

    def candidates(self, a: int, c: int) -> list:
        """Raw candidate values stored for 0-based blocks a < c."""
        nb = self.block_count
        p = a * (2 * nb - a - 1) // 2 + (c - a - 1)
        row = self.translation[p]
        return [self.inverse[int(v)] for v in row if v >= 0]

    def query(self, i: int, j: int, counter: ProbeCounter | None = None) -> MedianAnswer:
        check_range(self.n, i, j)
        k = self.k
        x, y = i - 1, j - 1
        a, c = x // k, y // k
        cell = (x - a * k) * k + (y - c * k)
        if a == c:
            q = self.inblock_tables[self.block_table[a], cell]
            value = self.block_values[a, q]
        else:
            nb = self.block_count
            p = a * (2 * nb - a - 1) // 2 + (c - a - 1)
            q = self.tables[self.pair_table[p], cell]
            value = self.translation[p, q]
        if counter is not None:
            counter.queries += 1
            counter.probes += self.PROBES_PER_QUERY
        return MedianAnswer(self.inverse[int(value)], median_rank(j - i + 1))


def build_median_constant(labels, k: int | None = None) -> MedianConstantIndex:
    return MedianConstantIndex(labels, k)


def query_median_constant(idx: MedianConstantIndex, i: int, j: int, counter=None) -> MedianAnswer:
    return idx.query(i, j, counter)
