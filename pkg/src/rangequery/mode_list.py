"""Range mode indexes on lists.

* :class:`OccurrenceIndex` answers range counting with two binary searches.
* :class:`ModeTradeoffIndex` keeps the mode of every run of whole blocks and
  counts the O(n/b) candidates contributed by the two partial blocks.
* :class:`ModeConstantIndex` replaces the counting by a table lookup; the
  k*k answer tables are shared between block pairs with equal content.
"""
from __future__ import annotations

import math
from bisect import bisect_left, bisect_right
from collections import Counter

import numpy as np

from . import _kernels
from .core import (BadEpsilon, BadParams, EmptyInput, ModeAnswer, ProbeCounter, as_label_sequence,
                   check_range, normalize_values)


class OccurrenceIndex:
    """Sorted 1-based positions of each label."""

    def __init__(self, labels):
        labels = as_label_sequence(labels)
        if len(labels) == 0:
            raise EmptyInput("cannot index an empty list")
        positions: dict = {}
        for pos, x in enumerate(labels, start=1):
            positions.setdefault(x, []).append(pos)
        self.n = len(labels)
        self.positions = positions

    def count(self, x, i: int, j: int) -> int:
        arr = self.positions.get(x)
        if arr is None:
            return 0
        return bisect_right(arr, j) - bisect_left(arr, i)

    @property
    def words(self) -> int:
        return self.n + 2 * len(self.positions)


def build_occurrence_index(labels) -> OccurrenceIndex:
    return OccurrenceIndex(labels)


def range_count(idx: OccurrenceIndex, x, i: int, j: int) -> int:
    check_range(idx.n, i, j)
    return idx.count(x, i, j)


def _direct_mode(items) -> ModeAnswer:
    # sort and scan for the longest run
    ordered = sorted(items)
    best_val, best_f = ordered[0], 0
    run_val, run = ordered[0], 0
    for x in ordered:
        if x == run_val:
            run += 1
        else:
            run_val, run = x, 1
        if run > best_f:
            best_val, best_f = run_val, run
    return ModeAnswer(best_val, best_f)


def blocks_for_epsilon(n: int, epsilon: float) -> int:
    if not 0 < epsilon <= 0.5:
        raise BadEpsilon(f"epsilon must lie in (0, 1/2], got {epsilon}")
    return max(1, math.ceil(n ** (1.0 - epsilon) - 1e-9))


class ModeTradeoffIndex:
    """Block decomposition with a table of middle modes.

    Build with either ``epsilon`` (``b = ceil(n**(1-epsilon))`` blocks) or an
    explicit ``block_size``.
    """

    kind = "mode-tradeoff"

    def __init__(self, labels, epsilon: float | None = 0.5, *, block_size: int | None = None):
        labels = list(as_label_sequence(labels))
        n = len(labels)
        if n == 0:
            raise EmptyInput("cannot index an empty list")
        if block_size is None:
            b = blocks_for_epsilon(n, epsilon)
            s = math.ceil(n / b)
        else:
            if not 1 <= block_size:
                raise BadParams("block_size must be positive")
            s = min(block_size, n)
        nb = math.ceil(n / s)
        ids, inverse = normalize_values(labels)
        mode, freq = _kernels.middle_modes(np.asarray(ids, dtype=np.int64), s, nb, len(inverse))
        self.n = n
        self.epsilon = epsilon
        self.block_size = s
        self.block_count = nb
        self.labels = labels
        self.occurrences = OccurrenceIndex(labels)
        self.middle_value = [[inverse[int(v)] if v >= 0 else None for v in row] for row in mode]
        self.middle_freq = freq.tolist()
        self.words = n + self.occurrences.words + 2 * nb * (nb - 1) // 2

    @property
    def table_entries(self) -> int:
        return self.block_count * (self.block_count - 1) // 2

    def middle(self, a: int, c: int):
        """Stored middle mode for 0-based blocks a < c, or None when the middle is empty."""
        v = self.middle_value[a][c]
        return None if v is None else ModeAnswer(v, self.middle_freq[a][c])

    def query(self, i: int, j: int, counter: ProbeCounter | None = None) -> ModeAnswer:
        check_range(self.n, i, j)
        s = self.block_size
        a, c = (i - 1) // s, (j - 1) // s
        if a == c:
            if counter is not None:
                counter.queries += 1
                counter.probes += j - i + 1
            return _direct_mode(self.labels[i - 1:j])
        cands = set(self.labels[i - 1:(a + 1) * s])
        cands.update(self.labels[c * s:j])
        m = self.middle_value[a][c]
        if m is not None:
            cands.add(m)
        count = self.occurrences.count
        best_val, best_f = None, -1
        for x in cands:
            f = count(x, i, j)
            if f > best_f or (f == best_f and x < best_val):
                best_val, best_f = x, f
        if counter is not None:
            counter.queries += 1
            counter.candidates += len(cands)
            counter.probes += 1 + len(cands)
        return ModeAnswer(best_val, best_f)


def build_mode_tradeoff(labels, epsilon: float = 0.5, *, block_size: int | None = None) -> ModeTradeoffIndex:
    return ModeTradeoffIndex(labels, epsilon, block_size=block_size)


def query_mode_tradeoff(idx: ModeTradeoffIndex, i: int, j: int, counter=None) -> ModeAnswer:
    return idx.query(i, j, counter)


def default_mode_k(n: int) -> int:
    if n < 4:
        return 1
    lg = math.log2(n)
    return max(1, round(math.sqrt(lg / math.log2(lg))))


class ModeConstantIndex:
    """Constant-time range mode via shared per-pair outcome tables.

    Every query performs the same four reads: the pair (or block) record,
    one outcome cell, one witness cell and the decode read.
    """

    kind = "mode-constant"
    PROBES_PER_QUERY = 4

    def __init__(self, labels, k: int | None = None, *, verify: bool = False):
        labels = list(as_label_sequence(labels))
        n = len(labels)
        if n == 0:
            raise EmptyInput("cannot index an empty list")
        if k is None:
            k = default_mode_k(n)
        if not 1 <= k <= n:
            raise BadParams(f"block size k must lie in 1..{n}")
        if 2 * k + 1 > 255:
            raise BadParams("block size too large for byte-coded tables")
        ids, inverse = normalize_values(labels)
        ids_arr = np.asarray(ids, dtype=np.int64)
        nb = math.ceil(n / k)
        pairs = nb * (nb - 1) // 2
        L = len(inverse)
        label_dtype = np.int16 if L < 2 ** 15 else np.int32
        pm = np.empty(pairs, dtype=label_dtype)
        pf = np.zeros(pairs, dtype=np.int32)
        codes = np.zeros((pairs, k * k), dtype=np.uint8)
        deltas = np.zeros((pairs, k * k), dtype=np.uint8)
        _kernels.mode_pair_tables(ids_arr, k, nb, L, pm, pf, codes, deltas)
        self.outcome_tables, self.pair_outcome = _kernels.dedupe_rows(codes)
        del codes
        self.witness_tables, self.pair_witness = _kernels.dedupe_rows(deltas)
        del deltas
        in_codes = np.zeros((nb, k * k), dtype=np.uint8)
        in_freqs = np.zeros((nb, k * k), dtype=np.uint8)
        _kernels.mode_inblock_tables(ids_arr, k, nb, L, in_codes, in_freqs)
        self.inblock_outcome_tables, self.block_outcome = _kernels.dedupe_rows(in_codes)
        self.inblock_witness_tables, self.block_witness = _kernels.dedupe_rows(in_freqs)

        self.n = n
        self.k = k
        self.block_count = nb
        self.labels = labels
        self.inverse = inverse
        self.ids = ids_arr.astype(label_dtype)
        self.pair_mode = pm
        self.pair_mode_freq = pf
        self.words = (n + 4 * pairs + 2 * nb
                      + k * k * (len(self.outcome_tables) + len(self.witness_tables)
                                 + len(self.inblock_outcome_tables) + len(self.inblock_witness_tables)))
        if verify:
            self.verify()

    @property
    def distinct_tables(self) -> int:
        return len(self.outcome_tables)

    def query(self, i: int, j: int, counter: ProbeCounter | None = None) -> ModeAnswer:
        check_range(self.n, i, j)
        k = self.k
        x, y = i - 1, j - 1
        a, c = x // k, y // k
        cell = (x - a * k) * k + (y - c * k)
        if a == c:
            code = int(self.inblock_outcome_tables[self.block_outcome[a], cell])
            freq = int(self.inblock_witness_tables[self.block_witness[a], cell])
            value = self.ids[a * k + code - 1]
        else:
            nb = self.block_count
            p = a * (2 * nb - a - 1) // 2 + (c - a - 1)
            code = int(self.outcome_tables[self.pair_outcome[p], cell])
            freq = int(self.pair_mode_freq[p]) + int(self.witness_tables[self.pair_witness[p], cell])
            if code == 0:
                value = self.pair_mode[p]
            elif code <= k:
                value = self.ids[a * k + code - 1]
            else:
                value = self.ids[c * k + code - k - 1]
        if counter is not None:
            counter.queries += 1
            counter.probes += self.PROBES_PER_QUERY
        return ModeAnswer(self.inverse[int(value)], freq)

    def verify(self) -> None:
        """Cross-check every stored cell against a direct count (slow)."""
        n, k = self.n, self.k
        for i in range(1, n + 1):
            counts: Counter = Counter()
            best = 0
            for j in range(i, n + 1):
                counts[self.labels[j - 1]] += 1
                best = max(best, counts[self.labels[j - 1]])
                ans = self.query(i, j)
                if ans.frequency != best or counts[ans.value] != best:
                    raise AssertionError(f"table cell for ({i}, {j}) decodes to {ans}, expected frequency {best}")


def build_mode_constant(labels, k: int | None = None, *, verify: bool = False) -> ModeConstantIndex:
    return ModeConstantIndex(labels, k, verify=verify)


def query_mode_constant(idx: ModeConstantIndex, i: int, j: int, counter=None) -> ModeAnswer:
    return idx.query(i, j, counter)
