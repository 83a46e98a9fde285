"""Compiled sweeps behind the block-table builds.

Inputs are dense label ids (``0..L-1``) at 0-based positions.  Block
``t`` covers positions ``t*s .. min((t+1)*s, n) - 1``.  Block pairs
``a < c`` are laid out row-major in a flat triangular array, see
:func:`pair_index`.
"""
from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def pair_index(a, c, nb):
    return a * (2 * nb - a - 1) // 2 + (c - a - 1)


@njit(cache=True)
def middle_modes(ids, s, nb, L):
    """Mode of blocks a+1..c-1 for every a < c; (-1, 0) when that is empty."""
    n = ids.shape[0]
    mode = np.full((nb, nb), -1, dtype=np.int64)
    freq = np.zeros((nb, nb), dtype=np.int64)
    counts = np.zeros(L, dtype=np.int64)
    for a in range(nb):
        best = -1
        best_f = 0
        for c in range(a + 2, nb):
            # extend the middle by block c-1
            for pos in range((c - 1) * s, min(c * s, n)):
                e = ids[pos]
                counts[e] += 1
                if counts[e] > best_f:
                    best_f = counts[e]
                    best = e
            mode[a, c] = best
            freq[a, c] = best_f
        for pos in range((a + 1) * s, n):
            counts[ids[pos]] = 0
    return mode, freq


@njit(cache=True)
def mode_pair_tables(ids, k, nb, L, pm, pf, codes, deltas):
    """Fill per-pair middle mode, its frequency and the k*k outcome/witness cells.

    Outcome code 0 means the middle mode, ``1..k`` offset ``code-1`` of the
    left block, ``k+1..2k`` offset ``code-k-1`` of the right block.  The
    witness cell holds the answer's frequency minus the middle mode's.
    For adjacent blocks the "middle mode" is the first label of the right
    block with middle frequency 0.
    """
    n = ids.shape[0]
    counts = np.zeros(L, dtype=np.int64)
    for a in range(nb - 1):
        best = -1
        best_f = 0
        for c in range(a + 1, nb):
            if c >= a + 2:
                for pos in range((c - 1) * k, c * k):
                    e = ids[pos]
                    counts[e] += 1
                    if counts[e] > best_f:
                        best_f = counts[e]
                        best = e
                m = best
                fm = best_f
            else:
                m = ids[c * k]
                fm = 0
            p = pair_index(a, c, nb)
            pm[p] = m
            pf[p] = fm
            len_c = min(k, n - c * k)
            sb_f = fm
            sb_code = 0
            for x in range(k - 1, -1, -1):
                e = ids[a * k + x]
                counts[e] += 1
                if counts[e] > sb_f:
                    sb_f = counts[e]
                    sb_code = 0 if e == m else 1 + x
                cur_f = sb_f
                cur_code = sb_code
                for y in range(len_c):
                    e2 = ids[c * k + y]
                    counts[e2] += 1
                    if counts[e2] > cur_f:
                        cur_f = counts[e2]
                        cur_code = 0 if e2 == m else 1 + k + y
                    codes[p, x * k + y] = cur_code
                    deltas[p, x * k + y] = cur_f - fm
                for y in range(len_c):
                    counts[ids[c * k + y]] -= 1
            for x in range(k):
                counts[ids[a * k + x]] -= 1
        for pos in range((a + 1) * k, n):
            counts[ids[pos]] = 0


@njit(cache=True)
def mode_inblock_tables(ids, k, nb, L, codes, freqs):
    n = ids.shape[0]
    counts = np.zeros(L, dtype=np.int64)
    for t in range(nb):
        start = t * k
        length = min(k, n - start)
        for x in range(length):
            best_f = 0
            code = 0
            for y in range(x, length):
                e = ids[start + y]
                counts[e] += 1
                if counts[e] > best_f:
                    best_f = counts[e]
                    code = 1 + y
                codes[t, x * k + y] = code
                freqs[t, x * k + y] = best_f
            for y in range(x, length):
                counts[ids[start + y]] -= 1


@njit(cache=True)
def _fen_add(tree, i, delta):
    i += 1
    size = tree.shape[0]
    while i < size:
        tree[i] += delta
        i += i & (-i)


@njit(cache=True)
def _fen_select(tree, r, top):
    """Smallest label id whose prefix count reaches ``r`` (1-based)."""
    pos = 0
    step = top
    while step > 0:
        nxt = pos + step
        if nxt < tree.shape[0] and tree[nxt] < r:
            pos = nxt
            r -= tree[nxt]
        step >>= 1
    return pos


@njit(cache=True)
def block_sorted(ids, k, nb, values, offsets):
    n = ids.shape[0]
    for t in range(nb):
        start = t * k
        length = min(k, n - start)
        order = np.argsort(ids[start:start + length], kind="mergesort")
        for q in range(length):
            values[t, q] = ids[start + order[q]]
            offsets[t, q] = order[q]
        for q in range(length, k):
            values[t, q] = -1
            offsets[t, q] = -1


@njit(cache=True)
def median_pair_tables(ids, k, nb, L, bvals, boffs, trans, tables, window_lo, window_len):
    """Candidate translation arrays and rank tables for every block pair.

    ``trans[p]`` is the sorted candidate list of pair ``p``: the left block,
    the right block and the middle's rank window (the whole middle when it
    holds at most 4k+1 elements).  ``tables[p, x*k+y]`` is the index into
    ``trans[p]`` of the median of the query starting at offset ``x`` of the
    left block and ending at offset ``y`` of the right block.
    """
    n = ids.shape[0]
    fen = np.zeros(L + 1, dtype=np.int64)
    top = 1
    while top * 2 <= L:
        top *= 2
    W = trans.shape[1]
    src = np.empty(W, dtype=np.int64)
    off = np.empty(W, dtype=np.int64)
    win = np.empty(4 * k + 1, dtype=np.int64)
    for a in range(nb - 1):
        fen[:] = 0
        mcount = 0
        for c in range(a + 1, nb):
            if c >= a + 2:
                for pos in range((c - 1) * k, c * k):
                    _fen_add(fen, ids[pos], 1)
                mcount += k
            if mcount <= 4 * k + 1:
                lo = 1
                hi = mcount
            else:
                mid = mcount // 2 + 1
                lo = mid - 2 * k
                hi = mid + 2 * k
            wl = hi - lo + 1 if mcount > 0 else 0
            for q in range(wl):
                win[q] = _fen_select(fen, lo + q, top)
            p = pair_index(a, c, nb)
            window_lo[p] = lo
            window_len[p] = wl
            len_c = min(k, n - c * k)
            # three-way merge, ties ordered left block < window < right block
            ia = 0
            iw = 0
            ic = 0
            out = 0
            while ia < k or iw < wl or ic < len_c:
                best = -1
                bv = 0
                if ia < k:
                    best = 0
                    bv = bvals[a, ia]
                if iw < wl and (best < 0 or win[iw] < bv):
                    best = 1
                    bv = win[iw]
                if ic < len_c and (best < 0 or bvals[c, ic] < bv):
                    best = 2
                    bv = bvals[c, ic]
                trans[p, out] = bv
                src[out] = best
                if best == 0:
                    off[out] = boffs[a, ia]
                    ia += 1
                elif best == 1:
                    off[out] = -1
                    iw += 1
                else:
                    off[out] = boffs[c, ic]
                    ic += 1
                out += 1
            for q in range(out, W):
                trans[p, q] = -1
            for x in range(k):
                for y in range(len_c):
                    total = (k - x) + mcount + (y + 1)
                    target = total // 2 + 1 - (lo - 1)
                    seen = 0
                    for q in range(out):
                        s_ = src[q]
                        if s_ == 1 or (s_ == 0 and off[q] >= x) or (s_ == 2 and off[q] <= y):
                            seen += 1
                            if seen == target:
                                # first slot with the same value, so equal answers share cells
                                while q > 0 and trans[p, q - 1] == trans[p, q]:
                                    q -= 1
                                tables[p, x * k + y] = q
                                break


@njit(cache=True)
def median_inblock_tables(k, nb, n, bvals, boffs, tables):
    for t in range(nb):
        length = min(k, n - t * k)
        for x in range(length):
            for y in range(x, length):
                target = (y - x + 1) // 2 + 1
                seen = 0
                for q in range(length):
                    o = boffs[t, q]
                    if x <= o <= y:
                        seen += 1
                        if seen == target:
                            while q > 0 and bvals[t, q - 1] == bvals[t, q]:
                                q -= 1
                            tables[t, x * k + y] = q
                            break


def dedupe_rows(rows: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Content-address equal rows: returns (distinct rows, row -> distinct id)."""
    rows = np.ascontiguousarray(rows)
    if rows.shape[0] == 0:
        return rows, np.zeros(0, dtype=np.int64)
    void = rows.view(np.dtype((np.void, rows.dtype.itemsize * rows.shape[1]))).ravel()
    _, first, inverse = np.unique(void, return_index=True, return_inverse=True)
    return rows[first], inverse.astype(np.int64).ravel()
