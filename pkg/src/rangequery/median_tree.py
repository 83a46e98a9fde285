"""Path median queries on trees.

The tree is split recursively at centroid vertices.  At every level each
node keeps two persistent versions describing its path to the centroid of
its component: ``inclusive`` (centroid label counted) and ``exclusive``
(centroid label left out).  For two nodes first separated by centroid
``c``, the path ``u .. c .. v`` is exactly ``inclusive(u) + exclusive(v)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .core import NIL, EmptyInput, LabeledTree, MedianAnswer, ProbeCounter, median_rank
from .structures.pbst import PersistentTreeStore, VersionHandle
from .structures.select import select_union


@dataclass
class DecompositionLevel:
    component: list[int]   # component id per node, NIL when not in any component of size >= 2
    centroids: list[int]   # centroid node per component id
    inclusive: list[int]   # persistent root per node
    exclusive: list[int]

    def inclusive_handle(self, store: PersistentTreeStore, v: int) -> VersionHandle:
        return VersionHandle(store, self.inclusive[v])

    def exclusive_handle(self, store: PersistentTreeStore, v: int) -> VersionHandle:
        return VersionHandle(store, self.exclusive[v])


def _adjacency(tree: LabeledTree) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(tree.n)]
    for v, p in enumerate(tree.parent):
        if p != NIL:
            adj[v].append(p)
            adj[p].append(v)
    return adj


def _find_centroid(start: int, adj, removed) -> tuple[int, list[int]]:
    """Centroid of the component containing ``start`` and the component's nodes."""
    order = [start]
    par = {start: NIL}
    for v in order:
        for w in adj[v]:
            if not removed[w] and w != par[v]:
                par[w] = v
                order.append(w)
    size = len(order)
    sub = dict.fromkeys(order, 1)
    heaviest = dict.fromkeys(order, 0)
    for v in reversed(order):
        p = par[v]
        if p != NIL:
            sub[p] += sub[v]
            heaviest[p] = max(heaviest[p], sub[v])
    for v in order:
        if max(heaviest[v], size - sub[v]) * 2 <= size:
            return v, order
    raise AssertionError("tree without a centroid")  # pragma: no cover


class TreeMedianIndex:
    kind = "median-tree"

    def __init__(self, tree: LabeledTree):
        if tree is None or tree.n == 0:
            raise EmptyInput("cannot index an empty tree")
        n = tree.n
        adj = _adjacency(tree)
        labels = tree.labels
        store = PersistentTreeStore()
        removed = [False] * n
        levels: list[DecompositionLevel] = []
        pending = [0]
        while pending:
            level = DecompositionLevel([NIL] * n, [], [0] * n, [0] * n)
            nxt = []
            for start in pending:
                if removed[start]:
                    continue
                c, nodes = _find_centroid(start, adj, removed)
                if len(nodes) < 2:
                    removed[start] = True
                    continue
                cid = len(level.centroids)
                level.centroids.append(c)
                level.component[c] = cid
                level.inclusive[c] = store.insert_root(0, labels[c])
                level.exclusive[c] = 0
                # walk outward from the centroid, extending the parent's versions
                stack = [(c, NIL)]
                while stack:
                    x, px = stack.pop()
                    for w in adj[x]:
                        if w == px or removed[w]:
                            continue
                        level.component[w] = cid
                        level.inclusive[w] = store.insert_root(level.inclusive[x], labels[w])
                        level.exclusive[w] = store.insert_root(level.exclusive[x], labels[w])
                        stack.append((w, x))
                removed[c] = True
                nxt.extend(w for w in adj[c] if not removed[w])
            if level.centroids:
                levels.append(level)
            pending = nxt

        self.tree = tree
        self.n = n
        self.store = store
        self.levels = levels
        self.words = store.words + 4 * n * len(levels)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @staticmethod
    def depth_bound(n: int) -> float:
        return math.log(n, 1.5) + 2 if n > 1 else 2.0

    def separating_level(self, u: int, v: int) -> int:
        """Index of the level whose centroid lies on the u-v path (u != v)."""
        for h, level in enumerate(self.levels):
            cu, cv = level.component[u], level.component[v]
            if cu == NIL or cu != cv:
                break
            c = level.centroids[cu]
            if c == u or c == v:
                return h
            nxt = self.levels[h + 1] if h + 1 < len(self.levels) else None
            if nxt is None or nxt.component[u] == NIL or nxt.component[u] != nxt.component[v]:
                return h
        raise AssertionError(f"nodes {u} and {v} never share a component")  # pragma: no cover

    def path_handles(self, u: int, v: int) -> tuple[VersionHandle, VersionHandle]:
        level = self.levels[self.separating_level(u, v)]
        return level.inclusive_handle(self.store, u), level.exclusive_handle(self.store, v)

    def query(self, u: int, v: int, counter: ProbeCounter | None = None) -> MedianAnswer:
        self.tree.check_node(u)
        self.tree.check_node(v)
        if counter is not None:
            counter.queries += 1
        if u == v:
            if counter is not None:
                counter.probes += 1
            return MedianAnswer(self.tree.labels[u], 1)
        left, right = self.path_handles(u, v)
        r = median_rank(left.size + right.size)
        return MedianAnswer(select_union((left, right), (), r, counter), r)


def build_tree_median(tree: LabeledTree) -> TreeMedianIndex:
    return TreeMedianIndex(tree)


def query_tree_median(idx: TreeMedianIndex, u: int, v: int, counter=None) -> MedianAnswer:
    return idx.query(u, v, counter)
