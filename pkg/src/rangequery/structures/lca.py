"""Constant-time lowest common ancestor via Euler tour and a sparse table."""
from __future__ import annotations

from ..core import NIL, LabeledTree


class LcaIndex:
    """Euler tour of the tree plus a doubling table of min-depth positions.

    Build is O(n log n) time and space; :meth:`lca` does two table reads.
    """

    __slots__ = ("euler", "first_visit", "depth", "sparse_min", "node_depth", "parent")

    def __init__(self, tree: LabeledTree):
        node_depth = tree.depths()
        euler: list[int] = []
        first = [0] * tree.n
        stack = [(tree.root, 0)]
        while stack:
            v, k = stack.pop()
            if k == 0:
                first[v] = len(euler)
            euler.append(v)
            kids = tree.children[v]
            if k < len(kids):
                stack.append((v, k + 1))
                stack.append((kids[k], 0))
        depth = [node_depth[v] for v in euler]

        m = len(euler)
        level = list(range(m))
        table = [level]
        span = 1
        while 2 * span <= m:
            prev = level
            level = []
            for i in range(m - 2 * span + 1):
                a, b = prev[i], prev[i + span]
                level.append(a if depth[a] <= depth[b] else b)
            table.append(level)
            span *= 2

        self.euler = euler
        self.first_visit = first
        self.depth = depth
        self.sparse_min = table
        self.node_depth = node_depth
        self.parent = tree.parent

    def lca(self, u: int, v: int) -> int:
        lo, hi = self.first_visit[u], self.first_visit[v]
        if lo > hi:
            lo, hi = hi, lo
        k = (hi - lo + 1).bit_length() - 1
        row = self.sparse_min[k]
        a, b = row[lo], row[hi - (1 << k) + 1]
        return self.euler[a] if self.depth[a] <= self.depth[b] else self.euler[b]

    @property
    def words(self) -> int:
        return 3 * len(self.euler) + sum(len(r) for r in self.sparse_min) + 2 * len(self.first_visit)


def build_lca(tree: LabeledTree) -> LcaIndex:
    return LcaIndex(tree)


def parent_chain_lca(tree: LabeledTree, u: int, v: int) -> int:
    """Reference LCA: mark u's ancestors, then climb from v."""
    marked = set()
    while u != NIL:
        marked.add(u)
        u = tree.parent[u]
    while v not in marked:
        v = tree.parent[v]
    return v
