"""Range mode path queries on trees.

The tree is binarised, cut into O(b) connected components, and the mode of
the path segment strictly between every pair of components is tabulated.
A query counts each distinct label of the two end components plus the
tabulated mode.  Counting a label ``x`` on a path uses prefix counts on the
contracted tree of ``x`` together with an LCA query::

    count(u, v) = c(u) + c(v) - c(w) - c(parent(w)),  w = lca(u, v)

where ``c(z)`` is the number of x-labelled nodes on the root..z path.
Two children of an expanded node can meet at a synthetic gadget node, in
which case the binarised path skips the expanded node itself; its label is
then added back once (``owner`` below).
"""
from __future__ import annotations

import math
from bisect import bisect_right

from .core import (NIL, BadEpsilon, EmptyInput, LabeledTree, ModeAnswer, ProbeCounter, UnknownLabel,
                   normalize)
from .mode_list import _direct_mode, blocks_for_epsilon
from .structures.lca import LcaIndex
from .structures.separators import binarize, partition_subtrees


class IntervalLabels:
    """In-order numbers (1-based) and the subtree interval of every node."""

    def __init__(self, tree: LabeledTree):
        n = tree.n
        inorder = [0] * n
        lo = [0] * n
        hi = [0] * n
        counter = 0
        stack = [(tree.root, 0)]
        while stack:
            v, state = stack.pop()
            kids = tree.children[v]
            if state == 0:
                stack.append((v, 1))
                if kids:
                    stack.append((kids[0], 0))
            elif state == 1:
                counter += 1
                inorder[v] = counter
                stack.append((v, 2))
                if len(kids) > 1:
                    stack.append((kids[1], 0))
            else:
                lo[v] = lo[kids[0]] if kids else inorder[v]
                hi[v] = hi[kids[1]] if len(kids) > 1 else inorder[v]
        self.inorder = inorder
        self.lo = lo
        self.hi = hi

    def interval(self, v: int) -> tuple[int, int]:
        return self.lo[v], self.hi[v]


class LabelTree:
    """Contracted tree of one label: its nodes, their LCAs and the root.

    ``points``/``seg_member``/``seg_count`` split the in-order axis into
    elementary segments; every node whose in-order number falls in a segment
    has the same nearest member ancestor and hence the same prefix count.
    """

    __slots__ = ("label", "members", "prefix", "points", "seg_member", "seg_count")

    def __init__(self, label, members, prefix, points, seg_member, seg_count):
        self.label = label
        self.members = members
        self.prefix = prefix
        self.points = points
        self.seg_member = seg_member
        self.seg_count = seg_count

    def __len__(self) -> int:
        return len(self.members)

    def locate(self, g: int) -> int:
        return bisect_right(self.points, g) - 1


def _build_label_tree(label, nodes, tree: LabeledTree, lca: LcaIndex, tin, tout, intervals: IntervalLabels):
    root = tree.root
    nodes = sorted(nodes, key=tin.__getitem__)
    members = {root, *nodes}
    for a, b in zip(nodes, nodes[1:]):
        members.add(lca.lca(a, b))
    members = sorted(members, key=tin.__getitem__)
    labels = tree.labels
    prefix = {}
    stack = []
    for v in members:
        while stack and not (tin[stack[-1]] <= tin[v] <= tout[stack[-1]]):
            stack.pop()
        above = prefix[stack[-1]] if stack else 0
        prefix[v] = above + (1 if labels[v] == label and not tree.reserved[v] else 0)
        stack.append(v)

    lo, hi = intervals.lo, intervals.hi
    by_start = sorted(members, key=lambda v: (lo[v], -hi[v]))
    points = sorted({lo[v] for v in members} | {hi[v] + 1 for v in members})
    seg_member, seg_count = [], []
    active: list[int] = []
    q = 0
    for p in points:
        while active and hi[active[-1]] < p:
            active.pop()
        while q < len(by_start) and lo[by_start[q]] == p:
            active.append(by_start[q])
            q += 1
        top = active[-1] if active else NIL
        seg_member.append(top)
        seg_count.append(prefix[top] if top != NIL else 0)
    return LabelTree(label, members, prefix, points, seg_member, seg_count)


class _ModeCounter:
    """Multiset with O(1) add/remove and a current mode."""

    def __init__(self) -> None:
        self.count: dict = {}
        self.bucket: list[set] = [set()]
        self.top = 0

    def add(self, x) -> None:
        f = self.count.get(x, 0)
        if f:
            self.bucket[f].discard(x)
        f += 1
        self.count[x] = f
        if f == len(self.bucket):
            self.bucket.append(set())
        self.bucket[f].add(x)
        if f > self.top:
            self.top = f

    def remove(self, x) -> None:
        f = self.count[x]
        self.bucket[f].discard(x)
        if f == 1:
            del self.count[x]
        else:
            self.count[x] = f - 1
            self.bucket[f - 1].add(x)
        if f == self.top and not self.bucket[f]:
            self.top -= 1

    def mode(self):
        if self.top == 0:
            return None
        return ModeAnswer(min(self.bucket[self.top]), self.top)


class TreeModeIndex:
    kind = "mode-tree"

    def __init__(self, tree: LabeledTree, epsilon: float = 0.5, *, blocks: int | None = None):
        if tree.n == 0:
            raise EmptyInput("cannot index an empty tree")
        if blocks is None and not 0 < epsilon <= 0.5:
            raise BadEpsilon(f"epsilon must lie in (0, 1/2], got {epsilon}")
        normal, inverse = normalize(tree)
        bt, node_map = binarize(normal)
        n = bt.n
        b = blocks if blocks is not None else blocks_for_epsilon(n, epsilon)
        lca = LcaIndex(bt)
        intervals = IntervalLabels(bt)
        comp, ncomp = partition_subtrees(bt, b)

        tin = [0] * n
        tout = [0] * n
        order = bt.preorder()
        for t, v in enumerate(order):
            tin[v] = t
        size = [1] * n
        for v in reversed(order):
            p = bt.parent[v]
            if p != NIL:
                size[p] += size[v]
        for v in range(n):
            tout[v] = tin[v] + size[v] - 1

        occurrences: dict = {}
        comp_labels: list[set] = [set() for _ in range(ncomp)]
        for v in range(n):
            if not bt.reserved[v]:
                occurrences.setdefault(bt.labels[v], []).append(v)
                comp_labels[comp[v]].add(bt.labels[v])
        label_trees = {x: _build_label_tree(x, nodes, bt, lca, tin, tout, intervals)
                       for x, nodes in occurrences.items()}

        self.original = tree
        self.n = tree.n
        self.tree = bt
        self.node_map = node_map
        self.inverse = inverse
        self.blocks = b
        self.lca_index = lca
        self.intervals = intervals
        self.component = comp
        self.component_count = ncomp
        self.component_labels = [sorted(s) for s in comp_labels]
        self.label_trees = label_trees
        self.owner = gadget_owner(bt)
        self.middle = self._middle_table()
        self.words = (lca.words + 3 * n + ncomp * ncomp * 2
                      + sum(len(s) for s in self.component_labels)
                      + sum(2 * len(t.members) + 3 * len(t.points) for t in label_trees.values()))

    def _middle_table(self) -> list[list]:
        bt, comp, ncomp = self.tree, self.component, self.component_count
        adj = [bt.neighbours(v) for v in range(bt.n)]
        members: list[list[int]] = [[] for _ in range(ncomp)]
        for v in range(bt.n):
            members[comp[v]].append(v)
        table = [[None] * ncomp for _ in range(ncomp)]
        for P in range(ncomp):
            mc = _ModeCounter()
            for start in members[P]:
                for nxt in adj[start]:
                    if comp[nxt] == P:
                        continue
                    # iterative DFS away from P: (node, came_from, leaving?)
                    stack = [(nxt, start, False)]
                    while stack:
                        z, frm, leaving = stack.pop()
                        real = not bt.reserved[z]
                        if leaving:
                            if real:
                                mc.remove(bt.labels[z])
                            continue
                        if comp[z] != comp[frm]:
                            table[P][comp[z]] = mc.mode()
                        if real:
                            mc.add(bt.labels[z])
                        stack.append((z, frm, True))
                        for w in adj[z]:
                            if w != frm:
                                stack.append((w, z, False))
        return table

    # ------------------------------------------------------------------

    def map_to_label_tree(self, x, v: int) -> int:
        """Nearest ancestor-or-self of ``v`` among the members of x's label tree."""
        self.original.check_node(v)
        lt = self._label_tree(x)
        return lt.seg_member[lt.locate(self.intervals.inorder[self.node_map[v]])]

    def _label_tree(self, x) -> LabelTree:
        key = self._label_id(x)
        lt = self.label_trees.get(key) if key is not None else None
        if lt is None:
            raise UnknownLabel(f"label {x!r} does not occur in the tree")
        return lt

    def _label_id(self, x):
        # inverse maps id -> raw; build the reverse lazily
        rev = getattr(self, "_rev", None)
        if rev is None:
            rev = {raw: i for i, raw in self.inverse.items()}
            self._rev = rev
        return rev.get(x)

    def _count_id(self, lt: LabelTree, gu: int, gv: int, gw: int, gpw: int, extra) -> int:
        pts, seg = lt.points, lt.seg_count
        total = (seg[bisect_right(pts, gu) - 1] + seg[bisect_right(pts, gv) - 1]
                 - seg[bisect_right(pts, gw) - 1])
        if gpw:
            total -= seg[bisect_right(pts, gpw) - 1]
        if extra == lt.label:
            total += 1
        return total

    def tree_range_count(self, x, u: int, v: int) -> int:
        self.original.check_node(u)
        self.original.check_node(v)
        key = self._label_id(x)
        if key is None or key not in self.label_trees:
            return 0
        return self._count_id(self.label_trees[key], *self._anchor(self.node_map[u], self.node_map[v]))

    def _anchor(self, bu: int, bv: int) -> tuple:
        w = self.lca_index.lca(bu, bv)
        pw = self.tree.parent[w]
        g = self.intervals.inorder
        extra = self.tree.labels[self.owner[w]] if self.tree.reserved[w] else None
        return g[bu], g[bv], g[w], (g[pw] if pw != NIL else 0), extra

    def _walk(self, bu: int, bv: int) -> list:
        bt = self.tree
        depth = self.lca_index.node_depth
        out = []
        a, b = bu, bv
        while depth[a] > depth[b]:
            out.append(a)
            a = bt.parent[a]
        while depth[b] > depth[a]:
            out.append(b)
            b = bt.parent[b]
        while a != b:
            out.append(a)
            out.append(b)
            a, b = bt.parent[a], bt.parent[b]
        out.append(a)
        if bt.reserved[a]:
            out.append(self.owner[a])
        return [bt.labels[z] for z in out if not bt.reserved[z]]

    def query(self, u: int, v: int, counter: ProbeCounter | None = None) -> ModeAnswer:
        self.original.check_node(u)
        self.original.check_node(v)
        bu, bv = self.node_map[u], self.node_map[v]
        P, Q = self.component[bu], self.component[bv]
        if P == Q:
            labels = self._walk(bu, bv)
            if counter is not None:
                counter.queries += 1
                counter.probes += len(labels)
            ans = _direct_mode(labels)
            return ModeAnswer(self.inverse[ans.value], ans.frequency)
        cands = set(self.component_labels[P])
        cands.update(self.component_labels[Q])
        mid = self.middle[P][Q]
        if mid is not None:
            cands.add(mid.value)
        anchor = self._anchor(bu, bv)
        if anchor[4] is not None:
            cands.add(anchor[4])
        best_val, best_f = None, 0
        trees = self.label_trees
        for x in cands:
            f = self._count_id(trees[x], *anchor)
            if f > best_f or (f == best_f and f and x < best_val):
                best_val, best_f = x, f
        if counter is not None:
            counter.queries += 1
            counter.candidates += len(cands)
            counter.probes += 1 + len(cands)
        return ModeAnswer(self.inverse[best_val], best_f)


def gadget_owner(tree: LabeledTree) -> list[int]:
    """For each node, its nearest non-synthetic ancestor-or-self."""
    owner = list(range(tree.n))
    for v in tree.preorder():
        if tree.reserved[v]:
            owner[v] = owner[tree.parent[v]]
    return owner


def build_tree_mode(tree: LabeledTree, epsilon: float = 0.5, *, blocks: int | None = None) -> TreeModeIndex:
    return TreeModeIndex(tree, epsilon, blocks=blocks)


def map_to_label_tree(idx: TreeModeIndex, x, v: int) -> int:
    return idx.map_to_label_tree(x, v)


def tree_range_count(idx: TreeModeIndex, x, u: int, v: int) -> int:
    return idx.tree_range_count(x, u, v)


def query_tree_mode(idx: TreeModeIndex, u: int, v: int, counter=None) -> ModeAnswer:
    return idx.query(u, v, counter)
