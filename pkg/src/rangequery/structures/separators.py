"""Tree surgery: binarisation, edge separators and subtree partitions."""
from __future__ import annotations

import math

from ..core import NIL, InvalidTree, LabeledTree, SingleNode


def binarize(tree: LabeledTree) -> tuple[LabeledTree, list[int]]:
    """Expand every node with more than two children into a binary gadget.

    The expanded node stays at the top of its gadget; the gadget's other
    internal nodes are synthetic, flagged in ``reserved`` and given labels
    that no real node uses.  Returns the new tree and the map from original
    node id to new node id (original nodes keep their ids; synthetic nodes
    are appended after them).
    """
    n = tree.n
    parent = list(tree.parent)
    labels = list(tree.labels)
    reserved = list(tree.reserved)
    real = [lab for lab, res in zip(tree.labels, tree.reserved) if not res]
    next_label = (max(real) + 1) if real and all(isinstance(x, int) for x in real) else 0
    if any(tree.reserved):
        next_label = max(next_label, max(lab for lab, res in zip(tree.labels, tree.reserved) if res) + 1)

    def synthetic(par: int) -> int:
        nonlocal next_label
        parent.append(par)
        labels.append(next_label)
        reserved.append(True)
        next_label += 1
        return len(parent) - 1

    def hang(top: int, kids: list[int]) -> None:
        if len(kids) <= 2:
            for c in kids:
                parent[c] = top
            return
        half = (len(kids) + 1) // 2
        for part in (kids[:half], kids[half:]):
            if len(part) == 1:
                parent[part[0]] = top
            else:
                hang(synthetic(top), part)

    for v in range(n):
        kids = list(tree.children[v])
        if len(kids) > 2:
            hang(v, kids)
    return LabeledTree(parent, labels, reserved), list(range(n))


def _component(tree: LabeledTree, top: int, cut: set[int]) -> list[int]:
    """Nodes reachable from ``top`` downwards without entering a cut child."""
    order = [top]
    stack = [top]
    while stack:
        v = stack.pop()
        for c in tree.children[v]:
            if c not in cut:
                order.append(c)
                stack.append(c)
    return order


def _best_edge(tree: LabeledTree, order: list[int], cut: set[int]) -> tuple[int, int, int]:
    """Edge of the component (preorder ``order``) minimising the larger side."""
    m = len(order)
    members = set(order)
    size = {v: 1 for v in order}
    for v in reversed(order[1:]):
        size[tree.parent[v]] += size[v]
    best = None
    for v in order[1:]:
        worst = max(size[v], m - size[v])
        if best is None or worst < best[0]:
            best = (worst, tree.parent[v], v)
    assert best is not None and best[1] in members
    return best


def edge_separator(tree: LabeledTree) -> tuple[int, int]:
    """(parent, child) edge whose removal leaves two parts of size <= ceil(2n/3)."""
    if tree.n < 2:
        raise SingleNode("a single node has no edges")
    if any(len(c) > 2 for c in tree.children):
        raise InvalidTree("edge_separator needs a binary tree")
    _, p, c = _best_edge(tree, tree.preorder(), set())
    return p, c


def partition_subtrees(tree: LabeledTree, b: int) -> tuple[list[int], int]:
    """Cut separator edges until every component has at most ceil(n/b) nodes.

    Returns (component id per node, number of components).  Components are
    numbered in the order their top nodes appear in a preorder walk.
    """
    n = tree.n
    b = max(1, min(b, n))
    limit = math.ceil(n / b)
    cut: set[int] = set()
    tops = [tree.root]
    done = []
    while tops:
        top = tops.pop()
        order = _component(tree, top, cut)
        if len(order) <= limit:
            done.append(top)
            continue
        _, _, child = _best_edge(tree, order, cut)
        cut.add(child)
        tops.append(top)
        tops.append(child)
    top_set = set(done)
    comp = [NIL] * n
    count = 0
    for v in tree.preorder():
        if v in top_set:
            comp[v] = count
            count += 1
        else:
            comp[v] = comp[tree.parent[v]]
    return comp, count
