"""Data model and brute-force oracles for range mode / median queries.

Lists are addressed by 1-based positions ``1 <= i <= j <= n``.  Trees use
0-based node ids ``0 .. n-1``; the root's parent is ``NIL`` (-1).

Every oracle here is deliberately naive: it materialises the queried
multiset and inspects it directly.  The indexes elsewhere in the package
are tested against these functions and nothing else.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, NamedTuple, Sequence

NIL = -1


class RangeQueryError(ValueError):
    """Base class for all errors raised by this package."""


class EmptyInput(RangeQueryError):
    pass


class EmptyRange(RangeQueryError):
    pass


class InvalidRange(RangeQueryError):
    pass


class RankOutOfRange(RangeQueryError):
    pass


class UnknownNode(RangeQueryError):
    pass


class UnknownLabel(RangeQueryError):
    pass


class UnsortedInput(RangeQueryError):
    pass


class SingleNode(RangeQueryError):
    pass


class InvalidTree(RangeQueryError):
    pass


class BadParams(RangeQueryError):
    pass


class BadEpsilon(BadParams):
    pass


class BadBranching(BadParams):
    pass


class ParseError(RangeQueryError):
    pass


class MalformedQuery(ParseError):
    pass


class VersionMismatch(RangeQueryError):
    pass


class ModeAnswer(NamedTuple):
    value: Any
    frequency: int


class MedianAnswer(NamedTuple):
    value: Any
    rank: int


class ListRange(NamedTuple):
    i: int
    j: int


def check_range(n: int, i: int, j: int) -> None:
    if not (1 <= i <= j <= n):
        raise InvalidRange(f"need 1 <= i <= j <= {n}, got ({i}, {j})")


def median_rank(m: int) -> int:
    """1-based sorted position of the median of an ``m``-element multiset."""
    return m // 2 + 1


@dataclass(frozen=True)
class LabeledList:
    labels: tuple

    def __init__(self, labels: Iterable):
        object.__setattr__(self, "labels", tuple(labels))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def n(self) -> int:
        return len(self.labels)

    def at(self, i: int):
        """Label at 1-based position ``i``."""
        if not 1 <= i <= len(self.labels):
            raise InvalidRange(f"position {i} outside 1..{len(self.labels)}")
        return self.labels[i - 1]

    def slice(self, i: int, j: int) -> list:
        """Labels at positions ``i..j`` inclusive."""
        check_range(len(self.labels), i, j)
        return list(self.labels[i - 1:j])


def as_label_sequence(data) -> Sequence:
    if isinstance(data, LabeledList):
        return data.labels
    return list(data)


@dataclass(frozen=True, eq=False)
class LabeledTree:
    """Rooted tree with one label per node.

    ``reserved[v]`` marks synthetic nodes introduced by :func:`binarize`;
    their labels never coincide with a real label.
    """

    parent: tuple
    labels: tuple
    root: int
    children: tuple = field(repr=False)
    reserved: tuple = field(repr=False)

    def __init__(self, parent: Sequence[int], labels: Sequence, reserved: Sequence[bool] | None = None):
        n = len(parent)
        if n == 0:
            raise EmptyInput("tree has no nodes")
        if len(labels) != n:
            raise InvalidTree("labels and parent arrays differ in length")
        roots = [v for v in range(n) if parent[v] == NIL]
        if len(roots) != 1:
            raise InvalidTree(f"expected exactly one root, found {len(roots)}")
        children: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parent):
            if p == NIL:
                continue
            if not 0 <= p < n or p == v:
                raise InvalidTree(f"node {v} has invalid parent {p}")
            children[p].append(v)
        # reachability from the root rules out cycles given a single root
        seen = 1
        stack = [roots[0]]
        while stack:
            v = stack.pop()
            for c in children[v]:
                seen += 1
                stack.append(c)
        if seen != n:
            raise InvalidTree("tree contains a cycle or unreachable nodes")
        if reserved is None:
            reserved = (False,) * n
        object.__setattr__(self, "parent", tuple(parent))
        object.__setattr__(self, "labels", tuple(labels))
        object.__setattr__(self, "root", roots[0])
        object.__setattr__(self, "children", tuple(tuple(c) for c in children))
        object.__setattr__(self, "reserved", tuple(bool(r) for r in reserved))

    def __len__(self) -> int:
        return len(self.parent)

    @property
    def n(self) -> int:
        return len(self.parent)

    @classmethod
    def from_edges(cls, n: int, root: int, edges: Iterable[tuple[int, int]], labels: Sequence) -> "LabeledTree":
        """Build from undirected edges by orienting them away from ``root``."""
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in edges:
            adj[a].append(b)
            adj[b].append(a)
        parent = [NIL] * n
        seen = [False] * n
        seen[root] = True
        stack = [root]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = v
                    stack.append(w)
        return cls(parent, labels)

    def check_node(self, v: int) -> None:
        if not isinstance(v, int) or not 0 <= v < len(self.parent):
            raise UnknownNode(f"no node {v!r} in a tree of {len(self.parent)} nodes")

    def depths(self) -> list[int]:
        depth = [0] * self.n
        for v in self.preorder():
            p = self.parent[v]
            if p != NIL:
                depth[v] = depth[p] + 1
        return depth

    def preorder(self) -> list[int]:
        order = []
        stack = [self.root]
        while stack:
            v = stack.pop()
            order.append(v)
            stack.extend(reversed(self.children[v]))
        return order

    def neighbours(self, v: int) -> list[int]:
        p = self.parent[v]
        return list(self.children[v]) if p == NIL else [p, *self.children[v]]


# --------------------------------------------------------------------------
# normalisation


def normalize_values(values: Sequence[Hashable]) -> tuple[list[int], dict[int, Any]]:
    """Replace values by dense order-preserving ids ``0..L-1``."""
    if len(values) == 0:
        raise EmptyInput("cannot normalise an empty sequence")
    distinct = sorted(set(values))
    rank = {v: r for r, v in enumerate(distinct)}
    return [rank[v] for v in values], dict(enumerate(distinct))


def normalize(data):
    """Normalise the labels of a list or tree.

    Returns ``(normalised, inverse)`` where ``normalised`` has the same kind
    as ``data`` and ``inverse`` maps each dense id back to its raw value.
    """
    if isinstance(data, LabeledTree):
        ids, inverse = normalize_values(data.labels)
        return LabeledTree(data.parent, ids, data.reserved), inverse
    ids, inverse = normalize_values(as_label_sequence(data))
    return LabeledList(ids), inverse


# --------------------------------------------------------------------------
# oracles


def oracle_path(tree: LabeledTree, u: int, v: int) -> list[int]:
    """Nodes on the u..v path, both ends included, in walking order."""
    tree.check_node(u)
    tree.check_node(v)
    depth = tree.depths()
    up, down = [], []
    a, b = u, v
    while depth[a] > depth[b]:
        up.append(a)
        a = tree.parent[a]
    while depth[b] > depth[a]:
        down.append(b)
        b = tree.parent[b]
    while a != b:
        up.append(a)
        down.append(b)
        a = tree.parent[a]
        b = tree.parent[b]
    up.append(a)
    return up + down[::-1]


def oracle_path_labels(tree: LabeledTree, u: int, v: int, *, skip_reserved: bool = True) -> list:
    path = oracle_path(tree, u, v)
    if skip_reserved:
        return [tree.labels[w] for w in path if not tree.reserved[w]]
    return [tree.labels[w] for w in path]


def oracle_mode(multiset: Iterable) -> ModeAnswer:
    counts = Counter(multiset)
    if not counts:
        raise EmptyRange("mode of an empty multiset")
    best = max(counts.values())
    return ModeAnswer(min(x for x, c in counts.items() if c == best), best)


def oracle_select(multiset: Iterable, r: int):
    ordered = sorted(multiset)
    if not 1 <= r <= len(ordered):
        raise RankOutOfRange(f"rank {r} outside 1..{len(ordered)}")
    return ordered[r - 1]


def oracle_median(multiset: Iterable) -> MedianAnswer:
    items = list(multiset)
    if not items:
        raise EmptyRange("median of an empty multiset")
    r = median_rank(len(items))
    return MedianAnswer(oracle_select(items, r), r)


def oracle_count(multiset: Iterable, x) -> int:
    return sum(1 for y in multiset if y == x)


class ProbeCounter:
    """Mutable tally handed to ``query(..., counter=...)`` calls.

    ``probes`` counts elementary index accesses, ``candidates`` the labels a
    mode query had to count, ``comparisons`` key comparisons in selection.
    """

    __slots__ = ("probes", "candidates", "comparisons", "queries")

    def __init__(self) -> None:
        self.probes = 0
        self.candidates = 0
        self.comparisons = 0
        self.queries = 0

    def reset(self) -> None:
        self.probes = self.candidates = self.comparisons = self.queries = 0

    def __repr__(self) -> str:
        return (f"ProbeCounter(queries={self.queries}, probes={self.probes}, "
                f"candidates={self.candidates}, comparisons={self.comparisons})")
