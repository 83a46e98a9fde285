"""Persistent size-augmented treaps built by path copying.

All versions live in one append-only node pool.  Node 0 is the shared nil
leaf (size 0).  Priorities are a deterministic hash of the inserted value
and the store's insertion counter, so rebuilding the same sequence of
inserts reproduces the same node pool bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass

from ..core import RankOutOfRange

_MASK = (1 << 64) - 1


def _priority(value: int, serial: int) -> int:
    # splitmix64 finaliser over (value, serial)
    z = (hash(value) * 0x9E3779B97F4A7C15 + serial * 0xBF58476D1CE4E5B9 + 0x94D049BB133111EB) & _MASK
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return z ^ (z >> 31)


class PersistentTreeStore:
    """Append-only pool of treap nodes shared by every version."""

    __slots__ = ("value", "left", "right", "size", "priority", "serial", "last_allocated", "max_allocated")

    def __init__(self) -> None:
        self.value: list = [None]
        self.left: list[int] = [0]
        self.right: list[int] = [0]
        self.size: list[int] = [0]
        self.priority: list[int] = [-1]
        self.serial = 0
        self.last_allocated = 0
        self.max_allocated = 0

    def __len__(self) -> int:
        return len(self.value) - 1

    @property
    def node_count(self) -> int:
        return len(self.value) - 1

    @property
    def words(self) -> int:
        return 5 * len(self.value)

    def empty(self) -> "VersionHandle":
        return VersionHandle(self, 0)

    def handle(self, root: int) -> "VersionHandle":
        return VersionHandle(self, root)

    def _new(self, value, left: int, right: int, priority: int) -> int:
        self.value.append(value)
        self.left.append(left)
        self.right.append(right)
        self.size.append(1 + self.size[left] + self.size[right])
        self.priority.append(priority)
        return len(self.value) - 1

    def _copy(self, t: int, left: int, right: int) -> int:
        return self._new(self.value[t], left, right, self.priority[t])

    def _split(self, t: int, x) -> tuple[int, int]:
        """Copy-split ``t`` into (values <= x, values > x)."""
        if t == 0:
            return 0, 0
        if self.value[t] <= x:
            a, b = self._split(self.right[t], x)
            return self._copy(t, self.left[t], a), b
        a, b = self._split(self.left[t], x)
        return a, self._copy(t, b, self.right[t])

    def _insert(self, t: int, x, p: int) -> int:
        if t == 0:
            return self._new(x, 0, 0, p)
        if p > self.priority[t]:
            a, b = self._split(t, x)
            return self._new(x, a, b, p)
        if x < self.value[t]:
            return self._copy(t, self._insert(self.left[t], x, p), self.right[t])
        return self._copy(t, self.left[t], self._insert(self.right[t], x, p))

    def insert_root(self, root: int, x) -> int:
        """Insert ``x`` into the version rooted at ``root``; return the new root."""
        before = len(self.value)
        p = _priority(x, self.serial)
        self.serial += 1
        new_root = self._insert(root, x, p)
        allocated = len(self.value) - before
        self.last_allocated = allocated
        if allocated > self.max_allocated:
            self.max_allocated = allocated
        return new_root

    def select_root(self, root: int, r: int):
        size, left, right, value = self.size, self.left, self.right, self.value
        if not 1 <= r <= size[root]:
            raise RankOutOfRange(f"rank {r} outside 1..{size[root]}")
        t = root
        while True:
            ls = size[left[t]]
            if r <= ls:
                t = left[t]
            elif r == ls + 1:
                return value[t]
            else:
                r -= ls + 1
                t = right[t]

    def rank_root(self, root: int, x) -> int:
        """Number of stored values strictly below ``x``."""
        size, left, right, value = self.size, self.left, self.right, self.value
        count = 0
        t = root
        while t:
            if value[t] < x:
                count += size[left[t]] + 1
                t = right[t]
            else:
                t = left[t]
        return count

    def height_root(self, root: int) -> int:
        if root == 0:
            return 0
        best = 0
        stack = [(root, 1)]
        while stack:
            t, h = stack.pop()
            if h > best:
                best = h
            for c in (self.left[t], self.right[t]):
                if c:
                    stack.append((c, h + 1))
        return best

    def inorder_root(self, root: int) -> list:
        out = []
        stack = []
        t = root
        while stack or t:
            while t:
                stack.append(t)
                t = self.left[t]
            t = stack.pop()
            out.append(self.value[t])
            t = self.right[t]
        return out


@dataclass(frozen=True, slots=True)
class VersionHandle:
    """One immutable version: a root reference into a shared store."""

    store: PersistentTreeStore
    root: int

    @property
    def size(self) -> int:
        return self.store.size[self.root]

    def __len__(self) -> int:
        return self.store.size[self.root]

    def insert(self, x) -> "VersionHandle":
        return VersionHandle(self.store, self.store.insert_root(self.root, x))

    def select(self, r: int):
        return self.store.select_root(self.root, r)

    def rank_of(self, x) -> int:
        return self.store.rank_root(self.root, x)

    def height(self) -> int:
        return self.store.height_root(self.root)

    def inorder(self) -> list:
        return self.store.inorder_root(self.root)


def pbst_insert(v: VersionHandle, x) -> VersionHandle:
    return v.insert(x)


def pbst_select(v: VersionHandle, r: int):
    return v.select(r)


def pbst_rank_of(v: VersionHandle, x) -> int:
    return v.rank_of(x)
