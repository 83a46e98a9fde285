"""Text input formats, index registry and binary snapshots.

List file: one integer label per line.
Tree file: a header line ``n root`` followed by ``n`` lines
``node parent label`` with 1-based node ids and parent ``0`` for the root.
Snapshots: ``b"RQK1"``, little-endian u32 format version, u16 length plus
UTF-8 kind tag, then a pickled index.
"""
from __future__ import annotations

import pickle
import struct
from pathlib import Path
from typing import Iterable, Iterator

from .core import NIL, BadParams, LabeledTree, MalformedQuery, ParseError, VersionMismatch
from .median_list import MedianBlockIndex, MedianConstantIndex, RangeTreeIndex
from .median_tree import TreeMedianIndex
from .mode_list import ModeConstantIndex, ModeTradeoffIndex
from .mode_tree import TreeModeIndex

MAGIC = b"RQK1"
FORMAT_VERSION = 1

LIST_KINDS = ("mode-tradeoff", "mode-constant", "median-block", "median-range-tree", "median-constant")
TREE_KINDS = ("mode-tree", "median-tree")
ALL_KINDS = LIST_KINDS + TREE_KINDS


def parse_list(text: str) -> list[int]:
    out = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            out.append(int(line))
        except ValueError:
            raise ParseError(f"line {lineno}: expected an integer label, got {line!r}") from None
    return out


def format_list(labels: Iterable[int]) -> str:
    return "".join(f"{x}\n" for x in labels)


def parse_tree(text: str) -> LabeledTree:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows:
        raise ParseError("empty tree file")
    try:
        n, root = (int(t) for t in rows[0])
        body = [tuple(int(t) for t in r) for r in rows[1:]]
    except ValueError:
        raise ParseError("tree file lines must hold integers") from None
    if len(body) != n or any(len(r) != 3 for r in body):
        raise ParseError(f"expected {n} lines of 'node parent label'")
    parent = [NIL] * n
    labels = [0] * n
    seen = set()
    for node, par, label in body:
        if not 1 <= node <= n or node in seen or not 0 <= par <= n:
            raise ParseError(f"bad node line {node} {par} {label}")
        seen.add(node)
        parent[node - 1] = par - 1 if par else NIL
        labels[node - 1] = label
    if not 1 <= root <= n or parent[root - 1] != NIL:
        raise ParseError(f"root {root} must be the node with parent 0")
    return LabeledTree(parent, labels)


def format_tree(tree: LabeledTree) -> str:
    lines = [f"{tree.n} {tree.root + 1}"]
    lines += [f"{v + 1} {p + 1 if p != NIL else 0} {tree.labels[v]}" for v, p in enumerate(tree.parent)]
    return "\n".join(lines) + "\n"


def parse_queries(text: str, n: int, *, tree: bool) -> Iterator[tuple[int, int]]:
    """Yield 1-based ``(i, j)`` (list) or ``(u, v)`` (tree) pairs."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        try:
            a, b = (int(t) for t in parts)
        except ValueError:
            raise MalformedQuery(f"line {lineno}: expected two integers, got {line.strip()!r}") from None
        if tree:
            ok = 1 <= a <= n and 1 <= b <= n
        else:
            ok = 1 <= a <= b <= n
        if not ok:
            raise MalformedQuery(f"line {lineno}: {a} {b} is not a valid 1-based query for n={n}")
        yield a, b


def build_index(kind: str, data, *, epsilon: float | None = None, blocks: int | None = None,
                k: int | None = None, arity: int | None = None):
    if kind not in ALL_KINDS:
        raise BadParams(f"unknown kind {kind!r}; choose from {', '.join(ALL_KINDS)}")
    tree_kind = kind in TREE_KINDS
    if tree_kind != isinstance(data, LabeledTree):
        raise BadParams(f"kind {kind} needs a {'tree' if tree_kind else 'list'} input")
    if blocks is not None and blocks < 1:
        raise BadParams(f"--blocks must be positive, got {blocks}")
    if kind == "mode-tradeoff":
        if blocks is not None:
            return ModeTradeoffIndex(data, None, block_size=-(-len(data) // blocks))
        return ModeTradeoffIndex(data, 0.5 if epsilon is None else epsilon)
    if kind == "mode-constant":
        return ModeConstantIndex(data, k)
    if kind == "median-block":
        return MedianBlockIndex(data, 2 if blocks is None else blocks)
    if kind == "median-range-tree":
        return RangeTreeIndex(data, 2 if arity is None else arity)
    if kind == "median-constant":
        return MedianConstantIndex(data, k)
    if kind == "mode-tree":
        return TreeModeIndex(data, 0.5 if epsilon is None else epsilon, blocks=blocks)
    return TreeMedianIndex(data)


def is_tree_index(index) -> bool:
    return index.kind in TREE_KINDS


def dump_snapshot(index) -> bytes:
    tag = index.kind.encode()
    header = MAGIC + struct.pack("<IH", FORMAT_VERSION, len(tag)) + tag
    return header + pickle.dumps(index, protocol=pickle.HIGHEST_PROTOCOL)


def load_snapshot(blob: bytes):
    if blob[:4] != MAGIC:
        raise ParseError("not a snapshot file (bad magic)")
    if len(blob) < 10:
        raise ParseError("truncated snapshot header")
    version, tag_len = struct.unpack_from("<IH", blob, 4)
    if version != FORMAT_VERSION:
        raise VersionMismatch(f"snapshot format {version}, this build reads {FORMAT_VERSION}")
    tag = blob[10:10 + tag_len].decode()
    index = pickle.loads(blob[10 + tag_len:])
    if getattr(index, "kind", None) != tag:
        raise ParseError(f"snapshot tagged {tag!r} holds {getattr(index, 'kind', None)!r}")
    return index


def save_index(index, path) -> None:
    Path(path).write_bytes(dump_snapshot(index))


def load_index(path):
    return load_snapshot(Path(path).read_bytes())
