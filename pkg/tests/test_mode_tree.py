import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rangequery.core import NIL, EmptyInput, LabeledTree, ModeAnswer, UnknownNode, oracle_mode, oracle_path_labels
from rangequery.instances import TREE_SHAPES, make_tree, node_pairs
from rangequery.mode_tree import (IntervalLabels, build_tree_mode, map_to_label_tree, query_tree_mode,
                                  tree_range_count)

from .strategies import trees


def nearest_member(tree, members, v):
    while v not in members:
        v = tree.parent[v]
    return v


class TestExamples:
    def test_queries(self, t1):
        idx = build_tree_mode(t1)
        assert query_tree_mode(idx, 3, 6) == ModeAnswer(5, 3)
        assert query_tree_mode(idx, 3, 3) == ModeAnswer(5, 1)
        assert query_tree_mode(idx, 3, 4) == ModeAnswer(1, 2)

    def test_counts(self, t1):
        idx = build_tree_mode(t1)
        assert tree_range_count(idx, 5, 3, 6) == 3
        assert tree_range_count(idx, 1, 3, 4) == 2
        for u in range(7):
            for x in (1, 3, 5):
                assert tree_range_count(idx, x, u, u) == int(t1.labels[u] == x)
        assert tree_range_count(idx, 42, 0, 6) == 0

    def test_label_tree_mapping(self, t1):
        idx = build_tree_mode(t1)
        assert map_to_label_tree(idx, 5, 6) == 5
        assert map_to_label_tree(idx, 5, 3) == 3
        assert map_to_label_tree(idx, 5, 4) == 0

    def test_two_components(self, t1):
        idx = build_tree_mode(t1, blocks=2)
        sizes = Counter(idx.component)
        assert max(sizes.values()) <= math.ceil(idx.tree.n / 2)

    def test_single_node(self):
        idx = build_tree_mode(LabeledTree([NIL], [4]))
        assert idx.query(0, 0) == ModeAnswer(4, 1)

    def test_star_reserved_labels_never_candidates(self):
        star = LabeledTree([NIL] + [0] * 5, [1, 2, 3, 4, 5, 6])
        idx = build_tree_mode(star, blocks=3)
        assert any(idx.tree.reserved)
        real = set(range(len(idx.inverse)))
        for labels in idx.component_labels:
            assert set(labels) <= real
        for u in range(6):
            for v in range(6):
                assert idx.query(u, v).value in star.labels

    def test_errors(self, t1):
        with pytest.raises(UnknownNode):
            build_tree_mode(t1).query(0, 9)
        with pytest.raises(EmptyInput):
            build_tree_mode(LabeledTree([], []))


class TestProperties:
    @given(trees(max_size=30), st.sampled_from([0.5, 0.25]))
    def test_matches_oracle(self, tree, eps):
        idx = build_tree_mode(tree, eps)
        for u in range(tree.n):
            for v in range(tree.n):
                items = oracle_path_labels(tree, u, v)
                ans = idx.query(u, v)
                assert ans.frequency == oracle_mode(items).frequency
                assert items.count(ans.value) == ans.frequency

    @given(trees(max_size=25))
    def test_range_count_matches_oracle(self, tree):
        idx = build_tree_mode(tree)
        for x in set(tree.labels):
            for u in range(tree.n):
                for v in range(u, tree.n):
                    assert tree_range_count(idx, x, u, v) == oracle_path_labels(tree, u, v).count(x)

    @given(trees(max_size=40))
    def test_interval_labels_laminar(self, tree):
        idx = build_tree_mode(tree)
        bt, iv = idx.tree, idx.intervals
        assert sorted(iv.inorder) == list(range(1, bt.n + 1))
        for v in range(bt.n):
            lo, hi = iv.interval(v)
            assert lo <= iv.inorder[v] <= hi
            assert hi - lo + 1 == sum(1 for w in range(bt.n) if lo <= iv.inorder[w] <= hi)
            for w in range(bt.n):
                a, b = iv.interval(w)
                assert b < lo or hi < a or (lo <= a and b <= hi) or (a <= lo and hi <= b)

    @given(trees(max_size=40))
    def test_label_tree_invariants(self, tree):
        idx = build_tree_mode(tree)
        bt = idx.tree
        total = 0
        for x, lt in idx.label_trees.items():
            occurrences = sum(1 for v in range(bt.n) if bt.labels[v] == x and not bt.reserved[v])
            assert len(lt.members) <= 2 * occurrences + 1
            total += len(lt.members)
            members = set(lt.members)
            for v in range(bt.n):
                seg = lt.locate(idx.intervals.inorder[v])
                assert lt.seg_member[seg] == nearest_member(bt, members, v)
            for v in lt.members:
                p = bt.parent[v]
                if p != NIL:
                    assert lt.prefix[v] >= lt.prefix[nearest_member(bt, members, p)]
        assert total <= 3 * bt.n


@pytest.mark.parametrize("shape", sorted(TREE_SHAPES))
def test_shapes_exhaustive(shape):
    tree = make_tree(shape, 48, 11)
    idx = build_tree_mode(tree)
    for u in range(tree.n):
        for v in range(tree.n):
            assert idx.query(u, v).frequency == oracle_mode(oracle_path_labels(tree, u, v)).frequency


def test_sampled_large_tree():
    tree = make_tree("random", 1024, 5)
    idx = build_tree_mode(tree)
    for u, v in node_pairs(tree.n, 400, 6):
        assert idx.query(u, v).frequency == oracle_mode(oracle_path_labels(tree, u, v)).frequency
