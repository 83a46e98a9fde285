from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rangequery.core import (EmptyInput, EmptyRange, InvalidRange, InvalidTree, LabeledList, LabeledTree, ListRange,
                             MedianAnswer, ModeAnswer, RankOutOfRange, UnknownNode, check_range, median_rank,
                             normalize, oracle_count, oracle_median, oracle_mode, oracle_path, oracle_path_labels,
                             oracle_select)

from .strategies import label_lists, trees


class TestNormalize:
    def test_dense_order_preserving_ranks(self):
        out, inverse = normalize([30, 10, 40, 10])
        assert out.labels == (1, 0, 2, 0)
        assert inverse == {0: 10, 1: 30, 2: 40}

    @pytest.mark.parametrize("raw, ids", [([7], (0,)), ([5, 5, 5], (0, 0, 0))])
    def test_small_inputs(self, raw, ids):
        assert normalize(raw)[0].labels == ids

    def test_empty(self):
        with pytest.raises(EmptyInput):
            normalize([])

    def test_tree_labels_normalized(self, t1):
        out, inverse = normalize(t1)
        assert isinstance(out, LabeledTree)
        assert [inverse[x] for x in out.labels] == list(t1.labels)

    @given(st.lists(st.integers(-50, 50), min_size=1, max_size=30))
    def test_order_and_equality_preserved(self, raw):
        out, inverse = normalize(raw)
        ids = out.labels
        assert sorted(set(ids)) == list(range(len(set(raw))))
        for a in range(len(raw)):
            assert inverse[ids[a]] == raw[a]
            for b in range(len(raw)):
                assert (raw[a] < raw[b]) == (ids[a] < ids[b])


class TestOracles:
    def test_mode_examples(self, l1):
        assert oracle_mode(l1) == ModeAnswer(5, 3)
        assert oracle_mode(l1[1:5]) == ModeAnswer(1, 2)
        assert oracle_mode(l1[5:6]) == ModeAnswer(9, 1)

    def test_select_and_median_examples(self, l1):
        assert oracle_select(l1, 6) == 4
        assert oracle_median(l1) == MedianAnswer(4, 6)
        assert oracle_median(l1[:4]) == MedianAnswer(3, 3)
        assert oracle_median(l1[6:7]) == MedianAnswer(2, 1)

    def test_count_examples(self, l1):
        assert oracle_count(l1, 5) == 3
        assert oracle_count(l1[:4], 5) == 0
        assert oracle_count(l1[5:6], 9) == 1

    def test_errors(self):
        with pytest.raises(EmptyRange):
            oracle_mode([])
        with pytest.raises(EmptyRange):
            oracle_median([])
        with pytest.raises(RankOutOfRange):
            oracle_select([1, 2], 3)
        with pytest.raises(RankOutOfRange):
            oracle_select([1, 2], 0)

    def test_path_examples(self, t1):
        # 1-based path 4 -> 7 is 4,2,1,3,6,7
        assert oracle_path(t1, 3, 6) == [3, 1, 0, 2, 5, 6]
        assert oracle_path_labels(t1, 3, 6) == [5, 1, 3, 5, 5, 3]
        assert oracle_path(t1, 4, 4) == [4]
        with pytest.raises(UnknownNode):
            oracle_path(t1, 0, 7)

    @given(label_lists(), st.integers(0, 8))
    def test_count_bounded_by_mode(self, items, x):
        mode = oracle_mode(items)
        assert oracle_count(items, x) <= mode.frequency
        assert oracle_count(items, mode.value) == mode.frequency

    @given(label_lists())
    def test_mode_smallest_on_ties(self, items):
        c = Counter(items)
        top = max(c.values())
        assert oracle_mode(items).value == min(x for x in c if c[x] == top)

    @given(st.sets(st.integers(-100, 100), min_size=1, max_size=30))
    def test_median_dominates_half_on_distinct_sets(self, values):
        ans = oracle_median(list(values))
        assert sum(1 for x in values if x < ans.value) == len(values) // 2

    @given(label_lists())
    def test_median_rank_convention(self, items):
        ans = oracle_median(items)
        assert ans.rank == len(items) // 2 + 1 == median_rank(len(items))
        assert sorted(items)[ans.rank - 1] == ans.value

    @given(trees())
    def test_path_is_simple_and_connected(self, tree):
        for u in range(0, tree.n, 3):
            for v in range(tree.n):
                path = oracle_path(tree, u, v)
                assert path[0] == u and path[-1] == v
                assert len(set(path)) == len(path)
                for a, b in zip(path, path[1:]):
                    assert tree.parent[a] == b or tree.parent[b] == a


class TestTypes:
    def test_labeled_list_positions(self, l1):
        lst = LabeledList(l1)
        assert lst.n == 11 and lst.at(1) == 3 and lst.at(11) == 5
        assert lst.slice(2, 5) == [1, 4, 1, 5]
        with pytest.raises(InvalidRange):
            lst.at(0)

    def test_check_range(self):
        check_range(5, 1, 5)
        for bad in [(0, 3), (3, 2), (1, 6)]:
            with pytest.raises(InvalidRange):
                check_range(5, *bad)
        assert ListRange(2, 4).j == 4

    @pytest.mark.parametrize("parent", [[-1, -1], [0, 0], [-1, 2, 1], [-1, 5]])
    def test_invalid_trees(self, parent):
        with pytest.raises(InvalidTree):
            LabeledTree(parent, [0] * len(parent))

    def test_tree_shape(self, t1):
        assert t1.root == 0
        assert sorted(t1.children[0]) == [1, 2]
        assert t1.depths() == [0, 1, 1, 2, 2, 2, 3]
        assert sorted(t1.preorder()) == list(range(7))

    def test_from_edges(self, t1):
        edges = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)]
        tree = LabeledTree.from_edges(7, 0, edges, t1.labels)
        assert list(tree.parent) == list(t1.parent)
