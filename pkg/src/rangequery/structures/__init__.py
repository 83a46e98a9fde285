"""Building blocks shared by the indexes: LCA, persistent trees, selection, separators."""
from .lca import LcaIndex, build_lca, parent_chain_lca
from .pbst import PersistentTreeStore, VersionHandle, pbst_insert, pbst_rank_of, pbst_select
from .select import select_sorted_arrays, select_three_trees, select_union
from .separators import binarize, edge_separator, partition_subtrees

__all__ = [
    "LcaIndex", "build_lca", "parent_chain_lca",
    "PersistentTreeStore", "VersionHandle", "pbst_insert", "pbst_rank_of", "pbst_select",
    "select_sorted_arrays", "select_three_trees", "select_union",
    "binarize", "edge_separator", "partition_subtrees",
]
