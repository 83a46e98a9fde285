"""Range mode and range median queries on lists and trees."""
from .core import (NIL, BadBranching, BadEpsilon, BadParams, EmptyInput, EmptyRange, InvalidRange, InvalidTree,
                   LabeledList, LabeledTree, ListRange, MalformedQuery, MedianAnswer, ModeAnswer, ParseError,
                   ProbeCounter, RangeQueryError, RankOutOfRange, SingleNode, UnknownLabel, UnknownNode,
                   UnsortedInput, VersionMismatch, normalize, oracle_count, oracle_median, oracle_mode,
                   oracle_path, oracle_path_labels, oracle_select)
from .median_list import (MedianBlockIndex, MedianConstantIndex, RangeTreeIndex, build_median_block,
                          build_median_constant, build_range_tree, canonical_decomposition, query_median_block,
                          query_median_constant, query_median_range_tree)
from .median_tree import TreeMedianIndex, build_tree_median, query_tree_median
from .mode_list import (ModeConstantIndex, ModeTradeoffIndex, OccurrenceIndex, build_mode_constant,
                        build_mode_tradeoff, build_occurrence_index, query_mode_constant, query_mode_tradeoff,
                        range_count)
from .mode_tree import TreeModeIndex, build_tree_mode, map_to_label_tree, query_tree_mode, tree_range_count

__version__ = "0.1.0"
