"""Range median on a list with persistent trees, a range tree and lookup tables.

Run with ``python tutorials/02_range_median.py``.
"""
from rangequery import (ProbeCounter, build_median_block, build_median_constant, build_range_tree,
                        canonical_decomposition, oracle_median)
from rangequery.instances import random_list, uniform_ranges

labels = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]
print("labels:", labels, "| sorted:", sorted(labels))
print("median of the whole list:", oracle_median(labels))

# Blocks of four: each block keeps one persistent search-tree version per
# prefix and per suffix, so a partial block is a single version handle.
block = build_median_block(labels, 3)
print("\nsuffix of block 1 from position 2:", block.suffix_version(0, 1).inorder())
print("middle window between blocks 1 and 3:", block.window(0, 2)[0])
print("median of 2..10:", block.query(2, 10))

# A range tree answers by selecting across the few sorted arrays that
# exactly cover the range.
tree = build_range_tree(labels, 2)
parts = canonical_decomposition(tree, 2, 10)
print("\ncanonical pieces for 2..10:", parts)
print("median from the pieces:", tree.query(2, 10))

# The table-driven index reads three cells per query.
table = build_median_constant(labels, 2)
print("\ntable index, 2..10:", table.query(2, 10))

data = random_list(4096, seed=3)
print("\nmean probes per query at n=4096")
for name, idx in [("block b=4", build_median_block(data, 4)), ("range tree b=2", build_range_tree(data, 2)),
                  ("tables k=5", build_median_constant(data, 5))]:
    counter = ProbeCounter()
    for i, j in uniform_ranges(4096, 300, seed=4):
        idx.query(i, j, counter)
    print(f"  {name:15s} {counter.probes / 300:8.1f}")
