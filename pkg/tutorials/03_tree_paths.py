"""Mode and median of the labels along a path in a tree.

Run with ``python tutorials/03_tree_paths.py``.
"""
from rangequery import LabeledTree, build_tree_median, build_tree_mode, oracle_path, oracle_path_labels
from rangequery.instances import make_tree, node_pairs

# Node ids are 0-based here; node 0 is the root.
#
#          0:3
#         /    \
#      1:1      2:5
#     /   \        \
#   3:5   4:1      5:5
#                    \
#                    6:3
tree = LabeledTree(parent=[-1, 0, 0, 1, 1, 2, 5], labels=[3, 1, 5, 5, 1, 5, 3])
print("path 3 -> 6:", oracle_path(tree, 3, 6), "labels", oracle_path_labels(tree, 3, 6))

mode = build_tree_mode(tree)
median = build_tree_median(tree)
print("mode:", mode.query(3, 6), "| median:", median.query(3, 6))

# The median index splits the tree at centroids; each node stores its path
# to the centroid of every component it belongs to.
print("decomposition depth:", median.depth)
for level, lv in enumerate(median.levels):
    print(f"  level {level}: centroids {lv.centroids}")

# The same works on any shape.  Stars are the awkward case for the mode
# index, which first rewrites high-degree nodes into small binary gadgets.
for shape in ("path", "star", "caterpillar", "random"):
    t = make_tree(shape, 500, seed=1)
    m, d = build_tree_mode(t), build_tree_median(t)
    u, v = node_pairs(t.n, 1, seed=2)[0]
    print(f"{shape:12s} depth={d.depth:2d}  mode({u},{v})={tuple(m.query(u, v))}  median={tuple(d.query(u, v))}")
