"""Range mode on a list: three ways to answer the same question.

Run with ``python tutorials/01_range_mode.py``.
"""
from rangequery import (ProbeCounter, build_mode_constant, build_mode_tradeoff, build_occurrence_index,
                        oracle_mode, range_count)
from rangequery.instances import random_list, uniform_ranges

labels = [3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5]
print("labels:", labels)

# The simplest building block counts one label inside a range using the
# sorted positions of that label.
occ = build_occurrence_index(labels)
print("positions of 5:", occ.positions[5], "| count of 5 in 1..11:", range_count(occ, 5, 1, 11))

# The block index stores the mode of every run of whole blocks.  A query
# only has to count the labels of its two partial blocks plus that stored mode.
tradeoff = build_mode_tradeoff(labels, block_size=4)
print("mode of 2..10:", tradeoff.query(2, 10), "(oracle:", oracle_mode(labels[1:10]), ")")

# With tiny blocks every answer becomes a table lookup.  Blocks whose
# answer tables coincide share storage.
constant = build_mode_constant(labels, k=2, verify=True)
print("constant-time index on the same list:", constant.query(2, 10))
print("distinct outcome tables:", constant.distinct_tables)

# Probe counters show how the two designs scale on a larger list.
print("\n      n  tradeoff probes/query  constant probes/query")
for n in (1024, 4096, 16384):
    data = random_list(n, seed=1)
    queries = uniform_ranges(n, 500, seed=2)
    row = []
    for idx in (build_mode_tradeoff(data, 0.5), build_mode_constant(data, 3)):
        counter = ProbeCounter()
        for i, j in queries:
            idx.query(i, j, counter)
        row.append(counter.probes / len(queries))
    print(f"{n:7d}  {row[0]:21.1f}  {row[1]:21.1f}")
