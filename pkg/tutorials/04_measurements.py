"""Produce a small measurement table and read the doubling ratios.

Run with ``python tutorials/04_measurements.py``.  The same data is available
from the command line via ``rangequery bench``.
"""
from rangequery.bench import rows_to_csv, run_bench

rows = run_bench(["mode-tradeoff", "mode-constant", "median-block", "median-constant"],
                 [1024, 4096], queries=300, seed=0)
print(rows_to_csv(rows))

# probes_ratio compares each row with the previous size of the same kind.
# Quadrupling n roughly doubles the tradeoff index's work and leaves the
# table-driven indexes at exactly 1.0.
for r in rows:
    if r.probes_ratio is not None:
        print(f"{r.kind:16s} probes x{r.probes_ratio:.2f}  words x{r.words_ratio:.2f}")
