"""Exhaustive scans over small graphs, and the vectorised screen behind them."""

# %%
from collections import Counter

import numpy as np

from szeged_wiener.batch import screen_arrays
from szeged_wiener.enumeration import GraphFilter, builtin_enumerate, scan
from szeged_wiener.graph_core import encode_graph6

two = GraphFilter(two_connected=True)

print("== 1. how tight is eta >= 2n - 6 on 2-connected graphs? ==")
for n in range(4, 8):
    report = scan(builtin_enumerate(n, two), "main1")
    print(f"   n={n}: {report.total} graphs, {report.failures} failures, min eta {report.minimum} (bound {2 * n - 6})")

# %%
print("== 2. small graphs below 2n: why the n >= 10 clause exists ==")
report = scan([g for n in range(5, 8) for g in builtin_enumerate(n, two)], "conjecture4_relaxed")
print("   violators:", report.failures)
for g6, observed in report.counterexamples[:5]:
    print("   ", g6, observed)

# %%
print("== 3. the numpy screen on one batch ==")
records = [encode_graph6(g) for g in builtin_enumerate(7, two)]
n, adj, conn, two_conn, complete, values = screen_arrays(records)
print("   batch shape:", adj.shape, " all 2-connected:", bool(two_conn.all()))
print("   eta histogram (lowest five):", sorted(Counter(values.tolist()).items())[:5])
print("   mean eta:", float(np.mean(values)))
