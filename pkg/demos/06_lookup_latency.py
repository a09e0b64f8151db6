#!/usr/bin/env python3
"""Label-lookup latency: the hash-indexed store against the naive
full-scan baseline. Desk-scale here; `cog bench kg --nodes 1000000`
runs the full table.

Run:  python3 demos/06_lookup_latency.py
"""

from cogkg.bench import bench_kg, format_bench_rows

NODES = 100_000

print(f"=== integrated backend, {NODES:,} nodes ===")
rows = bench_kg(NODES, [1, 10, 100, 1000, 10000], backend="integrated")
print(format_bench_rows(rows))

print(f"\n=== naive full-scan baseline, {NODES:,} nodes ===")
naive = bench_kg(NODES, [1, 10, 100], backend="naive")
print(format_bench_rows(naive))

ratio = naive[-1].mean_us_per_call / rows[2].mean_us_per_call
print(f"\nper-call ratio at 100 calls: ~{ratio:,.0f}x in favor of the index")
print("(every naive call re-examines all", f"{NODES:,}", "nodes)")
