"""Timing table across the three solvers, with honest failure cells.

One row per (instance, method): the scenario count (a ">" prefix marks a
lower bound when the space exceeds the enumeration cap), the objective, and
a per-phase timing breakdown.  Cells that blow the per-cell time budget are
recorded as "x" rather than dropped.

    python3 demos/06_benchmark_table.py
"""

import dataclasses

from sndp import GeneratorSpec, generate_instance
from sndp.reporting import bench, bench_csv

suite = []
for seed in (1, 2, 3):
    inst = generate_instance(
        GeneratorSpec("replicated", num_nodes=4, replication=2, seed=seed,
                      placement_seed=seed))
    suite.append((f"ring4-{seed}", dataclasses.replace(inst, budget=1.0)))

# a deliberately oversized instance: the scenario count overflows the cap
# and the tight per-cell budget forces "x" cells
monster = generate_instance(
    GeneratorSpec("replicated", num_nodes=40, replication=6, seed=9,
                  placement_seed=9))
suite.append(("monster", dataclasses.replace(monster, budget=4.0)))

rows = bench(suite, methods=("ef", "bd", "dsg"), time_limit=5.0)
print(bench_csv(rows), end="")

finished = [r for r in rows if r.solution is not None]
print(f"\n{len(finished)} of {len(rows)} cells finished inside the budget")
for name in {r.instance for r in finished}:
    objs = {round(r.solution.objective, 6) for r in finished
            if r.instance == name}
    assert len(objs) == 1, f"methods disagree on {name}"
print("all finished methods agree per instance")
