"""Investment cost as a function of the tolerated shortage.

Capping the worst-case shed fraction instead of penalizing it turns the
solver into "cheapest design meeting the cap".  Sweeping the cap for two
disruption budgets traces the cost/shortage trade-off; costs can only fall
as the allowance grows and only rise with the budget.

    python3 demos/05_cost_vs_shortage_tradeoff.py
"""

from sndp import GeneratorSpec, generate_instance
from sndp.reporting import sweep_tradeoff, tradeoff_csv

inst = generate_instance(
    GeneratorSpec("replicated", num_nodes=5, replication=3, seed=1,
                  placement_seed=1))
print(f"instance: {len(inst.nodes)} nodes, {len(inst.edges)} edges "
      f"({len(inst.candidate_ids)} candidates)")

allowances = [0.0, 0.01, 0.05, 0.2, 1.0]
budgets = [1.0, 2.0]
points = sweep_tradeoff(inst, allowances, budgets)

print(f"\n{'allowed shed':>12} | " + " | ".join(f"budget {b:g}" for b in budgets))
for eps in allowances:
    row = [next(p for p in points
                if p.allowed_shed == eps and p.budget == b) for b in budgets]
    cells = " | ".join(
        f"{p.build_cost:8g}" if p.feasible else f"{'infeas':>8}" for p in row)
    print(f"{eps:12g} | {cells}")

for b in budgets:
    series = [p.build_cost for p in points if p.budget == b and p.feasible]
    assert all(x >= y - 1e-9 for x, y in zip(series, series[1:])), \
        "costs must not increase with the allowance"

print("\nCSV form:")
print(tradeoff_csv(points), end="")
