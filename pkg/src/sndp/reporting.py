"""Verification postpass, benchmark tables and the cost-versus-shortage sweep.

* ``verify_design`` certifies a design against every budget-feasible attack,
  by exact enumeration when the scenario space is small and through the
  min-cut oracle otherwise.
* ``bench`` runs each solver on each instance and renders one CSV row per
  cell with a per-phase timing breakdown; cells that exceed the timeout are
  marked "x" and scenario counts beyond the cap are written as ">N" lower
  bounds.
* ``sweep_tradeoff`` maps the minimal build cost as a function of the
  allowed shortage fraction and the disruption budget.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor

from sndp.branch_and_bound import SolveTimeout
from sndp.decomposition import (
    DesignSolution,
    InfeasibleDesignError,
    ScenarioCapError,
    build_cost,
    count_scenarios,
    solve_benders,
    solve_delayed,
)
from sndp.extensive import solve_extensive
from sndp.instances import (
    AttackVector,
    DesignVector,
    EMPTY_ATTACK,
    Instance,
    restrict_attack,
    total_demand,
)
from sndp.maxflow import feasible_full_demand
from sndp.recourse import solve_recourse
from sndp.separation import budget_attacks, find_mincut_attack, find_worst_attack

PASS_TOL = 1e-7
DEFAULT_VERIFY_CAP = 20000
DEFAULT_CELL_TIMEOUT = 600.0

CSV_COLUMNS = ("instance", "N", "k", "scenarios", "method", "objective",
               "build_cost", "theta", "iters", "scen_evaluated", "t_total",
               "t_rmp", "t_ndp", "t_sp")

METHOD_SOLVERS = {
    "ef": solve_extensive,
    "bd": solve_benders,
    "dsg": solve_delayed,
}


@dataclasses.dataclass(frozen=True)
class VerificationReport:
    """Outcome of checking one design against the whole attack space."""

    design: DesignVector
    attacks_enumerated: int
    worst_attack: AttackVector | None
    worst_shed: float
    allowed_shed: float
    passed: bool
    exact: bool
    note: str = ""


@dataclasses.dataclass(frozen=True)
class BenchRow:
    instance: str
    edges: int
    budget: float
    scenario_count: int
    scenario_exact: bool
    method: str
    solution: DesignSolution | None
    failure: str = ""  # "" | "timeout" | "cap" | "infeasible"

    def as_csv(self) -> list[str]:
        scen = str(self.scenario_count) if self.scenario_exact \
            else f">{self.scenario_count}"
        budget = f"{self.budget:g}"
        if self.solution is None:
            return [self.instance, str(self.edges), budget, scen, self.method,
                    "", "", "", "", "", "x", "x", "x", "x"]
        s = self.solution
        return [
            self.instance, str(self.edges), budget, scen, self.method,
            f"{s.objective:.9g}", f"{s.build_cost:.9g}", f"{s.worst_shed:.9g}",
            str(s.iterations), str(s.scenarios_evaluated),
            f"{s.timings['total']:.3f}", f"{s.timings['rmp']:.3f}",
            f"{s.timings['ndp']:.3f}", f"{s.timings['sp']:.3f}",
        ]


@dataclasses.dataclass(frozen=True)
class TradeoffPoint:
    allowed_shed: float
    budget: float
    build_cost: float | None
    feasible: bool
    error: str = ""


def verify_design(inst: Instance, design: DesignVector, *,
                  allowed_shed: float | None = None,
                  enumeration_cap: int = DEFAULT_VERIFY_CAP
                  ) -> VerificationReport:
    """Certify the worst shed of a design over all budget-feasible attacks.

    Small attack spaces are enumerated exactly, with each attack screened by
    a max-flow solve before any LP runs.  Larger spaces are decided by the
    separation oracles instead: the min-cut oracle settles full-demand
    survivability outright, and the exact worst-attack oracle prices any
    positive shortage.
    """
    eps = inst.allowed_shed if allowed_shed is None else allowed_shed
    built = design.built
    count, exact = count_scenarios_restricted(inst, built, cap=enumeration_cap)
    nominal = solve_recourse(inst, design, EMPTY_ATTACK).shed
    worst, worst_attack = nominal, None
    if exact:
        evaluated = 0
        for attack in budget_attacks(inst, built, inst.budget,
                                     cap=enumeration_cap):
            evaluated += 1
            if feasible_full_demand(inst, design, attack):
                continue
            shed = solve_recourse(inst, design, attack).shed
            if shed > worst + 1e-12:
                worst, worst_attack = shed, attack
        return VerificationReport(
            design=design, attacks_enumerated=evaluated,
            worst_attack=worst_attack, worst_shed=worst, allowed_shed=eps,
            passed=worst <= eps + PASS_TOL, exact=True)
    # implicit path: exact for eps == 0, certificate-based otherwise
    demand = total_demand(inst)
    result = find_mincut_attack(inst, design, (1.0 - eps) * demand)
    if result.attack is None and eps <= PASS_TOL:
        return VerificationReport(
            design=design, attacks_enumerated=0, worst_attack=None,
            worst_shed=max(nominal, 0.0), allowed_shed=eps,
            passed=nominal <= eps + PASS_TOL, exact=True,
            note="certified by the min-cut separation oracle")
    oracle = find_worst_attack(inst, design)
    attack = oracle.attack if oracle.severity > PASS_TOL else None
    return VerificationReport(
        design=design, attacks_enumerated=0,
        worst_attack=restrict_attack(attack, design) if attack else None,
        worst_shed=oracle.severity, allowed_shed=eps,
        passed=oracle.severity <= eps + PASS_TOL, exact=True,
        note="worst case found by the exact separation oracle")


def count_scenarios_restricted(inst: Instance, edge_ids, *, cap: int
                               ) -> tuple[int, bool]:
    """Count budget-feasible nonempty attacks over a subset of edges."""
    costs = sorted(inst.edge(e).r for e in edge_ids)
    if not costs or inst.budget < costs[0] - 1e-9:
        return 0, True
    if costs[-1] - costs[0] <= 1e-12:
        per = costs[0]
        most = min(len(costs), int((inst.budget + 1e-9) / per))
        count = sum(math.comb(len(costs), k) for k in range(1, most + 1))
        return (count, True) if count <= cap else (cap, False)
    count = 0
    try:
        for _ in budget_attacks(inst, edge_ids, inst.budget, cap=cap):
            count += 1
    except Exception:
        return cap, False
    return count, True


def sweep_tradeoff(inst: Instance, allowed_sheds, budgets, *,
                   time_limit: float | None = None) -> list[TradeoffPoint]:
    """Minimal build cost per (allowed shed, budget) pair, one capped solve
    each; per-point failures are recorded and the sweep continues."""
    points = []
    for budget in budgets:
        for eps in allowed_sheds:
            trial = dataclasses.replace(inst, budget=float(budget),
                                        allowed_shed=float(eps))
            try:
                sol = solve_delayed(trial, shed_cap=float(eps),
                                    time_limit=time_limit)
                points.append(TradeoffPoint(
                    allowed_shed=float(eps), budget=float(budget),
                    build_cost=sol.build_cost, feasible=True))
            except InfeasibleDesignError:
                points.append(TradeoffPoint(
                    allowed_shed=float(eps), budget=float(budget),
                    build_cost=None, feasible=False, error="infeasible"))
            except (SolveTimeout, ScenarioCapError, RuntimeError) as exc:
                points.append(TradeoffPoint(
                    allowed_shed=float(eps), budget=float(budget),
                    build_cost=None, feasible=False, error=str(exc)))
    return points


def bench(instances, methods=("ef", "bd", "dsg"), *,
          time_limit: float = DEFAULT_CELL_TIMEOUT,
          scenario_cap: int = 10 ** 7, threads: int = 1) -> list[BenchRow]:
    """One solver run per (instance, method) cell.

    ``instances`` is an iterable of (name, Instance) pairs.  Cells run
    sequentially by default so the timing columns are clean; ``threads > 1``
    fans cells out to a thread pool and downgrades the timings to indicative.
    """
    cells = []
    for name, inst in instances:
        count, exact = count_scenarios(inst, cap=scenario_cap)
        for method in methods:
            if method not in METHOD_SOLVERS:
                raise ValueError(f"unknown method {method!r}")
            cells.append((name, inst, count, exact, method))

    def run(cell):
        name, inst, count, exact, method = cell
        solver = METHOD_SOLVERS[method]
        try:
            solution = solver(inst, time_limit=time_limit)
            failure = ""
        except SolveTimeout:
            solution, failure = None, "timeout"
        except ScenarioCapError:
            solution, failure = None, "cap"
        except InfeasibleDesignError:
            solution, failure = None, "infeasible"
        except RuntimeError as exc:
            solution, failure = None, f"error: {exc}"
        return BenchRow(
            instance=name, edges=len(inst.edges), budget=inst.budget,
            scenario_count=count, scenario_exact=exact, method=method,
            solution=solution, failure=failure)

    if threads > 1:
        warnings.warn("parallel bench cells share the interpreter: the "
                      "timing columns are indicative only")
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(run, cells))
    return [run(cell) for cell in cells]


def bench_csv(rows) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.as_csv())
    return buffer.getvalue()


def tradeoff_csv(points) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(("allowed_shed", "budget", "build_cost", "feasible",
                     "error"))
    for p in points:
        writer.writerow((
            f"{p.allowed_shed:g}", f"{p.budget:g}",
            "" if p.build_cost is None else f"{p.build_cost:.9g}",
            "yes" if p.feasible else "no", p.error))
    return buffer.getvalue()


# ---------------------------------------------------------------------------
# JSON serialization of solve results


def solution_to_dict(sol: DesignSolution) -> dict:
    """JSON-ready rendering; timings live in their own non-deterministic key."""
    return {
        "method": sol.method,
        "objective": sol.objective,
        "build_cost": sol.build_cost,
        "worst_shed": sol.worst_shed,
        "design": {"built": sorted(sol.design.built)},
        "worst_attack": sorted(sol.worst_attack.disrupted)
        if sol.worst_attack is not None else None,
        "iterations": sol.iterations,
        "scenarios_evaluated": sol.scenarios_evaluated,
        "timings": {k: round(v, 6) for k, v in sol.timings.items()},
    }


def verification_to_dict(report: VerificationReport) -> dict:
    return {
        "design": {"built": sorted(report.design.built)},
        "attacks_enumerated": report.attacks_enumerated,
        "worst_attack": sorted(report.worst_attack.disrupted)
        if report.worst_attack is not None else None,
        "worst_shed": report.worst_shed,
        "allowed_shed": report.allowed_shed,
        "passed": report.passed,
        "exact": report.exact,
        "note": report.note,
    }


def iteration_log_lines(sol: DesignSolution) -> str:
    """Driver iteration records as JSON lines."""
    return "".join(json.dumps(rec, sort_keys=True) + "\n"
                   for rec in sol.iteration_log)
