"""Decomposition drivers: restricted master, explicit Benders, delayed scenarios.

Both drivers alternate a design MILP (build binaries plus a worst-shed
variable bounded from below by the optimality cuts found so far) with
separation:

* the explicit driver re-solves the recourse LP of every enumerated scenario
  each round and adds all violated cuts;
* the delayed driver asks an oracle for one violated scenario, lists it, and
  re-checks only the listed scenarios, so the exponential scenario space is
  searched implicitly.

Two objective modes.  Penalty mode (the default) minimizes build cost plus
penalty times the worst shed.  Shortage-cap mode bounds the worst shed by a
given fraction and minimizes build cost alone, which is what the
investment-versus-shortage sweeps need.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import time
from concurrent.futures import ThreadPoolExecutor

from sndp.branch_and_bound import MilpModel, SolveTimeout, solve_milp
from sndp.instances import (
    AttackVector,
    DesignVector,
    EMPTY_ATTACK,
    Instance,
    restrict_attack,
    total_demand,
    validate,
)
from sndp.maxflow import feasible_full_demand
from sndp.recourse import BendersCut, make_cut, solve_recourse
from sndp.separation import (
    budget_attacks,
    find_mincut_attack,
    find_worst_attack,
)
from sndp.simplex import LpModel

VIOLATION_TOL = 1e-6
DEFAULT_SCENARIO_CAP = 10 ** 7


class ScenarioCapError(RuntimeError):
    """The enumerated scenario space exceeds the configured cap."""


class InfeasibleDesignError(RuntimeError):
    """No design satisfies the shortage cap."""


@dataclasses.dataclass
class MasterState:
    """Mutable driver state: cut pool, scenario list and phase timers."""

    cuts: list[BendersCut] = dataclasses.field(default_factory=list)
    scenarios: list[AttackVector] = dataclasses.field(default_factory=list)
    t: int = 0
    incumbent: tuple[DesignVector, float] | None = None
    timers: dict[str, float] = dataclasses.field(
        default_factory=lambda: {"rmp": 0.0, "ndp": 0.0, "sp": 0.0})
    cut_keys: set = dataclasses.field(default_factory=set)
    log: list[dict] = dataclasses.field(default_factory=list)

    def add_cut(self, cut: BendersCut) -> bool:
        key = cut.key()
        if key in self.cut_keys:
            return False
        self.cut_keys.add(key)
        self.cuts.append(cut)
        return True

    def add_scenario(self, attack: AttackVector) -> bool:
        if attack in self.scenarios:
            return False
        self.scenarios.append(attack)
        self.t += 1
        return True

    def record(self, master_obj, severity, cuts_added) -> None:
        self.log.append({
            "t": self.t,
            "master_objective": master_obj,
            "oracle_severity": severity,
            "scenarios": len(self.scenarios),
            "cuts_added": cuts_added,
            "rmp_seconds": round(self.timers["rmp"], 6),
            "ndp_seconds": round(self.timers["ndp"], 6),
            "sp_seconds": round(self.timers["sp"], 6),
        })


@dataclasses.dataclass(frozen=True)
class DesignSolution:
    """Final design with objective decomposition and solve statistics."""

    design: DesignVector
    objective: float
    worst_shed: float
    build_cost: float
    iterations: int
    scenarios_evaluated: int
    timings: dict[str, float]
    method: str
    worst_attack: AttackVector | None = None
    iteration_log: tuple[dict, ...] = ()


class _Deadline:
    def __init__(self, time_limit: float | None):
        self.stamp = None if time_limit is None else time.monotonic() + time_limit

    def check(self, where: str) -> None:
        if self.stamp is not None and time.monotonic() > self.stamp:
            raise SolveTimeout(f"time limit expired during {where}")


def _require_valid(inst: Instance) -> None:
    report = validate(inst)
    if not report.ok:
        raise ValueError("invalid instance: " + "; ".join(report.findings))


def build_cost(inst: Instance, design: DesignVector) -> float:
    return sum(e.c for e in inst.edges if e.id in design.built and not e.existing)


# ---------------------------------------------------------------------------
# Scenario enumeration


def enumerate_scenarios(inst: Instance, *, cap: int = DEFAULT_SCENARIO_CAP):
    """Every nonempty budget-feasible attack, by cardinality then edge ids."""
    return budget_attacks(inst, inst.edge_index.keys(), inst.budget, cap=cap)


def count_scenarios(inst: Instance, *, cap: int = DEFAULT_SCENARIO_CAP
                    ) -> tuple[int, bool]:
    """(count, exact) pair; count is a lower bound when exact is False.

    Uniform attack costs admit a closed-form count; otherwise enumeration
    stops at the cap and reports a lower bound.
    """
    costs = [e.r for e in inst.edges]
    if not costs or inst.budget < min(costs) - 1e-9:
        return 0, True
    if max(costs) - min(costs) <= 1e-12:
        per = costs[0]
        most = min(len(costs), int((inst.budget + 1e-9) / per))
        count = sum(math.comb(len(costs), k) for k in range(1, most + 1))
        if count > cap:
            return cap, False
        return count, True
    count = 0
    try:
        for _ in budget_attacks(inst, inst.edge_index.keys(), inst.budget,
                                cap=cap):
            count += 1
    except Exception:
        return cap, False
    return count, True


# ---------------------------------------------------------------------------
# Restricted master problem


def build_master(inst: Instance, cuts, *, shed_cap: float | None = None
                 ) -> MilpModel:
    """Design MILP: build binaries, a worst-shed variable, one row per cut.

    Existing edges are fixed built.  In shortage-cap mode the objective drops
    the penalty term and the worst-shed variable is capped.
    """
    lp = LpModel("min", name="master")
    for e in inst.edges:
        lb = 1.0 if e.existing else 0.0
        lp.add_var(f"build[{e.id}]", lb=lb, ub=1.0, obj=e.c)
    lp.add_var("worst_shed", lb=0.0,
               ub=shed_cap if shed_cap is not None else math.inf,
               obj=0.0 if shed_cap is not None else inst.penalty)
    for k, cut in enumerate(cuts):
        coeffs: dict[str, float] = {"worst_shed": -1.0}
        rhs = -cut.constant
        for eid, coef in cut.coefficients.items():
            if coef != 0.0:
                coeffs[f"build[{eid}]"] = coef
            if eid in cut.attack.disrupted:
                rhs += coef
        lp.add_row(f"cut[{k}]", coeffs, "<=", rhs)
    binaries = tuple(lp.var_id(f"build[{e.id}]") for e in inst.edges)
    return MilpModel(lp, binaries)


def _solve_master(inst, state, shed_cap, deadline):
    t0 = time.perf_counter()
    milp = build_master(inst, state.cuts, shed_cap=shed_cap)
    sol = solve_milp(milp, deadline=deadline.stamp)
    state.timers["rmp"] += time.perf_counter() - t0
    if sol.status != "optimal":
        raise InfeasibleDesignError(
            "no design satisfies the shortage cap")
    built = frozenset(
        e.id for e in inst.edges if sol.value(f"build[{e.id}]") > 0.5)
    return DesignVector(built), sol.value("worst_shed"), sol.objective


def _recheck_scenarios(inst, state, design, threshold, threads, deadline):
    """Re-solve listed scenarios at the current design and add violated cuts.

    Scenarios whose surviving network still routes all demand are screened
    out with a max-flow solve before any LP runs.  Returns the number of
    cuts added, the worst shed seen and the attack that attains it.
    """
    t0 = time.perf_counter()
    effective = [restrict_attack(s, design) for s in state.scenarios]

    def evaluate(attack):
        deadline.check("scenario re-check")
        if feasible_full_demand(inst, design, attack):
            return None  # shed 0 can never violate a nonnegative bound
        return solve_recourse(inst, design, attack)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(evaluate, effective))
    else:
        results = [evaluate(a) for a in effective]
    added = 0
    worst_seen, worst_attack = 0.0, None
    for scenario, eff, result in zip(state.scenarios, effective, results):
        if result is None:
            continue
        if result.shed > worst_seen + 1e-12:
            worst_seen, worst_attack = result.shed, eff
        if result.shed <= threshold + VIOLATION_TOL:
            continue
        if state.add_cut(make_cut(result, inst, scenario)):
            added += 1
    state.timers["sp"] += time.perf_counter() - t0
    return added, worst_seen, worst_attack


def _finish(inst, state, design, worst_shed, worst_attack, method):
    cost = build_cost(inst, design)
    total = state.timers["rmp"] + state.timers["ndp"] + state.timers["sp"]
    timings = dict(state.timers)
    timings["total"] = total
    return DesignSolution(
        design=design, objective=cost + inst.penalty * worst_shed,
        worst_shed=worst_shed, build_cost=cost, iterations=state.t,
        scenarios_evaluated=len(state.scenarios), timings=timings,
        method=method, worst_attack=worst_attack,
        iteration_log=tuple(state.log))


# ---------------------------------------------------------------------------
# Explicit Benders over the enumerated scenario list


def solve_benders(inst: Instance, *, shed_cap: float | None = None,
                  scenario_cap: int = DEFAULT_SCENARIO_CAP,
                  time_limit: float | None = None,
                  threads: int = 1) -> DesignSolution:
    """Alternate master solves with a full scenario sweep until no cut is
    violated.  Every budget-feasible attack is enumerated up front."""
    _require_valid(inst)
    deadline = _Deadline(time_limit)
    state = MasterState()
    try:
        scenarios = list(enumerate_scenarios(inst, cap=scenario_cap))
    except Exception as exc:
        raise ScenarioCapError(str(exc)) from exc
    if not scenarios:
        # nothing is attackable; one empty scenario bounds the nominal shed
        scenarios = [EMPTY_ATTACK]
    state.scenarios.extend(scenarios)
    state.t = len(scenarios)

    while True:
        deadline.check("master solve")
        design, shed_var, master_obj = _solve_master(
            inst, state, shed_cap, deadline)
        threshold = shed_cap if shed_cap is not None else shed_var
        added, worst_seen, worst_attack = _recheck_scenarios(
            inst, state, design, threshold, threads, deadline)
        state.record(master_obj, None, added)
        if added == 0:
            return _finish(inst, state, design, worst_seen, worst_attack, "bd")


# ---------------------------------------------------------------------------
# Delayed scenario generation with the implicit oracle


@dataclasses.dataclass(frozen=True)
class _SeparationRound:
    violated: AttackVector | None   # attack to list, or None to terminate
    severity: float                 # oracle objective, for the iteration log
    exact_worst: float | None       # exact worst shed if this round proved it
    exact_attack: AttackVector | None


def _separate(inst, design, shed_var, shed_cap, oracle, state, deadline
              ) -> _SeparationRound:
    """One oracle round against the incumbent design.

    The min-cut oracle runs first (unless the exact oracle was forced) and
    separates on a demand threshold.  An attack it returns is accepted only
    when its recourse shed actually violates the current bound; otherwise the
    exact oracle decides, because a cut below total demand lower-bounds the
    shed but does not maximize it.
    """
    demand = total_demand(inst)
    bound = shed_cap if shed_cap is not None else shed_var
    threshold = (1.0 - bound) * demand
    t0 = time.perf_counter()
    try:
        if oracle in ("auto", "strong"):
            result = find_mincut_attack(inst, design, threshold,
                                        deadline=deadline.stamp)
            if result.attack is None and bound <= VIOLATION_TOL:
                # every attack leaves a cut covering total demand, which is
                # exactly "no attack sheds anything": certified
                return _SeparationRound(None, result.severity, 0.0, None)
            if result.attack is not None:
                shed = solve_recourse(
                    inst, design, restrict_attack(result.attack, design)).shed
                if shed > bound + VIOLATION_TOL:
                    return _SeparationRound(result.attack, result.severity,
                                            None, None)
            # For a positive shed bound the cut threshold cannot certify
            # termination (scaling at the balance rows lets stranded supply
            # push the shed above the cut ratio), and a returned attack need
            # not maximize the shed: the exact oracle decides.
        result = find_worst_attack(inst, design, deadline=deadline.stamp)
        if result.severity > bound + VIOLATION_TOL:
            return _SeparationRound(result.attack, result.severity,
                                    result.severity, result.attack)
        return _SeparationRound(None, result.severity, result.severity,
                                result.attack)
    finally:
        state.timers["ndp"] += time.perf_counter() - t0


def solve_delayed(inst: Instance, *, oracle: str = "auto",
                  shed_cap: float | None = None,
                  time_limit: float | None = None,
                  threads: int = 1) -> DesignSolution:
    """Delayed scenario generation: list scenarios only when an oracle call
    proves them violated, then cut from the listed scenarios until the oracle
    certifies the incumbent design."""
    if oracle not in ("auto", "strong", "general"):
        raise ValueError(f"unknown oracle {oracle!r}")
    _require_valid(inst)
    deadline = _Deadline(time_limit)
    state = MasterState()

    while True:
        deadline.check("master solve")
        design, shed_var, master_obj = _solve_master(
            inst, state, shed_cap, deadline)
        state.incumbent = (design, shed_var)
        round_ = _separate(
            inst, design, shed_var, shed_cap, oracle, state, deadline)
        if round_.violated is None:
            state.record(master_obj, round_.severity, 0)
            worst_shed = round_.exact_worst if round_.exact_worst is not None \
                else 0.0
            worst_attack = (
                restrict_attack(round_.exact_attack, design)
                if round_.exact_attack is not None
                and worst_shed > VIOLATION_TOL else None)
            return _finish(inst, state, design, worst_shed, worst_attack, "dsg")
        state.add_scenario(round_.violated)
        threshold = shed_cap if shed_cap is not None else shed_var
        added, _, _ = _recheck_scenarios(
            inst, state, design, threshold, threads, deadline)
        state.record(master_obj, round_.severity, added)
        if added == 0:
            raise RuntimeError(
                "separation reported a violated scenario but no cut was "
                "violated; numerical stall")


# ---------------------------------------------------------------------------
# Exhaustive reference: enumerate designs x attacks


def solve_exhaustive(inst: Instance, *, design_cap: int = 4096,
                     scenario_cap: int = 4096,
                     shed_cap: float | None = None) -> DesignSolution:
    """Ground-truth solver for small instances: try every candidate design
    against every budget-feasible attack."""
    _require_valid(inst)
    candidates = sorted(inst.candidate_ids)
    if 2 ** len(candidates) > design_cap:
        raise ValueError(
            f"too many designs for exhaustive search (2^{len(candidates)})")
    scenarios = list(enumerate_scenarios(inst, cap=scenario_cap))
    t0 = time.perf_counter()
    best = None
    for k in range(len(candidates) + 1):
        for combo in itertools.combinations(candidates, k):
            design = DesignVector(inst.existing_ids | frozenset(combo))
            worst = solve_recourse(inst, design, EMPTY_ATTACK).shed
            worst_attack = None
            for s in scenarios:
                eff = restrict_attack(s, design)
                if feasible_full_demand(inst, design, eff):
                    continue
                shed = solve_recourse(inst, design, eff).shed
                if shed > worst:
                    worst, worst_attack = shed, eff
            if shed_cap is not None and worst > shed_cap + VIOLATION_TOL:
                continue
            cost = build_cost(inst, design)
            ranking = cost if shed_cap is not None \
                else cost + inst.penalty * worst
            if best is None or ranking < best[0] - 1e-12:
                best = (ranking, design, worst, worst_attack, cost)
    if best is None:
        raise InfeasibleDesignError("no design satisfies the shortage cap")
    _, design, worst, worst_attack, cost = best
    elapsed = time.perf_counter() - t0
    return DesignSolution(
        design=design, objective=cost + inst.penalty * worst,
        worst_shed=worst, build_cost=cost, iterations=0,
        scenarios_evaluated=len(scenarios),
        timings={"rmp": 0.0, "ndp": 0.0, "sp": elapsed, "total": elapsed},
        method="brute", worst_attack=worst_attack)
