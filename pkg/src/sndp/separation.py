"""Separation oracles: worst budget-feasible attack against a fixed design.

Three routes:

* a general MILP over attack binaries and boxed recourse duals whose optimum
  is the maximal shed fraction;
* a min-cut MILP on the augmented network that looks for an attack leaving a
  cut below a demand threshold (faster, certifies survivability);
* exhaustive enumeration as the test oracle.

The general MILP linearizes the product of attack binaries with dual rows by
boxing the duals; the box is ample for instances with integer-valued
injections and capacities, and every result is cross-checked by re-solving
the recourse LP on the returned attack so an insufficient box surfaces as an
error instead of a silently wrong answer.
"""

from __future__ import annotations

import dataclasses
import itertools

from sndp.branch_and_bound import MilpModel, solve_milp
from sndp.instances import (
    AttackVector,
    DesignVector,
    EMPTY_ATTACK,
    Instance,
    total_demand,
)
from sndp.recourse import solve_recourse
from sndp.simplex import LpModel

SEV_TOL = 1e-6
DUAL_BOX = 2.0  # box on recourse duals inside the general MILP


class SeparationError(RuntimeError):
    """Oracle failure, including a detected insufficient dual box."""


@dataclasses.dataclass(frozen=True)
class SeparationResult:
    """Worst attack found (or none) and its severity.

    ``severity`` is the maximal shed fraction for the general and brute-force
    oracles, and the residual cut capacity for the min-cut oracle.
    """

    attack: AttackVector | None
    severity: float
    mode: str


def _built_edges(inst: Instance, design: DesignVector):
    return [e for e in inst.edges if e.id in design.built]


# ---------------------------------------------------------------------------
# General oracle: bilevel-to-MILP reformulation over boxed duals


def build_worst_attack_milp(inst: Instance, design: DesignVector) -> MilpModel:
    """MILP maximizing the recourse dual objective over budget-feasible attacks.

    Variables: one attack binary per built edge, one boxed potential per node
    and one boxed capacity price per direction of every built edge.  Rows for
    attacked directions are relaxed by the box radius so they never bind.
    """
    model = LpModel("max", name="worst-attack")
    built = _built_edges(inst, design)
    for e in built:
        model.add_var(f"attack[{e.id}]", lb=0.0, ub=1.0)
    for n in inst.nodes:
        model.add_var(f"potential[{n.id}]", lb=-DUAL_BOX, ub=DUAL_BOX, obj=n.b)
    for e in built:
        model.add_var(f"price[{e.id}:fwd]", lb=-DUAL_BOX, ub=0.0, obj=e.u)
        model.add_var(f"price[{e.id}:rev]", lb=-DUAL_BOX, ub=0.0, obj=e.u)
    for e in built:
        for tag, tail, head in (("fwd", e.i, e.j), ("rev", e.j, e.i)):
            model.add_row(
                f"dualrow[{e.id}:{tag}]",
                {f"potential[{tail}]": 1.0, f"potential[{head}]": -1.0,
                 f"price[{e.id}:{tag}]": 1.0, f"attack[{e.id}]": -DUAL_BOX},
                "<=", 0.0)
    model.add_row(
        "normalization",
        {f"potential[{n.id}]": n.b for n in inst.nodes if n.b != 0.0},
        "<=", 1.0)
    if built:
        model.add_row(
            "budget", {f"attack[{e.id}]": e.r for e in built}, "<=", inst.budget)
    binaries = tuple(model.var_id(f"attack[{e.id}]") for e in built)
    return MilpModel(model, binaries)


def find_worst_attack(inst: Instance, design: DesignVector, *,
                      deadline: float | None = None) -> SeparationResult:
    """Budget-feasible attack maximizing the shed fraction (general MILP)."""
    milp = build_worst_attack_milp(inst, design)
    sol = solve_milp(milp, deadline=deadline)
    if sol.status != "optimal":  # pragma: no cover - model is always feasible
        raise SeparationError(f"worst-attack MILP ended {sol.status}")
    attacked = frozenset(
        e.id for e in _built_edges(inst, design)
        if sol.value(f"attack[{e.id}]") > 0.5)
    attack = AttackVector(attacked)
    check = solve_recourse(inst, design, attack).shed
    if abs(check - sol.objective) > SEV_TOL:
        raise SeparationError(
            f"oracle severity {sol.objective:.9g} disagrees with recourse "
            f"value {check:.9g}; dual box {DUAL_BOX} is too small for this "
            "instance")
    return SeparationResult(attack=attack, severity=check, mode="general")


# ---------------------------------------------------------------------------
# Strong oracle: minimal residual cut on the augmented network


def build_mincut_attack_milp(inst: Instance, design: DesignVector) -> MilpModel:
    """MILP minimizing the post-attack cut capacity of the augmented network.

    Node-side binaries place each node on the source or terminal side;
    per-arc cut indicators are continuous in [0, 1] yet take binary values at
    any optimum.  Augmentation arcs cannot be attacked.
    """
    model = LpModel("min", name="mincut-attack")
    built = _built_edges(inst, design)
    for n in inst.nodes:
        model.add_var(f"side[{n.id}]", lb=0.0, ub=1.0)
    for e in built:
        model.add_var(f"attack[{e.id}]", lb=0.0, ub=1.0)
    for e in built:
        model.add_var(f"cut[{e.id}:fwd]", lb=0.0, ub=1.0, obj=e.u)
        model.add_var(f"cut[{e.id}:rev]", lb=0.0, ub=1.0, obj=e.u)
    for n in inst.nodes:
        if n.b > 0:
            model.add_var(f"cut[source:{n.id}]", lb=0.0, ub=1.0, obj=n.b)
        elif n.b < 0:
            model.add_var(f"cut[sink:{n.id}]", lb=0.0, ub=1.0, obj=-n.b)
    for e in built:
        for tag, tail, head in (("fwd", e.i, e.j), ("rev", e.j, e.i)):
            model.add_row(
                f"cover[{e.id}:{tag}]",
                {f"side[{tail}]": 1.0, f"side[{head}]": -1.0,
                 f"cut[{e.id}:{tag}]": 1.0, f"attack[{e.id}]": 1.0},
                ">=", 0.0)
    for n in inst.nodes:
        # source sits on side 0, terminal on side 1
        if n.b > 0:
            model.add_row(f"cover[source:{n.id}]",
                          {f"side[{n.id}]": -1.0, f"cut[source:{n.id}]": 1.0},
                          ">=", 0.0)
        elif n.b < 0:
            model.add_row(f"cover[sink:{n.id}]",
                          {f"side[{n.id}]": 1.0, f"cut[sink:{n.id}]": 1.0},
                          ">=", 1.0)
    if built:
        model.add_row(
            "budget", {f"attack[{e.id}]": e.r for e in built}, "<=", inst.budget)
    binaries = tuple(
        itertools.chain(
            (model.var_id(f"side[{n.id}]") for n in inst.nodes),
            (model.var_id(f"attack[{e.id}]") for e in built)))
    return MilpModel(model, binaries)


def find_mincut_attack(inst: Instance, design: DesignVector,
                       threshold: float | None = None, *,
                       deadline: float | None = None) -> SeparationResult:
    """Attack minimizing the residual cut capacity, reported when the cut
    drops below ``threshold`` (default: total demand)."""
    if threshold is None:
        threshold = total_demand(inst)
    milp = build_mincut_attack_milp(inst, design)
    sol = solve_milp(milp, deadline=deadline)
    if sol.status != "optimal":  # pragma: no cover - model is always feasible
        raise SeparationError(f"min-cut attack MILP ended {sol.status}")
    severity = sol.objective
    if severity >= threshold - SEV_TOL:
        return SeparationResult(attack=None, severity=severity, mode="strong")
    attacked = frozenset(
        e.id for e in _built_edges(inst, design)
        if sol.value(f"attack[{e.id}]") > 0.5)
    return SeparationResult(attack=AttackVector(attacked), severity=severity,
                            mode="strong")


# ---------------------------------------------------------------------------
# Brute force: the test oracle


def budget_attacks(inst: Instance, edge_ids, budget: float, *,
                   cap: int = 10 ** 6):
    """All nonempty attacks over ``edge_ids`` within the budget, ordered by
    cardinality then lexicographic edge ids."""
    ids = sorted(edge_ids)
    costs = sorted(inst.edge(e).r for e in ids)
    prefix = list(itertools.accumulate(costs))
    yielded = 0
    for k in range(1, len(ids) + 1):
        if prefix[k - 1] > budget + 1e-9:
            break  # even the cheapest k-subset exceeds the budget
        for combo in itertools.combinations(ids, k):
            if sum(inst.edge(e).r for e in combo) <= budget + 1e-9:
                yielded += 1
                if yielded > cap:
                    raise SeparationError(f"attack enumeration exceeds {cap}")
                yield AttackVector(frozenset(combo))


def find_worst_attack_bruteforce(inst: Instance, design: DesignVector, *,
                                 cap: int = 10 ** 6) -> SeparationResult:
    """Exact worst attack by enumerating every budget-feasible disruption."""
    best_attack = EMPTY_ATTACK
    best = solve_recourse(inst, design, EMPTY_ATTACK).shed
    for attack in budget_attacks(inst, design.built, inst.budget, cap=cap):
        shed = solve_recourse(inst, design, attack).shed
        if shed > best + SEV_TOL:
            best, best_attack = shed, attack
    return SeparationResult(attack=best_attack, severity=best, mode="bruteforce")
