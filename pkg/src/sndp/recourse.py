"""Per-scenario recourse LP: minimal shed fraction, duals and Benders cuts.

Given a design and an attack, the recourse problem scales every injection by
a common factor (1 - shed) and routes flow on the surviving arcs.  Its row
duals price one unit of relaxation of each flow-balance and capacity row and
assemble into an optimality cut valid for every design.
"""

from __future__ import annotations

import dataclasses

from sndp.instances import (
    AttackVector,
    DesignVector,
    Instance,
    attack_consistent,
)
from sndp.simplex import LpModel, solve_lp

CUT_TOL = 1e-9  # coefficient rounding used for cut deduplication

FWD, REV = 0, 1  # direction keys: FWD is i->j as the edge is stored


@dataclasses.dataclass(frozen=True)
class RecourseResult:
    """Optimal shed fraction with primal flows and row duals."""

    shed: float
    flows: dict[tuple[int, int], float]      # (edge id, FWD/REV) -> flow
    node_duals: dict[int, float]             # balance-row multipliers
    arc_duals: dict[tuple[int, int], float]  # capacity-row multipliers, <= 0
    design: DesignVector
    attack: AttackVector


@dataclasses.dataclass(frozen=True)
class BendersCut:
    """Affine lower bound on the worst-shed variable for one attack scenario.

    The cut reads  constant + sum_e coeff[e]*(x_e - d_e) <= theta.  Attacked
    edges carry a zero coefficient: their capacity is lost no matter what the
    design does, which keeps the bound valid at designs that do not build
    them (and coincides with the dual objective wherever the pairing is
    consistent).
    """

    constant: float
    coefficients: dict[int, float]
    attack: AttackVector
    design: DesignVector

    def key(self) -> tuple:
        """Rounded fingerprint for pool deduplication."""
        items = tuple(
            (eid, round(coef / CUT_TOL))
            for eid, coef in sorted(self.coefficients.items())
        )
        return (round(self.constant / CUT_TOL), items)


def _var_f(edge_id: int, direction: int) -> str:
    return f"flow[{edge_id}:{'fwd' if direction == FWD else 'rev'}]"


def _row_cap(edge_id: int, direction: int) -> str:
    return f"cap[{edge_id}:{'fwd' if direction == FWD else 'rev'}]"


def _row_balance(node_id: int) -> str:
    return f"balance[{node_id}]"


def build_recourse_lp(inst: Instance, design: DesignVector,
                      attack: AttackVector) -> LpModel:
    """Assemble the shed-minimizing LP for a consistent (design, attack) pair.

    Variables: one flow per edge direction plus the shed fraction.  Rows: one
    balance equality per node, one capacity bound per direction (kept for
    unbuilt and attacked edges with zero right-hand side so that every
    capacity row has a dual).
    """
    if not attack_consistent(design, attack):
        extra = sorted(attack.disrupted - design.built)
        raise ValueError(f"attack disrupts unbuilt edges {extra}")
    model = LpModel("min", name="recourse")
    shed = model.add_var("shed", lb=0.0, obj=1.0)
    for e in inst.edges:
        model.add_var(_var_f(e.id, FWD))
        model.add_var(_var_f(e.id, REV))
    for n in inst.nodes:
        coeffs: dict[str, float] = {}
        for e in inst.edges:
            for direction, (tail, head) in ((FWD, (e.i, e.j)), (REV, (e.j, e.i))):
                if tail == n.id:
                    coeffs[_var_f(e.id, direction)] = \
                        coeffs.get(_var_f(e.id, direction), 0.0) + 1.0
                if head == n.id:
                    coeffs[_var_f(e.id, direction)] = \
                        coeffs.get(_var_f(e.id, direction), 0.0) - 1.0
        coeffs["shed"] = n.b
        model.add_row(_row_balance(n.id), coeffs, "=", n.b)
    for e in inst.edges:
        active = e.id in design.built and e.id not in attack.disrupted
        rhs = e.u if active else 0.0
        model.add_row(_row_cap(e.id, FWD), {_var_f(e.id, FWD): 1.0}, "<=", rhs)
        model.add_row(_row_cap(e.id, REV), {_var_f(e.id, REV): 1.0}, "<=", rhs)
    del shed
    return model


def solve_recourse(inst: Instance, design: DesignVector,
                   attack: AttackVector) -> RecourseResult:
    """Minimal shed fraction for the surviving network, with duals."""
    model = build_recourse_lp(inst, design, attack)
    sol = solve_lp(model)
    if sol.status != "optimal":  # pragma: no cover - always feasible/bounded
        raise RuntimeError(f"recourse LP ended {sol.status}")
    shed = min(max(sol.value("shed"), 0.0), 1.0)
    flows = {}
    arc_duals = {}
    for e in inst.edges:
        for direction in (FWD, REV):
            flows[(e.id, direction)] = sol.value(_var_f(e.id, direction))
            arc_duals[(e.id, direction)] = sol.dual(_row_cap(e.id, direction))
    node_duals = {n.id: sol.dual(_row_balance(n.id)) for n in inst.nodes}
    return RecourseResult(shed=shed, flows=flows, node_duals=node_duals,
                          arc_duals=arc_duals, design=design, attack=attack)


def make_cut(result: RecourseResult, inst: Instance,
             attack: AttackVector | None = None) -> BendersCut:
    """Optimality cut from the duals of one recourse solve.

    ``attack`` defaults to the attack of the generating solve; passing the
    original scenario allows cutting from a solve whose attack was restricted
    to the built edges.
    """
    scenario = attack if attack is not None else result.attack
    constant = sum(inst.node(nid).b * alpha
                   for nid, alpha in result.node_duals.items())
    coefficients = {}
    for e in inst.edges:
        if e.id in scenario.disrupted:
            coefficients[e.id] = 0.0
        else:
            coefficients[e.id] = e.u * (result.arc_duals[(e.id, FWD)]
                                        + result.arc_duals[(e.id, REV)])
    return BendersCut(constant=constant, coefficients=coefficients,
                      attack=scenario, design=result.design)


def evaluate_cut(cut: BendersCut, design: DesignVector,
                 worst_shed: float) -> float:
    """Cut violation at (design, worst_shed); positive means violated."""
    value = cut.constant
    for eid, coef in cut.coefficients.items():
        x = 1.0 if eid in design.built else 0.0
        d = 1.0 if eid in cut.attack.disrupted else 0.0
        value += coef * (x - d)
    return value - worst_shed
