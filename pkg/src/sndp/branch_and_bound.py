"""Branch-and-bound for mixed-binary linear programs on top of the simplex.

Best-first search ordered by LP relaxation bound, ties broken by node
creation order; branching on the most fractional binary with lowest index as
the tie-break.  No cutting planes, warm starts or presolve: problem-specific
strengthening belongs to the callers.
"""

from __future__ import annotations

import dataclasses
import heapq
import itertools
import math
import time

import numpy as np

from sndp.simplex import LpError, LpModel, solve_lp

INT_TOL = 1e-6
FATHOM_TOL = 1e-9


class MilpError(LpError):
    """MILP-level failure (bad model or search limits)."""


class SolveTimeout(MilpError):
    """Raised when a deadline expires inside the tree search."""


@dataclasses.dataclass(frozen=True)
class MilpModel:
    """A linear program plus the indices of variables restricted to {0, 1}."""

    lp: LpModel
    binaries: tuple[int, ...]

    def __post_init__(self):
        for idx in self.binaries:
            lo, hi = self.lp.lower[idx], self.lp.upper[idx]
            if lo < -INT_TOL or hi > 1.0 + INT_TOL:
                raise MilpError(
                    f"binary variable {self.lp.var_names[idx]} must have bounds "
                    f"within [0, 1], got [{lo}, {hi}]")


@dataclasses.dataclass(frozen=True)
class MilpSolution:
    status: str  # optimal | infeasible
    objective: float
    values: np.ndarray
    node_count: int
    best_bound: float
    var_names: tuple[str, ...]

    def value(self, name: str) -> float:
        return float(self.values[self.var_names.index(name)])


def _is_integral(values: np.ndarray, binaries) -> bool:
    for idx in binaries:
        if abs(values[idx] - round(values[idx])) > INT_TOL:
            return False
    return True


def _branch_var(values: np.ndarray, binaries) -> int:
    """Most fractional binary; lowest index on ties."""
    best, best_frac = -1, -1.0
    for idx in binaries:
        frac = min(values[idx] - math.floor(values[idx]),
                   math.ceil(values[idx]) - values[idx])
        if frac > best_frac + 1e-12:
            best, best_frac = idx, frac
    return best


def solve_milp(model: MilpModel, *, max_nodes: int = 200000,
               deadline: float | None = None,
               node_trace: list | None = None) -> MilpSolution:
    """Solve to an absolute optimality gap of 1e-6 with deterministic search.

    ``deadline`` is an absolute time.monotonic() stamp; crossing it raises
    SolveTimeout.  ``node_trace`` (if given) collects the LP bound of every
    expanded node, in exploration order.
    """
    lp = model.lp
    sense_mult = 1.0 if lp.sense == "min" else -1.0
    counter = itertools.count()
    incumbent: np.ndarray | None = None
    incumbent_obj = math.inf  # internal (min) sense

    def relax(bounds):
        return solve_lp(lp, bounds_override=bounds)

    nodes_solved = 0

    def solve_node(bounds):
        nonlocal nodes_solved
        nodes_solved += 1
        if nodes_solved > max_nodes:
            raise MilpError(f"node limit {max_nodes} exceeded")
        if deadline is not None and time.monotonic() > deadline:
            raise SolveTimeout("MILP search deadline expired")
        sol = relax(bounds)
        if sol.status == "unbounded":
            raise MilpError("LP relaxation is unbounded")
        return sol

    root = solve_node({})
    heap: list = []
    if root.status == "optimal":
        heapq.heappush(heap, (sense_mult * root.objective, next(counter), {}, root))

    while heap:
        bound, _, bounds, sol = heapq.heappop(heap)
        if node_trace is not None:
            node_trace.append(bound)
        if bound >= incumbent_obj - FATHOM_TOL:
            continue
        if _is_integral(sol.values, model.binaries):
            if bound < incumbent_obj - FATHOM_TOL:
                incumbent = sol.values.copy()
                for idx in model.binaries:
                    incumbent[idx] = round(incumbent[idx])
                incumbent_obj = bound
            continue
        branch = _branch_var(sol.values, model.binaries)
        for lo, hi in ((0.0, 0.0), (1.0, 1.0)):
            child_bounds = dict(bounds)
            child_bounds[branch] = (lo, hi)
            child = solve_node(child_bounds)
            if child.status != "optimal":
                continue
            child_bound = sense_mult * child.objective
            if child_bound < incumbent_obj - FATHOM_TOL:
                heapq.heappush(heap, (child_bound, next(counter), child_bounds, child))

    if incumbent is None:
        return MilpSolution(
            status="infeasible", objective=math.nan,
            values=np.full(lp.num_vars, math.nan), node_count=nodes_solved,
            best_bound=math.nan, var_names=tuple(lp.var_names))
    objective = sense_mult * incumbent_obj
    return MilpSolution(
        status="optimal", objective=objective, values=incumbent,
        node_count=nodes_solved, best_bound=objective,
        var_names=tuple(lp.var_names))


def solve_bruteforce(model: MilpModel) -> MilpSolution:
    """Exhaustive test oracle: enumerate binary assignments, LP-solve the rest.

    Limited to 20 binaries.  Assignments are visited in binary counting order
    with the first optimum kept, so results are deterministic.
    """
    if len(model.binaries) > 20:
        raise MilpError("brute force limited to 20 binary variables")
    lp = model.lp
    sense_mult = 1.0 if lp.sense == "min" else -1.0
    best: np.ndarray | None = None
    best_obj = math.inf
    solved = 0
    for assignment in itertools.product((0.0, 1.0), repeat=len(model.binaries)):
        fixings = {}
        for idx, val in zip(model.binaries, assignment):
            lo, hi = lp.lower[idx], lp.upper[idx]
            if val < lo - INT_TOL or val > hi + INT_TOL:
                break
            fixings[idx] = (val, val)
        else:
            sol = solve_lp(lp, bounds_override=fixings)
            solved += 1
            if sol.status != "optimal":
                continue
            internal = sense_mult * sol.objective
            if internal < best_obj - FATHOM_TOL:
                best_obj = internal
                best = sol.values.copy()
                for idx, val in zip(model.binaries, assignment):
                    best[idx] = val
    if best is None:
        return MilpSolution(
            status="infeasible", objective=math.nan,
            values=np.full(lp.num_vars, math.nan), node_count=solved,
            best_bound=math.nan, var_names=tuple(lp.var_names))
    objective = sense_mult * best_obj
    return MilpSolution(
        status="optimal", objective=objective, values=best, node_count=solved,
        best_bound=objective, var_names=tuple(lp.var_names))
