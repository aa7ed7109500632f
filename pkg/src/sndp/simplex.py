"""Dense primal simplex with bounded variables, two phases and dual values.

The solver keeps an explicit tableau (basis inverse times the constraint
matrix) in a numpy array, supports lower/upper variable bounds directly
(nonbasic variables may sit at either bound), detects infeasibility through a
phase-one artificial objective, and reports unboundedness with a certificate
ray.  On termination the basic solution and the row duals are recomputed from
a fresh factorization of the final basis, which removes accumulated pivot
drift before the built-in feasibility, complementary-slackness and
strong-duality checks run.

Dual sign convention: the reported row duals satisfy

    objective == sum_i dual_i * rhs_i  (+ reduced-cost terms for variables
                                        sitting at nonzero finite bounds)

so in a minimization problem duals of ``<=`` rows are <= 0 and duals of
``>=`` rows are >= 0; both signs flip for maximization.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

PIVOT_TOL = 1e-10      # smallest usable pivot element
FEAS_TOL = 1e-9        # primal feasibility tolerance
DUAL_TOL = 1e-7        # duality-gap / complementary-slackness tolerance
STEP_TOL = 1e-12       # ratio-test steps at or below this are degenerate
BLAND_TRIGGER = 1000   # degenerate pivots before switching to Bland's rule
DEFAULT_MAX_ITERS = 50000

RELATIONS = ("<=", "=", ">=")


class LpError(RuntimeError):
    """Base class for solver failures."""


class LpNumericalError(LpError):
    """Numerical failure (cycling guard exhausted or singular basis)."""


class LpModel:
    """A linear program with named variables and rows.

    Variables carry bounds (+-inf allowed) and an objective coefficient; rows
    are linear constraints with relation ``<=``, ``=`` or ``>=``.
    """

    def __init__(self, sense: str = "min", name: str = ""):
        if sense not in ("min", "max"):
            raise ValueError(f"sense must be 'min' or 'max', got {sense!r}")
        self.sense = sense
        self.name = name
        self.var_names: list[str] = []
        self.lower: list[float] = []
        self.upper: list[float] = []
        self.objective: list[float] = []
        self.row_names: list[str] = []
        self.row_coeffs: list[dict[int, float]] = []
        self.row_relations: list[str] = []
        self.rhs: list[float] = []
        self._var_lookup: dict[str, int] = {}
        self._row_lookup: dict[str, int] = {}
        self._dense: np.ndarray | None = None

    # -- construction -------------------------------------------------------

    def add_var(self, name: str, *, lb: float = 0.0, ub: float = math.inf,
                obj: float = 0.0) -> int:
        if name in self._var_lookup:
            raise ValueError(f"duplicate variable name {name!r}")
        if math.isnan(lb) or math.isnan(ub) or not math.isfinite(obj):
            raise ValueError(f"variable {name!r}: bad bounds or objective")
        if lb > ub:
            raise ValueError(f"variable {name!r}: lower bound exceeds upper bound")
        if lb == math.inf or ub == -math.inf:
            raise ValueError(f"variable {name!r}: bounds admit no finite value")
        idx = len(self.var_names)
        self.var_names.append(name)
        self.lower.append(float(lb))
        self.upper.append(float(ub))
        self.objective.append(float(obj))
        self._var_lookup[name] = idx
        self._dense = None
        return idx

    def add_row(self, name: str, coeffs, relation: str, rhs: float) -> int:
        if name in self._row_lookup:
            raise ValueError(f"duplicate row name {name!r}")
        if relation not in RELATIONS:
            raise ValueError(f"row {name!r}: relation must be one of {RELATIONS}")
        if not math.isfinite(rhs):
            raise ValueError(f"row {name!r}: right-hand side must be finite")
        clean: dict[int, float] = {}
        for key, value in coeffs.items():
            idx = self._var_lookup[key] if isinstance(key, str) else int(key)
            if not 0 <= idx < len(self.var_names):
                raise ValueError(f"row {name!r}: unknown variable {key!r}")
            if not math.isfinite(value):
                raise ValueError(f"row {name!r}: non-finite coefficient")
            if value != 0.0:
                clean[idx] = clean.get(idx, 0.0) + float(value)
        pos = len(self.row_names)
        self.row_names.append(name)
        self.row_coeffs.append(clean)
        self.row_relations.append(relation)
        self.rhs.append(float(rhs))
        self._row_lookup[name] = pos
        self._dense = None
        return pos

    def var_id(self, name: str) -> int:
        return self._var_lookup[name]

    def row_id(self, name: str) -> int:
        if name not in self._row_lookup:
            raise KeyError(f"unknown row {name!r}")
        return self._row_lookup[name]

    @property
    def num_vars(self) -> int:
        return len(self.var_names)

    @property
    def num_rows(self) -> int:
        return len(self.row_names)

    def set_bounds(self, idx: int, lb: float, ub: float) -> None:
        if lb > ub:
            raise ValueError("lower bound exceeds upper bound")
        self.lower[idx] = float(lb)
        self.upper[idx] = float(ub)

    def copy(self) -> "LpModel":
        dup = LpModel(self.sense, self.name)
        dup.var_names = list(self.var_names)
        dup.lower = list(self.lower)
        dup.upper = list(self.upper)
        dup.objective = list(self.objective)
        dup.row_names = list(self.row_names)
        dup.row_coeffs = [dict(c) for c in self.row_coeffs]
        dup.row_relations = list(self.row_relations)
        dup.rhs = list(self.rhs)
        dup._var_lookup = dict(self._var_lookup)
        dup._row_lookup = dict(self._row_lookup)
        dup._dense = self._dense  # rows are append-only, safe to share
        return dup

    def dump(self) -> str:
        """Fixed-order text rendering for regression snapshots."""
        lines = [f"{self.sense} {self.name}".rstrip()]
        for idx, name in enumerate(self.var_names):
            lines.append(
                f"var {name} lb={self.lower[idx]:g} ub={self.upper[idx]:g} "
                f"obj={self.objective[idx]:g}"
            )
        for pos, name in enumerate(self.row_names):
            terms = " + ".join(
                f"{coef:g}*{self.var_names[idx]}"
                for idx, coef in sorted(self.row_coeffs[pos].items())
            )
            lines.append(f"row {name}: {terms or '0'} {self.row_relations[pos]} "
                         f"{self.rhs[pos]:g}")
        return "\n".join(lines) + "\n"

    def dense_matrix(self) -> np.ndarray:
        """Row-major coefficient matrix, cached until the model grows."""
        if self._dense is None or self._dense.shape != (self.num_rows,
                                                        self.num_vars):
            a = np.zeros((self.num_rows, self.num_vars))
            for pos, coeffs in enumerate(self.row_coeffs):
                for idx, coef in coeffs.items():
                    a[pos, idx] = coef
            self._dense = a
        return self._dense


@dataclasses.dataclass(frozen=True)
class LpSolution:
    status: str  # optimal | infeasible | unbounded
    objective: float
    values: np.ndarray
    duals: np.ndarray
    reduced_costs: np.ndarray
    var_names: tuple[str, ...]
    row_names: tuple[str, ...]
    ray: np.ndarray | None = None
    iterations: int = 0

    def value(self, name: str) -> float:
        return float(self.values[self.var_names.index(name)])

    def dual(self, name: str) -> float:
        try:
            pos = self.row_names.index(name)
        except ValueError:
            raise KeyError(f"unknown row {name!r}") from None
        return float(self.duals[pos])


def dual_values(solution: LpSolution, row: str) -> float:
    """Dual multiplier of a named row in an optimal solution."""
    if solution.status != "optimal":
        raise LpError("dual values are only defined for optimal solutions")
    return solution.dual(row)


# ---------------------------------------------------------------------------
# Standard-form translation
#
# Internally every variable is shifted/negated/split to have lower bound zero
# and upper bound in (0, +inf]; each row gets b >= 0 by sign normalization and
# a slack (<=), a surplus plus artificial (>=), or an artificial (=).


@dataclasses.dataclass
class _Standard:
    a: np.ndarray           # m x k constraint matrix, all equalities
    b: np.ndarray           # m, nonnegative
    cost: np.ndarray        # k, phase-two objective (internal min sense)
    upper: np.ndarray       # k, upper bounds (inf allowed)
    col_var: list[int]      # structural column -> original variable index
    col_sign: list[float]   # +-1 per structural column
    shifts: np.ndarray      # per original variable
    row_sigma: np.ndarray   # +-1 per kept row
    kept_rows: list[int]    # original row index per tableau row
    n_struct: int
    artificials: np.ndarray  # bool per column
    basis_hint: list[int]   # starting basic column per row
    obj_const: float


def _standardize(model: LpModel, lower: np.ndarray, upper: np.ndarray
                 ) -> tuple[_Standard | None, str | None]:
    """Translate to computational form; returns (standard, infeasible_reason)."""
    sense_mult = 1.0 if model.sense == "min" else -1.0
    n = model.num_vars
    c_orig = sense_mult * np.asarray(model.objective)

    if (lower > upper + FEAS_TOL).any():
        j = int(np.argmax(lower > upper + FEAS_TOL))
        return None, f"variable {model.var_names[j]} has empty bound interval"

    lo_fin = np.isfinite(lower)
    hi_fin = np.isfinite(upper)
    free = ~lo_fin & ~hi_fin
    neg = ~lo_fin & hi_fin  # substituted as x = ub - x'

    shifts = np.where(lo_fin, lower, np.where(neg, upper, 0.0))
    col_var = list(np.flatnonzero(~free)) + [j for j in np.flatnonzero(free)
                                             for _ in (0, 1)]
    col_sign_arr = np.where(neg, -1.0, 1.0)[np.flatnonzero(~free)]
    col_sign = list(col_sign_arr) + [s for _ in np.flatnonzero(free)
                                     for s in (1.0, -1.0)]
    span = upper - lower
    col_upper = list(np.where(neg[~free], np.inf,
                              np.maximum(span[~free], 0.0))) \
        + [math.inf] * (2 * int(free.sum()))
    col_var_arr = np.array(col_var, dtype=int)
    col_sign_vec = np.array(col_sign)
    col_cost = list(c_orig[col_var_arr] * col_sign_vec)
    n_struct = len(col_var)
    obj_const = float(c_orig @ shifts)

    dense = model.dense_matrix()
    m_all = model.num_rows
    if m_all:
        b_adj_all = np.asarray(model.rhs) - dense @ shifts
        struct_all = dense[:, col_var_arr] * col_sign_vec
        nonempty = np.array([bool(c) for c in model.row_coeffs])
    else:
        b_adj_all = np.zeros(0)
        struct_all = np.zeros((0, n_struct))
        nonempty = np.zeros(0, dtype=bool)

    kept_rows: list[int] = []
    row_sigma_list: list[float] = []
    rows_a: list[np.ndarray] = []
    rows_b: list[float] = []
    row_relations: list[str] = []
    for i in range(m_all):
        b_adj = float(b_adj_all[i])
        rel = model.row_relations[i]
        if not nonempty[i]:
            # empty row: either trivially satisfied or infeasible
            ok = ((rel == "<=" and b_adj >= -FEAS_TOL)
                  or (rel == ">=" and b_adj <= FEAS_TOL)
                  or (rel == "=" and abs(b_adj) <= FEAS_TOL))
            if not ok:
                return None, f"row {model.row_names[i]} is unsatisfiable"
            continue
        sigma = -1.0 if b_adj < 0 else 1.0
        if sigma < 0:
            rel = {"<=": ">=", ">=": "<=", "=": "="}[rel]
        kept_rows.append(i)
        row_sigma_list.append(sigma)
        rows_a.append(sigma * struct_all[i])
        rows_b.append(sigma * b_adj)
        row_relations.append(rel)

    m = len(kept_rows)
    extra_cols: list[np.ndarray] = []
    extra_cost: list[float] = []
    extra_upper: list[float] = []
    extra_art: list[bool] = []

    def add_col(row_idx: int, coef: float, artificial: bool) -> None:
        col = np.zeros(m)
        col[row_idx] = coef
        extra_cols.append(col)
        extra_cost.append(0.0)
        extra_upper.append(math.inf)
        extra_art.append(artificial)

    basis_hint: list[int] = []
    for i, rel in enumerate(row_relations):
        if rel == "<=":
            add_col(i, 1.0, False)
            basis_hint.append(n_struct + len(extra_cols) - 1)
        elif rel == ">=":
            add_col(i, -1.0, False)  # surplus
            add_col(i, 1.0, True)    # artificial
            basis_hint.append(n_struct + len(extra_cols) - 1)
        else:
            add_col(i, 1.0, True)
            basis_hint.append(n_struct + len(extra_cols) - 1)

    a = np.zeros((m, n_struct + len(extra_cols)))
    if m:
        a[:, :n_struct] = np.array(rows_a)
        for k, col in enumerate(extra_cols):
            a[:, n_struct + k] = col
    artificials = np.zeros(n_struct + len(extra_cols), dtype=bool)
    for k, is_art in enumerate(extra_art):
        artificials[n_struct + k] = is_art
    std = _Standard(
        a=a,
        b=np.array(rows_b) if m else np.zeros(0),
        cost=np.array(col_cost + extra_cost),
        upper=np.array(col_upper + extra_upper),
        col_var=col_var,
        col_sign=col_sign,
        shifts=shifts,
        row_sigma=np.array(row_sigma_list) if m else np.zeros(0),
        kept_rows=kept_rows,
        n_struct=n_struct,
        artificials=artificials,
        basis_hint=basis_hint,
        obj_const=obj_const,
    )
    return std, None


# ---------------------------------------------------------------------------
# Core simplex loop


class _Tableau:
    def __init__(self, std: _Standard, max_iters: int):
        self.std = std
        self.m, self.k = std.a.shape
        self.t = std.a.copy()
        self.xb = std.b.copy()
        self.basis = np.array(std.basis_hint, dtype=int) \
            if self.m else np.zeros(0, dtype=int)
        self.in_basis = np.zeros(self.k, dtype=bool)
        self.in_basis[self.basis] = True
        self.at_upper = np.zeros(self.k, dtype=bool)
        self.allowed = np.ones(self.k, dtype=bool)
        self.max_iters = max_iters
        self.iterations = 0
        self.degenerate = 0
        self.bland = False
        self.unbounded_col: tuple[int, float] | None = None

    def reduced_costs(self, cost: np.ndarray) -> np.ndarray:
        z = cost - self.t.T @ cost[self.basis] if self.m else cost.copy()
        z[self.basis] = 0.0
        return z

    def run(self, cost: np.ndarray, phase_one: bool) -> str:
        """Pivot until optimal for the given costs; returns 'optimal'/'unbounded'."""
        std = self.std
        z = self.reduced_costs(cost)
        refresh = 0
        while True:
            if self.iterations >= self.max_iters:
                raise LpNumericalError(
                    "pivot limit reached; basis: "
                    + ",".join(str(b) for b in self.basis[:50])
                )
            movable = self.allowed & ~self.in_basis & (std.upper > STEP_TOL)
            down = movable & ~self.at_upper & (z < -FEAS_TOL)
            up = movable & self.at_upper & (z > FEAS_TOL)
            eligible = down | up
            if not eligible.any():
                return "optimal"
            if self.bland:
                j = int(np.flatnonzero(eligible)[0])
            else:
                score = np.where(eligible, np.abs(z), -1.0)
                j = int(np.argmax(score))
            delta = -1.0 if self.at_upper[j] else 1.0
            d = self.t[:, j] if self.m else np.zeros(0)
            e = delta * d

            # ratio test: entering bound flip vs basic variables hitting bounds
            t_own = std.upper[j]
            t_rows = np.full(self.m, math.inf)
            to_upper = np.zeros(self.m, dtype=bool)
            if self.m:
                basic_upper = std.upper[self.basis]
                pos = e > PIVOT_TOL
                t_rows[pos] = np.maximum(self.xb[pos], 0.0) / e[pos]
                neg = (e < -PIVOT_TOL) & np.isfinite(basic_upper)
                if neg.any():
                    t_rows[neg] = np.maximum(basic_upper[neg] - self.xb[neg], 0.0) \
                        / (-e[neg])
                    to_upper[neg] = True
            t_row_min = float(t_rows.min()) if self.m else math.inf
            step = min(t_own, t_row_min)
            if math.isinf(step):
                if phase_one:
                    return self._fail_unbounded()
                self.unbounded_col = (j, delta)
                return "unbounded"
            self.iterations += 1
            if math.isfinite(t_own) and t_own <= t_row_min:
                # bound flip, no basis change
                if self.m:
                    self.xb -= t_own * e
                self.at_upper[j] = ~self.at_upper[j]
                continue
            # pivot: pick leaving row among minimizers
            cand = np.flatnonzero(t_rows <= step + STEP_TOL)
            if cand.size == 0:
                cand = np.array([int(np.argmin(t_rows))])
            if self.bland:
                r = int(cand[np.argmin(self.basis[cand])])
            else:
                r = int(cand[np.argmax(np.abs(e[cand]))])
            if abs(self.t[r, j]) <= PIVOT_TOL:
                usable = cand[np.abs(self.t[cand, j]) > PIVOT_TOL]
                if usable.size == 0:
                    raise LpNumericalError(
                        f"no usable pivot in column {j}; basis: "
                        + ",".join(str(b) for b in self.basis[:50]))
                r = int(usable[np.argmax(np.abs(self.t[usable, j]))])
            if step <= STEP_TOL:
                self.degenerate += 1
                if self.degenerate >= BLAND_TRIGGER:
                    self.bland = True
            leaving = int(self.basis[r])
            entering_value = (std.upper[j] if self.at_upper[j] else 0.0) + delta * step
            self.xb -= step * e
            self.xb[r] = entering_value
            self.at_upper[leaving] = bool(to_upper[r])
            self.in_basis[leaving] = False
            self.at_upper[j] = False
            self.in_basis[j] = True
            self.basis[r] = j
            piv = self.t[r, j]
            self.t[r] /= piv
            factors = self.t[:, j].copy()
            factors[r] = 0.0
            self.t -= np.outer(factors, self.t[r])
            self.t[:, j] = 0.0
            self.t[r, j] = 1.0
            zj = z[j]
            if abs(zj) > 0:
                z -= zj * self.t[r]
            z[j] = 0.0
            refresh += 1
            if refresh >= 200:
                z = self.reduced_costs(cost)
                refresh = 0

    def _fail_unbounded(self):  # pragma: no cover - phase one is always bounded
        raise LpNumericalError("phase-one objective unbounded")

    def drive_out_artificials(self) -> None:
        std = self.std
        for r in range(self.m):
            col = int(self.basis[r])
            if not std.artificials[col]:
                continue
            row = self.t[r]
            candidates = np.flatnonzero(
                (~std.artificials) & self.allowed & (np.abs(row) > PIVOT_TOL))
            candidates = candidates[~self.in_basis[candidates]]
            if candidates.size == 0:
                continue  # redundant row; artificial stays basic at zero
            j = int(candidates[0])
            piv = self.t[r, j]
            self.t[r] /= piv
            factors = self.t[:, j].copy()
            factors[r] = 0.0
            self.t -= np.outer(factors, self.t[r])
            self.t[:, j] = 0.0
            self.t[r, j] = 1.0
            self.in_basis[col] = False
            self.in_basis[j] = True
            was_upper = self.at_upper[j]
            self.at_upper[j] = False
            self.basis[r] = j
            # entering keeps its bound value; basic value unchanged (zero row)
            self.xb[r] = std.upper[j] if was_upper else 0.0


def _nonbasic_values(tab: _Tableau) -> np.ndarray:
    std = tab.std
    vals = np.zeros(tab.k)
    finite_upper = np.where(np.isfinite(std.upper), std.upper, 0.0)
    vals[tab.at_upper] = finite_upper[tab.at_upper]
    vals[tab.in_basis] = 0.0
    return vals


def solve_lp(model: LpModel, *, max_iters: int = DEFAULT_MAX_ITERS,
             bounds_override: dict[int, tuple[float, float]] | None = None
             ) -> LpSolution:
    """Solve a linear program, returning primal values and row duals.

    ``bounds_override`` maps variable indices to replacement (lb, ub) pairs
    without mutating the model (used heavily by the tree search).  The
    returned solution is verified by direct substitution: primal feasibility
    within 1e-9, complementary slackness and strong duality within 1e-7
    (scaled by problem magnitude).
    """
    if model.num_vars == 0:
        raise ValueError("model has no variables")
    lower = np.array(model.lower)
    upper = np.array(model.upper)
    if bounds_override:
        for idx, (lo, hi) in bounds_override.items():
            lower[idx], upper[idx] = lo, hi
    std, reason = _standardize(model, lower, upper)
    var_names = tuple(model.var_names)
    row_names = tuple(model.row_names)
    if std is None:
        return LpSolution(
            status="infeasible", objective=math.nan,
            values=np.full(model.num_vars, math.nan),
            duals=np.full(model.num_rows, math.nan),
            reduced_costs=np.full(model.num_vars, math.nan),
            var_names=var_names, row_names=row_names)

    tab = _Tableau(std, max_iters)
    scale = 1.0 + (float(np.abs(std.b).max()) if std.b.size else 0.0)

    if std.artificials.any():
        cost1 = np.where(std.artificials, 1.0, 0.0)
        tab.run(cost1, phase_one=True)
        phase1 = float(cost1[tab.basis] @ tab.xb) if tab.m else 0.0
        if phase1 > DUAL_TOL * scale:
            return LpSolution(
                status="infeasible", objective=math.nan,
                values=np.full(model.num_vars, math.nan),
                duals=np.full(model.num_rows, math.nan),
                reduced_costs=np.full(model.num_vars, math.nan),
                var_names=var_names, row_names=row_names, iterations=tab.iterations)
        tab.drive_out_artificials()
        tab.allowed[std.artificials] = False
        # nonbasic artificials are pinned at zero
        tab.at_upper[std.artificials & ~tab.in_basis] = False

    status = tab.run(std.cost, phase_one=False)
    if status == "unbounded":
        return _unbounded_solution(model, std, tab, var_names, row_names)
    return _finalize(model, std, tab, var_names, row_names, lower, upper)


def _unbounded_solution(model, std, tab, var_names, row_names) -> LpSolution:
    # certificate ray from the entering column that had no blocking bound
    ray = np.zeros(model.num_vars)
    if tab.unbounded_col is not None:
        j, delta = tab.unbounded_col
        step = np.zeros(tab.k)
        step[j] = delta
        if tab.m:
            step[tab.basis] = -delta * tab.t[:, j]
        for col in range(std.n_struct):
            ray[std.col_var[col]] += std.col_sign[col] * step[col]
    return LpSolution(
        status="unbounded",
        objective=-math.inf if model.sense == "min" else math.inf,
        values=np.full(model.num_vars, math.nan),
        duals=np.full(model.num_rows, math.nan),
        reduced_costs=np.full(model.num_vars, math.nan),
        var_names=var_names, row_names=row_names,
        ray=ray,
        iterations=tab.iterations)


def _finalize(model: LpModel, std: _Standard, tab: _Tableau,
              var_names, row_names, lower: np.ndarray, upper: np.ndarray
              ) -> LpSolution:
    sense_mult = 1.0 if model.sense == "min" else -1.0
    m = tab.m
    if m:
        basis_cols = std.a[:, tab.basis]
        nb_vals = _nonbasic_values(tab)
        nb_vals[tab.basis] = 0.0
        rhs_eff = std.b - std.a @ nb_vals
        try:
            xb = np.linalg.solve(basis_cols, rhs_eff)
            y = np.linalg.solve(basis_cols.T, std.cost[tab.basis])
        except np.linalg.LinAlgError as exc:  # pragma: no cover
            raise LpNumericalError(f"singular final basis: {exc}") from exc
        x_std = nb_vals
        x_std[tab.basis] = xb
    else:
        x_std = _nonbasic_values(tab)
        y = np.zeros(0)

    values = std.shifts.copy()
    np.add.at(values, np.array(std.col_var, dtype=int),
              np.array(std.col_sign) * x_std[:std.n_struct])

    duals = np.zeros(model.num_rows)
    if std.kept_rows:
        duals[np.array(std.kept_rows)] = std.row_sigma * y * sense_mult

    objective = float(np.asarray(model.objective) @ values)

    dense = model.dense_matrix()
    reduced = np.asarray(model.objective) - dense.T @ duals

    _verify(model, dense, values, duals, reduced, objective, lower, upper)
    return LpSolution(
        status="optimal", objective=objective, values=values, duals=duals,
        reduced_costs=reduced, var_names=var_names, row_names=row_names,
        iterations=tab.iterations)


def _verify(model: LpModel, dense: np.ndarray, values: np.ndarray,
            duals: np.ndarray, reduced: np.ndarray, objective: float,
            lower: np.ndarray, upper: np.ndarray) -> None:
    """Check the reported solution by direct substitution."""
    scale = 1.0 + float(np.abs(values).max(initial=0.0))
    obj_scale = max(1.0, abs(objective))
    bound_tol = FEAS_TOL * scale * 10
    if model.num_rows:
        rhs = np.asarray(model.rhs)
        resid = dense @ values - rhs
        tol = FEAS_TOL * np.maximum(scale, 1.0 + np.abs(rhs)) * 10
        rels = np.array(model.row_relations)
        viol = ((rels == "<=") & (resid > tol)) \
            | ((rels == ">=") & (resid < -tol)) \
            | ((rels == "=") & (np.abs(resid) > tol))
        if viol.any():
            i = int(np.argmax(viol))
            raise LpNumericalError(
                f"row {model.row_names[i]} violated by {resid[i]:g}")
        slackness = (rels != "=") & (np.abs(duals * resid)
                                     > DUAL_TOL * obj_scale * 10)
        if slackness.any():
            i = int(np.argmax(slackness))
            raise LpNumericalError(
                f"complementary slackness violated on row {model.row_names[i]}")
    if ((values < lower - bound_tol) | (values > upper + bound_tol)).any():
        raise LpNumericalError("variable bound violated in reported solution")
    # strong duality including reduced-cost contributions at finite bounds
    at_lower = np.isfinite(lower) & (np.abs(values - lower) <= bound_tol + 1e-12)
    at_upper = ~at_lower & np.isfinite(upper) \
        & (np.abs(values - upper) <= bound_tol + 1e-12)
    interior = ~at_lower & ~at_upper
    if (np.abs(reduced[interior]) > DUAL_TOL * obj_scale * 10).any():
        j = int(np.flatnonzero(interior)[
            int(np.argmax(np.abs(reduced[interior])))])
        raise LpNumericalError(
            f"nonzero reduced cost on interior variable {model.var_names[j]}")
    dual_obj = float(duals @ np.asarray(model.rhs)) if model.num_rows else 0.0
    dual_obj += float(reduced[at_lower] @ lower[at_lower])
    dual_obj += float(reduced[at_upper] @ upper[at_upper])
    if abs(dual_obj - objective) > DUAL_TOL * (1.0 + abs(objective)) * 10:
        raise LpNumericalError(
            f"duality gap {dual_obj - objective:g} exceeds tolerance")
