import random

import numpy as np
import pytest

from sndp.branch_and_bound import (
    MilpModel,
    solve_bruteforce,
    solve_milp,
)
from sndp.decomposition import build_master
from sndp.instances import DesignVector
from sndp.separation import build_mincut_attack_milp
from sndp.simplex import LpModel


def knapsack_pair():
    lp = LpModel("min")
    lp.add_var("x1", lb=0, ub=1, obj=-1.0)
    lp.add_var("x2", lb=0, ub=1, obj=-1.0)
    lp.add_row("pick_one", {"x1": 1.0, "x2": 1.0}, "<=", 1.0)
    return MilpModel(lp, (0, 1))


def test_pick_either_binary():
    sol = solve_milp(knapsack_pair())
    assert sol.status == "optimal"
    assert sol.objective == pytest.approx(-1.0, abs=1e-9)
    assert solve_bruteforce(knapsack_pair()).objective == pytest.approx(-1.0)


def test_mincut_attack_model_value(tri3b):
    # the cheapest way to attack tri3b leaves a cut of capacity 6
    model = build_mincut_attack_milp(tri3b, DesignVector.all_edges(tri3b))
    sol = solve_milp(model)
    assert sol.objective == pytest.approx(6.0, abs=1e-6)
    assert solve_bruteforce(model).objective == pytest.approx(6.0, abs=1e-6)


def test_master_with_no_cuts_builds_nothing(tri3a):
    master = build_master(tri3a, [])
    sol = solve_milp(master)
    assert sol.objective == pytest.approx(0.0, abs=1e-9)
    assert all(sol.value(f"build[{e.id}]") < 0.5 for e in tri3a.edges)
    assert sol.value("worst_shed") == pytest.approx(0.0, abs=1e-9)


def test_infeasible_fixings():
    lp = LpModel("min")
    lp.add_var("x", lb=0, ub=1, obj=1.0)
    lp.add_row("force", {"x": 1.0}, ">=", 2.0)
    model = MilpModel(lp, (0,))
    assert solve_milp(model).status == "infeasible"
    assert solve_bruteforce(model).status == "infeasible"


def test_continuous_model_equals_lp():
    lp = LpModel("max")
    lp.add_var("x", lb=0, ub=3, obj=2.0)
    lp.add_row("r", {"x": 1.0}, "<=", 2.5)
    sol = solve_milp(MilpModel(lp, ()))
    assert sol.objective == pytest.approx(5.0, abs=1e-9)
    assert sol.node_count == 1


def random_mixed_model(rng, max_binaries=12):
    n_bin = rng.randint(1, max_binaries)
    n_cont = rng.randint(0, 3)
    lp = LpModel(rng.choice(["min", "max"]))
    for j in range(n_bin):
        lp.add_var(f"b{j}", lb=0, ub=1, obj=rng.randint(-5, 5))
    for j in range(n_cont):
        lp.add_var(f"c{j}", lb=0, ub=rng.randint(1, 6), obj=rng.randint(-3, 3))
    total = n_bin + n_cont
    for i in range(rng.randint(1, 6)):
        picks = rng.sample(range(total), rng.randint(1, total))
        coeffs = {k: rng.randint(-3, 3) for k in picks}
        coeffs = {k: v for k, v in coeffs.items() if v} or {0: 1}
        lp.add_row(f"r{i}", coeffs, rng.choice(["<=", ">=", "="]),
                   rng.randint(-4, 8))
    return MilpModel(lp, tuple(range(n_bin)))


def test_random_models_match_bruteforce():
    rng = random.Random(100)
    for trial in range(100):
        model = random_mixed_model(rng)
        a = solve_milp(model)
        b = solve_bruteforce(model)
        assert a.status == b.status, f"trial {trial}"
        if a.status == "optimal":
            assert a.objective == pytest.approx(b.objective, abs=1e-6), \
                f"trial {trial}"
            assert all(abs(a.values[j] - round(a.values[j])) <= 1e-6
                       for j in model.binaries)
            assert a.objective >= a.best_bound - 1e-6 \
                if model.lp.sense == "min" else True


def test_popped_bounds_nondecreasing_and_deterministic():
    rng = random.Random(55)
    model = random_mixed_model(rng)
    trace_a: list = []
    a = solve_milp(model, node_trace=trace_a)
    assert all(x <= y + 1e-9 for x, y in zip(trace_a, trace_a[1:]))
    trace_b: list = []
    b = solve_milp(model, node_trace=trace_b)
    assert a.node_count == b.node_count
    assert trace_a == trace_b
    if a.status == "optimal":
        assert np.array_equal(a.values, b.values)


def test_bruteforce_size_limit():
    lp = LpModel("min")
    for j in range(21):
        lp.add_var(f"b{j}", lb=0, ub=1, obj=1.0)
    lp.add_row("r", {0: 1.0}, ">=", 0.0)
    with pytest.raises(Exception, match="20"):
        solve_bruteforce(MilpModel(lp, tuple(range(21))))


def test_binary_bound_validation():
    lp = LpModel("min")
    lp.add_var("x", lb=0, ub=2, obj=1.0)
    lp.add_row("r", {"x": 1.0}, ">=", 0.0)
    with pytest.raises(Exception, match="bounds"):
        MilpModel(lp, (0,))
