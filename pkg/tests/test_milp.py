import itertools
import math

import numpy as np
import pytest

from milp import (
    LinearProgram,
    MalformedProgramError,
    MilpBuilder,
    MilpConfig,
    MilpModel,
    SolveStatus,
    lp_text,
    solve_lp,
    solve_milp,
)

INF = math.inf


def _lp(c, rows, lower, upper, var_lower, var_upper):
    return LinearProgram(
        c=c, A=np.atleast_2d(rows), row_lower=lower, row_upper=upper, var_lower=var_lower, var_upper=var_upper
    )


def _knapsack(values, weights, capacity) -> MilpModel:
    builder = MilpBuilder()
    cols = [builder.add_var(f"y[{i}]", 0.0, 1.0, cost=-v, binary=True) for i, v in enumerate(values)]
    builder.add_row(dict(zip(cols, weights)), upper=capacity, group="capacity")
    return builder.build()


# =============================================================================
# LP engine
# =============================================================================


def test_lp_lower_bounded_minimum():
    solution = solve_lp(_lp([1.0], [[1.0]], [3.0], [INF], [-INF], [INF]))

    assert solution.status is SolveStatus.OPTIMAL
    assert solution.x == pytest.approx([3.0])
    assert solution.objective == pytest.approx(3.0)


def test_lp_two_variables():
    # max x + 2y s.t. x + y <= 4, x - y >= -2
    lp = _lp([-1.0, -2.0], [[1.0, 1.0], [1.0, -1.0]], [-INF, -2.0], [4.0, INF], [0.0, 0.0], [INF, INF])

    solution = solve_lp(lp)

    assert solution.status is SolveStatus.OPTIMAL
    assert solution.x == pytest.approx([1.0, 3.0])
    assert solution.objective == pytest.approx(-7.0)


def test_lp_infeasible():
    lp = _lp([1.0], [[1.0], [1.0]], [3.0, -INF], [INF, 2.0], [-INF], [INF])

    assert solve_lp(lp).status is SolveStatus.INFEASIBLE


def test_lp_unbounded_has_no_point():
    solution = solve_lp(_lp([-1.0], [[1.0]], [0.0], [INF], [0.0], [INF]))

    assert solution.status in (SolveStatus.UNBOUNDED, SolveStatus.INFEASIBLE)
    assert solution.x is None


def test_lp_objective_constant():
    lp = LinearProgram(c=[1.0], A=np.zeros((0, 1)), row_lower=[], row_upper=[], var_lower=[2.0], var_upper=[5.0], c0=4.0)

    assert solve_lp(lp).objective == pytest.approx(6.0)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"row_lower": [2.0], "row_upper": [1.0], "var_lower": [0.0], "var_upper": [1.0]},
        {"row_lower": [0.0], "row_upper": [1.0], "var_lower": [1.0], "var_upper": [0.0]},
        {"row_lower": [0.0, 0.0], "row_upper": [1.0], "var_lower": [0.0], "var_upper": [1.0]},
    ],
)
def test_malformed_programs(kwargs):
    with pytest.raises(MalformedProgramError):
        LinearProgram(c=[1.0], A=[[1.0]], **kwargs)


def test_binary_bounds_outside_unit_interval():
    lp = _lp([1.0], [[1.0]], [0.0], [INF], [0.0], [2.0])

    with pytest.raises(MalformedProgramError):
        MilpModel(lp=lp, binary_vars=(0,))


def test_builder_rejects_unknown_column():
    builder = MilpBuilder()
    builder.add_var("a")

    with pytest.raises(MalformedProgramError):
        builder.add_row({3: 1.0}, upper=1.0)


def test_builder_groups():
    builder = MilpBuilder()
    a = builder.add_var("a", group="g")
    b = builder.add_var("b", group="g")
    builder.add_eq({a: 1.0, b: 1.0}, 1.0, group="sum")
    model = builder.build(kind="test")

    assert model.group("g").tolist() == [0, 1]
    assert model.rows("sum").tolist() == [0]
    assert model.group("missing").size == 0
    assert model.index_of("b") == 1


# =============================================================================
# Branch and bound
# =============================================================================


def test_milp_without_binaries_matches_lp():
    lp = _lp([-1.0, -2.0], [[1.0, 1.0], [1.0, -1.0]], [-INF, -2.0], [4.0, INF], [0.0, 0.0], [INF, INF])

    milp = solve_milp(MilpModel(lp=lp))

    assert milp.status is SolveStatus.OPTIMAL
    assert milp.objective == pytest.approx(solve_lp(lp).objective)
    assert milp.node_count == 1


def test_milp_tie_goes_to_the_lowest_index():
    model = _knapsack([1.0, 1.0], [1.0, 1.0], 1.0)

    solution = solve_milp(model)

    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(-1.0)
    assert solution.binary_values(model).tolist() == [1, 0]


def test_milp_is_deterministic():
    model = _knapsack([5.0, 4.0, 3.0, 2.0], [3.0, 2.0, 2.0, 1.0], 4.5)

    first, second = solve_milp(model), solve_milp(model)

    assert np.array_equal(first.x, second.x)
    assert first.objective == second.objective
    assert first.node_count == second.node_count


@pytest.mark.parametrize("seed", range(10))
def test_milp_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    values = rng.uniform(1.0, 10.0, size=6)
    weights = rng.uniform(1.0, 5.0, size=6)
    capacity = float(weights.sum() / 2)
    model = _knapsack(values, weights, capacity)

    best = max(
        float(np.dot(values, picks))
        for picks in itertools.product((0, 1), repeat=6)
        if np.dot(weights, picks) <= capacity
    )
    solution = solve_milp(model)

    assert solution.status is SolveStatus.OPTIMAL
    assert -solution.objective == pytest.approx(best, abs=1e-7)
    assert solution.objective >= solution.root_bound - 1e-7
    assert solution.gap >= 0.0


def test_milp_infeasible():
    builder = MilpBuilder()
    y = builder.add_var("y", 0.0, 1.0, binary=True)
    builder.add_row({y: 2.0}, lower=1.0, upper=1.0)

    solution = solve_milp(builder.build())

    assert solution.status is SolveStatus.INFEASIBLE
    assert solution.x is None


def test_milp_node_limit():
    model = _knapsack([1.0, 1.0, 1.0], [2.0, 2.0, 2.0], 3.0)

    solution = solve_milp(model, MilpConfig(max_nodes=1))

    assert solution.status is SolveStatus.ITER_LIMIT
    assert solution.node_count == 1
    assert solution.root_bound == pytest.approx(-1.5)


def test_lp_text_dump():
    model = _knapsack([3.0, 2.0], [1.0, 1.0], 1.0)

    text = lp_text(model)

    assert text.splitlines()[1] == "Minimize"
    assert " obj: - 3 y_0 - 2 y_1" in text
    assert " r0_u: 1 y_0 + 1 y_1 <= 1" in text
    assert "Binary" in text
    assert text.rstrip().endswith("End")
