import itertools

import numpy as np
import pytest

from acflow import Classification, ac_residuals, solve_ac_recovery
from formulations import FormulationConfig, build_dc_ots, extract_solution, fixed_topology_model
from milp import SolveStatus, solve_lp, solve_milp
import networks

ALL_ON = (1, 1, 1, 1, 1, 1)
SHORT = 1  # position of branch 1-3

DC_COSTS = {
    (1, 1, 1, 1, 1, 1): 15.0,
    (1, 0, 1, 1, 1, 1): 9.0,
    (1, 0, 1, 1, 1, 0): 9.0,
    (1, 1, 1, 1, 1, 0): 15.0,
    (0, 1, 1, 1, 1, 1): 15.8,
    (1, 1, 0, 1, 1, 1): 15.8,
    (1, 1, 1, 0, 1, 1): 15.8,
    (1, 1, 1, 1, 0, 1): 15.8,
    (0, 1, 1, 1, 0, 1): 49.0 / 3.0,
    (1, 1, 0, 0, 1, 1): 49.0 / 3.0,
}


def _admissible(net, x) -> bool:
    for bus in net.buses:
        incident = net.incident_branches(bus.id)
        if sum(x[pos] for pos in incident) < min(2, len(incident)):
            return False
    return True


def _equivalent_susceptance(net, x, a: int, b: int) -> float:
    index = net.bus_index
    laplacian = np.zeros((net.n_buses, net.n_buses))
    for on, br in zip(x, net.branches):
        if not on:
            continue
        i, j = index[br.origin], index[br.dest]
        laplacian[[i, j], [i, j]] += br.b
        laplacian[i, j] -= br.b
        laplacian[j, i] -= br.b
    e = np.zeros(net.n_buses)
    e[index[a]], e[index[b]] = 1.0, -1.0
    return 1.0 / float(e @ np.linalg.pinv(laplacian) @ e)


def _max_reactive_intake(net, x) -> float:
    """
    Upper bound on the reactive power bus 3 can import from bus 1 (the only reactive source).

    Without shunts or conductance, reactive balance at the junction buses keeps their voltages
    below the weighted mean of their neighbours, so the intake is at most v3 * b_eq * (v1_max - v3).
    """
    b_eq = _equivalent_susceptance(net, x, 1, 3)
    v3 = np.linspace(net.buses[2].v_min, net.buses[2].v_max, 2001)
    return float(np.max(v3 * b_eq * (net.buses[0].v_max - v3)))


@pytest.fixture(scope="module")
def trap():
    return networks.meshed_trap()


@pytest.fixture(scope="module")
def dc_solutions(trap):
    model = build_dc_ots(trap, FormulationConfig(anti_islanding=False))
    solutions = {}
    for x in DC_COSTS:
        lp = solve_lp(fixed_topology_model(model, x).lp)
        assert lp.status is SolveStatus.OPTIMAL
        solutions[x] = extract_solution(trap, model, lp)
    return solutions


@pytest.fixture(scope="module")
def recoveries(trap, dc_solutions):
    return {x: solve_ac_recovery(trap, x, dispatch) for x, dispatch in dc_solutions.items()}


def test_minimum_degree_leaves_the_matchings(trap):
    admissible = {x for x in itertools.product((0, 1), repeat=trap.n_branches) if _admissible(trap, x)}

    assert admissible == set(DC_COSTS)


@pytest.mark.parametrize("x", sorted(DC_COSTS), ids=str)
def test_dc_cost_per_topology(dc_solutions, x):
    assert dc_solutions[x].objective == pytest.approx(DC_COSTS[x], abs=1e-6)


def test_dc_optimum_opens_the_short_branch():
    best = min(DC_COSTS.values())
    optima = [x for x, cost in DC_COSTS.items() if cost == pytest.approx(best)]

    assert best == pytest.approx(9.0)
    assert optima and all(x[SHORT] == 0 for x in optima)


def test_switching_model_finds_the_trap_optimum(trap):
    model = build_dc_ots(trap)
    solution = solve_milp(model)

    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(9.0, abs=1e-6)
    assert solution.binary_values(model)[SHORT] == 0


@pytest.mark.parametrize("x", [x for x in sorted(DC_COSTS) if x[SHORT] == 0], ids=str)
def test_short_branch_open_is_ac_infeasible(trap, recoveries, x):
    demand = -trap.devices[2].q_min

    assert _max_reactive_intake(trap, x) < demand
    assert recoveries[x].classification is Classification.INFEASIBLE
    assert not recoveries[x].converged


@pytest.mark.parametrize("x", [x for x in sorted(DC_COSTS) if x[SHORT] == 1], ids=str)
def test_short_branch_on_is_ac_safe(trap, recoveries, x):
    result = recoveries[x]
    state = result.state
    d_p, d_q = ac_residuals(trap, state, x)
    on = np.asarray(x, dtype=bool)
    p_max = trap.branch_vector("p_max")

    assert result.classification is Classification.SAFE
    assert max(np.abs(d_p).max(), np.abs(d_q).max()) <= 1e-6
    assert np.all(state.v >= trap.bus_vector("v_min") - 1e-8)
    assert np.all(state.v <= trap.bus_vector("v_max") + 1e-8)
    assert np.all(state.q_g <= trap.device_vector("q_max") + 1e-8)
    assert np.all(state.q_g >= trap.device_vector("q_min") - 1e-8)
    assert np.all(np.abs(state.p_e[on]) <= p_max[on] + 1e-4)
    assert np.all(np.abs(state.p_e_to[on]) <= p_max[on] + 1e-4)


def test_all_on_recovers_near_its_dc_cost(recoveries):
    assert recoveries[ALL_ON].objective == pytest.approx(15.0, abs=1.0)
