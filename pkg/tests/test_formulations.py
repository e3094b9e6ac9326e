import itertools
from dataclasses import replace

import numpy as np
import pytest

from formulations import (
    DcModelBuilder,
    FormulationConfig,
    FormulationError,
    build_dc_opf,
    build_dc_ots,
    build_dc_uc,
    extract_solution,
    fixed_topology_model,
)
from milp import SolveStatus, solve_lp, solve_milp
import networks


def _solve(net, model):
    solution = solve_milp(model)
    assert solution.status is SolveStatus.OPTIMAL
    return solution, extract_solution(net, model, solution)


def _fixed(net, model, x):
    lp_solution = solve_lp(fixed_topology_model(model, x).lp)
    if lp_solution.status is not SolveStatus.OPTIMAL:
        return None
    return extract_solution(net, model, lp_solution)


# =============================================================================
# DC-OPF
# =============================================================================


def test_opf_two_bus(two_bus):
    model = build_dc_opf(two_bus)

    _, dispatch = _solve(two_bus, model)

    assert model.kind == "DcOpf"
    assert model.rows("balance").size == 2
    assert model.rows("flow").size == 1
    assert dispatch.objective == pytest.approx(5.0)
    assert dispatch.p_g == pytest.approx([0.5, -0.5])
    assert dispatch.p_e == pytest.approx([0.5])
    assert dispatch.theta == pytest.approx([0.0, -0.05])


def test_opf_zero_load():
    net = networks.two_bus(load_p=0.0)

    _, dispatch = _solve(net, build_dc_opf(net))

    assert dispatch.objective == pytest.approx(0.0, abs=1e-9)
    assert np.abs(dispatch.p_e).max() == pytest.approx(0.0, abs=1e-9)


def test_opf_congestion_forces_expensive_unit(congested_triangle):
    _, dispatch = _solve(congested_triangle, build_dc_opf(congested_triangle))

    assert dispatch.objective == pytest.approx(27.0)
    assert dispatch.p_g[:2] == pytest.approx([1.2, 0.3])
    assert dispatch.p_e[1] == pytest.approx(0.9)
    assert np.abs(dispatch.balance_residual(congested_triangle)).max() <= 1e-6


def test_opf_unserviceable_load():
    net = networks.two_bus(p_max=0.3)

    assert solve_milp(build_dc_opf(net)).status is SolveStatus.INFEASIBLE


# =============================================================================
# DC-OTS
# =============================================================================


def test_ots_opens_the_congested_branch(congested_triangle, free_switching):
    model = build_dc_ots(congested_triangle, free_switching)

    solution, dispatch = _solve(congested_triangle, model)

    assert model.kind == "DcOts"
    assert solution.binary_values(model).tolist() == [1, 0, 1]
    assert dispatch.objective == pytest.approx(15.0)
    assert dispatch.p_e[1] == pytest.approx(0.0, abs=1e-6)
    assert dispatch.topology(congested_triangle).tolist() == [1, 0, 1]


def test_ots_switch_laws(congested_triangle, free_switching):
    net = congested_triangle
    model = build_dc_ots(net, free_switching)
    b = net.branch_vector("b")

    for x in ([1, 1, 1], [1, 0, 1], [0, 1, 1]):
        dispatch = _fixed(net, model, x)
        on = np.array(x, dtype=bool)
        delta = dispatch.theta[net.origin_index] - dispatch.theta[net.dest_index]
        assert dispatch.p_e[on] == pytest.approx(b[on] * delta[on], abs=1e-6)
        assert np.abs(dispatch.p_e[~on]).max(initial=0.0) <= 1e-6
        assert np.abs(dispatch.balance_residual(net)).max() <= 1e-6
        assert np.all(np.abs(delta) <= free_switching.theta_bound + 1e-9)

    assert _fixed(net, model, [1, 1, 0]) is None


def test_ots_all_on_matches_opf(congested_triangle, free_switching):
    net = congested_triangle
    opf = _solve(net, build_dc_opf(net))[1]

    fixed = _fixed(net, build_dc_ots(net, free_switching), [1, 1, 1])

    assert fixed.objective == pytest.approx(opf.objective)


def test_ots_anti_islanding_keeps_every_branch(congested_triangle):
    solution, dispatch = _solve(congested_triangle, build_dc_ots(congested_triangle))

    assert dispatch.x.tolist() == [1, 1, 1]
    assert dispatch.objective == pytest.approx(27.0)


def test_ots_pairwise_exclusion(congested_triangle):
    cfg = FormulationConfig(anti_islanding=False, pairwise_exclusions=((1, 3),))

    _, dispatch = _solve(congested_triangle, build_dc_ots(congested_triangle, cfg))

    assert dispatch.x.tolist() == [0, 1, 1]
    assert dispatch.objective == pytest.approx(39.0)


def test_ots_pairwise_exclusion_unknown_branch(congested_triangle):
    cfg = FormulationConfig(anti_islanding=False, pairwise_exclusions=((1, 9),))

    with pytest.raises(FormulationError):
        build_dc_ots(congested_triangle, cfg)


def test_ots_absolute_budget_of_zero(congested_triangle):
    cfg = FormulationConfig(anti_islanding=False, switch_budget=0, switch_budget_mode="absolute")

    _, dispatch = _solve(congested_triangle, build_dc_ots(congested_triangle, cfg))

    assert dispatch.x.tolist() == [1, 1, 1]


def test_ots_net_budget_from_empty_reference(congested_triangle):
    cfg = FormulationConfig(anti_islanding=False, switch_budget=1, budget_reference=(0, 0, 0))

    _, dispatch = _solve(congested_triangle, build_dc_ots(congested_triangle, cfg))

    assert dispatch.x.tolist() == [0, 0, 1]
    assert dispatch.objective == pytest.approx(75.0)


def test_ots_non_switchable_branch_stays_on(congested_triangle, free_switching):
    net = congested_triangle
    net = replace(net, branches=(net.branches[0], replace(net.branches[1], switchable=False), net.branches[2]))

    _, dispatch = _solve(net, build_dc_ots(net, free_switching))

    assert dispatch.x.tolist() == [1, 1, 1]
    assert dispatch.objective == pytest.approx(27.0)


def test_ots_needs_a_switchable_branch():
    with pytest.raises(FormulationError):
        build_dc_ots(networks.two_bus(switchable=False))


def test_fixed_big_m_below_rating(congested_triangle):
    with pytest.raises(FormulationError):
        build_dc_ots(congested_triangle, FormulationConfig(big_m=1.0))


def test_auto_big_m_needs_finite_angle_bound(congested_triangle):
    with pytest.raises(FormulationError):
        build_dc_ots(congested_triangle, FormulationConfig(theta_bound=float("inf")))


def test_bus_angle_mode(congested_triangle):
    cfg = FormulationConfig(anti_islanding=False, theta_mode="bus")

    _, dispatch = _solve(congested_triangle, build_dc_ots(congested_triangle, cfg))

    assert np.abs(dispatch.theta).max() <= cfg.theta_bound + 1e-9
    assert dispatch.objective == pytest.approx(15.0)


@pytest.mark.parametrize("theta_mode", ["difference", "bus"])
@pytest.mark.parametrize("seed", range(20))
def test_auto_big_m_never_binds_open_branches(seed, theta_mode):
    net = networks.random_network(seed)
    cfg = FormulationConfig(anti_islanding=False, theta_mode=theta_mode)
    model = build_dc_ots(net, cfg)
    solution = solve_milp(model)
    if solution.status is not SolveStatus.OPTIMAL:
        return
    dispatch = extract_solution(net, model, solution)
    x = solution.binary_values(model).astype(bool)
    big_m = DcModelBuilder(net, cfg).big_m()
    b = net.branch_vector("b")
    angle_flow = b * (dispatch.theta[net.origin_index] - dispatch.theta[net.dest_index])

    assert np.all(np.abs(angle_flow[~x]) < big_m[~x] - 1e-6)
    assert dispatch.p_e[~x] == pytest.approx(np.zeros((~x).sum()), abs=1e-7)
    assert dispatch.p_e[x] == pytest.approx(angle_flow[x], abs=1e-6)


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(100))
def test_ots_matches_enumeration_on_random_networks(seed, free_switching):
    net = networks.random_network(seed)
    model = build_dc_ots(net, free_switching)

    feasible = []
    for x in itertools.product((0, 1), repeat=net.n_branches):
        dispatch = _fixed(net, model, x)
        if dispatch is not None:
            feasible.append(dispatch.objective)
    solution = solve_milp(model)

    if not feasible:
        assert solution.status is SolveStatus.INFEASIBLE
        return
    assert solution.status is SolveStatus.OPTIMAL
    assert solution.objective == pytest.approx(min(feasible), rel=1e-6, abs=1e-6)


# =============================================================================
# DC-UC
# =============================================================================


def test_uc_single_unit():
    net = networks.uc_single()
    model = build_dc_uc(net)

    _, dispatch = _solve(net, model)

    assert model.kind == "DcUc"
    assert dispatch.x.tolist() == [1, 1]
    assert dispatch.p_g[0] == pytest.approx(0.5)
    assert dispatch.objective == pytest.approx(5.0)
    assert dispatch.commitment(net).tolist() == [1, 1]
    assert dispatch.topology(net).tolist() == [1]


def test_uc_minimum_output_decommits_cheap_unit():
    net = networks.uc_low_load()

    _, dispatch = _solve(net, build_dc_uc(net))

    assert dispatch.x.tolist() == [0, 1, 1]
    assert dispatch.p_g[:2] == pytest.approx([0.0, 0.1], abs=1e-9)
    assert dispatch.objective == pytest.approx(2.0)


def test_uc_ramp_limit_makes_profile_infeasible():
    cfg = FormulationConfig(horizon=2, load_profile=(1.0, 1.8))

    assert solve_milp(build_dc_uc(networks.uc_single(ramp=0.1), cfg)).status is SolveStatus.INFEASIBLE


def test_uc_multi_period_dispatch():
    net = networks.uc_single(ramp=0.5)
    cfg = FormulationConfig(horizon=2, load_profile=(1.0, 1.8))
    model = build_dc_uc(net, cfg)

    solution, first = _solve(net, model)
    second = extract_solution(net, model, solution, period=1)

    assert "p_g[1,t1]" in model.var_names
    assert model.rows("ramp").size == 1
    assert first.p_g[0] == pytest.approx(0.5)
    assert second.p_g[0] == pytest.approx(0.9)
    assert solution.objective == pytest.approx(14.0)


def test_uc_needs_a_commitable_device(two_bus):
    with pytest.raises(FormulationError):
        build_dc_uc(two_bus)


def test_extract_rejects_unknown_period():
    net = networks.uc_single()
    model = build_dc_uc(net)
    solution = solve_milp(model)

    with pytest.raises(FormulationError):
        extract_solution(net, model, solution, period=1)


@pytest.mark.parametrize(
    "kwargs",
    [
        {"theta_bound": 0.0},
        {"theta_mode": "line"},
        {"switch_budget_mode": "relative"},
        {"switch_budget": -1},
        {"horizon": 0},
        {"horizon": 2, "load_profile": (1.0,)},
        {"big_m": "large"},
        {"big_m": -5.0},
    ],
)
def test_invalid_formulation_config(kwargs):
    with pytest.raises(FormulationError):
        FormulationConfig(**kwargs)
