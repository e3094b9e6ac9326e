import numpy as np
import pytest
from scipy.optimize import brentq

from acflow import (
    AcConfig,
    AcModelError,
    AcState,
    Classification,
    FlowModelFactory,
    PiFlowModel,
    PrintedFlowModel,
    RecoveryResult,
    ac_residuals,
    branch_flow_ac,
    bus_roles,
    classify_solution,
    newton_power_flow,
    preliminary_classification,
    redispatch_stats,
    solve_ac_recovery,
)
from formulations import FormulationConfig, OpfSolution, build_dc_ots, extract_solution, fixed_topology_model
from gridnet import Branch, Bus, Device, Network
from milp import SolveStatus, solve_lp
import networks


def _flat_state(net, p_g, q_g=None) -> AcState:
    zeros = np.zeros(net.n_branches)
    return AcState(
        v=np.ones(net.n_buses),
        theta=np.zeros(net.n_buses),
        p_g=np.asarray(p_g, dtype=float),
        q_g=np.zeros(net.n_devices) if q_g is None else np.asarray(q_g, dtype=float),
        p_e=zeros, q_e=zeros, p_e_to=zeros, q_e_to=zeros,
    )


def _dc_point(net, p_g, theta) -> OpfSolution:
    return OpfSolution(
        p_g=np.asarray(p_g, dtype=float),
        p_e=np.zeros(net.n_branches),
        theta=np.asarray(theta, dtype=float),
        x=np.zeros(0, dtype=int),
        objective=float(net.device_vector("cost") @ np.asarray(p_g, dtype=float)),
        problem_kind="DcOpf",
    )


def _ots_dispatch(net, x):
    model = build_dc_ots(net, FormulationConfig(anti_islanding=False))
    solution = solve_lp(fixed_topology_model(model, x).lp)
    assert solution.status is SolveStatus.OPTIMAL
    return extract_solution(net, model, solution)


def _result(converged=True, slack=0.0, cost=10.0, redispatch=(0.0,)) -> RecoveryResult:
    state = AcState(*(np.zeros(1) for _ in range(8)))
    return RecoveryResult(
        state=state,
        slacks=np.array([slack]),
        converged=converged,
        classification=preliminary_classification(converged, slack, 1e-4),
        objective=cost,
        redispatch=np.asarray(redispatch, dtype=float),
    )


# =============================================================================
# Branch flows
# =============================================================================


def test_branch_flow_values():
    p, q = branch_flow_ac(0.95, 1.05, 0.1, 0.0, 0.5, 5.0)

    assert p == pytest.approx(0.9941775, rel=1e-6)
    assert q == pytest.approx(-4.9127914, rel=1e-6)


def test_branch_flow_broadcasts():
    p, q = branch_flow_ac(np.ones(3), np.ones(3), np.array([0.0, 0.1, -0.1]), 0.0, 0.0, 10.0)

    assert p.shape == q.shape == (3,)
    assert p[0] == pytest.approx(0.0)
    assert p[1] == pytest.approx(-p[2])


def test_branch_flow_tends_to_dc_flow():
    rng = np.random.default_rng(0)
    b = rng.uniform(0.1, 100.0, size=1000)
    delta = rng.uniform(-0.5, 0.5, size=1000)

    p, _ = branch_flow_ac(1.0, 1.0, delta, 0.0, 0.0, b)

    assert np.all(np.abs(p - b * delta) <= b * np.abs(delta) ** 3 / 6 + 1e-12)


def test_pi_model_losses():
    v_o, v_d, delta, g, b = np.array([1.02]), np.array([0.97]), np.array([0.08]), np.array([0.4]), np.array([6.0])

    flows = PiFlowModel().flows(v_o, v_d, delta, g, b)

    drop = abs(v_o[0] - v_d[0] * np.exp(-1j * delta[0])) ** 2
    assert flows.p_od[0] + flows.p_do[0] == pytest.approx(g[0] * drop)
    assert PiFlowModel().flows(np.ones(1), np.ones(1), np.zeros(1), g, b).values == pytest.approx(np.zeros((4, 1)))


def test_lossless_models_agree():
    v_o, v_d, delta = np.array([1.05]), np.array([0.95]), np.array([0.2])
    g, b = np.zeros(1), np.array([8.0])

    pi = PiFlowModel().flows(v_o, v_d, delta, g, b)
    printed = PrintedFlowModel().flows(v_o, v_d, delta, g, b)

    assert pi.p_od == pytest.approx(printed.p_od)
    assert pi.p_do == pytest.approx(printed.p_do)


@pytest.mark.parametrize("model", [PiFlowModel(), PrintedFlowModel()], ids=["pi", "printed"])
def test_flow_derivatives_match_finite_differences(model):
    v_o, v_d, delta = np.array([1.03]), np.array([0.96]), np.array([0.15])
    g, b = np.array([0.3]), np.array([4.0])
    h = 1e-7

    flows = model.flows(v_o, v_d, delta, g, b)

    for derivative, shift in (
            (flows.d_vo, lambda dv: model.flows(v_o + dv, v_d, delta, g, b)),
            (flows.d_vd, lambda dv: model.flows(v_o, v_d + dv, delta, g, b)),
            (flows.d_delta, lambda dv: model.flows(v_o, v_d, delta + dv, g, b)),
    ):
        numeric = (shift(h).values - shift(-h).values) / (2 * h)
        assert derivative == pytest.approx(numeric, abs=1e-6)


def test_flow_model_factory():
    assert isinstance(FlowModelFactory.get_model("pi"), PiFlowModel)
    assert isinstance(FlowModelFactory.get_model("printed"), PrintedFlowModel)
    model = PrintedFlowModel()
    assert FlowModelFactory.get_model(model) is model
    with pytest.raises(AcModelError):
        FlowModelFactory.get_model("transformer")


# =============================================================================
# Residuals and power flow
# =============================================================================


@pytest.mark.parametrize("topology", [[0], [1]])
def test_residuals_at_flat_state(two_bus, topology):
    d_p, d_q = ac_residuals(two_bus, _flat_state(two_bus, [0.5, -0.5]), topology)

    assert d_p == pytest.approx([0.5, -0.5])
    assert d_q == pytest.approx([0.0, 0.0])


def test_residuals_reject_bad_shapes(two_bus):
    state = _flat_state(two_bus, [0.5, -0.5])

    with pytest.raises(AcModelError):
        ac_residuals(two_bus, _flat_state(networks.congested_triangle(), np.zeros(3)), [1])
    with pytest.raises(AcModelError):
        ac_residuals(two_bus, state, [1, 1])


def test_power_flow_without_load_converges_immediately():
    net = networks.two_bus(load_p=0.0)

    result = newton_power_flow(net, [1], [0.0, 0.0], [0.0, 0.0])

    assert result.converged
    assert result.iterations == 1
    assert result.state.v == pytest.approx([1.0, 1.0])


def test_power_flow_two_bus(two_bus):
    result = newton_power_flow(two_bus, [1], [0.0, -0.5], [0.0, 0.0])

    assert result.converged
    assert result.state.p_g[0] == pytest.approx(0.5, abs=1e-6)
    assert result.state.q_g[0] > 0.0
    assert result.state.p_e[0] == pytest.approx(0.5, abs=1e-6)
    d_p, d_q = ac_residuals(two_bus, result.state, [1])
    assert np.abs(np.concatenate([d_p, d_q])).max() <= 1e-6


def test_power_flow_two_bus_matches_the_closed_form(two_bus):
    # lossless line, no reactive load: v2 = cos Δθ and b v2 sin Δθ = p
    delta = brentq(lambda d: 10.0 * np.cos(d) * np.sin(d) - 0.5, 0.0, np.pi / 4)

    result = newton_power_flow(two_bus, [1], [0.0, -0.5], [0.0, 0.0])
    state = result.state
    d_p, d_q = ac_residuals(two_bus, state, [1])

    assert delta == pytest.approx(np.arcsin(0.1) / 2)
    assert state.v[0] == pytest.approx(1.0)
    assert state.theta[0] == pytest.approx(0.0)
    assert state.theta[0] - state.theta[1] == pytest.approx(delta, abs=1e-6)
    assert state.v[1] == pytest.approx(np.cos(delta), abs=1e-6)
    assert state.q_g[0] == pytest.approx(10.0 * np.sin(delta) ** 2, abs=1e-6)
    assert np.abs(np.concatenate([d_p, d_q])).max() <= 1e-8


def test_power_flow_beyond_transfer_limit_diverges():
    net = networks.two_bus(load_p=12.0, gen_p_max=20.0)

    result = newton_power_flow(net, [1], [12.0, -12.0], [0.0, 0.0])

    assert not result.converged
    assert result.state is None


def test_power_flow_input_errors(voltage_trap):
    p_g, q_g = [0.9, 0.0, -0.9], [0.0, 0.0, -0.5]

    with pytest.raises(AcModelError):
        newton_power_flow(voltage_trap, [1, 1, 1], p_g, q_g, slack_bus=2)
    with pytest.raises(AcModelError):
        newton_power_flow(voltage_trap, [1, 1, 1], p_g, q_g, slack_bus=8)
    with pytest.raises(AcModelError):
        newton_power_flow(voltage_trap, [1, 0, 0], p_g, q_g)
    with pytest.raises(AcModelError):
        newton_power_flow(voltage_trap, [1, 1, 1], p_g[:2], q_g)


# =============================================================================
# AC recovery
# =============================================================================


def test_recovery_two_bus_is_safe(two_bus):
    result = solve_ac_recovery(two_bus, [1], _dc_point(two_bus, [0.5, -0.5], [0.0, -0.05]))

    assert result.converged
    assert result.classification is Classification.SAFE
    assert result.objective == pytest.approx(5.0, rel=1e-4)
    assert result.max_slack <= 1e-4
    assert result.violation <= AcConfig().feas_tol
    assert result.redispatch.shape == (2,)


def test_recovery_reports_thermal_slack():
    net = networks.two_bus(p_max=0.3)

    result = solve_ac_recovery(net, [1], _dc_point(net, [0.5, -0.5], [0.0, -0.05]))

    assert result.converged
    assert result.classification is Classification.OVERLOADED
    assert result.max_slack == pytest.approx(0.2, abs=1e-4)
    assert result.penalty > 0.0


def _costly_local_unit() -> Network:
    """Cheap unit at bus 1 behind a 0.3 branch, a 0.1 unit at cost 30 next to the 0.5 load."""
    return Network(
        buses=(Bus(1), Bus(2)),
        branches=(Branch(1, 1, 2, b=10.0, p_max=0.3),),
        devices=(
            Device(1, 1, cost=10.0, p_min=0.0, p_max=1.0, q_min=-0.3, q_max=0.3),
            Device(2, 2, cost=30.0, p_min=0.0, p_max=0.1, q_min=0.0, q_max=0.0),
            networks.load(3, 2, 0.5),
        ),
        name="costly_local_unit",
    )


def _smallest_grid_overload(b=10.0, demand=0.5, p_max=0.3, local_max=0.1, q_max=0.3, v_lo=0.9, v_hi=1.1):
    p2, v2 = np.meshgrid(np.linspace(0.0, local_max, 101), np.linspace(v_lo, v_hi, 201), indexing="ij")
    transfer = demand - p2
    delta = np.arctan(transfer / (b * v2 ** 2))
    v1 = v2 / np.cos(delta)
    q1 = b * (v1 ** 2 - v2 ** 2)
    feasible = (v1 >= v_lo) & (v1 <= v_hi) & (np.abs(q1) <= q_max)
    return float(np.min(np.where(feasible, np.maximum(transfer - p_max, 0.0), np.inf)))


def test_recovery_minimises_the_thermal_overload_first():
    net = _costly_local_unit()
    best_overload = _smallest_grid_overload()

    result = solve_ac_recovery(net, [1], _dc_point(net, [0.4, 0.1, -0.5], [0.0, -0.04]))

    assert best_overload == pytest.approx(0.1)
    assert result.converged
    assert result.classification is Classification.OVERLOADED
    assert result.max_slack <= best_overload + 1e-4
    assert result.max_slack == pytest.approx(0.1, abs=1e-4)
    assert result.state.p_g[1] == pytest.approx(0.1, abs=1e-4)
    assert result.objective == pytest.approx(7.0, abs=1e-2)


@pytest.mark.parametrize("seed", range(10))
def test_converged_recoveries_respect_the_bounds(seed):
    net = networks.random_network(seed)
    x = np.ones(net.n_branches, dtype=int)
    model = build_dc_ots(net, FormulationConfig(anti_islanding=False))
    lp = solve_lp(fixed_topology_model(model, x).lp)
    if lp.status is not SolveStatus.OPTIMAL:
        return

    result = solve_ac_recovery(net, x, extract_solution(net, model, lp))
    if not result.converged:
        return
    state = result.state
    d_p, d_q = ac_residuals(net, state, x)

    assert np.abs(np.concatenate([d_p, d_q])).max() <= AcConfig().feas_tol
    assert np.all(state.v >= net.bus_vector("v_min") - 1e-8)
    assert np.all(state.v <= net.bus_vector("v_max") + 1e-8)
    assert np.all(state.p_g >= net.device_vector("p_min") - 1e-8)
    assert np.all(state.p_g <= net.device_vector("p_max") + 1e-8)


def _max_delivered_reactive(b, p, v_lo=0.9, v_hi=1.1, steps=81):
    grid = np.linspace(v_lo, v_hi, steps)
    v_o, v_d = np.meshgrid(grid, grid, indexing="ij")
    sin_delta = p / (b * v_o * v_d)
    cos_delta = np.sqrt(np.clip(1.0 - sin_delta ** 2, 0.0, None))
    return float(np.max(b * (v_o * v_d * cos_delta - v_d ** 2)))


def test_recovery_detects_voltage_infeasibility():
    net = networks.two_bus(b=1.5, load_p=0.6, load_q=0.2)
    assert _max_delivered_reactive(1.5, 0.6) < 0.2

    result = solve_ac_recovery(net, [1], _dc_point(net, [0.6, -0.6], [0.0, -0.4]))

    assert not result.converged
    assert result.classification is Classification.INFEASIBLE
    assert result.violation > AcConfig().feas_tol
    assert result.cost_or_inf == float("inf")


def test_recovery_on_the_voltage_trap(voltage_trap):
    dc_optimum = _ots_dispatch(voltage_trap, [1, 0, 1])
    all_on = _ots_dispatch(voltage_trap, [1, 1, 1])

    assert solve_ac_recovery(voltage_trap, [1, 0, 1], dc_optimum).classification is Classification.INFEASIBLE
    assert solve_ac_recovery(voltage_trap, [1, 1, 1], all_on).classification.is_safe


def test_recovery_printed_model(two_bus):
    result = solve_ac_recovery(
        two_bus, [1], _dc_point(two_bus, [0.5, -0.5], [0.0, -0.05]), AcConfig(flow_model="printed")
    )

    assert result.classification is Classification.SAFE


def test_recovery_decommitted_device_stays_off():
    net = networks.uc_low_load()
    dc = _dc_point(net, [0.0, 0.1, -0.1], [0.0, -0.01])

    result = solve_ac_recovery(net, [1], dc, commitment=[0, 1, 1])

    assert result.state.p_g[0] == pytest.approx(0.0)
    assert result.state.q_g[0] == pytest.approx(0.0)


def test_recovery_dimension_errors(two_bus):
    dc = _dc_point(two_bus, [0.5, -0.5], [0.0, -0.05])

    with pytest.raises(AcModelError):
        solve_ac_recovery(two_bus, [1, 1], dc)
    with pytest.raises(AcModelError):
        solve_ac_recovery(two_bus, [1], dc, commitment=[1])
    with pytest.raises(AcModelError):
        solve_ac_recovery(two_bus, [1], _dc_point(networks.congested_triangle(), [1.0, 0.5, -1.5], np.zeros(3)))


# =============================================================================
# Classification
# =============================================================================


@pytest.mark.parametrize(
    "result, best, expected",
    [
        (_result(cost=10.0), 10.0, Classification.OPTIMAL),
        (_result(cost=10.0 + 5e-7), 10.0, Classification.OPTIMAL),
        (_result(cost=12.0), 10.0, Classification.SAFE),
        (_result(slack=1e-4), 10.0, Classification.OPTIMAL),
        (_result(slack=0.01), 10.0, Classification.OVERLOADED),
        (_result(converged=False), 10.0, Classification.INFEASIBLE),
    ],
)
def test_classify_solution(result, best, expected):
    assert classify_solution(result, best) is expected


def test_bus_roles(voltage_trap):
    assert bus_roles(voltage_trap, [0.9, 0.0, -0.9]) == ["generator", "junction", "load"]
    assert bus_roles(voltage_trap, [0.0, 0.9, -0.9]) == ["junction", "junction", "junction"]


def test_redispatch_stats(two_bus):
    dc = _dc_point(two_bus, [0.5, -0.5], [0.0, -0.05])
    moved = RecoveryResult(
        state=AcState(np.ones(2), np.zeros(2), np.array([0.6, -0.8]), np.zeros(2), *(np.zeros(1) for _ in range(4))),
        slacks=np.zeros(1),
        converged=True,
        classification=Classification.SAFE,
        objective=6.0,
        redispatch=np.array([0.1, -0.3]),
    )

    stats = redispatch_stats([(dc, moved), (dc, moved)])

    assert stats.mean_abs == pytest.approx((0.2, 0.2))
    assert stats.signed == pytest.approx((0.1, -0.3, 0.1, -0.3))
    assert stats.by_device[1] == pytest.approx((-0.3, -0.3))
    assert redispatch_stats([]).mean_abs == ()


def test_redispatch_stats_device_mismatch(two_bus):
    dc = _dc_point(two_bus, [0.5, -0.5], [0.0, -0.05])
    state = AcState(np.ones(2), np.zeros(2), np.array([0.5, -0.5]), np.zeros(2), *(np.zeros(1) for _ in range(4)))
    bad = RecoveryResult(state, np.zeros(1), True, Classification.SAFE, 5.0, np.zeros(3))

    with pytest.raises(AcModelError):
        redispatch_stats([(dc, bad)])
