from dataclasses import replace

import pytest

from baseline import BaselineError, GreedyConfig, GreedySwitchSearch, greedy_switch_search, start_topology
import networks


def test_greedy_opens_the_congested_branch(congested_triangle):
    trajectory = greedy_switch_search(congested_triangle, tol=1.0)

    assert trajectory.costs == pytest.approx((27.0, 15.0), rel=1e-2)
    assert trajectory.switched == (2,)
    assert trajectory.iteration_evals == (3, 1)
    assert trajectory.iteration_skipped == (0, 2)
    assert trajectory.ac_evals == 4
    assert trajectory.topology == (1, 0, 1)
    assert trajectory.steps[-1].gap == pytest.approx(0.0)
    assert trajectory.steps[0].gap == pytest.approx(12.0, rel=1e-2)
    assert trajectory.steps[1].evaluations == 3


def test_greedy_stops_when_no_flip_improves(congested_triangle):
    trajectory = greedy_switch_search(congested_triangle, x0=[1, 0, 1])

    assert trajectory.switched == ()
    assert trajectory.iteration_evals == (1,)
    assert len(trajectory.steps) == 1


def test_greedy_tolerance_blocks_small_gains(congested_triangle):
    trajectory = greedy_switch_search(congested_triangle, tol=50.0)

    assert trajectory.switched == ()
    assert trajectory.topology == (1, 1, 1)


def test_greedy_gaps_against_a_reference(congested_triangle):
    trajectory = GreedySwitchSearch(congested_triangle).run(reference_cost=10.0)

    assert [step.gap for step in trajectory.steps] == pytest.approx([17.0, 5.0], rel=1e-2)


def test_greedy_threads_give_the_same_trajectory(congested_triangle):
    serial = greedy_switch_search(congested_triangle)
    threaded = GreedySwitchSearch(congested_triangle, GreedyConfig(workers=3)).run()

    assert threaded.switched == serial.switched
    assert threaded.iteration_evals == serial.iteration_evals


def test_ac_infeasible_seed_is_rejected(voltage_trap):
    with pytest.raises(BaselineError):
        greedy_switch_search(voltage_trap, x0=[1, 0, 1])


def test_overloaded_seed_is_rejected():
    net = networks.two_bus(p_max=0.5)
    lossy = replace(net, branches=(replace(net.branches[0], g=2.0),))

    with pytest.raises(BaselineError, match="Safe"):
        greedy_switch_search(lossy, x0=[1])


def test_dc_infeasible_seed_is_rejected(congested_triangle):
    with pytest.raises(BaselineError):
        greedy_switch_search(congested_triangle, x0=[1, 1, 0])


def test_seed_of_wrong_size(congested_triangle):
    with pytest.raises(BaselineError):
        greedy_switch_search(congested_triangle, x0=[1, 1])


def test_network_without_switchable_branch():
    with pytest.raises(BaselineError):
        GreedySwitchSearch(networks.two_bus(switchable=False))


def test_start_topology(congested_triangle):
    net = replace(
        congested_triangle,
        branches=(congested_triangle.branches[0], replace(congested_triangle.branches[1], x0=0),
                  congested_triangle.branches[2]),
    )

    assert start_topology(net, GreedyConfig()).tolist() == [1, 1, 1]
    assert start_topology(net, GreedyConfig(start="case")).tolist() == [1, 0, 1]


@pytest.mark.parametrize("kwargs", [{"start": "random"}, {"tol": -1.0}, {"workers": 0}])
def test_invalid_greedy_config(kwargs):
    with pytest.raises(BaselineError):
        GreedyConfig(**kwargs)
