# ====== Code Summary ======
# Greedy exhaustive single-switch search on AC cost. Every iteration evaluates the AC recovery of
# each single switchable-branch flip of the current topology that keeps the network in one piece,
# commits the cheapest Safe flip if it improves the cost by at least `tol` (ties to the lowest
# branch id), and stops otherwise. DC warm starts come from the fixed-topology DC LP.

# ====== Standard Library Imports ======
import time
from concurrent.futures import ThreadPoolExecutor

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from acflow import AcConfig, AcRecoverySolver, Classification, RecoveryResult
from baseline.exceptions import BaselineError
from baseline.models import GreedyConfig, GreedyStep, GreedyTrajectory
from formulations import (
    FormulationConfig,
    FormulationError,
    OpfSolution,
    build_dc_ots,
    extract_solution,
    fixed_topology_model,
)
from gridnet import Network, connectivity_check
from milp import MilpConfig, SolveStatus, solve_lp


def start_topology(net: Network, config: GreedyConfig) -> np.ndarray:
    if config.start == "case":
        return net.initial_topology()
    return np.ones(net.n_branches, dtype=int)


class GreedySwitchSearch:
    """
    Single-switch hill descent on the AC recovery cost.
    """

    def __init__(
            self,
            net: Network,
            config: GreedyConfig | None = None,
            ac_config: AcConfig | None = None,
            milp_config: MilpConfig | None = None,
            logger: Logger | None = None,
    ):
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        self.net = net
        self.config = config or GreedyConfig()
        self.milp_config = milp_config or MilpConfig()
        self.recovery = AcRecoverySolver(net, ac_config, logger=logger)
        self.switchable = sorted(
            (pos for pos, br in enumerate(net.branches) if br.switchable), key=lambda pos: net.branches[pos].id
        )
        try:
            self.dc_model = build_dc_ots(net, FormulationConfig(anti_islanding=False))
        except FormulationError as e:
            raise BaselineError(f"greedy search needs a switching model: {e}") from e

    def _dc_warm_start(self, x: np.ndarray, fallback: OpfSolution | None) -> OpfSolution | None:
        model = fixed_topology_model(self.dc_model, x)
        lp_solution = solve_lp(model.lp, self.milp_config)
        if lp_solution.status is SolveStatus.OPTIMAL:
            return extract_solution(self.net, model, lp_solution)
        if fallback is None:
            return None
        return OpfSolution(
            p_g=fallback.p_g,
            p_e=np.zeros(self.net.n_branches),
            theta=np.zeros(self.net.n_buses),
            x=x.copy(),
            objective=fallback.objective,
            problem_kind=fallback.problem_kind,
        )

    def _evaluate(self, x: np.ndarray, fallback: OpfSolution) -> RecoveryResult:
        return self.recovery.solve(x, self._dc_warm_start(x, fallback))

    def run(self, x0=None, reference_cost: float | None = None) -> GreedyTrajectory:
        """
        Args:
            x0 (array-like, optional): Start topology, from `GreedyConfig.start` when omitted.
            reference_cost (float, optional): Cost the gaps are measured against.

        Returns:
            GreedyTrajectory: Committed steps and evaluation counts.
        """
        net, config = self.net, self.config
        started = time.perf_counter()
        current = np.rint(np.asarray(start_topology(net, config) if x0 is None else x0, dtype=float)).astype(int)
        if current.shape != (net.n_branches,):
            raise BaselineError(f"start topology has {current.size} entries for {net.n_branches} branches")

        dc_start = self._dc_warm_start(current, None)
        if dc_start is None:
            self.logger.error("Start topology has no feasible DC dispatch")
            raise BaselineError("start topology has no feasible DC dispatch; provide a feasible seed topology")
        seed = self.recovery.solve(current, dc_start)
        if not seed.classification.is_safe:
            self.logger.error(f"Start topology recovers {seed.classification.value}, not Safe")
            raise BaselineError(
                f"start topology recovers {seed.classification.value} in AC; provide a Safe seed topology"
            )

        cost = seed.objective
        steps = [GreedyStep(None, cost, time.perf_counter() - started)]
        iteration_evals: list[int] = []
        iteration_skipped: list[int] = []
        self.logger.info(f"Greedy start cost {cost:.6g}")

        while True:
            candidates, skipped = [], 0
            for pos in self.switchable:
                x = current.copy()
                x[pos] = 1 - x[pos]
                islands, _ = connectivity_check(net, x)
                if islands != 1:
                    skipped += 1
                    continue
                candidates.append((pos, x))

            if config.workers > 1 and len(candidates) > 1:
                with ThreadPoolExecutor(max_workers=config.workers) as pool:
                    results = list(pool.map(lambda item: self._evaluate(item[1], dc_start), candidates))
            else:
                results = [self._evaluate(x, dc_start) for _, x in candidates]
            iteration_evals.append(len(candidates))
            iteration_skipped.append(skipped)

            best = None
            for (pos, x), result in zip(candidates, results):
                if result.classification is not Classification.SAFE:
                    continue
                if best is None or result.objective < best[2].objective:
                    best = (pos, x, result)

            if best is None or cost - best[2].objective < config.tol:
                self.logger.info(
                    f"Greedy stopped after {len(iteration_evals)} iterations, {sum(iteration_evals)} recoveries"
                )
                break
            pos, current, result = best
            cost = result.objective
            branch_id = net.branches[pos].id
            self.logger.info(f"Greedy flips branch {branch_id}: cost {cost:.6g}")
            steps.append(
                GreedyStep(branch_id, cost, time.perf_counter() - started, len(candidates), skipped)
            )

        reference = min(step.cost for step in steps) if reference_cost is None else reference_cost
        steps = [
            GreedyStep(s.branch_id, s.cost, s.wall_time, s.evaluations, s.skipped_islanding, s.cost - reference)
            for s in steps
        ]
        return GreedyTrajectory(
            steps=tuple(steps),
            iteration_evals=tuple(iteration_evals),
            iteration_skipped=tuple(iteration_skipped),
            ac_evals=sum(iteration_evals),
            seed_evals=1,
            topology=tuple(int(v) for v in current),
        )


def greedy_switch_search(
        net: Network,
        x0=None,
        tol: float = 1.0,
        ac_config: AcConfig | None = None,
        config: GreedyConfig | None = None,
) -> GreedyTrajectory:
    """Runs `GreedySwitchSearch` from x0 (or the configured start) with improvement tolerance `tol`."""
    config = config or GreedyConfig(tol=tol)
    if config.tol != tol:
        config = GreedyConfig(tol=tol, start=config.start, workers=config.workers)
    return GreedySwitchSearch(net, config, ac_config).run(x0)
