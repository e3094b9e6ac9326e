# ====== Code Summary ======
# Alternative generation. The MGA subproblem is the base model with its objective replaced by a
# criterion objective over the free binaries and the quality row c·x ≤ f* + δ_f added.
#   - HSJ variants iterate: solve, stop on the first binary vector already in the history (the
#     base solution is in it from the start) or at max_iter, otherwise update the objective.
#   - Random vectors run exactly max_iter independent solves with Latin hypercube weights and
#     drop repeated solutions; results are collected in weight order.

# ====== Standard Library Imports ======
import time
from concurrent.futures import ThreadPoolExecutor

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from formulations import extract_solution
from gridnet import Network
from milp import BranchAndBoundSolver, MilpConfig, MilpModel, MilpSolution, SolveStatus
from mga.exceptions import MgaError
from mga.models import Alternative, MgaConfig, MgaCriterion, MgaRun, MgaState
from mga.objectives import next_objective
from mga.sampling import lhs_weights

# Absolute slack on the quality row, below the 1e-6 quality tolerance.
QUALITY_SLACK = 1e-7


class AlternativeGenerator:
    """
    Generates near-optimal alternatives of a solved mixed-binary DC model.
    """

    def __init__(
            self,
            net: Network,
            base_model: MilpModel,
            base_solution: MilpSolution,
            config: MgaConfig,
            milp_config: MilpConfig | None = None,
            logger: Logger | None = None,
    ):
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        if base_solution.status is not SolveStatus.OPTIMAL:
            raise MgaError(f"base solution must be Optimal, got {base_solution.status.value}")
        self.net = net
        self.base_model = base_model
        self.base_solution = base_solution
        self.config = config
        self.solver = BranchAndBoundSolver(config=milp_config, logger=logger)

        lp = base_model.lp
        binaries = base_model.binary_index
        self.free = binaries[lp.var_lower[binaries] < lp.var_upper[binaries]]
        if self.free.size == 0:
            raise MgaError("model has no free binary variable to vary")
        self.free_positions = np.flatnonzero(lp.var_lower[binaries] < lp.var_upper[binaries])

        self.f_star = base_solution.objective
        bound = self.f_star + config.delta_f - lp.c0 + QUALITY_SLACK
        self.quality_lp = lp.with_rows(lp.c.reshape(1, -1), [-np.inf], [bound])

    # ------------------------------------------------------------------ helpers
    def _alternative(self, solution: MilpSolution, iteration: int, criterion: str) -> Alternative:
        x = solution.binary_values(self.base_model)
        dispatch = extract_solution(self.net, self.base_model, solution)
        return Alternative(x=x, dispatch=dispatch, dc_objective=dispatch.objective, iteration=iteration, criterion=criterion)

    def _solve(self, free_coefficients: np.ndarray) -> tuple[MilpSolution, float]:
        c = np.zeros(self.quality_lp.n_vars)
        c[self.free] = free_coefficients
        start = time.perf_counter()
        solution = self.solver.solve(self.base_model.with_lp(self.quality_lp.with_objective(c)))
        return solution, time.perf_counter() - start

    def _check(self, solution: MilpSolution, iteration: int):
        if solution.status in (SolveStatus.OPTIMAL, SolveStatus.ITER_LIMIT):
            return
        self.logger.error(f"MGA subproblem {iteration} ended with {solution.status.value}")
        raise MgaError(
            f"MGA subproblem {iteration} ended with {solution.status.value}; "
            "the base solution should keep it feasible"
        )

    # ------------------------------------------------------------------ runs
    def run(self) -> MgaRun:
        criterion = self.config.criterion
        self.logger.info(
            f"MGA {criterion.value}: f* = {self.f_star:.6g}, delta_f = {self.config.delta_f}, "
            f"{self.free.size} free binaries, max_iter = {self.config.max_iter}"
        )
        if criterion is MgaCriterion.RANDOM_VECTOR:
            return self._run_random()
        return self._run_sequential()

    def _run_sequential(self) -> MgaRun:
        config = self.config
        criterion = config.criterion
        base = self._alternative(self.base_solution, 0, "base")
        alternatives = [base]
        seen = {base.key}
        state = next_objective(MgaState.initial(self.free.size), base.x[self.free_positions], criterion)
        skipped: list[int] = []
        times: list[float] = []
        notes: list[str] = []
        stop_reason = "max_iter"
        iterations = 0

        for iteration in range(1, config.max_iter + 1):
            solution, elapsed = self._solve(state.f_coeffs)
            times.append(elapsed)
            iterations = iteration
            self._check(solution, iteration)
            if solution.status is SolveStatus.ITER_LIMIT:
                skipped.append(iteration)
                notes.append(f"iteration {iteration} skipped: node/time limit")
                self.logger.warning(f"Iteration {iteration} hit the node/time limit, stopping")
                stop_reason = "iter_limit"
                break
            candidate = self._alternative(solution, iteration, criterion.value)
            if candidate.key in seen:
                self.logger.info(f"Iteration {iteration} repeated a previous solution, converged")
                stop_reason = "duplicate"
                break
            seen.add(candidate.key)
            alternatives.append(candidate)
            self.logger.debug(
                f"Iteration {iteration}: cost {candidate.dc_objective:.6g}, connected {candidate.connected}"
            )
            state = next_objective(state, candidate.x[self.free_positions], criterion)

        notes.extend(dict.fromkeys(state.notes))
        return MgaRun(
            criterion=criterion,
            alternatives=tuple(alternatives),
            trajectory=tuple(alt.connected for alt in alternatives),
            skipped=tuple(skipped),
            stop_reason=stop_reason,
            iterations=iterations,
            f_star=self.f_star,
            delta_f=config.delta_f,
            notes=tuple(notes),
            solve_times=tuple(times),
        )

    def _run_random(self) -> MgaRun:
        config = self.config
        weights = lhs_weights(self.free.size, config.max_iter, config.seed)
        if config.workers > 1:
            with ThreadPoolExecutor(max_workers=config.workers) as pool:
                results = list(pool.map(self._solve, weights))
        else:
            results = [self._solve(w) for w in weights]

        base = self._alternative(self.base_solution, 0, "base")
        alternatives = [base]
        seen = {base.key}
        skipped: list[int] = []
        notes: list[str] = []
        duplicates = 0
        for iteration, (solution, _) in enumerate(results, start=1):
            self._check(solution, iteration)
            if solution.status is SolveStatus.ITER_LIMIT:
                skipped.append(iteration)
                notes.append(f"iteration {iteration} skipped: node/time limit")
                continue
            candidate = self._alternative(solution, iteration, MgaCriterion.RANDOM_VECTOR.value)
            if candidate.key in seen:
                duplicates += 1
                continue
            seen.add(candidate.key)
            alternatives.append(candidate)

        self.logger.info(f"Random vectors: {len(alternatives) - 1} new solutions, {duplicates} repeats dropped")
        return MgaRun(
            criterion=MgaCriterion.RANDOM_VECTOR,
            alternatives=tuple(alternatives),
            trajectory=tuple(alt.connected for alt in alternatives),
            skipped=tuple(skipped),
            stop_reason="max_iter",
            iterations=len(results),
            duplicates=duplicates,
            f_star=self.f_star,
            delta_f=config.delta_f,
            notes=tuple(notes),
            solve_times=tuple(elapsed for _, elapsed in results),
        )


def run_mga(
        base_model: MilpModel,
        base_solution: MilpSolution,
        cfg: MgaConfig,
        net: Network,
        milp_config: MilpConfig | None = None,
) -> MgaRun:
    """
    Runs one MGA criterion from a solved base model.

    Args:
        base_model (MilpModel): DC-OTS or DC-UC model.
        base_solution (MilpSolution): Optimal solution of `base_model`.
        cfg (MgaConfig): Criterion, tolerance and limits.
        net (Network): Network the model was built from (dispatch extraction).
        milp_config (MilpConfig, optional): Branch-and-bound settings of the subproblems.

    Returns:
        MgaRun: Distinct alternatives (base at iteration 0) and run statistics.
    """
    return AlternativeGenerator(net, base_model, base_solution, cfg, milp_config).run()
