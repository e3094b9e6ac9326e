# ====== Code Summary ======
# Best-first branch-and-bound for mixed-binary linear programs. Nodes differ from the root only
# by the bounds of the binaries fixed on their path. Node order is the parent relaxation bound
# with FIFO ties; branching picks the most fractional binary (lowest index on ties) and the
# up-branch (x = 1) is queued before the down-branch. The search is single-threaded and
# deterministic for a given model and configuration.

# ====== Standard Library Imports ======
import heapq
import math
import time
from dataclasses import dataclass, field
from itertools import count

# ====== Third-Party Library Imports ======
import numpy as np
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from milp.lp import solve_lp
from milp.models import MilpConfig, MilpModel, MilpSolution, SolveStatus


@dataclass(order=True)
class _Node:
    bound: float
    seq: int
    lower: np.ndarray = field(compare=False)
    upper: np.ndarray = field(compare=False)
    depth: int = field(compare=False, default=0)


class BranchAndBoundSolver:
    """
    Branch-and-bound solver over LP relaxations.
    """

    def __init__(self, config: MilpConfig | None = None, logger: Logger | None = None):
        if logger is None:
            logger = Logger(identifier=self.__class__.__name__, follow_logger_manager_rules=True)
        self.logger = logger
        self.config = config or MilpConfig()

    def _branching_variable(self, values: np.ndarray) -> int | None:
        distance = np.minimum(values - np.floor(values), np.ceil(values) - values)
        if distance.size == 0 or np.max(distance) <= self.config.eps_int:
            return None
        return int(np.argmax(distance))

    def solve(self, model: MilpModel) -> MilpSolution:
        """
        Solves the mixed-binary program.

        Args:
            model (MilpModel): Model to solve.

        Returns:
            MilpSolution: Optimal incumbent, or the status of an unsuccessful search. On a node or
            time limit the best incumbent found so far is attached.
        """
        config = self.config
        lp = model.lp
        binaries = model.binary_index
        start = time.perf_counter()
        sequence = count()

        queue: list[_Node] = [_Node(-math.inf, next(sequence), lp.var_lower.copy(), lp.var_upper.copy())]
        incumbent: np.ndarray | None = None
        incumbent_objective = math.inf
        root_bound = math.nan
        nodes = 0
        limit_hit = False

        while queue:
            node = heapq.heappop(queue)
            if node.bound >= incumbent_objective - config.eps_obj:
                continue
            if nodes >= config.max_nodes or time.perf_counter() - start > config.time_limit:
                limit_hit = True
                break

            relaxation = solve_lp(lp.with_var_bounds(node.lower, node.upper), config)
            nodes += 1
            if nodes == 1:
                root_bound = relaxation.objective
                if relaxation.status in (SolveStatus.INFEASIBLE, SolveStatus.UNBOUNDED, SolveStatus.NUMERICAL_FAILURE):
                    self.logger.debug(f"Root relaxation: {relaxation.status.value}")
                    return MilpSolution(relaxation.status, node_count=nodes, root_bound=root_bound)

            if relaxation.status is SolveStatus.UNBOUNDED:
                return MilpSolution(SolveStatus.UNBOUNDED, node_count=nodes, root_bound=root_bound)
            if relaxation.status is not SolveStatus.OPTIMAL:
                if relaxation.status is not SolveStatus.INFEASIBLE:
                    self.logger.warning(f"Node {nodes} relaxation ended with {relaxation.status.value}, pruned")
                continue
            if relaxation.objective >= incumbent_objective - config.eps_obj:
                continue

            values = relaxation.x[binaries]
            branch = self._branching_variable(values)
            if branch is None:
                x = relaxation.x.copy()
                x[binaries] = np.rint(values)
                incumbent, incumbent_objective = x, relaxation.objective
                self.logger.debug(f"Node {nodes}: new incumbent {incumbent_objective:.9g}")
                continue

            var = int(binaries[branch])
            up_lower = node.lower.copy()
            up_lower[var] = 1.0
            down_upper = node.upper.copy()
            down_upper[var] = 0.0
            heapq.heappush(queue, _Node(relaxation.objective, next(sequence), up_lower, node.upper, node.depth + 1))
            heapq.heappush(queue, _Node(relaxation.objective, next(sequence), node.lower, down_upper, node.depth + 1))

        if limit_hit:
            self.logger.warning(f"Branch-and-bound stopped at the node/time limit after {nodes} nodes")
            return MilpSolution(
                SolveStatus.ITER_LIMIT,
                incumbent,
                incumbent_objective if incumbent is not None else math.nan,
                nodes,
                root_bound,
            )
        if incumbent is None:
            return MilpSolution(SolveStatus.INFEASIBLE, node_count=nodes, root_bound=root_bound)
        return MilpSolution(SolveStatus.OPTIMAL, incumbent, incumbent_objective, nodes, root_bound)


def solve_milp(model: MilpModel, config: MilpConfig | None = None, logger: Logger | None = None) -> MilpSolution:
    """Solves a mixed-binary program with `BranchAndBoundSolver`."""
    return BranchAndBoundSolver(config=config, logger=logger).solve(model)
