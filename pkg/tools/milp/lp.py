# ====== Code Summary ======
# LP relaxation engine: converts a row-bounded `LinearProgram` into scipy's `linprog` form and
# solves it with HiGHS. A numerical failure triggers bounded restarts with alternative HiGHS
# algorithms (dual simplex, then interior point) before `NumericalFailure` is reported.

# ====== Third-Party Library Imports ======
import numpy as np
from scipy import sparse
from scipy.optimize import linprog
from loggerplusplus import Logger

# ====== Internal Project Imports ======
from milp.models import LinearProgram, LpSolution, MilpConfig, SolveStatus

_STATUS = {
    0: SolveStatus.OPTIMAL,
    1: SolveStatus.ITER_LIMIT,
    2: SolveStatus.INFEASIBLE,
    3: SolveStatus.UNBOUNDED,
    4: SolveStatus.NUMERICAL_FAILURE,
}
_METHODS = ("highs", "highs-ds", "highs-ipm")

_logger = Logger(identifier="solve_lp", follow_logger_manager_rules=True)


def _linprog_arguments(lp: LinearProgram) -> dict:
    A = lp.A
    lower, upper = lp.row_lower, lp.row_upper
    eq = np.isfinite(lower) & np.isfinite(upper) & (lower == upper)
    ub = ~eq & np.isfinite(upper)
    lb = ~eq & np.isfinite(lower)

    arguments: dict = {}
    if eq.any():
        arguments["A_eq"] = A[eq]
        arguments["b_eq"] = upper[eq]
    if ub.any() or lb.any():
        arguments["A_ub"] = sparse.vstack([A[ub], -A[lb]], format="csr")
        arguments["b_ub"] = np.concatenate([upper[ub], -lower[lb]])
    arguments["bounds"] = [
        (None if np.isneginf(lo) else lo, None if np.isposinf(hi) else hi)
        for lo, hi in zip(lp.var_lower, lp.var_upper)
    ]
    return arguments


def solve_lp(lp: LinearProgram, config: MilpConfig | None = None) -> LpSolution:
    """
    Solves a linear program.

    Args:
        lp (LinearProgram): Program to solve.
        config (MilpConfig, optional): Tolerances and restart budget.

    Returns:
        LpSolution: Optimal point, or the status explaining why none is returned.
    """
    config = config or MilpConfig()
    if lp.n_vars == 0:
        return LpSolution(SolveStatus.OPTIMAL, np.zeros(0), lp.c0)

    arguments = _linprog_arguments(lp)
    options = {
        "primal_feasibility_tolerance": config.eps_feas,
        "dual_feasibility_tolerance": config.eps_feas,
    }

    result = None
    for method in _METHODS[: 1 + max(config.lp_restarts, 0)]:
        result = linprog(lp.c, method=method, options=options, **arguments)
        if result.status != 4:
            break
        _logger.warning(f"LP method {method} reported numerical difficulties: {result.message}")

    status = _STATUS.get(result.status, SolveStatus.NUMERICAL_FAILURE)
    if status is not SolveStatus.OPTIMAL:
        return LpSolution(status, None, float("nan"), int(getattr(result, "nit", 0)), result.message)

    x = np.asarray(result.x, dtype=float)
    violation = lp.max_violation(x)
    if violation > 10 * config.eps_feas * max(1.0, float(np.max(np.abs(x), initial=0.0))):
        _logger.warning(f"LP solution violates constraints by {violation:.3e}")
    return LpSolution(status, x, lp.objective_value(x), int(getattr(result, "nit", 0)), result.message)
