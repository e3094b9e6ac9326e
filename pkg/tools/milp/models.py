# ====== Code Summary ======
# Canonical containers of the solver stack:
#   - `LinearProgram`: min c·x + c0 subject to row_lower ≤ A x ≤ row_upper and var_lower ≤ x ≤ var_upper,
#     with A stored as a scipy CSR matrix.
#   - `MilpModel`: a LinearProgram plus the indices of its binary variables, readable variable
#     names and named index groups ("p_g", "x_e", ...) used by the formulation layer.
#   - `LpSolution` / `MilpSolution`: solver outcomes; failures are statuses, not exceptions.

# ====== Standard Library Imports ======
import math
from dataclasses import dataclass, field, replace
from enum import Enum

# ====== Third-Party Library Imports ======
import numpy as np
from scipy import sparse

# ====== Internal Project Imports ======
from milp.exceptions import MalformedProgramError


class SolveStatus(str, Enum):
    OPTIMAL = "Optimal"
    INFEASIBLE = "Infeasible"
    UNBOUNDED = "Unbounded"
    ITER_LIMIT = "IterLimit"
    NUMERICAL_FAILURE = "NumericalFailure"


@dataclass(frozen=True)
class MilpConfig:
    """
    Tolerances and limits of the LP and branch-and-bound engines.

    Attributes:
        eps_int (float): Integrality tolerance on binary variables.
        eps_feas (float): Primal feasibility tolerance on rows and bounds.
        eps_obj (float): Objective tolerance used for pruning and optimality.
        max_nodes (int): Node limit of the branch-and-bound tree.
        time_limit (float): Wall-clock limit of one MILP solve (seconds).
        lp_restarts (int): Alternative LP algorithms tried after a numerical failure.
    """
    eps_int: float = 1e-6
    eps_feas: float = 1e-7
    eps_obj: float = 1e-7
    max_nodes: int = 100_000
    time_limit: float = 600.0
    lp_restarts: int = 2


def _vector(values, size: int, name: str) -> np.ndarray:
    array = np.asarray(values, dtype=float).reshape(-1)
    if array.size != size:
        raise MalformedProgramError(f"{name} has {array.size} entries, expected {size}")
    return array


@dataclass(frozen=True, eq=False)
class LinearProgram:
    """
    Linear program in row-bounded form.

    Attributes:
        c (np.ndarray): Objective coefficients.
        A (sparse.csr_matrix): Constraint matrix, one row per constraint.
        row_lower (np.ndarray): Row lower bounds (may be -inf).
        row_upper (np.ndarray): Row upper bounds (may be +inf).
        var_lower (np.ndarray): Variable lower bounds (may be -inf).
        var_upper (np.ndarray): Variable upper bounds (may be +inf).
        c0 (float): Objective constant.
    """
    c: np.ndarray
    A: sparse.csr_matrix
    row_lower: np.ndarray
    row_upper: np.ndarray
    var_lower: np.ndarray
    var_upper: np.ndarray
    c0: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(-1)
        n = c.size
        A = sparse.csr_matrix(self.A, dtype=float)
        if A.shape[1] != n and not (A.shape[0] == 0):
            raise MalformedProgramError(f"constraint matrix has {A.shape[1]} columns, expected {n}")
        if A.shape[0] == 0:
            A = sparse.csr_matrix((0, n))
        m = A.shape[0]
        row_lower = _vector(self.row_lower, m, "row_lower")
        row_upper = _vector(self.row_upper, m, "row_upper")
        var_lower = _vector(self.var_lower, n, "var_lower")
        var_upper = _vector(self.var_upper, n, "var_upper")
        if np.any(row_lower > row_upper):
            rows = np.flatnonzero(row_lower > row_upper).tolist()
            raise MalformedProgramError(f"row lower bound exceeds upper bound on rows {rows}")
        if np.any(var_lower > var_upper):
            cols = np.flatnonzero(var_lower > var_upper).tolist()
            raise MalformedProgramError(f"variable lower bound exceeds upper bound on variables {cols}")
        if not math.isfinite(self.c0) or not np.all(np.isfinite(c)):
            raise MalformedProgramError("objective must be finite")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "row_lower", row_lower)
        object.__setattr__(self, "row_upper", row_upper)
        object.__setattr__(self, "var_lower", var_lower)
        object.__setattr__(self, "var_upper", var_upper)
        object.__setattr__(self, "c0", float(self.c0))

    @property
    def n_vars(self) -> int:
        return self.c.size

    @property
    def n_rows(self) -> int:
        return self.A.shape[0]

    def objective_value(self, x: np.ndarray) -> float:
        return float(self.c @ x) + self.c0

    def max_violation(self, x: np.ndarray) -> float:
        """Largest violation of a row or variable bound at x (0 when feasible)."""
        x = np.asarray(x, dtype=float)
        activity = self.A @ x if self.n_rows else np.zeros(0)
        violations = [
            np.max(self.row_lower - activity, initial=0.0),
            np.max(activity - self.row_upper, initial=0.0),
            np.max(self.var_lower - x, initial=0.0),
            np.max(x - self.var_upper, initial=0.0),
        ]
        return float(max(violations))

    def with_rows(self, A_rows, lower, upper) -> "LinearProgram":
        """Returns a copy with extra constraint rows appended."""
        A_rows = sparse.csr_matrix(A_rows, dtype=float)
        if A_rows.shape[1] != self.n_vars:
            raise MalformedProgramError(f"new rows have {A_rows.shape[1]} columns, expected {self.n_vars}")
        k = A_rows.shape[0]
        return replace(
            self,
            A=sparse.vstack([self.A, A_rows], format="csr"),
            row_lower=np.concatenate([self.row_lower, _vector(lower, k, "lower")]),
            row_upper=np.concatenate([self.row_upper, _vector(upper, k, "upper")]),
        )

    def with_objective(self, c, c0: float = 0.0) -> "LinearProgram":
        return replace(self, c=_vector(c, self.n_vars, "c"), c0=c0)

    def with_var_bounds(self, lower, upper) -> "LinearProgram":
        return replace(
            self,
            var_lower=_vector(lower, self.n_vars, "var_lower"),
            var_upper=_vector(upper, self.n_vars, "var_upper"),
        )


@dataclass(frozen=True, eq=False)
class MilpModel:
    """
    Mixed-binary linear program.

    Attributes:
        lp (LinearProgram): Relaxation.
        binary_vars (tuple[int, ...]): Sorted indices of binary variables.
        var_names (tuple[str, ...]): One readable name per variable.
        groups (dict[str, np.ndarray]): Named index arrays (e.g. "x_e" → the branch switches).
        kind (str): Problem kind tag ("DcOpf", "DcOts", "DcUc", or "" for generic models).
        row_groups (dict[str, np.ndarray]): Named row index arrays (e.g. "balance", "flow").
        horizon (int): Number of periods the variables are replicated over.
    """
    lp: LinearProgram
    binary_vars: tuple[int, ...] = ()
    var_names: tuple[str, ...] = ()
    groups: dict = field(default_factory=dict)
    kind: str = ""
    row_groups: dict = field(default_factory=dict)
    horizon: int = 1

    def __post_init__(self):
        binaries = tuple(sorted(int(i) for i in self.binary_vars))
        object.__setattr__(self, "binary_vars", binaries)
        n = self.lp.n_vars
        if any(i < 0 or i >= n for i in binaries):
            raise MalformedProgramError("binary variable index out of range")
        if len(set(binaries)) != len(binaries):
            raise MalformedProgramError("duplicate binary variable index")
        idx = np.array(binaries, dtype=int)
        if idx.size and (np.any(self.lp.var_lower[idx] < 0) or np.any(self.lp.var_upper[idx] > 1)):
            raise MalformedProgramError("binary variables must have bounds within [0, 1]")
        if self.var_names and len(self.var_names) != n:
            raise MalformedProgramError(f"{len(self.var_names)} variable names for {n} variables")
        if not self.var_names:
            object.__setattr__(self, "var_names", tuple(f"x[{i}]" for i in range(n)))

    @property
    def binary_index(self) -> np.ndarray:
        return np.array(self.binary_vars, dtype=int)

    def group(self, name: str) -> np.ndarray:
        return np.asarray(self.groups.get(name, np.zeros(0, dtype=int)), dtype=int)

    def rows(self, name: str) -> np.ndarray:
        return np.asarray(self.row_groups.get(name, np.zeros(0, dtype=int)), dtype=int)

    def index_of(self, name: str) -> int:
        return self.var_names.index(name)

    def with_lp(self, lp: LinearProgram) -> "MilpModel":
        return replace(self, lp=lp)


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: SolveStatus
    x: np.ndarray | None = None
    objective: float = math.nan
    iterations: int = 0
    message: str = ""


@dataclass(frozen=True, eq=False)
class MilpSolution:
    """
    Outcome of a branch-and-bound solve.

    Attributes:
        status (SolveStatus): Optimal, Infeasible, Unbounded, IterLimit or NumericalFailure.
        x (np.ndarray | None): Best incumbent, binaries snapped to {0, 1}.
        objective (float): Objective value of the incumbent (nan when none).
        node_count (int): Number of LP relaxations solved.
        root_bound (float): Objective of the root relaxation.
    """
    status: SolveStatus
    x: np.ndarray | None = None
    objective: float = math.nan
    node_count: int = 0
    root_bound: float = math.nan

    @property
    def has_incumbent(self) -> bool:
        return self.x is not None

    @property
    def gap(self) -> float:
        """Absolute gap between the incumbent and the root relaxation bound."""
        if self.x is None or not math.isfinite(self.root_bound):
            return math.inf
        return max(self.objective - self.root_bound, 0.0)

    def binary_values(self, model: MilpModel) -> np.ndarray:
        if self.x is None:
            return np.zeros(0, dtype=int)
        return np.rint(self.x[model.binary_index]).astype(int)
