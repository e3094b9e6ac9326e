# ====== Code Summary ======
# Data model of modeling-to-generate-alternatives runs: criterion tags, run configuration, the
# accumulated objective state of the HSJ variants, generated alternatives and the run record.

# ====== Standard Library Imports ======
from dataclasses import dataclass, field
from enum import Enum

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from formulations import OpfSolution
from mga.exceptions import MgaError


class MgaCriterion(str, Enum):
    HSJ = "hsj"
    HSJ_NEGATIVE = "hsj-neg"
    HSJ_ZERO_BIAS = "hsj0"
    RANDOM_VECTOR = "random"

    @property
    def is_sequential(self) -> bool:
        return self is not MgaCriterion.RANDOM_VECTOR

    @classmethod
    def from_tag(cls, tag: str) -> "MgaCriterion":
        try:
            return cls(tag)
        except ValueError as e:
            raise MgaError(f"unknown MGA criterion {tag!r}, expected one of {[c.value for c in cls]}") from e


@dataclass(frozen=True)
class MgaConfig:
    """
    Attributes:
        criterion (MgaCriterion): Objective update rule.
        delta_f (float): Allowed degradation of the base objective.
        max_iter (int): Maximum number of MGA solves.
        seed (int): Seed of the Latin hypercube weights (random vectors only).
        workers (int): Threads used for independent random-vector solves.
    """
    criterion: MgaCriterion = MgaCriterion.HSJ
    delta_f: float = 0.0
    max_iter: int = 30
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        if not isinstance(self.criterion, MgaCriterion):
            object.__setattr__(self, "criterion", MgaCriterion.from_tag(self.criterion))
        if not self.delta_f >= 0:
            raise MgaError(f"delta_f must be non-negative, got {self.delta_f}")
        if self.max_iter < 1:
            raise MgaError(f"max_iter must be at least 1, got {self.max_iter}")
        if self.workers < 1:
            raise MgaError(f"workers must be at least 1, got {self.workers}")


@dataclass(frozen=True, eq=False)
class MgaState:
    """
    Accumulated HSJ objective over the free binaries.

    Attributes:
        f_coeffs (np.ndarray): Objective coefficient per free binary.
        history (tuple[tuple[int, ...], ...]): Every free-binary vector seen so far.
        n_on (int): Ones in the latest vector.
        n_off (int): Zeros in the latest vector.
        notes (tuple[str, ...]): Remarks raised by the updates (empty zero-bias sums).
    """
    f_coeffs: np.ndarray
    history: tuple[tuple[int, ...], ...] = ()
    n_on: int = 0
    n_off: int = 0
    notes: tuple[str, ...] = ()

    @classmethod
    def initial(cls, n_free: int) -> "MgaState":
        return cls(f_coeffs=np.zeros(n_free))

    @property
    def n_free(self) -> int:
        return self.f_coeffs.size

    def evaluate(self, x) -> float:
        return float(self.f_coeffs @ np.asarray(x, dtype=float))


@dataclass(frozen=True, eq=False)
class Alternative:
    """
    One near-optimal integer solution.

    Attributes:
        x (np.ndarray): Value of every binary of the model, in `binary_vars` order.
        dispatch (OpfSolution): DC operating point of the solution.
        dc_objective (float): Original DC cost Σ c_g p_g.
        iteration (int): 0 for the base solution, MGA iteration otherwise.
        criterion (str): Criterion tag ("base" for the base solution).
    """
    x: np.ndarray
    dispatch: OpfSolution
    dc_objective: float
    iteration: int
    criterion: str

    @property
    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.x)

    @property
    def connected(self) -> int:
        """Number of switched-on branches (OTS) or committed devices (UC)."""
        return int(np.sum(self.dispatch.x)) if self.dispatch.x.size else int(np.sum(self.x))


@dataclass(frozen=True, eq=False)
class MgaRun:
    """
    Record of one criterion's run.

    Attributes:
        criterion (MgaCriterion): Criterion used.
        alternatives (tuple[Alternative, ...]): Distinct solutions, base first.
        trajectory (tuple[int, ...]): Connected count of each returned alternative.
        skipped (tuple[int, ...]): Iterations whose subproblem hit the node/time limit.
        stop_reason (str): "duplicate", "max_iter" or "iter_limit".
        iterations (int): Number of MGA subproblems solved.
        duplicates (int): Random-vector solutions dropped as repeats.
        f_star (float): Base objective.
        delta_f (float): Allowed degradation.
        notes (tuple[str, ...]): Remarks (empty zero-bias sums, skipped iterations).
        solve_times (tuple[float, ...]): Wall time of every MGA subproblem (seconds).
    """
    criterion: MgaCriterion
    alternatives: tuple[Alternative, ...]
    trajectory: tuple[int, ...]
    skipped: tuple[int, ...] = ()
    stop_reason: str = "max_iter"
    iterations: int = 0
    duplicates: int = 0
    f_star: float = 0.0
    delta_f: float = 0.0
    notes: tuple[str, ...] = ()
    solve_times: tuple[float, ...] = field(default=(), compare=False)

    @property
    def converged(self) -> bool:
        return self.stop_reason == "duplicate"

    @property
    def mean_solve_time(self) -> float:
        return float(np.mean(self.solve_times)) if self.solve_times else 0.0
