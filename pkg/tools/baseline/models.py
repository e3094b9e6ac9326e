# ====== Standard Library Imports ======
from dataclasses import dataclass, field

# ====== Internal Project Imports ======
from baseline.exceptions import BaselineError

START_MODES = ("all-on", "case")


@dataclass(frozen=True)
class GreedyConfig:
    """
    Attributes:
        tol (float): Smallest cost improvement that justifies a switch.
        start (str): "all-on" or "case" (the network's x0).
        workers (int): Threads evaluating the candidates of one iteration.
    """
    tol: float = 1.0
    start: str = "all-on"
    workers: int = 1

    def __post_init__(self):
        if self.start not in START_MODES:
            raise BaselineError(f"start must be one of {START_MODES}, got {self.start!r}")
        if self.tol < 0:
            raise BaselineError(f"tol must be non-negative, got {self.tol}")
        if self.workers < 1:
            raise BaselineError(f"workers must be at least 1, got {self.workers}")


@dataclass(frozen=True)
class GreedyStep:
    """
    One committed state of the search.

    Attributes:
        branch_id (int | None): Branch flipped to reach this state (None for the start).
        cost (float): AC cost of the state.
        wall_time (float): Seconds since the search started.
        evaluations (int): Recovery solves of the iteration that produced this state (0 for the start).
        skipped_islanding (int): Flips of that iteration rejected for islanding.
        gap (float): Cost above the reference (best cost found unless given).
    """
    branch_id: int | None
    cost: float
    wall_time: float
    evaluations: int = 0
    skipped_islanding: int = 0
    gap: float = 0.0


@dataclass(frozen=True)
class GreedyTrajectory:
    """
    Attributes:
        steps (tuple[GreedyStep, ...]): Start state then one step per committed flip.
        iteration_evals (tuple[int, ...]): Recovery solves of every iteration, including the last one.
        iteration_skipped (tuple[int, ...]): Island-creating flips skipped in every iteration.
        ac_evals (int): Σ iteration_evals.
        seed_evals (int): Recovery solves spent on the start topology.
        topology (tuple[int, ...]): Final topology.
    """
    steps: tuple[GreedyStep, ...]
    iteration_evals: tuple[int, ...]
    iteration_skipped: tuple[int, ...]
    ac_evals: int
    seed_evals: int = 1
    topology: tuple[int, ...] = field(default=())

    @property
    def costs(self) -> tuple[float, ...]:
        return tuple(step.cost for step in self.steps)

    @property
    def switched(self) -> tuple[int, ...]:
        return tuple(step.branch_id for step in self.steps if step.branch_id is not None)
