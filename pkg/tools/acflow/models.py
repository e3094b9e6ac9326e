# ====== Code Summary ======
# Data model of the AC layer: operating state, recovery and power-flow outcomes, the
# classification scale and the AC configuration.

# ====== Standard Library Imports ======
import math
from dataclasses import dataclass, field
from enum import Enum

# ====== Third-Party Library Imports ======
import numpy as np


class Classification(str, Enum):
    INFEASIBLE = "Infeasible"
    OVERLOADED = "Overloaded"
    SAFE = "Safe"
    OPTIMAL = "Optimal"

    @property
    def is_safe(self) -> bool:
        return self in (Classification.SAFE, Classification.OPTIMAL)


@dataclass(frozen=True)
class AcConfig:
    """
    Attributes:
        flow_model (str): Network-level branch model, "pi" or "printed".
        penalty_factor (float): M_pen = penalty_factor · max |c_g|.
        penalty_stages (int): Continuation stages of the thermal penalty, from weight 1 up to penalty_factor.
        tol_overload (float): Largest thermal slack (pu) still classified Safe.
        max_iter (int): Iteration limit of one recovery NLP solve.
        ftol (float): Objective tolerance of the NLP solver.
        feas_tol (float): Largest nodal residual accepted at a converged recovery point.
        pf_tol (float): Mismatch tolerance of the Newton power flow.
        pf_max_iter (int): Iteration limit of the Newton power flow.
    """
    flow_model: str = "pi"
    penalty_factor: float = 1e4
    penalty_stages: int = 3
    tol_overload: float = 1e-4
    max_iter: int = 500
    ftol: float = 1e-10
    feas_tol: float = 1e-6
    pf_tol: float = 1e-8
    pf_max_iter: int = 50


@dataclass(frozen=True, eq=False)
class AcState:
    """
    AC operating point.

    Attributes:
        v (np.ndarray): Voltage magnitude per bus (pu).
        theta (np.ndarray): Angle per bus (rad).
        p_g (np.ndarray): Real output per device (pu).
        q_g (np.ndarray): Reactive output per device (pu).
        p_e (np.ndarray): Real flow per branch at the origin end (pu), zero for open branches.
        q_e (np.ndarray): Reactive flow per branch at the origin end (pu).
        p_e_to (np.ndarray): Real flow per branch at the destination end (pu).
        q_e_to (np.ndarray): Reactive flow per branch at the destination end (pu).
    """
    v: np.ndarray
    theta: np.ndarray
    p_g: np.ndarray
    q_g: np.ndarray
    p_e: np.ndarray
    q_e: np.ndarray
    p_e_to: np.ndarray
    q_e_to: np.ndarray


@dataclass(frozen=True, eq=False)
class PowerFlowResult:
    converged: bool
    state: AcState | None
    iterations: int
    max_mismatch: float
    message: str = ""


@dataclass(frozen=True, eq=False)
class RecoveryResult:
    """
    Outcome of an AC recovery solve.

    Attributes:
        state (AcState): Recovered point (best attained point when not converged).
        slacks (np.ndarray): Thermal violation per branch, max(|p| - p_max, 0) over both ends.
        converged (bool): Whether a start reached a point meeting every hard constraint.
        classification (Classification): Infeasible, Overloaded or Safe.
        objective (float): Dispatch cost Σ c_g p_g at the recovered point.
        redispatch (np.ndarray): p_g change per device against the DC dispatch.
        penalty (float): M_pen · Σ slacks.
        violation (float): Largest hard-constraint violation (nodal residual or voltage bound).
        start (str): Start that produced the point ("flat" or "dc").
        message (str): Solver message of that start.
    """
    state: AcState
    slacks: np.ndarray
    converged: bool
    classification: Classification
    objective: float
    redispatch: np.ndarray
    penalty: float = 0.0
    violation: float = 0.0
    start: str = ""
    message: str = ""
    solve_time: float = field(default=0.0, compare=False)

    @property
    def max_slack(self) -> float:
        return float(np.max(self.slacks, initial=0.0))

    @property
    def mean_abs_redispatch(self) -> float:
        return float(np.mean(np.abs(self.redispatch))) if self.redispatch.size else 0.0

    @property
    def cost_or_inf(self) -> float:
        return self.objective if self.converged else math.inf
