# ====== Code Summary ======
# Classification of recovered alternatives and bus roles of a dispatch.

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from acflow.models import Classification, RecoveryResult
from gridnet import Network

OPTIMAL_TOLERANCE = 1e-6


def preliminary_classification(converged: bool, max_slack: float, tol_overload: float) -> Classification:
    if not converged:
        return Classification.INFEASIBLE
    if max_slack > tol_overload:
        return Classification.OVERLOADED
    return Classification.SAFE


def classify_solution(result: RecoveryResult, best_known_cost: float, tol_overload: float = 1e-4) -> Classification:
    """
    Infeasible when not converged, Overloaded when some thermal slack exceeds `tol_overload`,
    Safe otherwise; a Safe result whose cost is within 1e-6 of `best_known_cost` is Optimal.
    """
    classification = preliminary_classification(result.converged, result.max_slack, tol_overload)
    if classification is Classification.SAFE and result.objective <= best_known_cost + OPTIMAL_TOLERANCE:
        return Classification.OPTIMAL
    return classification


def bus_roles(net: Network, p_g, tol: float = 1e-9) -> list[str]:
    """'generator', 'load' or 'junction' per bus, from the net real injection of its devices."""
    injection = np.zeros(net.n_buses)
    np.add.at(injection, net.device_bus_index, np.asarray(p_g, dtype=float))
    return ["generator" if p > tol else "load" if p < -tol else "junction" for p in injection]
