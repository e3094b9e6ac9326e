# ====== Code Summary ======
# Extraction of physical quantities from a solved DC model, and pinning of a model's binaries to
# a given integer decision (fixed-topology / fixed-commitment LP).

# ====== Standard Library Imports ======
from dataclasses import dataclass

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from formulations.exceptions import FormulationError
from gridnet import Network
from milp import MilpModel


@dataclass(frozen=True, eq=False)
class OpfSolution:
    """
    DC operating point of one period.

    Attributes:
        p_g (np.ndarray): Dispatch per device (pu).
        p_e (np.ndarray): Flow per branch (pu), positive from origin to destination.
        theta (np.ndarray): Angle per bus (rad).
        x (np.ndarray): Branch switches (DcOts), commitments (DcUc) or empty (DcOpf).
        objective (float): Σ c_g p_g of the model the solution was extracted from.
        problem_kind (str): "DcOpf", "DcOts" or "DcUc".
        period (int): Period the values belong to.
    """
    p_g: np.ndarray
    p_e: np.ndarray
    theta: np.ndarray
    x: np.ndarray
    objective: float
    problem_kind: str
    period: int = 0

    def topology(self, net: Network) -> np.ndarray:
        """On/off state per branch: the switches of an OTS solution, the case x0 otherwise."""
        if self.problem_kind == "DcOts":
            return self.x.astype(int)
        return net.initial_topology()

    def commitment(self, net: Network) -> np.ndarray:
        """On/off state per device: the commitments of a UC solution, all on otherwise."""
        if self.problem_kind == "DcUc":
            return self.x.astype(int)
        return np.ones(net.n_devices, dtype=int)

    def balance_residual(self, net: Network) -> np.ndarray:
        """Σ p_g - Σ_out p_e + Σ_in p_e per bus."""
        residual = np.zeros(net.n_buses)
        np.add.at(residual, net.device_bus_index, self.p_g)
        np.add.at(residual, net.origin_index, -self.p_e)
        np.add.at(residual, net.dest_index, self.p_e)
        return residual


def _values(solution) -> np.ndarray:
    x = getattr(solution, "x", solution)
    if x is None:
        raise FormulationError("solution carries no point to extract")
    return np.asarray(x, dtype=float)


def extract_solution(net: Network, model: MilpModel, solution, period: int = 0) -> OpfSolution:
    """
    Reads dispatch, flows, angles and binaries of one period out of a model solution.

    Args:
        net (Network): Network the model was built from.
        model (MilpModel): Model whose objective defines `OpfSolution.objective` (pass the
            original cost model when the solution comes from a re-weighted copy).
        solution (MilpSolution | LpSolution | np.ndarray): Solved point.
        period (int): Period to extract.

    Returns:
        OpfSolution: Operating point of the period.
    """
    x = _values(solution)
    if x.size != model.lp.n_vars:
        raise FormulationError(f"solution has {x.size} values for {model.lp.n_vars} variables")
    horizon = model.horizon
    if not 0 <= period < horizon:
        raise FormulationError(f"period {period} outside horizon {horizon}")

    def block(name: str, width: int) -> np.ndarray:
        indices = model.group(name)
        if width == 0 or indices.size == 0:
            return np.zeros(0)
        rows = indices.reshape(-1, width)
        return x[rows[min(period, rows.shape[0] - 1)]]

    if model.kind == "DcOts":
        binaries = np.rint(block("x_e", net.n_branches)).astype(int)
    elif model.kind == "DcUc":
        binaries = np.rint(block("x_g", net.n_devices)).astype(int)
    else:
        binaries = np.zeros(0, dtype=int)

    return OpfSolution(
        p_g=block("p_g", net.n_devices),
        p_e=block("p_e", net.n_branches),
        theta=block("theta", net.n_buses),
        x=binaries,
        objective=model.lp.objective_value(x),
        problem_kind=model.kind,
        period=period,
    )


def fixed_topology_model(model: MilpModel, x) -> MilpModel:
    """
    Pins every binary of the model to the given values.

    Args:
        model (MilpModel): Mixed-binary model.
        x (array-like): One {0, 1} value per binary, in `binary_vars` order.

    Returns:
        MilpModel: Same model with binary bounds lower = upper = x.
    """
    x = np.rint(np.asarray(x, dtype=float))
    binaries = model.binary_index
    if x.shape != binaries.shape:
        raise FormulationError(f"{x.size} values for {binaries.size} binaries")
    fixed_lower = model.lp.var_lower[binaries]
    fixed_upper = model.lp.var_upper[binaries]
    if np.any(x < fixed_lower) or np.any(x > fixed_upper):
        raise FormulationError("decision conflicts with a fixed binary (non-switchable branch or device)")
    lower = model.lp.var_lower.copy()
    upper = model.lp.var_upper.copy()
    lower[binaries] = x
    upper[binaries] = x
    return model.with_lp(model.lp.with_var_bounds(lower, upper))
