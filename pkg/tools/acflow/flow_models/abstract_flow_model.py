# ====== Standard Library Imports ======
from abc import ABC, abstractmethod
from dataclasses import dataclass

# ====== Third-Party Library Imports ======
import numpy as np


@dataclass(frozen=True, eq=False)
class BranchFlows:
    """
    Terminal flows of a set of branches and their partial derivatives.

    Every array has shape (4, m); rows are p_od, q_od, p_do, q_do (origin-side then destination-side
    injections into the branch). Derivatives are taken with respect to the origin voltage, the
    destination voltage and the angle difference Δ = θ_o - θ_d.
    """
    values: np.ndarray
    d_vo: np.ndarray
    d_vd: np.ndarray
    d_delta: np.ndarray

    @property
    def p_od(self) -> np.ndarray:
        return self.values[0]

    @property
    def q_od(self) -> np.ndarray:
        return self.values[1]

    @property
    def p_do(self) -> np.ndarray:
        return self.values[2]

    @property
    def q_do(self) -> np.ndarray:
        return self.values[3]


class BranchFlowModel(ABC):
    """
    Abstract base class for AC branch flow models.
    """

    #: Whether the destination-side flow differs from the opposite of the origin-side flow.
    two_sided: bool = True

    @abstractmethod
    def flows(self, v_o: np.ndarray, v_d: np.ndarray, delta: np.ndarray, g: np.ndarray, b: np.ndarray) -> BranchFlows:
        """
        Terminal flows and derivatives.
        Must be implemented by subclasses.
        """
        raise NotImplementedError("The flows method must be implemented by subclasses.")
