# ====== Code Summary ======
# Options shared by the DC formulations (OPF, OTS, UC).

# ====== Standard Library Imports ======
import math
from dataclasses import dataclass

# ====== Internal Project Imports ======
from formulations.exceptions import FormulationError

THETA_MODES = ("difference", "bus")
SWITCH_BUDGET_MODES = ("net", "absolute")


@dataclass(frozen=True)
class FormulationConfig:
    """
    Attributes:
        big_m (str | float): "auto" for per-branch constants, or one fixed value for every branch.
        theta_bound (float): θ^max in radians (θ^min = -θ^max).
        theta_mode (str): "difference" bounds θ_o - θ_d per branch, "bus" bounds every θ_i.
        switch_budget (int | None): Maximum number of switching actions n_s^max, None for no budget.
        switch_budget_mode (str): "net" for Σ(x - x0) ≤ n_s^max, "absolute" for Σ|x - x0| ≤ n_s^max.
        budget_reference (tuple[int, ...] | None): Reference topology of the budget (branch x0 when None).
        pairwise_exclusions (tuple[tuple[int, int], ...]): Branch-id pairs that may not both be on.
        horizon (int): Number of periods T (unit commitment only).
        load_profile (tuple[float, ...]): Per-period multipliers of fixed loads, empty for constant loads.
        anti_islanding (bool): Adds the minimum-degree constraint to switching models.
    """
    big_m: str | float = "auto"
    theta_bound: float = 0.5236
    theta_mode: str = "difference"
    switch_budget: int | None = None
    switch_budget_mode: str = "net"
    budget_reference: tuple[int, ...] | None = None
    pairwise_exclusions: tuple[tuple[int, int], ...] = ()
    horizon: int = 1
    load_profile: tuple[float, ...] = ()
    anti_islanding: bool = True

    def __post_init__(self):
        if not self.theta_bound > 0:
            raise FormulationError(f"theta_bound must be positive, got {self.theta_bound}")
        if self.theta_mode not in THETA_MODES:
            raise FormulationError(f"theta_mode must be one of {THETA_MODES}, got {self.theta_mode!r}")
        if self.switch_budget_mode not in SWITCH_BUDGET_MODES:
            raise FormulationError(
                f"switch_budget_mode must be one of {SWITCH_BUDGET_MODES}, got {self.switch_budget_mode!r}"
            )
        if self.switch_budget is not None and self.switch_budget < 0:
            raise FormulationError(f"switch_budget must be non-negative, got {self.switch_budget}")
        if self.horizon < 1:
            raise FormulationError(f"horizon must be at least 1, got {self.horizon}")
        if self.load_profile and len(self.load_profile) != self.horizon:
            raise FormulationError(
                f"load_profile has {len(self.load_profile)} entries for a horizon of {self.horizon}"
            )
        if self.big_m != "auto":
            if isinstance(self.big_m, str) or not math.isfinite(float(self.big_m)) or float(self.big_m) <= 0:
                raise FormulationError(f"big_m must be 'auto' or a positive number, got {self.big_m!r}")

    def load_multiplier(self, period: int) -> float:
        return self.load_profile[period] if self.load_profile else 1.0
