# ====== Code Summary ======
# Re-dispatch statistics: how far the AC recovery moved every device away from its DC dispatch.
# Infeasible recoveries contribute the least-violating point the recovery kept.

# ====== Standard Library Imports ======
from dataclasses import dataclass, field

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from acflow.exceptions import AcModelError
from acflow.models import RecoveryResult
from formulations import OpfSolution


@dataclass(frozen=True)
class RedispatchStats:
    """
    Attributes:
        mean_abs (tuple[float, ...]): Mean |Δp_g| over devices, one value per alternative.
        signed (tuple[float, ...]): Every signed Δp_g, pooled over alternatives (alternative-major).
        by_device (dict[int, tuple[float, ...]]): Signed Δp_g per device position.
    """
    mean_abs: tuple[float, ...] = ()
    signed: tuple[float, ...] = ()
    by_device: dict = field(default_factory=dict)


def redispatch_stats(alternatives: list[tuple[OpfSolution, RecoveryResult]]) -> RedispatchStats:
    """
    Args:
        alternatives (list[tuple[OpfSolution, RecoveryResult]]): DC solution and its recovery.

    Returns:
        RedispatchStats: Empty when `alternatives` is empty.
    """
    if not alternatives:
        return RedispatchStats()
    mean_abs, signed = [], []
    by_device: dict[int, list[float]] = {}
    for dc, recovery in alternatives:
        delta = np.asarray(recovery.state.p_g, dtype=float) - np.asarray(dc.p_g, dtype=float)
        if delta.shape != np.shape(recovery.redispatch):
            raise AcModelError("DC solution and recovery have different device counts")
        mean_abs.append(float(np.mean(np.abs(delta))) if delta.size else 0.0)
        signed.extend(float(d) for d in delta)
        for pos, d in enumerate(delta):
            by_device.setdefault(pos, []).append(float(d))
    return RedispatchStats(
        mean_abs=tuple(mean_abs),
        signed=tuple(signed),
        by_device={pos: tuple(values) for pos, values in by_device.items()},
    )
