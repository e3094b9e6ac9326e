# ====== Code Summary ======
# Objective updates of the HSJ family. Every update adds a term built from the latest solution to
# the accumulated coefficients, so earlier terms remain:
#   - hsj:     +1 on variables that were on (penalizes reuse),
#   - hsj-neg: -1 on variables that were off (rewards switching on),
#   - hsj0:    +1/n_on on variables that were on, -1/n_off on variables that were off; the term
#              is zero on the all-ones vector, so it favours neither more nor fewer connections.

# ====== Third-Party Library Imports ======
import numpy as np

# ====== Internal Project Imports ======
from mga.exceptions import MgaError
from mga.models import MgaCriterion, MgaState


def _binary(latest) -> np.ndarray:
    latest = np.asarray(latest, dtype=float)
    if not np.all((latest == 0) | (latest == 1)):
        raise MgaError("latest solution must be {0, 1}-valued")
    return latest


def update_term(latest, criterion: MgaCriterion) -> tuple[np.ndarray, tuple[str, ...]]:
    """
    Coefficient increment contributed by one solution.

    Args:
        latest (array-like): {0, 1} vector over the free binaries.
        criterion (MgaCriterion): HSJ variant.

    Returns:
        tuple[np.ndarray, tuple[str, ...]]: Increment and remarks on empty sums.
    """
    latest = _binary(latest)
    on = latest
    off = 1.0 - latest
    if criterion is MgaCriterion.HSJ:
        return on.copy(), ()
    if criterion is MgaCriterion.HSJ_NEGATIVE:
        return -off, ()
    if criterion is MgaCriterion.HSJ_ZERO_BIAS:
        n_on, n_off = int(on.sum()), int(off.sum())
        term = np.zeros_like(latest)
        notes = []
        if n_on:
            term += on / n_on
        else:
            notes.append("zero-bias update with no switched-on variable: on-sum empty")
        if n_off:
            term -= off / n_off
        else:
            notes.append("zero-bias update with no switched-off variable: off-sum empty")
        return term, tuple(notes)
    raise MgaError(f"criterion {criterion.value} has no sequential objective update")


def zero_bias_value(latest, x) -> float:
    """Value at x of the zero-bias term built from `latest`, evaluated as ratios of integer counts."""
    latest = _binary(latest)
    x = np.asarray(x, dtype=float)
    n_on, n_off = int(latest.sum()), int((1 - latest).sum())
    value = 0.0
    if n_on:
        value += float(latest @ x) / n_on
    if n_off:
        value -= float((1 - latest) @ x) / n_off
    return value


def next_objective(state: MgaState, latest, criterion: MgaCriterion) -> MgaState:
    """
    Accumulates the update term of `latest` into the state.

    Args:
        state (MgaState): Current state.
        latest (array-like): {0, 1} vector over the free binaries.
        criterion (MgaCriterion): HSJ variant.

    Returns:
        MgaState: New state with the term added and `latest` appended to the history.
    """
    latest = _binary(latest)
    if latest.shape != state.f_coeffs.shape:
        raise MgaError(f"latest has {latest.size} entries, state has {state.n_free}")
    term, notes = update_term(latest, criterion)
    n_on = int(latest.sum())
    return MgaState(
        f_coeffs=state.f_coeffs + term,
        history=state.history + (tuple(int(v) for v in latest),),
        n_on=n_on,
        n_off=latest.size - n_on,
        notes=state.notes + notes,
    )
