class BaselineError(Exception):
    """Raised when the greedy search cannot start (infeasible seed topology, bad configuration)."""
