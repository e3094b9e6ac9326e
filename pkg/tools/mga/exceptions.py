class MgaError(Exception):
    """Raised when alternative generation cannot start or a subproblem fails unexpectedly."""
