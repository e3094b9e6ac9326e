class MilpError(Exception):
    """Base class for errors raised by the LP / MILP engine."""


class MalformedProgramError(MilpError):
    """Raised when a linear program breaks its structural invariants (shapes, bounds, indices)."""
